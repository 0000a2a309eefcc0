#pragma once

#include <cstddef>

namespace catoni {

// Closed-form deviation bounds for the M-estimator and the entropy-condition
// evaluators for uniform concentration over a function class. Every probability
// returned here is clamped to [0, 1].

/// sqrt(2 sigma2 log(1/delta) / (n (1 - 2 log(1/delta) / n))).
/// Throws ValidityError unless n > 2 log(1/delta).
double catoni_width(std::size_t n, double sigma2, double delta);

/// min(1, 2 exp(-n x^2 / (2 (sigma2 + x^2)))). Throws InputError for x <= 0.
double catoni_tail_bound(std::size_t n, double sigma2, double x);

/// Tail of the difference of two deviations:
/// min(1, 4 exp(-n x^2 / (2 (x^2 + 4 sigma2)))). Throws InputError for x <= 0.
double increment_tail_bound(std::size_t n, double sigma2, double x);

/// Width for simultaneous estimation over a finite class of N functions:
/// catoni_width with log(1/delta) replaced by log(N/delta).
double finite_class_width(std::size_t n, double sigma2, double delta, std::size_t class_size);

/// Parameters of an exponential class N(t) <= C exp(M t^-p), plus the
/// unspecified constants C1, C2 of the entropy condition.
struct EntropyClassParams {
  double C = 1.0;
  double M = 1.0;
  double p = 2.0;
  double C1 = 1.0;
  double C2 = 1.0;
};

enum class EntropyBranch { p_equals_2, p_general };

struct ConditionReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  EntropyBranch branch = EntropyBranch::p_equals_2;
  double cutoff_a = 0.0;  ///< min(n^2 eps / C2, n / 4)
};

/// Evaluates n^{3/2} eps^2 / C1 >= max(B, n^{1/2}) where, with a = cutoff_a,
///   p == 2: B = sqrt(M) log(n / a) + sqrt(log C) (n - a) 1{C > 1}
///   p != 2: B = 2 sqrt(M) / (2 - p) (n^{1-p/2} - a^{1-p/2}) + sqrt(log C) (n - a) 1{C > 1}
ConditionReport entropy_condition(std::size_t n, double eps, const EntropyClassParams& params);

/// min(1, C3 exp(-n eps^2 / C4)).
double uniform_bound(std::size_t n, double eps, double C3, double C4);

/// uniform bounds are only known to depend on sigma2.
/// uniform theorems are only known to depend on sigma2.
struct DefaultConstants {
  double C1, C2, C3, C4;
};
DefaultConstants default_constants(double sigma2);

}  // namespace catoni
