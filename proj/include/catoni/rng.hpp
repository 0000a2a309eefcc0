#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace catoni {

struct StreamOrigin {
  std::uint64_t base_seed = 0;
  std::uint64_t replication_index = 0;

  friend bool operator==(const StreamOrigin&, const StreamOrigin&) = default;
};

/// Deterministic pseudo-random stream keyed by (base_seed, replication_index).
///
/// The engine state is derived directly from the key, so stream r can be
/// created without touching streams 0..r-1. A stream is single-consumer;
/// distinct streams may be used from distinct threads.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t base_seed, std::uint64_t replication_index);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  result_type operator()() { return engine_(); }

  /// Uniform draw on the open interval (0, 1); never returns 0 or 1.
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  const StreamOrigin& origin() const noexcept { return origin_; }

 private:
  std::mt19937_64 engine_;
  StreamOrigin origin_;
};

RngStream derive_stream(std::uint64_t base_seed, std::uint64_t replication_index);

// Reserved replication indices for auxiliary streams of an experiment.
inline constexpr std::uint64_t kOracleStreamIndex = std::numeric_limits<std::uint64_t>::max();
inline constexpr std::uint64_t kPilotStreamIndex = kOracleStreamIndex - 1;

}  // namespace catoni
