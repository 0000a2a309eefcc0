#include "catoni/rng.hpp"

#include <array>

namespace catoni {

namespace {

constexpr std::uint32_t kDomainTag = 0x43415430u;  // "CAT0"

std::mt19937_64 seeded_engine(std::uint64_t base_seed, std::uint64_t replication_index) {
  const std::array<std::uint32_t, 5> key{
      kDomainTag,
      static_cast<std::uint32_t>(base_seed),
      static_cast<std::uint32_t>(base_seed >> 32),
      static_cast<std::uint32_t>(replication_index),
      static_cast<std::uint32_t>(replication_index >> 32),
  };
  std::seed_seq seq(key.begin(), key.end());
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t base_seed, std::uint64_t replication_index)
    : engine_(seeded_engine(base_seed, replication_index)),
      origin_{base_seed, replication_index} {}

RngStream derive_stream(std::uint64_t base_seed, std::uint64_t replication_index) {
  return RngStream(base_seed, replication_index);
}

}  // namespace catoni
