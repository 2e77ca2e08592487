#pragma once

#include <array>
#include <cstdint>

namespace ordlab {

// Philox4x32-10 counter-based generator. Output block i of stream s is a pure
// function of (seed, s, i), so draws are reproducible under any scheduling
// and any worker count.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  explicit Philox4x32(std::uint64_t seed)
      : key0_(static_cast<std::uint32_t>(seed)),
        key1_(static_cast<std::uint32_t>(seed >> 32)) {}

  Block block(std::uint64_t stream, std::uint64_t counter) const;

 private:
  std::uint32_t key0_, key1_;
};

// Quantile of the standard normal distribution (Wichura's AS241, ppnd16),
// accurate to ~1e-16 in the central range.
double inverse_normal_cdf(double p);

// Sequential view over one (seed, stream) pair of the Philox generator.
// Gaussians use the fixed inverse-CDF transform: one uniform per variate.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream)
      : gen_(seed), stream_(stream) {}

  std::uint64_t next_u64();
  double uniform01();  // strictly inside (0,1)
  double gaussian();

 private:
  Philox4x32 gen_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  Philox4x32::Block current_{};
  int pos_ = 2;  // 2 u64 per block; 2 == exhausted
};

// Stream-id namespaces: keeps draws of unrelated components decoupled even
// when they share a user seed.
inline constexpr std::uint64_t kStreamFbm = 0x0100000000000000ull;
inline constexpr std::uint64_t kStreamCylinderMc = 0x0200000000000000ull;
inline constexpr std::uint64_t kStreamBallMc = 0x0300000000000000ull;
inline constexpr std::uint64_t kStreamBridgeMc = 0x0400000000000000ull;

}  // namespace ordlab
