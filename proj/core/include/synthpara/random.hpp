#pragma once

#include <array>
#include <cstdint>

namespace synthpara {

// Seeded, splittable random stream.
//
// The generator is xoshiro256** seeded through SplitMix64 from the pair
// (seed, stream_id). All integer draws are bit-exact on every platform.
// Real-valued draws use a 53-bit mantissa; normal deviates use the Marsaglia
// polar method (std::log / std::sqrt), so they are reproducible wherever the
// C math library is.
//
// Generators never share a stream between work items. Item i of a job draws
// from substream(i), which makes output independent of how the items are
// partitioned across shards.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  // Independent child stream keyed by (seed, stream_id, index).
  RandomSource substream(std::uint64_t index) const;

  std::uint64_t next_u64() noexcept;

  // Uniform integer in [0, bound). bound must be > 0. Unbiased.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;

  // Uniform real in [0, 1).
  double uniform01() noexcept;

  // True with probability p; p <= 0 never, p >= 1 always.
  bool bernoulli(double p) noexcept;

  // Standard normal deviate.
  double normal() noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace synthpara
