#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace pairscan {

// Every seeded operation in this library draws from this generator:
// std::mt19937_64 for the raw stream (bit-exact across platforms) with the
// samplers below implemented by hand, because the <random> distribution
// classes are implementation defined and would break golden values when the
// standard library changes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, bound) via masked rejection; bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Uniform real in [0, 1) with 53 random bits.
  double uniform_unit();

  // Box-Muller transform, two uniform draws per variate, no cached spare.
  double gaussian(double mean, double stddev);

  // First k entries of a partial Fisher-Yates shuffle of [0, n).
  // Result is in selection order, not sorted.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent sub-seeds from a master
// seed (sweep cells, bucket iterations). Pure function of its arguments.
std::uint64_t mix_seed(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t s1, std::uint64_t s2);

}  // namespace pairscan
