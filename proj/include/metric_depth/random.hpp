#pragma once

#include <cstdint>
#include <random>

namespace metric_depth {

// Seeded generator with platform-stable output.
//
// Raw bits come from std::mt19937_64, whose output sequence is fixed by the
// C++ standard. Everything derived from it is computed here rather than with
// <random> distributions, whose algorithms are implementation-defined:
//   uniform()  = (bits >> 11) * 2^-53, in [0, 1)
//   below(m)   = rejection sampling on the low bits against the largest
//                multiple of m, so the result is exactly uniform on [0, m)
//   normal()   = Box-Muller on (1 - uniform(), uniform()); both variates of a
//                pair are used, cosine branch first.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  double uniform();
  std::uint64_t below(std::uint64_t bound);
  double normal();

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// SplitMix64 finaliser; derives independent seeds from (seed, stream).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace metric_depth
