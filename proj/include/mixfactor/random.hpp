#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mixfactor/types.hpp"

namespace mixfactor {

/// xoshiro256** seeded through splitmix64. Gaussians come from the
/// Box-Muller transform, both outputs used in order, so every draw is a
/// fixed function of the seed on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  double normal();

  /// +1 or -1 with equal probability, taken from the top bit.
  double sign();

  /// Uniform integer on [0, bound).
  std::uint64_t below(std::uint64_t bound);

  /// Advance by 2^128 draws; streams produced by successive jumps never overlap.
  void jump();

  /// Independent stream `index` derived from this generator's state.
  Rng split(std::uint64_t index) const;

  Matrix normal_matrix(Index rows, Index cols);
  Matrix uniform_matrix(Index rows, Index cols);

  /// First `count` entries of a uniformly random permutation of {0..n-1}.
  std::vector<Index> permutation(Index n, Index count);
  std::vector<Index> permutation(Index n) { return permutation(n, n); }

 private:
  std::array<std::uint64_t, 4> state_{};
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mixfactor
