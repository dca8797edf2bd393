#pragma once

#include <optional>
#include <vector>

#include "mixfactor/random.hpp"
#include "mixfactor/types.hpp"

namespace mixfactor {

/// Implicit random orthogonal mixing matrix
///
///   V = P^T (F D_1)(F D_2) ... (F D_N)
///
/// with F the orthonormal DCT-II, D_i random +-1 diagonals and P the
/// optional pre-sort column permutation (A V^T = A (F D_1 ... F D_N)^T P,
/// i.e. the mixed columns reordered by `presort`). V is never formed.
struct RosOperator {
  enum class Transform { dct };

  Index n = 0;
  std::vector<Vector> signs;  // D_1 .. D_N, entries +-1
  std::optional<Permutation> presort;
  Transform transform = Transform::dct;

  Index num_mixes() const { return static_cast<Index>(signs.size()); }
};

enum class RosMode {
  right_transpose,  // A V^T, mixes columns of A
  left,             // V A
  right,            // A V
  left_transpose,   // V^T A
};

struct RosApplyOptions {
  /// Right-side products are computed as (V A^T)^T with column transforms.
  /// Off, each row is transformed in place. Results are identical.
  bool transpose_trick = true;
};

RosOperator ros_sample(Index n, Index num_mixes, Rng& rng);

Matrix ros_apply(const RosOperator& v, const Matrix& a, RosMode mode, RosApplyOptions options = {});

/// Dense n x n V, for tests and small problems.
Matrix materialize(const RosOperator& v);

struct ColumnNormStats {
  double mean = 0;
  double stdev = 0;  // sample standard deviation (n - 1 denominator)
  double min = 0;
  double max = 0;
};

ColumnNormStats column_norm_stats(const Matrix& a);

}  // namespace mixfactor
