#include "mixfactor/ros.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mixfactor/dct.hpp"

namespace mixfactor {

RosOperator ros_sample(Index n, Index num_mixes, Rng& rng) {
  if (n < 1) throw InvalidArgument("ros_sample: dimension must be positive");
  if (num_mixes < 1) throw InvalidArgument("ros_sample: need at least one mixing step");
  RosOperator v;
  v.n = n;
  v.signs.reserve(static_cast<std::size_t>(num_mixes));
  for (Index i = 0; i < num_mixes; ++i) {
    Vector d(n);
    for (Index j = 0; j < n; ++j) d(j) = rng.sign();
    v.signs.push_back(std::move(d));
  }
  return v;
}

namespace {

// V X, operating on the columns of x.
void mix_left(const RosOperator& v, Matrix& x) {
  for (Index i = v.num_mixes() - 1; i >= 0; --i) {
    x = v.signs[static_cast<std::size_t>(i)].asDiagonal() * x;
    dct2_columns(x);
  }
  if (v.presort) x = v.presort->gather_rows(x);
}

// V^T X, operating on the columns of x.
void mix_left_transpose(const RosOperator& v, Matrix& x) {
  if (v.presort) x = v.presort->scatter_rows(x);
  for (Index i = 0; i < v.num_mixes(); ++i) {
    dct3_columns(x);
    x = v.signs[static_cast<std::size_t>(i)].asDiagonal() * x;
  }
}

template <typename Op>
Matrix apply_to_rows(const Matrix& a, bool transpose_trick, Op op) {
  if (transpose_trick) {
    Matrix t = a.transpose();
    op(t);
    return t.transpose();
  }
  Matrix out(a.rows(), a.cols());
  Matrix row(a.cols(), 1);
  for (Index r = 0; r < a.rows(); ++r) {
    row.col(0) = a.row(r).transpose();
    op(row);
    out.row(r) = row.col(0).transpose();
  }
  return out;
}

}  // namespace

Matrix ros_apply(const RosOperator& v, const Matrix& a, RosMode mode, RosApplyOptions options) {
  const bool right = mode == RosMode::right || mode == RosMode::right_transpose;
  const Index dim = right ? a.cols() : a.rows();
  if (dim != v.n)
    throw InvalidArgument("ros_apply: operator dimension " + std::to_string(v.n) +
                          " does not match matrix dimension " + std::to_string(dim));
  if (v.presort && v.presort->size() != v.n) throw InvalidArgument("ros_apply: presort has wrong size");

  switch (mode) {
    case RosMode::left: {
      Matrix x = a;
      mix_left(v, x);
      return x;
    }
    case RosMode::left_transpose: {
      Matrix x = a;
      mix_left_transpose(v, x);
      return x;
    }
    case RosMode::right_transpose:
      // A V^T = (V A^T)^T
      return apply_to_rows(a, options.transpose_trick, [&](Matrix& x) { mix_left(v, x); });
    case RosMode::right:
      // A V = (V^T A^T)^T
      return apply_to_rows(a, options.transpose_trick, [&](Matrix& x) { mix_left_transpose(v, x); });
  }
  throw InvalidArgument("ros_apply: unknown mode");
}

Matrix materialize(const RosOperator& v) { return ros_apply(v, Matrix::Identity(v.n, v.n), RosMode::left); }

ColumnNormStats column_norm_stats(const Matrix& a) {
  ColumnNormStats s;
  if (a.cols() == 0) return s;
  Vector norms(a.cols());
  for (Index j = 0; j < a.cols(); ++j) norms(j) = a.col(j).norm();
  s.mean = norms.mean();
  s.min = norms.minCoeff();
  s.max = norms.maxCoeff();
  if (a.cols() > 1)
    s.stdev = std::sqrt((norms.array() - s.mean).square().sum() / static_cast<double>(a.cols() - 1));
  return s;
}

}  // namespace mixfactor
