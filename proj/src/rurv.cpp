#include "mixfactor/rurv.hpp"

#include <algorithm>
#include <numeric>

namespace mixfactor {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Matrix dense_product(const Matrix& v, const Matrix& x, RosMode mode) {
  switch (mode) {
    case RosMode::right_transpose: return x * v.transpose();
    case RosMode::left: return v * x;
    case RosMode::right: return x * v;
    case RosMode::left_transpose: return v.transpose() * x;
  }
  throw InvalidArgument("apply_mixing: unknown mode");
}

Matrix permutation_product(const Permutation& p, const Matrix& x, RosMode mode) {
  switch (mode) {
    case RosMode::right_transpose: return p.permute_columns(x);
    case RosMode::right: return p.unpermute_columns(x);
    case RosMode::left: return p.gather_rows(x);
    case RosMode::left_transpose: return p.scatter_rows(x);
  }
  throw InvalidArgument("apply_mixing: unknown mode");
}

void flip_to_positive_diagonal(Matrix& q, const HouseholderQR<double>& f) {
  for (Index i = 0; i < q.cols(); ++i)
    if (f.packed(i, i) < 0) q.col(i) = -q.col(i);
}

}  // namespace

Matrix apply_mixing(const MixingHandle& v, const Matrix& x, RosMode mode) {
  return std::visit(overloaded{
                        [&](std::monostate) { return x; },
                        [&](const Permutation& p) { return permutation_product(p, x, mode); },
                        [&](const Matrix& dense) { return dense_product(dense, x, mode); },
                        [&](const RosOperator& ros) { return ros_apply(ros, x, mode); },
                    },
                    v);
}

Matrix materialize(const MixingHandle& v, Index n) {
  return apply_mixing(v, Matrix::Identity(n, n), RosMode::left);
}

Matrix haar_sample(Index n, Rng& rng) { return haar_columns(n, n, rng); }

Matrix haar_columns(Index rows, Index cols, Rng& rng) {
  if (rows < 1 || cols < 1 || cols > rows) throw InvalidArgument("haar_columns: need 1 <= cols <= rows");
  const Matrix b = rng.normal_matrix(rows, cols);
  const auto f = house_qr(b);
  Matrix q = form_q(f, QShape::thin);
  flip_to_positive_diagonal(q, f);
  return q;
}

Permutation presort_permutation(const Matrix& a) {
  Vector norms(a.cols());
  for (Index j = 0; j < a.cols(); ++j) norms(j) = a.col(j).norm();
  std::vector<Index> order(static_cast<std::size_t>(a.cols()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return norms(x) > norms(y); });
  return Permutation(std::move(order));
}

UrvFactorization rurv_haar(const Matrix& a, Rng& rng) {
  if (a.rows() < 1 || a.cols() < 1) throw InvalidArgument("rurv_haar: matrix has a zero dimension");
  Matrix v = haar_sample(a.cols(), rng);
  const Matrix mixed = a * v.transpose();
  UrvFactorization f;
  f.u = house_qr(mixed);
  f.r = f.u.r();
  f.v = std::move(v);
  f.kind = UrvKind::haar;
  f.rank_used = f.u.steps();
  return f;
}

UrvFactorization rurv_ros(const Matrix& a, Index num_mixes, Rng& rng, bool presort) {
  return rurv_ros_partial(a, std::min(a.rows(), a.cols()), num_mixes, rng, presort);
}

UrvFactorization rurv_ros_partial(const Matrix& a, Index k, Index num_mixes, Rng& rng, bool presort) {
  if (a.rows() < 1 || a.cols() < 1) throw InvalidArgument("rurv_ros: matrix has a zero dimension");
  if (k < 1 || k > std::min(a.rows(), a.cols()))
    throw InvalidArgument("rurv_ros_partial: target rank must lie in [1, min(m, n)]");
  RosOperator v = ros_sample(a.cols(), num_mixes, rng);
  Matrix mixed = ros_apply(v, a, RosMode::right_transpose);
  if (presort) {
    v.presort = presort_permutation(mixed);
    mixed = v.presort->permute_columns(mixed);
  }
  UrvFactorization f;
  f.u = house_qr(mixed, k);
  f.r = f.u.r();
  f.v = std::move(v);
  f.kind = UrvKind::ros;
  f.rank_used = k;
  return f;
}

VluFactorization rvlu_ros(const Matrix& a, Index num_mixes, Rng& rng) {
  if (a.rows() < 1 || a.cols() < 1) throw InvalidArgument("rvlu_ros: matrix has a zero dimension");
  RosOperator v = ros_sample(a.rows(), num_mixes, rng);
  const Matrix mixed_t = ros_apply(v, a, RosMode::left).transpose();
  VluFactorization f;
  f.u = house_qr(mixed_t);
  f.l = f.u.r().transpose();
  f.v = std::move(v);
  return f;
}

UrvFactorization urv_from_qr(const Matrix& a) {
  UrvFactorization f;
  f.u = house_qr(a);
  f.r = f.u.r();
  f.v = std::monostate{};
  f.kind = UrvKind::qr;
  f.rank_used = f.u.steps();
  return f;
}

UrvFactorization urv_from_qrcp(const Matrix& a) {
  UrvFactorization f;
  f.u = house_qrcp(a);
  f.r = f.u.r();
  f.v = *f.u.perm;
  f.kind = UrvKind::qrcp;
  f.rank_used = f.u.steps();
  return f;
}

Matrix reconstruct(const UrvFactorization& f) {
  Matrix stacked = Matrix::Zero(f.u.rows(), f.r.cols());
  stacked.topRows(f.r.rows()) = f.r;
  const Matrix ur = apply_q(f.u, stacked);
  return apply_mixing(f.v, ur, RosMode::right);
}

Matrix reconstruct(const VluFactorization& f) {
  // L U = (U^T L^T)^T and U^T = Q(:, 1:p).
  Matrix stacked = Matrix::Zero(f.u.rows(), f.l.rows());
  stacked.topRows(f.l.cols()) = f.l.transpose();
  const Matrix lu = apply_q(f.u, stacked).transpose();
  return apply_mixing(f.v, lu, RosMode::left_transpose);
}

}  // namespace mixfactor
