#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "mixfactor/types.hpp"

namespace mixfactor {

enum class QShape { full, thin };

/// Householder QR in LAPACK's packed layout: R on and above the diagonal,
/// reflector tails below it (leading 1 implicit), one tau per reflector.
/// `perm` is set only for the column-pivoted variant, where A P = Q R.
template <typename Scalar>
struct HouseholderQR {
  DenseMatrix<Scalar> packed;
  DenseVector<Scalar> taus;
  std::optional<Permutation> perm;

  Index rows() const { return packed.rows(); }
  Index cols() const { return packed.cols(); }
  /// Number of reflectors; min(m, n) unless the factorization was truncated.
  Index steps() const { return taus.size(); }

  /// steps x n upper trapezoid. Entries below the diagonal are exact zeros.
  DenseMatrix<Scalar> r() const {
    const Index k = steps();
    DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(k, cols());
    for (Index j = 0; j < cols(); ++j) {
      const Index top = std::min(j + 1, k);
      out.col(j).head(top) = packed.col(j).head(top);
    }
    return out;
  }

  /// Block of the reduced matrix not yet touched by a reflector (empty when
  /// the factorization ran to completion).
  DenseMatrix<Scalar> trailing() const {
    const Index k = steps();
    return packed.bottomRightCorner(rows() - k, cols() - k);
  }

  /// Reflector i as an explicit vector of length rows() - i with leading 1.
  DenseVector<Scalar> reflector(Index i) const {
    DenseVector<Scalar> v(rows() - i);
    v(0) = Scalar(1);
    v.tail(rows() - i - 1) = packed.col(i).tail(rows() - i - 1);
    return v;
  }
};

namespace detail {

/// Generates the reflector for packed(k:, k) in place; returns tau.
template <typename Scalar>
Scalar make_reflector(DenseMatrix<Scalar>& packed, Index k) {
  const Index len = packed.rows() - k;
  auto x = packed.col(k).segment(k, len);
  if (len <= 1) return Scalar(0);
  const Scalar alpha = x(0);
  const Scalar tail_norm = x.tail(len - 1).stableNorm();
  if (tail_norm == Scalar(0)) return Scalar(0);
  const Scalar beta = -std::copysign(std::hypot(alpha, tail_norm), alpha);
  const Scalar tau = (beta - alpha) / beta;
  x.tail(len - 1) /= (alpha - beta);
  x(0) = beta;
  return tau;
}

/// Applies I - tau v v^T, with v the reflector stored in packed(:, k),
/// to columns [first, last) of packed from row k down.
template <typename Scalar>
void reflect_trailing(DenseMatrix<Scalar>& packed, Index k, Scalar tau, Index first,
                      DenseVector<Scalar>& v, DenseVector<Scalar>& w) {
  const Index len = packed.rows() - k;
  const Index width = packed.cols() - first;
  if (tau == Scalar(0) || width <= 0) return;
  v.resize(len);
  v(0) = Scalar(1);
  v.tail(len - 1) = packed.col(k).tail(len - 1);
  auto block = packed.block(k, first, len, width);
  w.resize(width);
  w.noalias() = block.transpose() * v;
  block.noalias() -= (tau * v) * w.transpose();
}

template <typename Derived>
void require_nonempty(const Eigen::MatrixBase<Derived>& a, const char* who) {
  if (a.rows() < 1 || a.cols() < 1)
    throw InvalidArgument(std::string(who) + ": matrix has a zero dimension");
}

}  // namespace detail

/// Unpivoted Householder QR. `max_steps` < 0 means min(m, n); a smaller value
/// performs that many reflections and leaves the trailing block unreduced.
template <typename Derived>
HouseholderQR<typename Derived::Scalar> house_qr(const Eigen::MatrixBase<Derived>& a,
                                                  Index max_steps = -1) {
  using Scalar = typename Derived::Scalar;
  detail::require_nonempty(a, "house_qr");
  require_finite(a, "house_qr");
  const Index full = std::min(a.rows(), a.cols());
  if (max_steps > full) throw InvalidArgument("house_qr: more steps than min(m, n)");
  const Index steps = max_steps < 0 ? full : max_steps;

  HouseholderQR<Scalar> f;
  f.packed = a;
  f.taus.resize(steps);
  DenseVector<Scalar> v, w;
  for (Index k = 0; k < steps; ++k) {
    f.taus(k) = detail::make_reflector(f.packed, k);
    detail::reflect_trailing(f.packed, k, f.taus(k), k + 1, v, w);
  }
  return f;
}

/// Householder QR with column pivoting on the largest remaining column norm.
/// Squared norms are downdated after each step and recomputed from scratch
/// once they drop below sqrt(eps) of the value at their last recomputation.
/// Ties go to the lowest index.
template <typename Derived>
HouseholderQR<typename Derived::Scalar> house_qrcp(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  detail::require_nonempty(a, "house_qrcp");
  require_finite(a, "house_qrcp");
  const Index m = a.rows();
  const Index n = a.cols();
  const Index steps = std::min(m, n);
  const Scalar recompute_ratio = std::sqrt(machine_epsilon<Scalar>());

  HouseholderQR<Scalar> f;
  f.packed = a;
  f.taus.resize(steps);
  Permutation perm(n);

  DenseVector<Scalar> norms2(n), reference2(n);
  for (Index j = 0; j < n; ++j) norms2(j) = f.packed.col(j).squaredNorm();
  reference2 = norms2;

  DenseVector<Scalar> v, w;
  for (Index k = 0; k < steps; ++k) {
    Index pivot = k;
    for (Index j = k + 1; j < n; ++j)
      if (norms2(j) > norms2(pivot)) pivot = j;
    if (pivot != k) {
      f.packed.col(k).swap(f.packed.col(pivot));
      std::swap(norms2(k), norms2(pivot));
      std::swap(reference2(k), reference2(pivot));
      perm.swap_positions(k, pivot);
    }

    f.taus(k) = detail::make_reflector(f.packed, k);
    detail::reflect_trailing(f.packed, k, f.taus(k), k + 1, v, w);

    for (Index j = k + 1; j < n; ++j) {
      if (norms2(j) == Scalar(0)) continue;
      const Scalar rkj = f.packed(k, j);
      const Scalar remaining = std::max(Scalar(0), Scalar(1) - rkj * rkj / norms2(j));
      if (remaining * norms2(j) <= recompute_ratio * reference2(j)) {
        norms2(j) = k + 1 < m ? f.packed.col(j).tail(m - k - 1).squaredNorm() : Scalar(0);
        reference2(j) = norms2(j);
      } else {
        norms2(j) *= remaining;
      }
    }
  }
  f.perm = std::move(perm);
  return f;
}

/// Q^T B by sequential reflector application; Q is never formed.
template <typename Scalar, typename Derived>
DenseMatrix<Scalar> apply_qt(const HouseholderQR<Scalar>& f, const Eigen::MatrixBase<Derived>& b) {
  if (b.rows() != f.rows()) throw InvalidArgument("apply_qt: row count of B does not match Q");
  DenseMatrix<Scalar> out = b;
  DenseVector<Scalar> w;
  for (Index i = 0; i < f.steps(); ++i) {
    if (f.taus(i) == Scalar(0)) continue;
    const DenseVector<Scalar> v = f.reflector(i);
    auto block = out.bottomRows(f.rows() - i);
    w.noalias() = block.transpose() * v;
    block.noalias() -= (f.taus(i) * v) * w.transpose();
  }
  return out;
}

/// Q B, reflectors applied in reverse order.
template <typename Scalar, typename Derived>
DenseMatrix<Scalar> apply_q(const HouseholderQR<Scalar>& f, const Eigen::MatrixBase<Derived>& b) {
  if (b.rows() != f.rows()) throw InvalidArgument("apply_q: row count of B does not match Q");
  DenseMatrix<Scalar> out = b;
  DenseVector<Scalar> w;
  for (Index i = f.steps() - 1; i >= 0; --i) {
    if (f.taus(i) == Scalar(0)) continue;
    const DenseVector<Scalar> v = f.reflector(i);
    auto block = out.bottomRows(f.rows() - i);
    w.noalias() = block.transpose() * v;
    block.noalias() -= (f.taus(i) * v) * w.transpose();
  }
  return out;
}

/// Explicit Q: m x m (full) or m x steps (thin).
template <typename Scalar>
DenseMatrix<Scalar> form_q(const HouseholderQR<Scalar>& f, QShape shape = QShape::thin) {
  const Index width = shape == QShape::full ? f.rows() : f.steps();
  return apply_q(f, DenseMatrix<Scalar>::Identity(f.rows(), width));
}

}  // namespace mixfactor
