#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "mixfactor/householder.hpp"
#include "mixfactor/types.hpp"

namespace mixfactor {

template <typename Scalar>
struct SvdResult {
  DenseVector<Scalar> sigma;  // non-increasing
  std::optional<DenseMatrix<Scalar>> u;  // m x n
  std::optional<DenseMatrix<Scalar>> v;  // n x n
};

struct JacobiOptions {
  /// Run column-pivoted QR first and iterate on R^T. Converges in fewer
  /// sweeps and keeps relative accuracy for row-scaled inputs.
  bool precondition = false;
  int max_sweeps = 30;
};

namespace detail {

/// One-sided (Hestenes) Jacobi on the columns of `work`, accumulating the
/// rotations into `v` when it is non-null.
template <typename Scalar>
void hestenes_sweeps(DenseMatrix<Scalar>& work, DenseMatrix<Scalar>* v, int max_sweeps) {
  const Index n = work.cols();
  const Scalar tol = static_cast<Scalar>(std::max<Index>(n, 1)) * machine_epsilon<Scalar>();
  Scalar worst = 0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    worst = 0;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Scalar alpha = work.col(p).squaredNorm();
        const Scalar beta = work.col(q).squaredNorm();
        const Scalar gamma = work.col(p).dot(work.col(q));
        if (gamma == Scalar(0)) continue;
        const Scalar cosine = std::abs(gamma) / (std::sqrt(alpha) * std::sqrt(beta));
        worst = std::max(worst, cosine);
        if (cosine <= tol) continue;

        const Scalar zeta = (beta - alpha) / (2 * gamma);
        const Scalar t = std::copysign(Scalar(1), zeta) / (std::abs(zeta) + std::hypot(Scalar(1), zeta));
        const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
        const Scalar s = c * t;
        for (Index i = 0; i < work.rows(); ++i) {
          const Scalar wp = work(i, p);
          const Scalar wq = work(i, q);
          work(i, p) = c * wp - s * wq;
          work(i, q) = s * wp + c * wq;
        }
        if (v) {
          for (Index i = 0; i < v->rows(); ++i) {
            const Scalar vp = (*v)(i, p);
            const Scalar vq = (*v)(i, q);
            (*v)(i, p) = c * vp - s * vq;
            (*v)(i, q) = s * vp + c * vq;
          }
        }
      }
    }
    if (worst <= tol) return;
  }
  throw ConvergenceError(static_cast<double>(worst),
                         "jacobi_svd: no convergence after " + std::to_string(max_sweeps) +
                             " sweeps (largest column cosine " + std::to_string(static_cast<double>(worst)) +
                             ")");
}

template <typename Scalar>
SvdResult<Scalar> finish_svd(DenseMatrix<Scalar>& work, DenseMatrix<Scalar>* v) {
  const Index n = work.cols();
  DenseVector<Scalar> norms(n);
  for (Index j = 0; j < n; ++j) norms(j) = work.col(j).norm();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return norms(a) > norms(b); });

  SvdResult<Scalar> out;
  out.sigma.resize(n);
  for (Index j = 0; j < n; ++j) out.sigma(j) = norms(order[static_cast<std::size_t>(j)]);
  if (v) {
    DenseMatrix<Scalar> u(work.rows(), n), vs(v->rows(), n);
    for (Index j = 0; j < n; ++j) {
      const Index src = order[static_cast<std::size_t>(j)];
      u.col(j) = norms(src) > Scalar(0) ? DenseVector<Scalar>(work.col(src) / norms(src))
                                        : DenseVector<Scalar>(work.col(src));
      vs.col(j) = v->col(src);
    }
    out.u = std::move(u);
    out.v = std::move(vs);
  }
  return out;
}

}  // namespace detail

/// One-sided Jacobi SVD of a tall (m >= n) matrix. Singular values carry
/// high relative accuracy when A = B D with B well conditioned and D
/// diagonal; for row-scaled inputs, pass A^T or set `precondition`.
template <typename Derived>
SvdResult<typename Derived::Scalar> jacobi_svd(const Eigen::MatrixBase<Derived>& a, bool want_vectors,
                                               JacobiOptions options = {}) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() < 1 || a.cols() < 1) throw InvalidArgument("jacobi_svd: matrix has a zero dimension");
  if (a.rows() < a.cols()) throw InvalidArgument("jacobi_svd: requires rows >= cols; transpose first");
  require_finite(a, "jacobi_svd");

  if (!options.precondition) {
    DenseMatrix<Scalar> work = a;
    if (!want_vectors) {
      detail::hestenes_sweeps<Scalar>(work, nullptr, options.max_sweeps);
      return detail::finish_svd<Scalar>(work, nullptr);
    }
    DenseMatrix<Scalar> v = DenseMatrix<Scalar>::Identity(a.cols(), a.cols());
    detail::hestenes_sweeps<Scalar>(work, &v, options.max_sweeps);
    return detail::finish_svd<Scalar>(work, &v);
  }

  // A P = Q R, and R^T = U_r S V_r^T gives A = (Q V_r) S (P U_r)^T.
  const auto qr = house_qrcp(a);
  DenseMatrix<Scalar> work = qr.r().transpose();
  if (!want_vectors) {
    detail::hestenes_sweeps<Scalar>(work, nullptr, options.max_sweeps);
    return detail::finish_svd<Scalar>(work, nullptr);
  }
  DenseMatrix<Scalar> vr = DenseMatrix<Scalar>::Identity(work.cols(), work.cols());
  detail::hestenes_sweeps<Scalar>(work, &vr, options.max_sweeps);
  auto inner = detail::finish_svd<Scalar>(work, &vr);

  SvdResult<Scalar> out;
  out.sigma = inner.sigma;
  DenseMatrix<Scalar> padded = DenseMatrix<Scalar>::Zero(a.rows(), a.cols());
  padded.topRows(a.cols()) = *inner.v;
  out.u = apply_q(qr, padded);
  out.v = qr.perm->scatter_rows(*inner.u);
  return out;
}

/// Singular values of any shape, transposing wide inputs.
template <typename Derived>
DenseVector<typename Derived::Scalar> singular_values(const Eigen::MatrixBase<Derived>& a,
                                                      JacobiOptions options = {}) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() >= a.cols()) return jacobi_svd(a, false, options).sigma;
  const DenseMatrix<Scalar> t = a.transpose();
  return jacobi_svd(t, false, options).sigma;
}

/// Singular values of an upper-triangular (or trapezoidal) factor. Iterates
/// on R^T so that row scaling in R becomes column scaling.
template <typename Derived>
DenseVector<typename Derived::Scalar> triangular_singular_values(const Eigen::MatrixBase<Derived>& r) {
  using Scalar = typename Derived::Scalar;
  const DenseMatrix<Scalar> t = r.transpose();
  if (t.rows() >= t.cols()) return jacobi_svd(t, false).sigma;
  return jacobi_svd(r, false).sigma;
}

}  // namespace mixfactor
