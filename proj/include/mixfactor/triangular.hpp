#pragma once

#include <cmath>
#include <string>

#include "mixfactor/types.hpp"

namespace mixfactor {

namespace detail {

template <typename Derived>
void require_regular_diagonal(const Eigen::MatrixBase<Derived>& t, const char* who) {
  if (t.rows() != t.cols()) throw InvalidArgument(std::string(who) + ": matrix is not square");
  for (Index i = 0; i < t.rows(); ++i) {
    const int cls = std::fpclassify(t(i, i));
    if (cls == FP_ZERO || cls == FP_SUBNORMAL || cls == FP_NAN)
      throw SingularMatrixError(
          i, std::string(who) + ": zero or subnormal diagonal at row " + std::to_string(i + 1));
  }
}

}  // namespace detail

/// Solves R Y = B for upper-triangular R (only the upper triangle is read).
template <typename DerivedR, typename DerivedB>
DenseMatrix<typename DerivedR::Scalar> back_substitute(const Eigen::MatrixBase<DerivedR>& r,
                                                       const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedR::Scalar;
  detail::require_regular_diagonal(r, "back_substitute");
  if (b.rows() != r.rows()) throw InvalidArgument("back_substitute: right-hand side has wrong length");
  const Index n = r.rows();
  DenseMatrix<Scalar> y = b;
  for (Index c = 0; c < y.cols(); ++c) {
    auto col = y.col(c);
    for (Index i = n - 1; i >= 0; --i) {
      col(i) /= r(i, i);
      if (i > 0) col.head(i) -= col(i) * r.col(i).head(i);
    }
  }
  return y;
}

/// Solves L Y = B for lower-triangular L (only the lower triangle is read).
template <typename DerivedL, typename DerivedB>
DenseMatrix<typename DerivedL::Scalar> forward_substitute(const Eigen::MatrixBase<DerivedL>& l,
                                                          const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedL::Scalar;
  detail::require_regular_diagonal(l, "forward_substitute");
  if (b.rows() != l.rows())
    throw InvalidArgument("forward_substitute: right-hand side has wrong length");
  const Index n = l.rows();
  DenseMatrix<Scalar> y = b;
  for (Index c = 0; c < y.cols(); ++c) {
    auto col = y.col(c);
    for (Index i = 0; i < n; ++i) {
      col(i) /= l(i, i);
      if (i + 1 < n) col.tail(n - i - 1) -= col(i) * l.col(i).tail(n - i - 1);
    }
  }
  return y;
}

}  // namespace mixfactor
