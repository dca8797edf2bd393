#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixfactor {

using Index = Eigen::Index;

/// Dense column-major matrix over Scalar. Every kernel in this library takes
/// and returns these directly so expressions compose with plain Eigen code.
template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = DenseMatrix<double>;
using Vector = DenseVector<double>;

template <typename Scalar>
constexpr Scalar machine_epsilon() {
  return std::numeric_limits<Scalar>::epsilon();
}

/// Argument does not satisfy a precondition (shape, range, finiteness).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Triangular system with a zero or subnormal pivot.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(Index index, const std::string& what)
      : std::runtime_error(what), index_(index) {}

  /// Zero-based position of the offending diagonal entry.
  Index index() const noexcept { return index_; }

 private:
  Index index_;
};

/// Least-squares factor whose diagonal falls below the rank threshold.
class RankDeficiencyError : public std::runtime_error {
 public:
  RankDeficiencyError(Index index, const std::string& what)
      : std::runtime_error(what), index_(index) {}

  Index index() const noexcept { return index_; }

 private:
  Index index_;
};

/// Iterative kernel hit its sweep limit.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(double residual, const std::string& what)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Column permutation. `indices[j]` is the source column that lands at
/// position j, so (A P)(:, j) = A(:, indices[j]).
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(Index n) : indices_(static_cast<std::size_t>(n)) {
    for (Index j = 0; j < n; ++j) indices_[static_cast<std::size_t>(j)] = j;
  }

  explicit Permutation(std::vector<Index> indices) : indices_(std::move(indices)) {
    std::vector<bool> seen(indices_.size(), false);
    for (Index v : indices_) {
      if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)])
        throw InvalidArgument("Permutation: indices are not a bijection");
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  Index size() const noexcept { return static_cast<Index>(indices_.size()); }
  Index operator[](Index j) const { return indices_[static_cast<std::size_t>(j)]; }
  const std::vector<Index>& indices() const noexcept { return indices_; }

  bool is_identity() const noexcept {
    for (std::size_t j = 0; j < indices_.size(); ++j)
      if (indices_[j] != static_cast<Index>(j)) return false;
    return true;
  }

  void swap_positions(Index a, Index b) {
    std::swap(indices_[static_cast<std::size_t>(a)], indices_[static_cast<std::size_t>(b)]);
  }

  /// A P: gather columns.
  template <typename Derived>
  auto permute_columns(const Eigen::MatrixBase<Derived>& a) const {
    DenseMatrix<typename Derived::Scalar> out(a.rows(), a.cols());
    for (Index j = 0; j < size(); ++j) out.col(j) = a.col((*this)[j]);
    return out;
  }

  /// A P^T: scatter columns back to their source positions.
  template <typename Derived>
  auto unpermute_columns(const Eigen::MatrixBase<Derived>& a) const {
    DenseMatrix<typename Derived::Scalar> out(a.rows(), a.cols());
    for (Index j = 0; j < size(); ++j) out.col((*this)[j]) = a.col(j);
    return out;
  }

  /// P^T X: row j of the result is row indices[j] of X.
  template <typename Derived>
  auto gather_rows(const Eigen::MatrixBase<Derived>& x) const {
    DenseMatrix<typename Derived::Scalar> out(x.rows(), x.cols());
    for (Index j = 0; j < size(); ++j) out.row(j) = x.row((*this)[j]);
    return out;
  }

  /// P X: inverse of gather_rows.
  template <typename Derived>
  auto scatter_rows(const Eigen::MatrixBase<Derived>& x) const {
    DenseMatrix<typename Derived::Scalar> out(x.rows(), x.cols());
    for (Index j = 0; j < size(); ++j) out.row((*this)[j]) = x.row(j);
    return out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Index> indices_;
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j))) return false;
  return true;
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* who) {
  if (!all_finite(a)) throw InvalidArgument(std::string(who) + ": input contains NaN or Inf");
}

}  // namespace mixfactor
