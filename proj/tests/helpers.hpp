#pragma once

#include <Eigen/SVD>

#include "mixfactor/mixfactor.hpp"

namespace testing {

using namespace mixfactor;

inline Matrix make(std::initializer_list<std::initializer_list<double>> rows) {
  const Index m = static_cast<Index>(rows.size());
  const Index n = static_cast<Index>(rows.begin()->size());
  Matrix a(m, n);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (double v : row) a(i, j++) = v;
    ++i;
  }
  return a;
}

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

inline Matrix gaussian(Index m, Index n, std::uint64_t seed) {
  Rng rng(seed);
  return rng.normal_matrix(m, n);
}

inline double orthogonality_error(const Matrix& q) {
  return (q.transpose() * q - Matrix::Identity(q.cols(), q.cols())).norm();
}

// Independent oracle: Eigen's divide-and-conquer SVD.
inline Vector oracle_sigma(const Matrix& a) { return Eigen::BDCSVD<Matrix>(a).singularValues(); }

inline Vector oracle_pinv_solve(const Matrix& a, const Vector& b) {
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector s = svd.singularValues();
  const double cut = s(0) * 1e-14 * double(std::max(a.rows(), a.cols()));
  Vector ub = svd.matrixU().transpose() * b;
  for (Index i = 0; i < s.size(); ++i) ub(i) = s(i) > cut ? ub(i) / s(i) : 0.0;
  return svd.matrixV() * ub;
}

}  // namespace testing
