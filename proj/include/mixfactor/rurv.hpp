#pragma once

#include <variant>

#include "mixfactor/householder.hpp"
#include "mixfactor/random.hpp"
#include "mixfactor/ros.hpp"
#include "mixfactor/types.hpp"

namespace mixfactor {

/// The right orthogonal factor V of a URV factorization A = U R V.
///   monostate   - V = I (plain QR)
///   Permutation - V = P^T for a column permutation P (A P = Q R)
///   Matrix      - dense orthogonal V (Haar)
///   RosOperator - implicit fast mixing
using MixingHandle = std::variant<std::monostate, Permutation, Matrix, RosOperator>;

/// Applies V in any of the four placements (see RosMode).
Matrix apply_mixing(const MixingHandle& v, const Matrix& x, RosMode mode);

/// Dense V of the given dimension.
Matrix materialize(const MixingHandle& v, Index n);

enum class UrvKind { qr, qrcp, haar, ros };

/// A = U R V with U held as Householder reflectors. `r` is rank_used x n;
/// for a partial factorization the unreduced trailing block stays in u.
struct UrvFactorization {
  HouseholderQR<double> u;
  Matrix r;
  MixingHandle v;
  UrvKind kind = UrvKind::ros;
  Index rank_used = 0;
};

/// A = V^T L U, L lower trapezoidal m x min(m,n), U with orthonormal rows
/// held as the reflectors of the QR of (V A)^T.
struct VluFactorization {
  MixingHandle v;
  Matrix l;
  HouseholderQR<double> u;
};

/// Haar-distributed n x n orthogonal matrix: Q of a Gaussian matrix with
/// columns flipped so the implied R has a non-negative diagonal.
Matrix haar_sample(Index n, Rng& rng);

/// First `cols` columns of a Haar matrix of order `rows`.
Matrix haar_columns(Index rows, Index cols, Rng& rng);

UrvFactorization rurv_haar(const Matrix& a, Rng& rng);

UrvFactorization rurv_ros(const Matrix& a, Index num_mixes, Rng& rng, bool presort = true);

/// Mixing and pre-sort as in rurv_ros, then only k Householder steps.
UrvFactorization rurv_ros_partial(const Matrix& a, Index k, Index num_mixes, Rng& rng, bool presort = true);

VluFactorization rvlu_ros(const Matrix& a, Index num_mixes, Rng& rng);

/// Plain QR and QRCP viewed as URV factorizations.
UrvFactorization urv_from_qr(const Matrix& a);
UrvFactorization urv_from_qrcp(const Matrix& a);

/// Permutation ordering the columns of `a` by non-increasing 2-norm, ties
/// by lower index.
Permutation presort_permutation(const Matrix& a);

/// U(:, 1:rank_used) R V.
Matrix reconstruct(const UrvFactorization& f);
/// V^T L U.
Matrix reconstruct(const VluFactorization& f);

}  // namespace mixfactor
