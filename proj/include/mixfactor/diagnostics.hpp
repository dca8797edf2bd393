#pragma once

#include <limits>
#include <optional>
#include <string_view>

#include "mixfactor/random.hpp"
#include "mixfactor/rurv.hpp"
#include "mixfactor/types.hpp"

namespace mixfactor {

/// Sampled rank-revealing conditions for one split k of R = [R11 R12; 0 R22]:
///   max_i sigma_i(A) / sigma_i(R11),  max_j sigma_j(R22) / sigma_{k+j}(A),
///   ||R11^{-1} R12||_2.
/// Interlacing makes both ratios >= 1 for any orthogonal U, V.
struct RankRevealReport {
  Index k = 0;
  double max_ratio_r11 = 0;
  double max_ratio_r22 = 0;
  double strong_norm = 0;
  bool r11_singular = false;  // strong_norm is +inf
};

/// `sigma_a` holds sigma(A) in non-increasing order, at least min(m, n) values.
RankRevealReport rr_conditions(const Vector& sigma_a, const Matrix& r, Index k);

/// |R(i,i)| / sigma_i with the diagonal sorted by magnitude, and the bounds
/// 1/||Y|| <= ratio <= ||Y^{-1}|| from R = D Y^T, D = diag(R). The bounds
/// are guaranteed for column-pivoted QR only; `violations` counts entries
/// outside them (with 1e-10 relative slack).
struct RvalueReport {
  Vector ratios;
  double min = 0;
  double median = 0;
  double max = 0;
  double lower_bound = 0;
  double upper_bound = 0;
  Index violations = 0;
};

RvalueReport rvalue_ratios(const Matrix& r, const Vector& sigma);

enum class Backend { qr, qrcp, rurv_haar, rurv_ros };

std::string_view to_string(Backend backend);
std::optional<Backend> parse_backend(std::string_view name);

/// Full factorization of `a` by the named backend, as a URV.
UrvFactorization factor_with(const Matrix& a, Backend backend, Index num_mixes, Rng& rng);

/// L-values: |diag| of the triangular factor from unpivoted QR of R^T, where
/// R comes from the first factorization. Sorted non-increasing.
struct QlpReport {
  Vector l_values;
  Backend first = Backend::qrcp;
};

QlpReport qlp(const Matrix& a, Backend first, Index num_mixes, Rng& rng);

/// Lower bound on sigma_{m-1}(A) / sigma_{m-1}(R11) for column-pivoted QR
/// of the m x m Kahan matrix: c^3 (1 + c)^{m-4} / (2 s).
double kahan_qrcp_ratio_bound(Index m, double c);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace mixfactor
