#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mixfactor/random.hpp"
#include "mixfactor/rurv.hpp"
#include "mixfactor/types.hpp"

namespace mixfactor {

enum class LsMethod {
  qr_basic,
  qrcp,
  rurv_haar_basic,
  rurv_ros_basic,
  rvlu_minnorm,
  qr_overdet,
  rurv_ros_overdet,
};

std::string_view to_string(LsMethod method);
std::optional<LsMethod> parse_ls_method(std::string_view name);

/// Wall-clock seconds per phase. Informational only.
struct PhaseTimes {
  double mix = 0;
  double factor = 0;
  double solve = 0;
  double total() const { return mix + factor + solve; }
};

struct LsSolution {
  Vector x;
  /// Solution in the mixed coordinates, y = V x (basic solutions carry
  /// exact zeros past the leading block).
  Vector y;
  double residual_norm = 0;  // ||A x - b||_2
  double solution_norm = 0;  // ||x||_2
  LsMethod method = LsMethod::qr_overdet;
  PhaseTimes times;
};

struct LsOptions {
  Index num_mixes = 1;
};

/// m >= n. Reduces to R y = U^T b, then x = V^T y. Every method except
/// rvlu_minnorm is accepted; for m >= n the basic and overdetermined
/// variants coincide.
LsSolution solve_overdetermined(const Matrix& a, const Vector& b, LsMethod method, Rng& rng,
                                LsOptions options = {});

/// m < n. Sets the trailing n - m mixed coordinates to zero. qr_basic factors
/// A(:, 1:m) without mixing; qrcp pivots over all of A; the RURV methods mix
/// all n columns and factor the leading m mixed columns.
LsSolution solve_basic(const Matrix& a, const Vector& b, LsMethod method, Rng& rng, LsOptions options = {});

/// m <= n, full row rank. x = U^T L^{-1} V b from rvlu_ros.
LsSolution solve_min_norm(const Matrix& a, const Vector& b, Rng& rng, LsOptions options = {});

/// Dispatches on method and shape.
LsSolution solve(const Matrix& a, const Vector& b, LsMethod method, Rng& rng, LsOptions options = {});

/// The factorization solve_basic works from: u and r cover only the leading
/// m x m block R11.
UrvFactorization factor_basic(const Matrix& a, LsMethod method, Rng& rng, LsOptions options = {});

/// Throws RankDeficiencyError when |T(i,i)| < dim * eps * max_j |T(j,j)|.
void check_rank(const Matrix& triangle);

}  // namespace mixfactor
