#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixfactor/random.hpp"
#include "mixfactor/types.hpp"

namespace mixfactor {

/// Decay per index for the slowly decaying spectra (gap matrix).
inline constexpr double kSlowDecay = 0.99;

struct GeneratedMatrix {
  Matrix a;
  Vector sigma;  // exact singular values when the family prescribes them, else empty
};

/// diag(1, s, ..., s^{m-1}) * (unit upper triangular with -c above the
/// diagonal) * diag((1 - tau)^{j-1}), s = sqrt(1 - c^2).
Matrix gen_kahan(Index m, double c = 0.1, double tau = 1e-7);

/// A = U diag(sigma) V^T with Haar U, V of orders rows and cols.
Matrix gen_prescribed(Index rows, Index cols, const Vector& sigma, Rng& rng);

/// sigma_i = rho^i for i <= k, gap * rho^i beyond (1-based, rho = 0.99).
GeneratedMatrix gen_gap(Index m, Index k, double gap, Rng& rng);

/// Piecewise-constant spectrum: stair s (0-based) has value jump^s.
GeneratedMatrix gen_devils_stairs(Index m, Index stair_len, double jump, Rng& rng);

/// Gaussian m x (n - p), p randomly chosen columns appended as copies,
/// all n columns shuffled, then e * N(0,1) noise added.
Matrix gen_correlated(Index m, Index n, Index p, double e, Rng& rng);

/// Singular values geometrically spaced from 1 down to 1/kappa.
GeneratedMatrix gen_condition(Index m, Index n, double kappa, Rng& rng);

/// (randn + exp(10 rand)) scaled per column by exp(2 rand), divided by the
/// mean column norm.
Matrix gen_heavytail(Index m, Index n, Rng& rng);

enum class Family { kahan, gap, devils_stairs, correlated, condition, heavytail, prescribed_sigma };

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view name);

/// Everything needed to regenerate a test matrix bit for bit.
struct MatrixSpec {
  Family family = Family::condition;
  Index m = 100;
  Index n = 100;
  double c = 0.1;       // kahan
  double tau = 1e-7;    // kahan
  Index k = 0;          // gap position; 0 means m / 2
  double gap = 1e-10;   // gap
  Index stair_len = 16;  // devils-stairs
  double jump = 0.1;     // devils-stairs
  Index p = 10;          // correlated
  double e = 1e-4;       // correlated
  double kappa = 1e6;    // condition
  std::vector<double> sigma;  // prescribed-sigma
  std::uint64_t seed = 0;
};

GeneratedMatrix generate(const MatrixSpec& spec);

}  // namespace mixfactor
