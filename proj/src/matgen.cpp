#include "mixfactor/matgen.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "mixfactor/rurv.hpp"

namespace mixfactor {

Matrix gen_kahan(Index m, double c, double tau) {
  if (m < 1) throw InvalidArgument("gen_kahan: m must be positive");
  if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("gen_kahan: c must lie in (0, 1)");
  if (!(tau >= 0.0 && tau < 1.0)) throw InvalidArgument("gen_kahan: tau must lie in [0, 1)");
  const double s = std::sqrt(1.0 - c * c);
  Matrix a = Matrix::Zero(m, m);
  for (Index j = 0; j < m; ++j) {
    const double col_scale = std::pow(1.0 - tau, static_cast<double>(j));
    for (Index i = 0; i <= j; ++i) {
      const double unit = i == j ? 1.0 : -c;
      a(i, j) = std::pow(s, static_cast<double>(i)) * unit * col_scale;
    }
  }
  return a;
}

Matrix gen_prescribed(Index rows, Index cols, const Vector& sigma, Rng& rng) {
  const Index p = std::min(rows, cols);
  if (rows < 1 || cols < 1) throw InvalidArgument("gen_prescribed: empty shape");
  if (sigma.size() != p) throw InvalidArgument("gen_prescribed: need min(rows, cols) singular values");
  const Matrix u = haar_columns(rows, p, rng);
  const Matrix v = haar_columns(cols, p, rng);
  return u * sigma.asDiagonal() * v.transpose();
}

GeneratedMatrix gen_gap(Index m, Index k, double gap, Rng& rng) {
  if (m < 1 || k < 0 || k > m) throw InvalidArgument("gen_gap: need 0 <= k <= m");
  if (!(gap > 0.0)) throw InvalidArgument("gen_gap: gap must be positive");
  Vector sigma(m);
  for (Index i = 0; i < m; ++i) {
    const double decay = std::pow(kSlowDecay, static_cast<double>(i + 1));
    sigma(i) = i < k ? decay : gap * decay;
  }
  return {gen_prescribed(m, m, sigma, rng), sigma};
}

GeneratedMatrix gen_devils_stairs(Index m, Index stair_len, double jump, Rng& rng) {
  if (m < 1 || stair_len < 1) throw InvalidArgument("gen_devils_stairs: m and stair length must be positive");
  if (!(jump > 0.0)) throw InvalidArgument("gen_devils_stairs: jump must be positive");
  Vector sigma(m);
  for (Index i = 0; i < m; ++i) sigma(i) = std::pow(jump, static_cast<double>(i / stair_len));
  return {gen_prescribed(m, m, sigma, rng), sigma};
}

Matrix gen_correlated(Index m, Index n, Index p, double e, Rng& rng) {
  if (m < 1 || n < 1 || p < 0 || p >= n) throw InvalidArgument("gen_correlated: need 0 <= p < n");
  if (!(e >= 0.0)) throw InvalidArgument("gen_correlated: noise scale must be non-negative");
  const Index base_cols = n - p;
  const Matrix base = rng.normal_matrix(m, base_cols);
  const auto duplicated = rng.permutation(base_cols, p);
  Matrix augmented(m, n);
  augmented.leftCols(base_cols) = base;
  for (Index j = 0; j < p; ++j) augmented.col(base_cols + j) = base.col(duplicated[static_cast<std::size_t>(j)]);
  const auto shuffle = rng.permutation(n);
  Matrix a(m, n);
  for (Index j = 0; j < n; ++j) a.col(j) = augmented.col(shuffle[static_cast<std::size_t>(j)]);
  const Matrix noise = rng.normal_matrix(m, n);
  a += e * noise;
  return a;
}

GeneratedMatrix gen_condition(Index m, Index n, double kappa, Rng& rng) {
  if (m < 1 || n < 1) throw InvalidArgument("gen_condition: empty shape");
  if (!(kappa >= 1.0)) throw InvalidArgument("gen_condition: kappa must be at least 1");
  const Index p = std::min(m, n);
  Vector sigma(p);
  for (Index i = 0; i < p; ++i)
    sigma(i) = p == 1 ? 1.0 : std::pow(kappa, -static_cast<double>(i) / static_cast<double>(p - 1));
  return {gen_prescribed(m, n, sigma, rng), sigma};
}

Matrix gen_heavytail(Index m, Index n, Rng& rng) {
  if (m < 1 || n < 1) throw InvalidArgument("gen_heavytail: empty shape");
  const Matrix gaussian = rng.normal_matrix(m, n);
  const Matrix spread = rng.uniform_matrix(m, n);
  const Matrix column_scale = rng.uniform_matrix(1, n);
  Matrix a(m, n);
  for (Index j = 0; j < n; ++j) {
    const double scale = std::exp(2.0 * column_scale(0, j));
    for (Index i = 0; i < m; ++i) a(i, j) = (gaussian(i, j) + std::exp(10.0 * spread(i, j))) * scale;
  }
  double mean_norm = 0.0;
  for (Index j = 0; j < n; ++j) mean_norm += a.col(j).norm();
  mean_norm /= static_cast<double>(n);
  return a / mean_norm;
}

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 7> kFamilyNames = {{
    {Family::kahan, "kahan"},
    {Family::gap, "gap"},
    {Family::devils_stairs, "devils-stairs"},
    {Family::correlated, "correlated"},
    {Family::condition, "condition"},
    {Family::heavytail, "heavytail"},
    {Family::prescribed_sigma, "prescribed-sigma"},
}};

}  // namespace

std::string_view to_string(Family family) {
  for (const auto& [f, name] : kFamilyNames)
    if (f == family) return name;
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& [f, n] : kFamilyNames)
    if (n == name) return f;
  return std::nullopt;
}

GeneratedMatrix generate(const MatrixSpec& spec) {
  Rng rng(spec.seed);
  switch (spec.family) {
    case Family::kahan: return {gen_kahan(spec.m, spec.c, spec.tau), Vector()};
    case Family::gap: return gen_gap(spec.m, spec.k == 0 ? spec.m / 2 : spec.k, spec.gap, rng);
    case Family::devils_stairs: return gen_devils_stairs(spec.m, spec.stair_len, spec.jump, rng);
    case Family::correlated: return {gen_correlated(spec.m, spec.n, spec.p, spec.e, rng), Vector()};
    case Family::condition: return gen_condition(spec.m, spec.n, spec.kappa, rng);
    case Family::heavytail: return {gen_heavytail(spec.m, spec.n, rng), Vector()};
    case Family::prescribed_sigma: {
      Vector sigma = Eigen::Map<const Vector>(spec.sigma.data(), static_cast<Index>(spec.sigma.size()));
      return {gen_prescribed(spec.m, spec.n, sigma, rng), sigma};
    }
  }
  throw InvalidArgument("generate: unknown family");
}

}  // namespace mixfactor
