#include "mixfactor/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mixfactor/householder.hpp"
#include "mixfactor/jacobi_svd.hpp"
#include "mixfactor/triangular.hpp"

namespace mixfactor {

namespace {

constexpr double kBoundSlack = 1e-10;

constexpr std::array<std::pair<Backend, std::string_view>, 4> kBackendNames = {{
    {Backend::qr, "qr"},
    {Backend::qrcp, "qrcp"},
    {Backend::rurv_haar, "rurv-haar"},
    {Backend::rurv_ros, "rurv-ros"},
}};

bool regular_diagonal(const Matrix& t) {
  for (Index i = 0; i < t.rows(); ++i) {
    const int cls = std::fpclassify(t(i, i));
    if (cls == FP_ZERO || cls == FP_SUBNORMAL) return false;
  }
  return true;
}

double ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 1.0 : kInfinity;
  return num / den;
}

double median_of(Vector v) {
  std::sort(v.data(), v.data() + v.size());
  const Index n = v.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? v(n / 2) : 0.5 * (v(n / 2 - 1) + v(n / 2));
}

}  // namespace

RankRevealReport rr_conditions(const Vector& sigma_a, const Matrix& r, Index k) {
  const Index p = std::min(r.rows(), r.cols());
  const Index n = r.cols();
  if (k < 1 || k >= p) throw InvalidArgument("rr_conditions: split must satisfy 1 <= k < min(m, n)");
  if (sigma_a.size() < p) throw InvalidArgument("rr_conditions: need min(m, n) singular values of A");

  const Matrix r11 = r.topLeftCorner(k, k);
  const Matrix r12 = r.block(0, k, k, n - k);
  const Matrix r22 = r.block(k, k, p - k, n - k);

  RankRevealReport report;
  report.k = k;

  const Vector s11 = triangular_singular_values(r11);
  report.max_ratio_r11 = 0.0;
  for (Index i = 0; i < k; ++i) report.max_ratio_r11 = std::max(report.max_ratio_r11, ratio(sigma_a(i), s11(i)));

  const Vector s22 = triangular_singular_values(r22);
  report.max_ratio_r22 = 0.0;
  for (Index j = 0; j < p - k; ++j)
    report.max_ratio_r22 = std::max(report.max_ratio_r22, ratio(s22(j), sigma_a(k + j)));

  if (!regular_diagonal(r11)) {
    report.r11_singular = true;
    report.strong_norm = kInfinity;
    return report;
  }
  const Matrix coupling = back_substitute(r11, r12);
  if (!all_finite(coupling)) {
    report.r11_singular = true;
    report.strong_norm = kInfinity;
    return report;
  }
  report.strong_norm = singular_values(coupling)(0);
  return report;
}

RvalueReport rvalue_ratios(const Matrix& r, const Vector& sigma) {
  if (r.rows() != r.cols()) throw InvalidArgument("rvalue_ratios: R must be square");
  const Index n = r.rows();
  if (n < 1) throw InvalidArgument("rvalue_ratios: empty R");
  if (sigma.size() < n) throw InvalidArgument("rvalue_ratios: need n singular values");
  for (Index i = 0; i < n; ++i)
    if (r(i, i) == 0.0) throw InvalidArgument("rvalue_ratios: zero on the diagonal of R");

  Vector rho = r.diagonal().cwiseAbs();
  std::sort(rho.data(), rho.data() + n, std::greater<>());

  RvalueReport out;
  out.ratios.resize(n);
  for (Index i = 0; i < n; ++i) out.ratios(i) = ratio(rho(i), sigma(i));
  out.min = out.ratios.minCoeff();
  out.max = out.ratios.maxCoeff();
  out.median = median_of(out.ratios);

  // R = D Y^T  =>  Y = (D^{-1} R)^T, unit lower triangular.
  Matrix yt = r.triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) yt.row(i) /= r(i, i);
  const Matrix y = yt.transpose();
  const Vector sy = jacobi_svd(y, false).sigma;
  out.lower_bound = 1.0 / sy(0);
  out.upper_bound = ratio(1.0, sy(n - 1));
  for (Index i = 0; i < n; ++i) {
    if (out.ratios(i) < out.lower_bound * (1.0 - kBoundSlack) || out.ratios(i) > out.upper_bound * (1.0 + kBoundSlack))
      ++out.violations;
  }
  return out;
}

std::string_view to_string(Backend backend) {
  for (const auto& [b, name] : kBackendNames)
    if (b == backend) return name;
  return "unknown";
}

std::optional<Backend> parse_backend(std::string_view name) {
  for (const auto& [b, n] : kBackendNames)
    if (n == name) return b;
  return std::nullopt;
}

UrvFactorization factor_with(const Matrix& a, Backend backend, Index num_mixes, Rng& rng) {
  switch (backend) {
    case Backend::qr: return urv_from_qr(a);
    case Backend::qrcp: return urv_from_qrcp(a);
    case Backend::rurv_haar: return rurv_haar(a, rng);
    case Backend::rurv_ros: return rurv_ros(a, num_mixes, rng);
  }
  throw InvalidArgument("factor_with: unknown backend");
}

QlpReport qlp(const Matrix& a, Backend first, Index num_mixes, Rng& rng) {
  const auto f = factor_with(a, first, num_mixes, rng);
  const Matrix rt = f.r.transpose();
  const auto second = house_qr(rt);
  QlpReport out;
  out.first = first;
  out.l_values = second.r().diagonal().cwiseAbs();
  std::sort(out.l_values.data(), out.l_values.data() + out.l_values.size(), std::greater<>());
  return out;
}

double kahan_qrcp_ratio_bound(Index m, double c) {
  const double s = std::sqrt(1.0 - c * c);
  return 0.5 * c * c * c * std::pow(1.0 + c, static_cast<double>(m - 4)) / s;
}

}  // namespace mixfactor
