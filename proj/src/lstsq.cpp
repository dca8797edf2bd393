#include "mixfactor/lstsq.hpp"

#include <array>
#include <chrono>
#include <utility>

#include "mixfactor/triangular.hpp"

namespace mixfactor {

namespace {

constexpr std::array<std::pair<LsMethod, std::string_view>, 7> kMethodNames = {{
    {LsMethod::qr_basic, "qr-basic"},
    {LsMethod::qrcp, "qrcp"},
    {LsMethod::rurv_haar_basic, "rurv-haar-basic"},
    {LsMethod::rurv_ros_basic, "rurv-ros-basic"},
    {LsMethod::rvlu_minnorm, "rvlu-minnorm"},
    {LsMethod::qr_overdet, "qr-overdet"},
    {LsMethod::rurv_ros_overdet, "rurv-ros-overdet"},
}};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_rhs(const Matrix& a, const Vector& b, const char* who) {
  if (a.rows() < 1 || a.cols() < 1) throw InvalidArgument(std::string(who) + ": matrix has a zero dimension");
  if (b.size() != a.rows()) throw InvalidArgument(std::string(who) + ": right-hand side length mismatch");
  require_finite(a, who);
  require_finite(b, who);
}

void finish(LsSolution& s, const Matrix& a, const Vector& b) {
  s.residual_norm = (a * s.x - b).norm();
  s.solution_norm = s.x.norm();
}

// Solves with an m x n factorization whose leading block r(:, 1:p) is used.
LsSolution solve_with(const Matrix& a, const Vector& b, const UrvFactorization& f, LsMethod method,
                      PhaseTimes times) {
  const auto start = Clock::now();
  const Index p = f.r.rows();
  const Matrix r11 = f.r.leftCols(p);
  check_rank(r11);
  const Vector c = apply_qt(f.u, b).topRows(p);
  LsSolution s;
  s.method = method;
  s.y = Vector::Zero(a.cols());
  s.y.head(p) = back_substitute(r11, c);
  s.x = apply_mixing(f.v, s.y, RosMode::left_transpose);
  times.solve = seconds_since(start);
  s.times = times;
  finish(s, a, b);
  return s;
}

UrvFactorization factor_overdetermined(const Matrix& a, LsMethod method, Rng& rng, LsOptions options,
                                       PhaseTimes& times) {
  switch (method) {
    case LsMethod::qr_basic:
    case LsMethod::qr_overdet: {
      const auto start = Clock::now();
      auto f = urv_from_qr(a);
      times.factor = seconds_since(start);
      return f;
    }
    case LsMethod::qrcp: {
      const auto start = Clock::now();
      auto f = urv_from_qrcp(a);
      times.factor = seconds_since(start);
      return f;
    }
    case LsMethod::rurv_haar_basic: {
      auto start = Clock::now();
      Matrix v = haar_sample(a.cols(), rng);
      const Matrix mixed = a * v.transpose();
      times.mix = seconds_since(start);
      start = Clock::now();
      UrvFactorization f;
      f.u = house_qr(mixed);
      f.r = f.u.r();
      f.v = std::move(v);
      f.kind = UrvKind::haar;
      f.rank_used = f.u.steps();
      times.factor = seconds_since(start);
      return f;
    }
    case LsMethod::rurv_ros_basic:
    case LsMethod::rurv_ros_overdet: {
      auto start = Clock::now();
      RosOperator v = ros_sample(a.cols(), options.num_mixes, rng);
      Matrix mixed = ros_apply(v, a, RosMode::right_transpose);
      v.presort = presort_permutation(mixed);
      mixed = v.presort->permute_columns(mixed);
      times.mix = seconds_since(start);
      start = Clock::now();
      UrvFactorization f;
      f.u = house_qr(mixed);
      f.r = f.u.r();
      f.v = std::move(v);
      f.kind = UrvKind::ros;
      f.rank_used = f.u.steps();
      times.factor = seconds_since(start);
      return f;
    }
    case LsMethod::rvlu_minnorm: break;
  }
  throw InvalidArgument("solve_overdetermined: rvlu-minnorm applies to underdetermined systems only");
}

UrvFactorization factor_basic_timed(const Matrix& a, LsMethod method, Rng& rng, LsOptions options,
                                    PhaseTimes& times) {
  const Index m = a.rows();
  switch (method) {
    case LsMethod::qr_basic:
    case LsMethod::qr_overdet: {
      const auto start = Clock::now();
      UrvFactorization f;
      f.u = house_qr(a.leftCols(m));
      f.r = f.u.r();
      f.v = std::monostate{};
      f.kind = UrvKind::qr;
      f.rank_used = m;
      times.factor = seconds_since(start);
      return f;
    }
    case LsMethod::qrcp: {
      const auto start = Clock::now();
      auto f = urv_from_qrcp(a);
      times.factor = seconds_since(start);
      return f;
    }
    case LsMethod::rurv_haar_basic: {
      // Only the leading m mixed columns A V(1:m, :)^T are needed.
      auto start = Clock::now();
      const Matrix v = haar_sample(a.cols(), rng);
      const Matrix mixed = a * v.topRows(m).transpose();
      times.mix = seconds_since(start);
      start = Clock::now();
      UrvFactorization f;
      f.u = house_qr(mixed);
      f.r = f.u.r();
      f.v = v;
      f.kind = UrvKind::haar;
      f.rank_used = m;
      times.factor = seconds_since(start);
      return f;
    }
    case LsMethod::rurv_ros_basic:
    case LsMethod::rurv_ros_overdet: {
      auto start = Clock::now();
      RosOperator v = ros_sample(a.cols(), options.num_mixes, rng);
      Matrix mixed = ros_apply(v, a, RosMode::right_transpose);
      v.presort = presort_permutation(mixed);
      mixed = v.presort->permute_columns(mixed);
      times.mix = seconds_since(start);
      start = Clock::now();
      UrvFactorization f;
      f.u = house_qr(mixed.leftCols(m));
      f.r = f.u.r();
      f.v = std::move(v);
      f.kind = UrvKind::ros;
      f.rank_used = m;
      times.factor = seconds_since(start);
      return f;
    }
    case LsMethod::rvlu_minnorm: break;
  }
  throw InvalidArgument("solve_basic: rvlu-minnorm computes the minimum-norm solution; use solve_min_norm");
}

}  // namespace

std::string_view to_string(LsMethod method) {
  for (const auto& [m, name] : kMethodNames)
    if (m == method) return name;
  return "unknown";
}

std::optional<LsMethod> parse_ls_method(std::string_view name) {
  for (const auto& [m, n] : kMethodNames)
    if (n == name) return m;
  return std::nullopt;
}

void check_rank(const Matrix& triangle) {
  const Index dim = std::min(triangle.rows(), triangle.cols());
  if (dim == 0) return;
  const double scale = triangle.diagonal().cwiseAbs().maxCoeff();
  const double threshold = static_cast<double>(dim) * machine_epsilon<double>() * scale;
  for (Index i = 0; i < dim; ++i)
    if (!(std::abs(triangle(i, i)) >= threshold) || triangle(i, i) == 0.0)
      throw RankDeficiencyError(i, "numerically rank deficient: |diag(" + std::to_string(i + 1) +
                                       ")| below " + std::to_string(dim) + " * eps * max|diag|");
}

UrvFactorization factor_basic(const Matrix& a, LsMethod method, Rng& rng, LsOptions options) {
  PhaseTimes times;
  return factor_basic_timed(a, method, rng, options, times);
}

LsSolution solve_overdetermined(const Matrix& a, const Vector& b, LsMethod method, Rng& rng,
                                LsOptions options) {
  require_rhs(a, b, "solve_overdetermined");
  if (a.rows() < a.cols()) throw InvalidArgument("solve_overdetermined: requires m >= n");
  PhaseTimes times;
  const auto f = factor_overdetermined(a, method, rng, options, times);
  return solve_with(a, b, f, method, times);
}

LsSolution solve_basic(const Matrix& a, const Vector& b, LsMethod method, Rng& rng, LsOptions options) {
  require_rhs(a, b, "solve_basic");
  if (a.rows() >= a.cols()) throw InvalidArgument("solve_basic: requires m < n");
  PhaseTimes times;
  const auto f = factor_basic_timed(a, method, rng, options, times);
  return solve_with(a, b, f, method, times);
}

LsSolution solve_min_norm(const Matrix& a, const Vector& b, Rng& rng, LsOptions options) {
  require_rhs(a, b, "solve_min_norm");
  if (a.rows() > a.cols()) throw InvalidArgument("solve_min_norm: requires m <= n");
  PhaseTimes times;
  auto start = Clock::now();
  RosOperator v = ros_sample(a.rows(), options.num_mixes, rng);
  const Matrix mixed_t = ros_apply(v, a, RosMode::left).transpose();
  times.mix = seconds_since(start);

  start = Clock::now();
  const auto qr = house_qr(mixed_t);
  const Matrix l = qr.r().transpose();
  times.factor = seconds_since(start);

  start = Clock::now();
  check_rank(l);
  const Matrix vb = ros_apply(v, b, RosMode::left);
  const Vector z = forward_substitute(l, vb);
  LsSolution s;
  s.method = LsMethod::rvlu_minnorm;
  s.y = Vector::Zero(a.cols());
  s.y.head(a.rows()) = z;
  s.x = apply_q(qr, s.y);
  times.solve = seconds_since(start);
  s.times = times;
  finish(s, a, b);
  return s;
}

LsSolution solve(const Matrix& a, const Vector& b, LsMethod method, Rng& rng, LsOptions options) {
  if (method == LsMethod::rvlu_minnorm) return solve_min_norm(a, b, rng, options);
  if (a.rows() < a.cols()) return solve_basic(a, b, method, rng, options);
  return solve_overdetermined(a, b, method, rng, options);
}

}  // namespace mixfactor
