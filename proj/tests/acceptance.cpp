// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "mixfactor/mixfactor.hpp"

using namespace mixfactor;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vector oracle_sigma(const Matrix& a) { return Eigen::BDCSVD<Matrix>(a).singularValues(); }

double orth_error(const Matrix& q) { return (q.transpose() * q - Matrix::Identity(q.cols(), q.cols())).norm(); }

// ---------------------------------------------------------------------------
// Shared corpus for criteria 1, 2 and 9.

struct CorpusCase {
  Matrix a;
  std::uint64_t seed;
};

std::vector<CorpusCase> small_corpus() {
  std::vector<CorpusCase> out;
  Rng dims(20240601);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Index m = 1 + static_cast<Index>(dims.below(64));
    const Index n = 1 + static_cast<Index>(dims.below(64));
    Rng rng = Rng(7).split(i);
    out.push_back({rng.normal_matrix(m, n), i});
  }
  return out;
}

struct FactoredCase {
  std::vector<UrvFactorization> urv;  // qr, qrcp, haar, ros
  VluFactorization vlu;
};

FactoredCase factor_all(const CorpusCase& c) {
  FactoredCase f;
  Rng rng = Rng(c.seed).split(99);
  f.urv.push_back(urv_from_qr(c.a));
  f.urv.push_back(urv_from_qrcp(c.a));
  f.urv.push_back(rurv_haar(c.a, rng));
  f.urv.push_back(rurv_ros(c.a, 1, rng));
  f.vlu = rvlu_ros(c.a, 1, rng);
  return f;
}

Outcome criterion_1(const std::vector<CorpusCase>& corpus, const std::vector<FactoredCase>& factored,
                    double elapsed) {
  double worst = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Matrix& a = corpus[i].a;
    const double tol = 200.0 * double(std::max(a.rows(), a.cols())) * kEps * a.norm();
    for (const auto& f : factored[i].urv) worst = std::max(worst, (reconstruct(f) - a).norm() / tol);
    worst = std::max(worst, (reconstruct(factored[i].vlu) - a).norm() / tol);
  }
  const bool pass = worst <= 1.0 && elapsed < 30.0;
  return {pass, fmt("worst error / tolerance = %.3g, runtime %.2f s (limit 30 s)", worst, elapsed)};
}

Outcome criterion_2(const std::vector<CorpusCase>& corpus, const std::vector<FactoredCase>& factored) {
  double worst = 0;
  auto check = [&](const Matrix& q) {
    const double tol = 100.0 * double(q.cols()) * kEps;
    worst = std::max(worst, orth_error(q) / tol);
  };
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Index n = corpus[i].a.cols();
    for (const auto& f : factored[i].urv) {
      check(form_q(f.u, QShape::full));
      check(materialize(f.v, n));
    }
    check(form_q(factored[i].vlu.u, QShape::full));
    check(materialize(factored[i].vlu.v, corpus[i].a.rows()));
  }
  return {worst <= 1.0, fmt("worst ||Q^T Q - I||_F / (100 n eps) = %.3g", worst)};
}

// Every split k of a sample of positions, for every factorization.
void interlacing_on(const Vector& sigma, const Matrix& r, double& worst, Index& checked) {
  const Index p = std::min(r.rows(), r.cols());
  if (p < 2) return;
  std::vector<Index> splits = {1, p / 2, p - 1};
  std::sort(splits.begin(), splits.end());
  splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
  for (const Index k : splits) {
    if (k < 1 || k >= p) continue;
    const auto rep = rr_conditions(sigma, r, k);
    worst = std::min({worst, rep.max_ratio_r11, rep.max_ratio_r22});
    ++checked;
  }
}

// ---------------------------------------------------------------------------

Outcome criterion_3() {
  std::vector<Index> sizes;
  for (Index n = 1; n <= 32; ++n) sizes.push_back(n);
  for (Index n : {100, 250, 257, 1024}) sizes.push_back(n);
  double worst_fwd = 0, worst_inv = 0, worst_round = 0;
  for (const Index n : sizes) {
    Rng rng(static_cast<std::uint64_t>(n) + 5);
    const Vector x = rng.normal_matrix(n, 1);
    Vector ref2(n), ref3(n);
    for (Index k = 0; k < n; ++k) {
      long double a2 = 0, a3 = 0;
      for (Index j = 0; j < n; ++j) {
        const long double wj = j == 0 ? std::sqrt(1.0L / n) : std::sqrt(2.0L / n);
        const long double wk = k == 0 ? std::sqrt(1.0L / n) : std::sqrt(2.0L / n);
        a2 += wk * x(j) * std::cos(std::numbers::pi_v<long double> * k * (j + 0.5L) / n);
        a3 += wj * x(j) * std::cos(std::numbers::pi_v<long double> * j * (k + 0.5L) / n);
      }
      ref2(k) = static_cast<double>(a2);
      ref3(k) = static_cast<double>(a3);
    }
    const double nx = x.norm();
    worst_fwd = std::max(worst_fwd, (dct2(x) - ref2).norm() / nx);
    worst_inv = std::max(worst_inv, (dct3(x) - ref3).norm() / nx);
    worst_round = std::max(worst_round, (dct3(dct2(x)) - x).norm() / nx);
  }
  const bool pass = worst_fwd <= 1e-12 && worst_inv <= 1e-12 && worst_round <= 1e-13;
  return {pass, fmt("max rel err dct2 %.2e, dct3 %.2e (limit 1e-12); round trip %.2e (limit 1e-13)", worst_fwd,
                    worst_inv, worst_round)};
}

// Relative to sigma_1: backward-stable SVDs give |d sigma_i| <= O(eps) ||A||.
Outcome criterion_4() {
  double worst = 0;
  Rng dims(4);
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng = Rng(44).split(i);
    const Index m = 20 + static_cast<Index>(dims.below(60));
    const Index n = 20 + static_cast<Index>(dims.below(60));
    const double kappa = std::pow(10.0, 8.0 * rng.uniform());
    const auto g = gen_condition(m, n, kappa, rng);
    const Vector before = oracle_sigma(g.a);
    const Matrix haar = g.a * haar_sample(n, rng).transpose();
    const Matrix ros = ros_apply(ros_sample(n, 1 + Index(i % 3), rng), g.a, RosMode::right_transpose);
    for (const Matrix* mixed : {&haar, &ros}) {
      const Vector after = oracle_sigma(*mixed);
      worst = std::max(worst, (after - before).cwiseAbs().maxCoeff() / before(0));
    }
  }
  return {worst <= 1e-11, fmt("max_i |sigma_i(AV^T) - sigma_i(A)| / sigma_1(A) = %.2e (limit 1e-11)", worst)};
}

Outcome criterion_5() {
  Index haar_reduced = 0, ros_reduced = 0;
  double worst_mean_dev = 0, haar_mean = 0, ros_mean = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const Matrix a = gen_heavytail(250, 250, rng);
    const auto pre = column_norm_stats(a);
    const auto haar = column_norm_stats(a * haar_sample(250, rng).transpose());
    const auto ros = column_norm_stats(ros_apply(ros_sample(250, 1, rng), a, RosMode::right_transpose));
    haar_reduced += haar.stdev < pre.stdev ? 1 : 0;
    ros_reduced += ros.stdev < pre.stdev ? 1 : 0;
    haar_mean += haar.mean / 100.0;
    ros_mean += ros.mean / 100.0;
    worst_mean_dev = std::max({worst_mean_dev, std::abs(haar.mean - 1.0), std::abs(ros.mean - 1.0)});
  }
  const bool stdev_ok = haar_reduced >= 95 && ros_reduced >= 95;
  const bool mean_ok = worst_mean_dev <= 0.01;
  return {stdev_ok && mean_ok,
          fmt("stdev reduced: haar %ld/100, ros %ld/100 (need 95) [%s]; post-mix mean column norm: haar avg %.4f, ros "
              "avg %.4f, worst |mean - 1| = %.4f (limit 0.01) [%s]",
              long(haar_reduced), long(ros_reduced), stdev_ok ? "ok" : "FAIL", haar_mean, ros_mean, worst_mean_dev,
              mean_ok ? "ok" : "FAIL")};
}

// ---------------------------------------------------------------------------

struct LsCorpus {
  std::vector<std::vector<double>> residuals;  // [seed][method]
  double elapsed = 0;
};

LsCorpus run_basic(Index p, const std::vector<LsMethod>& methods) {
  LsCorpus out;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(1000 + seed);
    const Matrix a = gen_correlated(1000, 1500, p, 1e-4, rng);
    const Vector b = rng.normal_matrix(1000, 1);
    std::vector<double> row;
    for (const auto method : methods) {
      Rng mrng = rng.split(static_cast<std::uint64_t>(method));
      row.push_back(solve(a, b, method, mrng).residual_norm);
    }
    out.residuals.push_back(row);
  }
  out.elapsed = seconds_since(t0);
  return out;
}

Outcome criterion_6() {
  const auto run = run_basic(10, {LsMethod::qr_basic, LsMethod::rurv_ros_basic});
  Index ratio_ok = 0;
  double worst_ros = 0, min_ratio = kInfinity;
  for (const auto& r : run.residuals) {
    const double ratio = r[0] / r[1];
    min_ratio = std::min(min_ratio, ratio);
    ratio_ok += ratio >= 1e2 ? 1 : 0;
    worst_ros = std::max(worst_ros, r[1]);
  }
  const bool pass = ratio_ok >= 18 && worst_ros <= 1e-9 && run.elapsed < 120.0;
  return {pass, fmt("ratio >= 1e2 in %ld/20 seeds (need 18, min ratio %.3g); max rurv-ros-basic residual %.2e "
                    "(limit 1e-9); runtime %.1f s (limit 120 s)",
                    long(ratio_ok), min_ratio, worst_ros, run.elapsed)};
}

Outcome criterion_7() {
  const std::vector<LsMethod> methods = {LsMethod::qr_basic, LsMethod::qrcp, LsMethod::rurv_haar_basic,
                                         LsMethod::rurv_ros_basic, LsMethod::rvlu_minnorm};
  const auto run = run_basic(0, methods);
  std::vector<double> worst(methods.size(), 0.0);
  for (const auto& r : run.residuals)
    for (std::size_t j = 0; j < methods.size(); ++j) worst[j] = std::max(worst[j], r[j]);
  std::string detail = "max residual per method:";
  bool pass = true;
  for (std::size_t j = 0; j < methods.size(); ++j) {
    detail += fmt(" %s %.2e", std::string(to_string(methods[j])).c_str(), worst[j]);
    pass = pass && worst[j] <= 1e-10;
  }
  return {pass, detail + " (limit 1e-10)"};
}

// ---------------------------------------------------------------------------

struct KahanRun {
  bool qrcp_ok = true;
  double min_qrcp_margin = kInfinity;  // ratio / bound
  Index worst_random_fraction_hits = 10;
  double max_random_ratio = 0;
  double interlace_min = kInfinity;
  Index interlace_checked = 0;
};

KahanRun kahan_sweep() {
  KahanRun out;
  for (Index m = 20; m <= 200; m += 20) {
    const Matrix a = gen_kahan(m, 0.1, 1e-7);
    JacobiOptions opts;
    opts.precondition = true;
    const Vector sigma = jacobi_svd(a, false, opts).sigma;
    const Index k = m - 1;

    const auto q = rr_conditions(sigma, urv_from_qrcp(a).r, k);
    const double bound = kahan_qrcp_ratio_bound(m, 0.1);
    out.min_qrcp_margin = std::min(out.min_qrcp_margin, q.max_ratio_r11 / bound);
    out.qrcp_ok = out.qrcp_ok && q.max_ratio_r11 >= bound;
    out.interlace_min = std::min({out.interlace_min, q.max_ratio_r11, q.max_ratio_r22});
    ++out.interlace_checked;

    for (const Backend backend : {Backend::rurv_haar, Backend::rurv_ros}) {
      Index hits = 0;
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng = Rng(static_cast<std::uint64_t>(m)).split(seed);
        const auto rep = rr_conditions(sigma, factor_with(a, backend, 1, rng).r, k);
        const double ratio = std::max(rep.max_ratio_r11, rep.max_ratio_r22);
        out.max_random_ratio = std::max(out.max_random_ratio, ratio);
        hits += ratio <= 1e4 ? 1 : 0;
        out.interlace_min = std::min({out.interlace_min, rep.max_ratio_r11, rep.max_ratio_r22});
        ++out.interlace_checked;
      }
      out.worst_random_fraction_hits = std::min(out.worst_random_fraction_hits, hits);
    }
  }
  return out;
}

Outcome criterion_8(const KahanRun& k) {
  const bool pass = k.qrcp_ok && k.worst_random_fraction_hits >= 9;
  return {pass, fmt("QRCP ratio/bound min %.3g (need >= 1); randomized ratios <= 1e4 in at least %ld/10 seeds per "
                    "size and backend (need 9), largest %.3g",
                    k.min_qrcp_margin, long(k.worst_random_fraction_hits), k.max_random_ratio)};
}

Outcome criterion_9(const std::vector<CorpusCase>& corpus, const std::vector<FactoredCase>& factored,
                    const KahanRun& kahan) {
  double worst = kahan.interlace_min;
  Index checked = kahan.interlace_checked;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Vector sigma = oracle_sigma(corpus[i].a);
    for (const auto& f : factored[i].urv) interlacing_on(sigma, f.r, worst, checked);
    interlacing_on(sigma, Matrix(factored[i].vlu.l.transpose()), worst, checked);
  }
  return {worst >= 1 - 1e-10, fmt("min interlacing ratio %.15f over %ld splits (need >= 1 - 1e-10)", worst,
                                  long(checked))};
}

Outcome criterion_10() {
  Index violations = 0, cases = 0;
  double worst_low = kInfinity, worst_high = kInfinity;  // margins, >= 0 is inside
  auto run = [&](const Matrix& a, const Vector& sigma) {
    const auto rep = rvalue_ratios(urv_from_qrcp(a).r, sigma);
    violations += rep.violations;
    worst_low = std::min(worst_low, rep.min / rep.lower_bound - 1.0);
    worst_high = std::min(worst_high, 1.0 - rep.max / rep.upper_bound);
    ++cases;
  };
  JacobiOptions opts;
  opts.precondition = true;
  for (const Index m : {16, 32, 64, 128}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      Rng rng = Rng(10).split(static_cast<std::uint64_t>(m) * 10 + seed);
      const auto gap = gen_gap(m, m / 2, 1e-10, rng);
      run(gap.a, gap.sigma);
      const auto stairs = gen_devils_stairs(m, std::max<Index>(m / 8, 1), 0.1, rng);
      run(stairs.a, stairs.sigma);
      const auto cond = gen_condition(m, m, 1e6, rng);
      run(cond.a, cond.sigma);
    }
    const Matrix kahan = gen_kahan(m, 0.1, 1e-7);
    run(kahan, jacobi_svd(kahan, false, opts).sigma);
  }
  return {violations == 0, fmt("%ld violations in %ld QRCP factorizations (1e-10 slack); tightest margins: lower "
                               "%.3g, upper %.3g",
                               long(violations), long(cases), worst_low, worst_high)};
}

Outcome criterion_11() {
  Index hits = 0;
  double min_ratio = kInfinity;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const auto g = gen_gap(128, 64, 1e-10, rng);
    const auto rep = qlp(g.a, Backend::rurv_ros, 1, rng);
    const double ratio = rep.l_values(63) / rep.l_values(64);
    min_ratio = std::min(min_ratio, ratio);
    hits += ratio >= 1e6 ? 1 : 0;
  }
  return {hits >= 95, fmt("L64/L65 >= 1e6 in %ld/100 seeds (need 95), min ratio %.3g", long(hits), min_ratio)};
}

Outcome criterion_12() {
  double worst = 0;
  Rng dims(12);
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng = Rng(120).split(i);
    const Index m = 5 + static_cast<Index>(dims.below(80));
    const Index n = m + 1 + static_cast<Index>(dims.below(80));
    const double kappa = std::pow(10.0, 6.0 * rng.uniform());
    const Matrix a = gen_condition(m, n, kappa, rng).a;
    const Vector b = rng.normal_matrix(m, 1);
    Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector ref = svd.matrixV() * (svd.matrixU().transpose() * b).cwiseQuotient(svd.singularValues());
    const auto s = solve_min_norm(a, b, rng);
    worst = std::max(worst, (s.x - ref).norm() / ref.norm());
  }
  return {worst <= 1e-8, fmt("max ||x - A^+ b|| / ||A^+ b|| = %.2e (limit 1e-8)", worst)};
}

Outcome criterion_13() {
  const std::vector<LsMethod> methods = {LsMethod::qr_overdet, LsMethod::qrcp, LsMethod::rurv_haar_basic,
                                         LsMethod::rurv_ros_basic, LsMethod::rurv_ros_overdet};
  double worst = 0;
  Rng dims(13);
  for (std::uint64_t i = 0; i < 30; ++i) {
    Rng rng = Rng(130).split(i);
    const Index n = 5 + static_cast<Index>(dims.below(100));
    const Index m = n + static_cast<Index>(dims.below(200));
    const double kappa = std::pow(10.0, 6.0 * rng.uniform());
    const Matrix a = gen_condition(m, n, kappa, rng).a;
    const Vector b = rng.normal_matrix(m, 1);
    const double na = oracle_sigma(a)(0);
    for (const auto method : methods) {
      Rng mrng = rng.split(static_cast<std::uint64_t>(method));
      const auto s = solve(a, b, method, mrng);
      const double lhs = (a.transpose() * (a * s.x - b)).norm();
      worst = std::max(worst, lhs / (1e-10 * na * (na * s.x.norm() + b.norm())));
    }
  }
  return {worst <= 1.0, fmt("max ||A^T(Ax-b)|| / (1e-10 ||A|| (||A|| ||x|| + ||b||)) = %.3g (need <= 1)", worst)};
}

// V assembled from its definition with an explicit cosine matrix.
Matrix dense_ros(const RosOperator& v) {
  const Index n = v.n;
  Matrix f(n, n);
  for (Index k = 0; k < n; ++k)
    for (Index j = 0; j < n; ++j)
      f(k, j) = (k == 0 ? std::sqrt(1.0 / double(n)) : std::sqrt(2.0 / double(n))) *
                std::cos(std::numbers::pi * double(k) * (double(j) + 0.5) / double(n));
  Matrix out = Matrix::Identity(n, n);
  for (const auto& d : v.signs) out = out * f * d.asDiagonal();
  if (v.presort) {
    Matrix p = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) p((*v.presort)[j], j) = 1.0;
    out = p.transpose() * out;
  }
  return out;
}

Outcome criterion_14() {
  double worst = 0;
  Index cases = 0;
  for (Index n = 1; n <= 8; ++n) {
    for (Index mixes = 1; mixes <= 3; ++mixes) {
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Rng rng = Rng(static_cast<std::uint64_t>(n * 100 + mixes)).split(seed);
        auto v = ros_sample(n, mixes, rng);
        if (seed % 2) v.presort = Permutation(rng.permutation(n));
        const Matrix dense = dense_ros(v);
        const Matrix x = rng.normal_matrix(n, 5);
        const Matrix y = rng.normal_matrix(5, n);
        for (const bool trick : {true, false}) {
          RosApplyOptions opts;
          opts.transpose_trick = trick;
          worst = std::max(worst, (ros_apply(v, y, RosMode::right_transpose, opts) - y * dense.transpose())
                                      .cwiseAbs()
                                      .maxCoeff());
          worst = std::max(worst, (ros_apply(v, y, RosMode::right, opts) - y * dense).cwiseAbs().maxCoeff());
        }
        worst = std::max(worst, (ros_apply(v, x, RosMode::left) - dense * x).cwiseAbs().maxCoeff());
        worst = std::max(worst, (ros_apply(v, x, RosMode::left_transpose) - dense.transpose() * x).cwiseAbs().maxCoeff());
        worst = std::max(worst, (materialize(v) - dense).cwiseAbs().maxCoeff());
        ++cases;
      }
    }
  }
  return {worst <= 1e-13, fmt("max entrywise difference %.2e over %ld operators (limit 1e-13)", worst, long(cases))};
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::vector<const char*> argv = {"mixfactor"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

Outcome criterion_15() {
  const std::string a_path = (std::filesystem::temp_directory_path() / "mixfactor_acceptance_a.mtx").string();
  const std::vector<std::vector<std::string>> commands = {
      {"--seed", "3", "--out", a_path, "gen", "--family", "correlated", "--m", "60", "--n", "90", "--p", "5"},
      {"--no-timestamp", "--seed", "3", "solve", "--a", a_path},
      {"--no-timestamp", "--seed", "3", "factor", "--a", a_path, "--method", "rurv-ros"},
      {"--no-timestamp", "--seed", "1", "exp", "mix-norms", "--m", "250", "--n", "250", "--reps", "3"},
      {"--no-timestamp", "--seed", "2", "exp", "rr-scaling", "--family", "kahan", "--sizes", "20:60:20"},
      {"--no-timestamp", "--seed", "2", "exp", "rr-scaling", "--family", "gap", "--sizes", "16,32", "--reps", "2"},
      {"--no-timestamp", "--seed", "4", "exp", "rvalues", "--family", "condition", "--m", "40"},
      {"--no-timestamp", "--seed", "5", "exp", "qlp", "--family", "devils-stairs", "--m", "64", "--stair-len", "8"},
      {"--no-timestamp", "--seed", "6", "--mixes", "2", "exp", "ls-bench", "--sizes", "40,80", "--aspect", "1.5"},
  };
  Index identical = 0, total = 0;
  std::string first_diff;
  for (const auto& c : commands) {
    int c1 = 0, c2 = 0;
    const bool to_file = std::find(c.begin(), c.end(), "--out") != c.end();
    auto capture = [&](int& code) {
      std::string text = run_cli(c, code);
      if (!to_file) return text;
      std::ifstream f(a_path);
      std::stringstream ss;
      ss << f.rdbuf();
      return ss.str();
    };
    const std::string o1 = capture(c1);
    const std::string o2 = capture(c2);
    const bool same = c1 == 0 && c2 == 0 && !o1.empty() && o1 == o2;
    identical += same ? 1 : 0;
    if (!same && first_diff.empty()) first_diff = c[c.size() > 4 ? 4 : 0];
    ++total;
  }
  std::filesystem::remove(a_path);
  return {identical == total, fmt("%ld/%ld commands byte-identical on rerun%s", long(identical), long(total),
                                  first_diff.empty() ? "" : (" (first mismatch: " + first_diff + ")").c_str())};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %2d %-28s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  };

  const auto t0 = std::chrono::steady_clock::now();
  const auto corpus = small_corpus();
  std::vector<FactoredCase> factored;
  for (const auto& c : corpus) factored.push_back(factor_all(c));
  const double corpus_time = seconds_since(t0);

  report(1, "factorization correctness", [&] { return criterion_1(corpus, factored, corpus_time); });
  report(2, "orthogonality", [&] { return criterion_2(corpus, factored); });
  report(3, "transform exactness", criterion_3);
  report(4, "mixing invariance", criterion_4);
  report(5, "column norm spread", criterion_5);
  report(6, "correlated basic solutions", criterion_6);
  report(7, "uncorrelated basic solutions", criterion_7);
  KahanRun kahan;
  report(8, "kahan qrcp failure", [&] {
    kahan = kahan_sweep();
    return criterion_8(kahan);
  });
  report(9, "interlacing", [&] { return criterion_9(corpus, factored, kahan); });
  report(10, "r-value bounds", criterion_10);
  report(11, "gap detection", criterion_11);
  report(12, "minimum-norm oracle", criterion_12);
  report(13, "least-squares optimality", criterion_13);
  report(14, "implicit vs dense mixing", criterion_14);
  report(15, "determinism", criterion_15);

  std::printf("%d of 15 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
