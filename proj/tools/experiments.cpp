#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "cli_internal.hpp"
#include "mixfactor/mixfactor.hpp"

namespace mixfactor::cli {
namespace {

Index or_default(Index value, Index fallback) { return value > 0 ? value : fallback; }

std::vector<Backend> parse_backends(const std::string& list, const std::string& fallback) {
  std::vector<Backend> out;
  for (const auto& name : split_list(list.empty() ? fallback : list)) {
    const auto b = parse_backend(name);
    if (!b) throw InvalidArgument("unknown backend '" + name + "' (expected qr, qrcp, rurv-haar, rurv-ros)");
    out.push_back(*b);
  }
  return out;
}

std::string family_or(const ExperimentConfig& cfg, const std::string& fallback) {
  return cfg.family.empty() ? fallback : cfg.family;
}

// sigma(A) from the generator when it is known exactly, else from Jacobi.
Vector reference_sigma(const GeneratedMatrix& g) {
  if (g.sigma.size() > 0) return g.sigma;
  JacobiOptions opts;
  opts.precondition = true;
  return singular_values(g.a, opts);
}

GeneratedMatrix generate_square(const ExperimentConfig& cfg, const std::string& family, Index m,
                                std::uint64_t seed) {
  ExperimentConfig local = cfg;
  local.family = family;
  local.m = m;
  local.n = m;
  local.seed = seed;
  return generate(local.matrix_spec());
}

// ---------------------------------------------------------------------------

void mix_norms(const ExperimentConfig& cfg, std::ostream& out) {
  const std::string family = family_or(cfg, "heavytail");
  const Index m = cfg.m;
  const Index n = cfg.n == 0 ? cfg.m : cfg.n;
  const Index reps = or_default(cfg.reps, 1);

  CsvWriter csv(out, cfg);
  csv.header({"record", "m", "n", "backend", "instance", "mean", "stdev", "min", "max", "reduced"});

  std::map<std::string, std::pair<Index, double>> reduced;  // backend -> (count reduced, sum of post means)
  for (Index r = 0; r < reps; ++r) {
    Rng rng = Rng(cfg.seed).split(static_cast<std::uint64_t>(r));
    ExperimentConfig local = cfg;
    local.family = family;
    local.n = n;
    local.seed = rng.next_u64();
    const Matrix a = generate(local.matrix_spec()).a;
    const auto pre = column_norm_stats(a);
    csv.row({"instance", csv.count(m), csv.count(n), "none", csv.count(r), csv.number(pre.mean), csv.number(pre.stdev),
             csv.number(pre.min), csv.number(pre.max), "NA"});

    for (const std::string backend : {"rurv-haar", "rurv-ros"}) {
      Matrix mixed;
      if (backend == "rurv-haar") {
        mixed = a * haar_sample(n, rng).transpose();
      } else {
        mixed = ros_apply(ros_sample(n, cfg.mixes, rng), a, RosMode::right_transpose);
      }
      const auto post = column_norm_stats(mixed);
      const bool lower = post.stdev < pre.stdev;
      auto& agg = reduced[backend];
      agg.first += lower ? 1 : 0;
      agg.second += post.mean;
      csv.row({"instance", csv.count(m), csv.count(n), backend, csv.count(r), csv.number(post.mean),
               csv.number(post.stdev), csv.number(post.min), csv.number(post.max), lower ? "1" : "0"});
    }
  }
  for (const auto& [backend, agg] : reduced) {
    csv.row({"aggregate", csv.count(m), csv.count(n), backend, "NA", csv.number(agg.second / double(reps)), "NA", "NA",
             "NA", csv.count(agg.first)});
  }
}

// ---------------------------------------------------------------------------

void rr_scaling(const ExperimentConfig& cfg, std::ostream& out) {
  const std::string family = family_or(cfg, "kahan");
  if (family != "kahan" && family != "gap") throw InvalidArgument("rr-scaling: --family must be kahan or gap");
  const bool kahan = family == "kahan";
  const auto sizes = parse_sizes(cfg.sizes.empty() ? (kahan ? "20:200" : "16:128") : cfg.sizes);
  const Index reps = or_default(cfg.reps, 5);
  const auto backends = parse_backends(cfg.backends, "qrcp,rurv-haar,rurv-ros");

  CsvWriter csv(out, cfg);
  csv.header({"record", "m", "backend", "instance", "k", "max_ratio_r11", "max_ratio_r22", "strong_norm", "bound"});

  std::uint64_t stream = 0;
  for (const Index m : sizes) {
    if (m < 2) throw InvalidArgument("rr-scaling: sizes must be at least 2");
    const Index k = kahan ? m - 1 : (cfg.k > 0 ? std::min(cfg.k, m - 1) : std::max<Index>(m / 2, 1));
    const std::string bound = kahan ? csv.number(kahan_qrcp_ratio_bound(m, cfg.c)) : "NA";

    std::vector<RankRevealReport> worst(backends.size());
    for (auto& w : worst) w.k = k;
    for (Index r = 0; r < reps; ++r, ++stream) {
      Rng rng = Rng(cfg.seed).split(stream);
      const auto g = generate_square(cfg, family, m, rng.next_u64());
      const Vector sigma = reference_sigma(g);
      for (std::size_t b = 0; b < backends.size(); ++b) {
        Rng backend_rng = rng.split(b);
        const auto f = factor_with(g.a, backends[b], cfg.mixes, backend_rng);
        const auto rep = rr_conditions(sigma, f.r, k);
        worst[b].max_ratio_r11 = std::max(worst[b].max_ratio_r11, rep.max_ratio_r11);
        worst[b].max_ratio_r22 = std::max(worst[b].max_ratio_r22, rep.max_ratio_r22);
        worst[b].strong_norm = std::max(worst[b].strong_norm, rep.strong_norm);
        csv.row({"instance", csv.count(m), std::string(to_string(backends[b])), csv.count(r), csv.count(k),
                 csv.number(rep.max_ratio_r11), csv.number(rep.max_ratio_r22), csv.number(rep.strong_norm), bound});
      }
    }
    for (std::size_t b = 0; b < backends.size(); ++b) {
      csv.row({"max", csv.count(m), std::string(to_string(backends[b])), "NA", csv.count(k),
               csv.number(worst[b].max_ratio_r11), csv.number(worst[b].max_ratio_r22),
               csv.number(worst[b].strong_norm), bound});
    }
  }
}

// ---------------------------------------------------------------------------

void rvalues(const ExperimentConfig& cfg, std::ostream& out) {
  const std::string family = family_or(cfg, "gap");
  const Index reps = or_default(cfg.reps, 1);
  const auto backends = parse_backends(cfg.backends, "qrcp,rurv-haar,rurv-ros");

  CsvWriter csv(out, cfg);
  csv.header({"record", "m", "backend", "instance", "index", "r_value", "sigma", "ratio", "lower_bound",
              "upper_bound", "violations"});
  for (Index r = 0; r < reps; ++r) {
    Rng rng = Rng(cfg.seed).split(static_cast<std::uint64_t>(r));
    const auto g = generate_square(cfg, family, cfg.m, rng.next_u64());
    const Vector sigma = reference_sigma(g);
    for (std::size_t b = 0; b < backends.size(); ++b) {
      Rng backend_rng = rng.split(b);
      const auto f = factor_with(g.a, backends[b], cfg.mixes, backend_rng);
      const auto rep = rvalue_ratios(f.r, sigma);
      const std::string name(to_string(backends[b]));
      for (Index i = 0; i < rep.ratios.size(); ++i) {
        csv.row({"ratio", csv.count(cfg.m), name, csv.count(r), csv.count(i + 1), csv.number(rep.ratios(i) * sigma(i)),
                 csv.number(sigma(i)), csv.number(rep.ratios(i)), "NA", "NA", "NA"});
      }
      csv.row({"summary", csv.count(cfg.m), name, csv.count(r), "NA", "NA", "NA", csv.number(rep.median),
               csv.number(rep.lower_bound), csv.number(rep.upper_bound), csv.count(rep.violations)});
    }
  }
}

// ---------------------------------------------------------------------------

void qlp_experiment(const ExperimentConfig& cfg, std::ostream& out) {
  const std::string family = family_or(cfg, "gap");
  const Index reps = or_default(cfg.reps, 1);
  const auto backends = parse_backends(cfg.backends, "qrcp,rurv-ros");
  const Index m = cfg.m;

  // Boundaries (1-based: between index b and b + 1) where the true spectrum jumps.
  std::vector<Index> boundaries;
  if (family == "gap") {
    boundaries.push_back(cfg.k > 0 ? cfg.k : m / 2);
  } else if (family == "devils-stairs") {
    for (Index b = cfg.stair_len; b < m; b += cfg.stair_len) boundaries.push_back(b);
  }

  CsvWriter csv(out, cfg);
  csv.header({"record", "m", "backend", "instance", "index", "l_value", "sigma", "l_ratio", "sigma_ratio"});
  for (Index r = 0; r < reps; ++r) {
    Rng rng = Rng(cfg.seed).split(static_cast<std::uint64_t>(r));
    const auto g = generate_square(cfg, family, m, rng.next_u64());
    const Vector sigma = reference_sigma(g);
    for (std::size_t b = 0; b < backends.size(); ++b) {
      Rng backend_rng = rng.split(b);
      const auto rep = qlp(g.a, backends[b], cfg.mixes, backend_rng);
      const std::string name(to_string(backends[b]));
      const Vector& l = rep.l_values;
      for (Index i = 0; i < l.size(); ++i) {
        csv.row({"lvalue", csv.count(m), name, csv.count(r), csv.count(i + 1), csv.number(l(i)), csv.number(sigma(i)),
                 "NA", "NA"});
      }
      for (const Index at : boundaries) {
        if (at >= l.size()) continue;
        csv.row({"boundary", csv.count(m), name, csv.count(r), csv.count(at), csv.number(l(at - 1)),
                 csv.number(sigma(at - 1)), csv.number(l(at - 1) / l(at)), csv.number(sigma(at - 1) / sigma(at))});
      }
    }
  }
}

// ---------------------------------------------------------------------------

void ls_bench(const ExperimentConfig& cfg, std::ostream& out) {
  const auto sizes = parse_sizes(cfg.sizes.empty() ? "100,200,400" : cfg.sizes);
  const Index reps = or_default(cfg.reps, 1);
  if (!(cfg.aspect > 0)) throw InvalidArgument("ls-bench: --aspect must be positive");

  CsvWriter csv(out, cfg);
  csv.header({"record", "m", "n", "method", "instance", "residual", "norm", "mix_seconds", "factor_seconds",
              "solve_seconds", "elapsed_seconds"});
  std::uint64_t stream = 0;
  for (const Index m : sizes) {
    const Index n = std::max<Index>(1, static_cast<Index>(std::llround(cfg.aspect * double(m))));
    std::vector<std::string> names = split_list(cfg.method);
    if (names.empty()) {
      names = m < n ? std::vector<std::string>{"qr-basic", "qrcp", "rurv-haar-basic", "rurv-ros-basic", "rvlu-minnorm"}
                    : std::vector<std::string>{"qr-overdet", "qrcp", "rurv-haar-basic", "rurv-ros-overdet"};
    }
    for (Index r = 0; r < reps; ++r, ++stream) {
      Rng rng = Rng(cfg.seed).split(stream);
      ExperimentConfig local = cfg;
      local.family = family_or(cfg, "condition");
      local.m = m;
      local.n = n;
      local.seed = rng.next_u64();
      const Matrix a = generate(local.matrix_spec()).a;
      const Vector b = rng.normal_matrix(m, 1);
      for (const auto& name : names) {
        const auto method = parse_ls_method(name);
        if (!method) throw InvalidArgument("ls-bench: unknown method '" + name + "'");
        Rng method_rng = rng.split(static_cast<std::uint64_t>(*method));
        const auto s = solve(a, b, *method, method_rng, {cfg.mixes});
        csv.row({"instance", csv.count(m), csv.count(n), name, csv.count(r), csv.number(s.residual_norm),
                 csv.number(s.solution_norm), csv.timing(s.times.mix), csv.timing(s.times.factor),
                 csv.timing(s.times.solve), csv.timing(s.times.total())});
      }
    }
  }
}

}  // namespace

void run_experiment(const ExperimentConfig& config, std::ostream& out) {
  if (config.experiment == "mix-norms") return mix_norms(config, out);
  if (config.experiment == "rr-scaling") return rr_scaling(config, out);
  if (config.experiment == "rvalues") return rvalues(config, out);
  if (config.experiment == "qlp") return qlp_experiment(config, out);
  if (config.experiment == "ls-bench") return ls_bench(config, out);
  throw InvalidArgument("unknown experiment '" + config.experiment + "'");
}

}  // namespace mixfactor::cli
