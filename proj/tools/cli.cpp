#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli_internal.hpp"
#include "mixfactor/mixfactor.hpp"

namespace mixfactor::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const ExperimentConfig& config)
    : out_(out), timings_(!config.no_timestamp) {
  out_ << "# mixfactor " << config.subcommand;
  if (!config.experiment.empty()) out_ << ' ' << config.experiment;
  out_ << '\n';
  for (const auto& line : config.describe()) out_ << "# " << line << '\n';
  if (timings_) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out_ << "# timestamp=" << buf << '\n';
  }
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  width_ = columns.size();
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (width_ != 0 && cells.size() != width_) throw std::logic_error("CsvWriter: row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

std::string CsvWriter::timing(double seconds) const { return timings_ ? format_number(seconds) : "NA"; }

std::vector<std::string> split_list(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<Index> parse_sizes(const std::string& spec) {
  std::vector<Index> sizes;
  try {
    if (spec.find(':') != std::string::npos) {
      std::vector<Index> parts;
      std::stringstream ss(spec);
      for (std::string item; std::getline(ss, item, ':');) parts.push_back(std::stoll(item));
      if (parts.size() < 2 || parts.size() > 3) throw InvalidArgument("");
      const Index step = parts.size() == 3 ? parts[2] : parts[0];
      if (step < 1) throw InvalidArgument("");
      for (Index s = parts[0]; s <= parts[1]; s += step) sizes.push_back(s);
    } else {
      for (const auto& item : split_list(spec)) sizes.push_back(std::stoll(item));
    }
  } catch (const std::logic_error&) {
    throw InvalidArgument("--sizes: expected 'a,b,c' or 'start:stop[:step]', got '" + spec + "'");
  }
  for (Index s : sizes)
    if (s < 1) throw InvalidArgument("--sizes: sizes must be positive");
  if (sizes.empty()) throw InvalidArgument("--sizes: no sizes given");
  return sizes;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"mix-norms", "rr-scaling", "rvalues", "qlp", "ls-bench"};
  return names;
}

std::vector<std::string> ExperimentConfig::to_command_line() const {
  std::vector<std::string> args = {subcommand};
  if (!experiment.empty()) args.push_back(experiment);
  auto add = [&](const std::string& flag, const std::string& value) {
    args.push_back(flag);
    args.push_back(value);
  };
  add("--seed", std::to_string(seed));
  add("--mixes", std::to_string(mixes));
  if (!out.empty()) add("--out", out);
  if (!format.empty()) add("--format", format);
  if (no_timestamp) args.push_back("--no-timestamp");
  if (!a_path.empty()) add("--a", a_path);
  if (!b_path.empty()) add("--b", b_path);
  if (!method.empty()) add("--method", method);
  if (rank != 0) add("--rank", std::to_string(rank));
  if (!sizes.empty()) add("--sizes", sizes);
  if (reps != 0) add("--reps", std::to_string(reps));
  if (!backends.empty()) add("--backends", backends);
  if (subcommand != "gen" && subcommand != "exp") return args;
  if (subcommand == "exp") add("--aspect", format_number(aspect));
  if (!family.empty()) add("--family", family);
  add("--m", std::to_string(m));
  add("--n", std::to_string(n));
  add("--c", format_number(c));
  add("--tau", format_number(tau));
  add("--k", std::to_string(k));
  add("--gap", format_number(gap));
  add("--stair-len", std::to_string(stair_len));
  add("--jump", format_number(jump));
  add("--p", std::to_string(p));
  add("--e", format_number(e));
  add("--kappa", format_number(kappa));
  if (!sigma.empty()) {
    std::string list;
    for (std::size_t i = 0; i < sigma.size(); ++i) list += (i ? "," : "") + format_number(sigma[i]);
    add("--sigma", list);
  }
  return args;
}

std::vector<std::string> ExperimentConfig::describe() const {
  std::vector<std::string> lines;
  const auto args = to_command_line();
  std::string command = "command=mixfactor";
  for (const auto& a : args) command += " " + a;
  lines.push_back(command);
  for (std::size_t i = 1; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a.rfind("--", 0) != 0) continue;
    const bool has_value = i + 1 < args.size() && args[i + 1].rfind("--", 0) != 0;
    lines.push_back(a.substr(2) + "=" + (has_value ? args[i + 1] : "true"));
  }
  return lines;
}

MatrixSpec ExperimentConfig::matrix_spec() const {
  const std::string name = family.empty() ? "condition" : family;
  const auto fam = parse_family(name);
  if (!fam) throw InvalidArgument("unknown matrix family '" + name + "'");
  MatrixSpec spec;
  spec.family = *fam;
  spec.m = m;
  spec.n = n == 0 ? m : n;
  spec.c = c;
  spec.tau = tau;
  spec.k = k;
  spec.gap = gap;
  spec.stair_len = stair_len;
  spec.jump = jump;
  spec.p = p;
  spec.e = e;
  spec.kappa = kappa;
  spec.sigma = sigma;
  spec.seed = seed;
  return spec;
}

namespace {

void add_matrix_flags(CLI::App& app, ExperimentConfig& cfg) {
  app.add_option("--family", cfg.family, "Matrix family: kahan, gap, devils-stairs, correlated, condition, "
                                         "heavytail, prescribed-sigma");
  app.add_option("--m", cfg.m, "Rows");
  app.add_option("--n", cfg.n, "Columns (0: same as --m)");
  app.add_option("--c", cfg.c, "Kahan c");
  app.add_option("--tau", cfg.tau, "Kahan column perturbation");
  app.add_option("--k", cfg.k, "Gap position (0: m/2)");
  app.add_option("--gap", cfg.gap, "Gap size");
  app.add_option("--stair-len", cfg.stair_len, "Devil's stairs step length");
  app.add_option("--jump", cfg.jump, "Devil's stairs jump factor");
  app.add_option("--p", cfg.p, "Correlated column count");
  app.add_option("--e", cfg.e, "Correlated noise scale");
  app.add_option("--kappa", cfg.kappa, "Condition number");
  app.add_option("--sigma", cfg.sigma, "Prescribed singular values")->delimiter(',');
}

std::string default_format(const std::string& subcommand) { return subcommand == "gen" ? "mm" : "csv"; }

Matrix read_rhs(const ExperimentConfig& cfg, Index rows) {
  if (!cfg.b_path.empty()) {
    Matrix b = read_matrix_market(std::filesystem::path(cfg.b_path));
    if (b.cols() != 1 || b.rows() != rows) throw InvalidArgument("--b must be a " + std::to_string(rows) + " x 1 matrix");
    return b;
  }
  // Fixed stream so every method sees the same right-hand side.
  Rng rng = Rng(cfg.seed).split(1000);
  return rng.normal_matrix(rows, 1);
}

void cmd_gen(const ExperimentConfig& cfg, std::ostream& out) {
  const std::string format = cfg.format.empty() ? default_format("gen") : cfg.format;
  if (format != "mm") throw InvalidArgument("gen writes Matrix Market only (--format mm)");
  const auto generated = generate(cfg.matrix_spec());
  std::string comment = " generated by mixfactor";
  for (const auto& arg : cfg.to_command_line()) comment += " " + arg;
  write_matrix_market(out, generated.a, comment);
}

void cmd_factor(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.a_path.empty()) throw InvalidArgument("factor: --a <file> is required");
  const Matrix a = read_matrix_market(std::filesystem::path(cfg.a_path));
  const std::string method = cfg.method.empty() ? "rurv-ros" : cfg.method;
  const std::string format = cfg.format.empty() ? default_format("factor") : cfg.format;
  Rng rng(cfg.seed);

  Matrix triangle;
  double reconstruction = 0.0;
  double orthogonality = 0.0;
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  if (method == "rvlu-ros") {
    const auto f = rvlu_ros(a, cfg.mixes, rng);
    triangle = f.l;
    reconstruction = (reconstruct(f) - a).norm() / scale;
    const Matrix u = form_q(f.u, QShape::thin);
    orthogonality = (u.transpose() * u - Matrix::Identity(u.cols(), u.cols())).norm();
  } else {
    UrvFactorization f;
    if (method == "rurv-ros" && cfg.rank > 0) {
      f = rurv_ros_partial(a, cfg.rank, cfg.mixes, rng);
    } else {
      const auto backend = parse_backend(method);
      if (!backend) throw InvalidArgument("factor: unknown method '" + method + "'");
      f = factor_with(a, *backend, cfg.mixes, rng);
    }
    triangle = f.r;
    reconstruction = (reconstruct(f) - a).norm() / scale;
    const Matrix u = form_q(f.u, QShape::thin);
    orthogonality = (u.transpose() * u - Matrix::Identity(u.cols(), u.cols())).norm();
  }

  if (format == "mm") {
    write_matrix_market(out, triangle, " triangular factor from " + method);
    return;
  }
  if (format != "csv") throw InvalidArgument("--format must be mm or csv");
  CsvWriter csv(out, cfg);
  csv.header({"method", "m", "n", "reconstruction_error", "orthogonality_error", "min_rvalue", "max_rvalue"});
  const Vector diag = triangle.diagonal().cwiseAbs();
  csv.row({method, csv.count(a.rows()), csv.count(a.cols()), csv.number(reconstruction), csv.number(orthogonality),
           csv.number(diag.minCoeff()), csv.number(diag.maxCoeff())});
}

void cmd_solve(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.a_path.empty()) throw InvalidArgument("solve: --a <file> is required");
  const std::string format = cfg.format.empty() ? default_format("solve") : cfg.format;
  if (format != "csv") throw InvalidArgument("solve writes CSV only (--format csv)");
  const Matrix a = read_matrix_market(std::filesystem::path(cfg.a_path));
  const Vector b = read_rhs(cfg, a.rows());

  std::vector<std::string> methods = split_list(cfg.method);
  if (methods.empty()) {
    methods = a.rows() < a.cols()
                  ? std::vector<std::string>{"qr-basic", "qrcp", "rurv-haar-basic", "rurv-ros-basic", "rvlu-minnorm"}
                  : std::vector<std::string>{"qr-overdet", "qrcp", "rurv-haar-basic", "rurv-ros-overdet"};
  }
  std::vector<LsMethod> parsed;
  for (const auto& name : methods) {
    const auto method = parse_ls_method(name);
    if (!method) throw InvalidArgument("solve: unknown method '" + name + "'");
    parsed.push_back(*method);
  }

  CsvWriter csv(out, cfg);
  csv.header({"method", "m", "n", "residual", "norm", "mix_seconds", "factor_seconds", "solve_seconds",
              "elapsed_seconds"});
  for (const LsMethod method : parsed) {
    Rng rng = Rng(cfg.seed).split(static_cast<std::uint64_t>(method));
    const auto s = solve(a, b, method, rng, {cfg.mixes});
    csv.row({std::string(to_string(method)), csv.count(a.rows()), csv.count(a.cols()), csv.number(s.residual_norm),
             csv.number(s.solution_norm), csv.timing(s.times.mix), csv.timing(s.times.factor),
             csv.timing(s.times.solve), csv.timing(s.times.total())});
  }
}

}  // namespace

ExperimentConfig parse_command_line(int argc, const char* const* argv) {
  ExperimentConfig cfg;
  CLI::App app{"Randomized URV factorizations with fast orthogonal mixing", "mixfactor"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--mixes", cfg.mixes, "Number of mixing steps N")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "Output path (default: stdout)");
  app.add_option("--format", cfg.format, "mm or csv")->check(CLI::IsMember({"mm", "csv"}));
  app.add_flag("--no-timestamp", cfg.no_timestamp, "Omit timestamps and timings for byte-identical reruns");

  auto* gen = app.add_subcommand("gen", "Generate a test matrix in Matrix Market format");
  add_matrix_flags(*gen, cfg);

  auto* factor = app.add_subcommand("factor", "Factor a matrix and report accuracy");
  factor->add_option("--a", cfg.a_path, "Matrix Market input")->required();
  factor->add_option("--method", cfg.method, "qr, qrcp, rurv-haar, rurv-ros, rvlu-ros");
  factor->add_option("--rank", cfg.rank, "Stop rurv-ros after this many Householder steps");

  auto* solve_cmd = app.add_subcommand("solve", "Solve min ||Ax - b|| and report residuals");
  solve_cmd->add_option("--a", cfg.a_path, "Matrix Market input")->required();
  solve_cmd->add_option("--b", cfg.b_path, "Right-hand side (default: N(0,1) from --seed)");
  solve_cmd->add_option("--method", cfg.method, "Comma-separated solver list");

  auto* exp = app.add_subcommand("exp", "Run a named experiment and emit CSV");
  exp->add_option("name", cfg.experiment, "mix-norms, rr-scaling, rvalues, qlp, ls-bench")->required();
  exp->add_option("--sizes", cfg.sizes, "Sizes: 'a,b,c' or 'start:stop[:step]'");
  exp->add_option("--reps", cfg.reps, "Instantiations per size");
  exp->add_option("--backends", cfg.backends, "Comma-separated factorization list");
  exp->add_option("--method", cfg.method, "Comma-separated solver list (ls-bench)");
  exp->add_option("--aspect", cfg.aspect, "ls-bench column/row ratio");
  add_matrix_flags(*exp, cfg);

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  app.parse(args);

  for (const auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  if (cfg.subcommand == "exp") {
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), cfg.experiment) == names.end()) {
      std::string list;
      for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
      throw InvalidArgument("unknown experiment '" + cfg.experiment + "'; expected one of: " + list);
    }
  }
  return cfg;
}

void execute(const ExperimentConfig& config, std::ostream& out) {
  if (config.subcommand == "gen") return cmd_gen(config, out);
  if (config.subcommand == "factor") return cmd_factor(config, out);
  if (config.subcommand == "solve") return cmd_solve(config, out);
  if (config.subcommand == "exp") return run_experiment(config, out);
  throw InvalidArgument("unknown subcommand '" + config.subcommand + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  try {
    cfg = parse_command_line(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << e.what();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "mixfactor: " << e.what() << "\nusage: mixfactor <gen|factor|solve|exp> [flags]\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "mixfactor: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (cfg.out.empty()) {
      execute(cfg, out);
    } else {
      // Render fully before touching the file so failures leave no partial output.
      std::ostringstream buffer;
      execute(cfg, buffer);
      std::ofstream file(cfg.out);
      if (!file) throw IoError(cfg.out, "cannot open for writing");
      file << buffer.str();
      if (!file.flush()) throw IoError(cfg.out, "write failed");
    }
  } catch (const IoError& e) {
    err << "mixfactor: " << e.what() << '\n';
    return kIo;
  } catch (const InvalidArgument& e) {
    err << "mixfactor: " << e.what() << '\n';
    return kUsage;
  } catch (const SingularMatrixError& e) {
    err << "mixfactor: " << e.what() << '\n';
    return kNumerical;
  } catch (const RankDeficiencyError& e) {
    err << "mixfactor: " << e.what() << '\n';
    return kNumerical;
  } catch (const ConvergenceError& e) {
    err << "mixfactor: " << e.what() << '\n';
    return kNumerical;
  }
  return kSuccess;
}

}  // namespace mixfactor::cli
