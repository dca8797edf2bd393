#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mixfactor/matgen.hpp"

namespace mixfactor::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kNumerical = 3,
  kIo = 4,
};

/// Everything a run depends on. Round-trips through to_command_line() and
/// is echoed as '#' comment lines at the top of every CSV.
struct ExperimentConfig {
  std::string subcommand;  // gen | factor | solve | exp
  std::string experiment;  // exp only
  std::uint64_t seed = 0;
  Index mixes = 1;
  std::string out;  // empty: standard output
  std::string format;  // mm | csv; empty picks the subcommand default
  bool no_timestamp = false;

  std::string a_path;
  std::string b_path;
  std::string method;  // factor / solve; comma-separated list for solve
  Index rank = 0;      // factor: partial rurv-ros when > 0

  std::string sizes;     // "a,b,c" or "start:stop[:step]"
  Index reps = 0;        // 0 picks the experiment default
  std::string backends;  // comma-separated
  double aspect = 0.5;   // ls-bench: n = round(aspect * m)

  std::string family;  // empty: the experiment default, "condition" for gen
  Index m = 100;
  Index n = 0;  // 0 means n = m
  double c = 0.1;
  double tau = 1e-7;
  Index k = 0;
  double gap = 1e-10;
  Index stair_len = 16;
  double jump = 0.1;
  Index p = 10;
  double e = 1e-4;
  double kappa = 1e6;
  std::vector<double> sigma;

  /// Flags that reproduce this configuration (without the program name).
  std::vector<std::string> to_command_line() const;
  /// "key=value" lines for the CSV preamble.
  std::vector<std::string> describe() const;
  MatrixSpec matrix_spec() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses argv (argv[0] is the program name). Throws on usage errors.
ExperimentConfig parse_command_line(int argc, const char* const* argv);

/// Entry point shared by the executable and the tests. Results go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration, writing results to `out`.
void execute(const ExperimentConfig& config, std::ostream& out);

/// Experiment names accepted by `exp`.
const std::vector<std::string>& experiment_names();

}  // namespace mixfactor::cli
