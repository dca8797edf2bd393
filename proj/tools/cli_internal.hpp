#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace mixfactor::cli {

std::string format_number(double v);

/// CSV output with the configuration preamble. Timing cells collapse to
/// "NA" under --no-timestamp so reruns are byte-identical.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const ExperimentConfig& config);

  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

  std::string number(double v) const { return format_number(v); }
  std::string count(Index v) const { return std::to_string(v); }
  std::string timing(double seconds) const;

 private:
  std::ostream& out_;
  bool timings_;
  std::size_t width_ = 0;
};

std::vector<Index> parse_sizes(const std::string& spec);
std::vector<std::string> split_list(const std::string& list);

/// Dispatch for `exp <name>`.
void run_experiment(const ExperimentConfig& config, std::ostream& out);

}  // namespace mixfactor::cli
