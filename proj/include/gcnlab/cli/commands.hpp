#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gcnlab/cli/report.hpp"

namespace gcnlab::cli {

struct RunConfig {
  std::string command;
  std::string input;
  bool weighted = false;
  int d = 1;
  std::string gcn = "dls";
  double exponent = 2.0;
  std::string mode = "exact";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  std::string anchor = "none";
  std::optional<double> tau;
  std::string out;
  std::string theorem;
  std::string flavor = "plain";
  std::optional<double> sigma;
  int k = 2;
  std::uint64_t cap = 100'000'000;
  std::size_t trials = 500;
  std::size_t sample_size = 200;
  double delta = 0.5;
  int m = 2;
  std::size_t tuples_per_point = 100;
  double pol_constant = 100.0;
  std::optional<double> diam_mu;
};

struct RunResult {
  int exit_code = 0;
  Json report;
  std::vector<std::string> warnings;
};

/// Validates the command-specific fields, then runs. Throws gcnlab::Error.
RunResult run(const RunConfig& config);

/// Full front end: parses arguments, runs, writes the report to stdout or
/// --out and diagnostics to `err`. Returns 0, 1 (error) or 2 (failed bound).
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace gcnlab::cli
