#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace torsionlab::cli {

enum class Command { rtorsion, analytic, zeros, verify, limits, report };
enum class Format { json, csv };

struct RunConfig {
  Command command = Command::verify;
  double l1 = 1.0;
  double l2 = 2.0;
  std::optional<double> alpha;
  std::optional<double> nu;
  int m = 1;
  std::vector<int> betti{1, 1};
  std::optional<double> tau_w;
  std::string kind = "F";
  double nu_n = 0.0;
  int K = 10000;
  double tol = 1e-12;
  std::string output;  // empty: standard output
  Format format = Format::json;
  int precision = 12;
  std::string complex_path;
};

/// Exit status: 0 all checks pass, 1 a check failed, 2 invalid configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (subcommand first) and runs; returns the exit status.
int main_with_args(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace torsionlab::cli
