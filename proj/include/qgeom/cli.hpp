#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace qgeom::cli {

enum class Command {
  axioms,
  table1,
  main,
  hk,
  refined,
  park_luo,
  counterexample,
  dynamics,
  pure_limit,
  random_suite,
};

enum class OutputFormat { json, csv, both };

enum ExitCode : int {
  kSuccess = 0,
  kAssertionFailure = 2,
  kConfigError = 3,
  kIoError = 4,
};

struct RunConfig {
  Command command = Command::random_suite;
  std::vector<int> dims{2, 3, 4};
  int trials = 100;
  std::uint64_t seed = 7;
  std::vector<std::string> f_keys;  // empty: command default
  std::filesystem::path out_dir;
  OutputFormat format = OutputFormat::both;
  std::vector<double> lambda1;  // counterexample / park-luo; empty: default sweep
  double eps_min = 1e-5;        // pure-limit radial sweep
  int threads = 1;
};

std::string command_name(Command c);

/// Throws ConfigError-like std::invalid_argument on bad dims/trials/keys.
void validate(const RunConfig& config);

/// Runs one command, writes <command>.csv / <command>.jsonl / summary.json
/// into config.out_dir and returns an ExitCode.
int run(const RunConfig& config, std::ostream& log);

/// Command-line entry point (parsing + run + exit-code mapping).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qgeom::cli
