#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace causal_sep::cli {

enum class Command {
  ConfigCount,
  EcBuild,
  EcThreshold,
  EcSweep,
  Classify,
  Ppt,
  Compare,
  Duality,
  Crossover,
};

enum class Format { Json, Csv };

struct Parameters {
  int dim = 2;
  int parties = 2;
  std::string coupling = "free";
  std::string ec_class = "a";
  std::string mixing = "weak";
  double p = 0.0;
  double p_phase = 0.0;
  std::optional<int> m_abs;
  int steps = 101;
  double p_start = 0.0;
  double p_end = 1.0;
  std::string input;
  std::vector<int> subset;
  std::vector<int> b_sites;
};

struct RunConfig {
  Command command = Command::ConfigCount;
  Parameters parameters;
  /// Unset means the command default: CSV for sweep and compare, JSON otherwise.
  std::optional<Format> output_format;
  std::optional<std::string> output_path;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitIo = 2;

/// Throws causal_sep::ParseError on malformed flags.
RunConfig parse_args(int argc, const char* const* argv);

/// Executes one command. The payload goes to `out` (or --out); messages go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-code mapping, help and usage handling.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace causal_sep::cli
