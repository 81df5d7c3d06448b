#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "edubandit/experiment.hpp"

namespace edubandit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the output directory when --out is absent.
inline constexpr const char* kOutDirEnv = "EDUBANDIT_OUT_DIR";

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Subcommand { run, sweep, validate };

/// Option values as given on the command line or in a config file.
/// Unset fields fall back to the next source.
struct RawOptions {
  std::optional<std::string> agent;
  std::optional<double> epsilon;
  std::optional<double> ucb_c;
  std::optional<std::string> env;
  std::optional<std::vector<double>> weights;
  std::optional<long long> horizon;
  std::optional<long long> runs;
  std::optional<unsigned long long> seed;
  std::optional<double> ci_level;
  std::optional<double> gamma;
  std::optional<std::string> out;
  std::optional<bool> emit_raw;
  std::optional<int> workers;
};

struct CliConfig {
  Subcommand subcommand = Subcommand::run;
  ExperimentSpec spec;
  std::filesystem::path out_dir = "results";
  bool emit_raw = false;
  int workers = 0;
};

/// Reads a JSON config file into RawOptions. Keys mirror the flag names with
/// underscores (e.g. "ucb_c", "ci_level", "emit_raw").
RawOptions load_config_file(const std::filesystem::path& path);

/// Layers flags over config over built-in defaults and validates the result.
/// Throws UsageError on any invalid or inapplicable value.
CliConfig resolve(Subcommand subcommand, const RawOptions& flags, const RawOptions& config);

int cmd_run(const CliConfig& config, std::ostream& out);
int cmd_sweep(const CliConfig& config, std::ostream& out);
int cmd_validate(const CliConfig& config, std::ostream& out);

/// Entry point: parses argv and dispatches. Returns 0, 1 (runtime or I/O
/// failure) or 2 (usage error).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace edubandit::cli
