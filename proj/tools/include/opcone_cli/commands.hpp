#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "opcone_cli/json_io.hpp"

namespace opcone::cli {

inline constexpr const char* kSchemaVersion = "1";

enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitUnknown = 2, kExitUsage = 64 };

struct Options {
  std::string command;
  std::string input;
  double delta = 1e-6;
  std::optional<double> tol;
  std::optional<std::size_t> max_iters;
  std::uint64_t seed = 1;
  std::optional<std::size_t> level;
  bool pretty = false;
};

struct CommandResult {
  int exit_code = kExitOk;
  json report;
};

/// delta -> delta_strict, tol -> tol_feas and tol_cert, max_iters; defaults otherwise.
SolverConfig make_config(const Options& opts);
/// Every setting that influences a run, in flag terms plus the derived tolerances.
json config_json(const Options& opts, const SolverConfig& config);

int exit_code(Status s);

/// Runs one subcommand on an already parsed problem file. `problem` is ignored by
/// reproduce, which writes per-item progress to `log` when given. Throws ParseError or
/// opcone::Error on malformed payloads.
CommandResult run_command(const Options& opts, const json& problem, std::ostream* log = nullptr);

/// Full command line handling: flag parsing, file loading, dispatch and JSON output.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace opcone::cli
