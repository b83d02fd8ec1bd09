#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "opcone_cli/commands.hpp"

namespace opcone::cli {

struct ReproduceItem {
  std::string name;
  bool pass = false;
  std::string details;
  double timing_ms = 0.0;
  json data;
};

/// The built-in example suite, in fixed order. Progress lines go to `log` when given.
std::vector<ReproduceItem> reproduce_suite(const Options& opts, const SolverConfig& config, std::ostream* log);

/// Report for the whole suite; exit 0 iff every item passes.
CommandResult reproduce_command(const Options& opts, const SolverConfig& config, std::ostream* log);

}  // namespace opcone::cli
