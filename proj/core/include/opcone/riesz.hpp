#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opcone/feasibility.hpp"
#include "opcone/subsystem.hpp"

namespace opcone {

/// Find g with x_i + delta I <= g <= y_j - delta I for every lower x_i and upper y_j.
struct InterpolationInstance {
  OperatorSubsystem system;
  std::size_t level = 1;
  std::vector<HermitianMatrix> lower;
  std::vector<HermitianMatrix> upper;
  double delta = 1e-6;

  /// Throws InvalidProblem (empty lists, delta <= 0), DimensionMismatch or NotInSpan.
  void validate() const;
};

/// The interpolation LMI with g ranging over the span of `space` at the instance level.
LmiProblem interpolation_problem(const InterpolationInstance& inst, const OperatorSubsystem& space);

/// g in the ambient algebra (C^d for diagonal systems, which loses nothing: the
/// diagonal pinching of any ambient interpolant is again one).
FeasibilityOutcome ambient_interpolate(const InterpolationInstance& inst, const SolverConfig& config = {});
/// g in M_r(S). Interpolants are only required to be self-adjoint.
FeasibilityOutcome subsystem_interpolate(const InterpolationInstance& inst, const SolverConfig& config = {});

HermitianMatrix ambient_interpolant(const InterpolationInstance& inst, const FeasibilityOutcome& outcome);
HermitianMatrix subsystem_interpolant(const InterpolationInstance& inst, const FeasibilityOutcome& outcome);

/// Seeded random instance: g0 with entries uniform in [-1, 1], lower_i = g0 - delta I - P_i,
/// upper_j = g0 + delta I + Q_j with random PSD P_i, Q_j, all projected onto M_r(S).
InterpolationInstance random_instance(const OperatorSubsystem& system, std::size_t k, std::size_t m,
                                      std::size_t level, double delta, std::uint64_t seed);

/// Seed of trial `index` in a run started from `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t index);

struct TrTrial {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  /// Set for instances supplied by the caller rather than generated.
  std::string label;
  Status ambient = Status::Unknown;
  /// Only meaningful when the ambient side is Feasible.
  Status subsystem = Status::Unknown;
  bool certified = false;
};

struct TrReport {
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t level = 1;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t ambient_feasible = 0;
  std::size_t subsystem_feasible = 0;
  /// Ambient-feasible instances whose subsystem side is Infeasible with a certificate.
  std::size_t subsystem_infeasible = 0;
  std::size_t unknown = 0;
  std::vector<TrTrial> records;
  std::optional<InterpolationInstance> first_counterexample;
};

/// Runs `trials` random instances, then every instance of `extra`, through both
/// interpolation deciders. Subsystem-infeasible results are counterexamples to TR(k, m).
TrReport tr_property_check(const OperatorSubsystem& system, std::size_t k, std::size_t m, std::size_t level,
                           std::size_t trials, std::uint64_t seed, const SolverConfig& config = {},
                           const std::vector<std::pair<std::string, InterpolationInstance>>& extra = {});

enum class Verdict { Agree, Disagree, Undecided };

std::string to_string(Verdict v);

struct ConsistencyVerdict {
  Verdict verdict = Verdict::Agree;
  Status interpolation = Status::Unknown;
  Status tensor = Status::Unknown;
  std::string details;

  bool agree() const { return verdict == Verdict::Agree; }
};

/// Compares subsystem_interpolate with strict max_positive of the interpolation
/// element. The lower list is raised by delta I before forming the element, so both
/// sides ask for the same margin on both sides of g. Unknown on either side gives Undecided.
ConsistencyVerdict cross_check_theorem(const InterpolationInstance& inst, const SolverConfig& config = {});

}  // namespace opcone
