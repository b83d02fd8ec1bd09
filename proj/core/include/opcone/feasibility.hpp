#pragma once

#include <vector>

#include "opcone/lmi.hpp"

namespace opcone {

/// Numeric decision of an LMI system.
///
/// Runs Douglas-Rachford splitting (averaged alternating reflections) between the
/// affine slice {A_0 + sum_i x_i A_i - margin I} and the product PSD cone. Every
/// `check_every` iterations the current affine point is tested as a witness, and the
/// displacement between the two projections (which converges to the minimal gap
/// vector when the sets are disjoint) is cleaned up and tested as a Farkas
/// certificate. Deterministic: zero start, fixed iteration order.
///
/// Feasible witnesses satisfy lambda_min(block_p(x)) >= margin_p - tol_feas.
/// Infeasible outcomes carry a certificate accepted by check_certificate.
FeasibilityOutcome solve_feasibility(const LmiProblem& problem, const SolverConfig& config = {});

/// Certificate test. Multipliers are rescaled to unit total trace, then:
///   - each is PSD within tol_eig,
///   - |sum_p <L_p, A_i^p>| <= tol_cert * max(1, ||A_i||) for every variable i,
///   - sum_p <L_p, A_0^p - margin_p I> <= -tol_cert.
/// Throws DimensionMismatch when the block structure does not match.
bool check_certificate(const LmiProblem& problem, const Certificate& cert, const SolverConfig& config = {});

/// Exact path for all-diagonal problems (when enabled), numeric otherwise.
FeasibilityOutcome decide(const LmiProblem& problem, const SolverConfig& config = {});

struct MarginResult {
  /// Largest certified t in [0, t_max] with block_p(x) >= t I for all p.
  double t_star = 0.0;
  std::vector<double> witness;
  bool feasible_at_zero = false;
  double t_max = 0.0;
};

/// Bisection on a uniform margin t. Block margins of the input are ignored.
/// t_max = 1 + the largest Frobenius norm among the block constants.
/// Probes that end Unknown count as infeasible, so t_star is always certified by
/// its witness.
MarginResult max_margin(const LmiProblem& problem, const SolverConfig& config = {});

}  // namespace opcone
