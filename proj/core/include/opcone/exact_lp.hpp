#pragma once

#include <cstddef>
#include <vector>

#include "opcone/lmi.hpp"
#include "opcone/rational.hpp"

namespace opcone {

/// coeffs . x >= rhs
struct LinearInequality {
  std::vector<Rational> coeffs;
  Rational rhs;
};

struct LinearSystem {
  std::size_t num_vars = 0;
  std::vector<LinearInequality> rows;
};

/// Exact decision for a finite system of linear inequalities.
///
/// Feasible results carry a point satisfying every row exactly. Infeasible results
/// carry Farkas multipliers y >= 0 with sum_c y_c coeffs_c = 0 and sum_c y_c rhs_c > 0.
struct ExactLpResult {
  bool feasible = false;
  std::vector<Rational> point;
  std::vector<Rational> multipliers;
  Method method = Method::Simplex;
  std::size_t steps = 0;
};

/// Fourier-Motzkin elimination with multiplier tracking. Practical for a handful of
/// variables; rows with identical normalized direction are pruned to the tightest one.
ExactLpResult fourier_motzkin(const LinearSystem& system);

/// Phase-1 simplex with Bland's rule; Farkas multipliers come from the final duals.
ExactLpResult simplex_phase_one(const LinearSystem& system);

/// Fourier-Motzkin for at most three variables, simplex otherwise.
ExactLpResult solve_linear_system(const LinearSystem& system);

bool satisfies(const LinearSystem& system, const std::vector<Rational>& point);
bool is_farkas_certificate(const LinearSystem& system, const std::vector<Rational>& multipliers);

/// The inequalities of an all-diagonal LMI, one per block and diagonal position, in
/// block-major order. Entries are read with to_rational. Throws NotDiagonal.
LinearSystem diagonal_lp(const LmiProblem& problem);

/// Exact decision of an all-diagonal LMI (no tolerance). Throws NotDiagonal.
FeasibilityOutcome solve_diagonal_exact(const LmiProblem& problem);

}  // namespace opcone
