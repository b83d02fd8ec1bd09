#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "opcone/feasibility.hpp"
#include "opcone/quotient.hpp"
#include "opcone/subsystem.hpp"

namespace opcone {

/// s_1 (x) e_1 + ... + s_{k+m-1} (x) e_{k+m-1} in M_r(S) (x) C^{k+m}/J_{k,m}, where e_p are
/// the cosets of the standard basis vectors.
struct TensorElement {
  OperatorSubsystem system;
  QuotientSystem quotient;
  std::size_t level = 1;
  std::vector<HermitianMatrix> coeffs;
};

/// Validates coefficient count (k+m-1), sizes (r*d) and membership in M_r(S).
/// Throws DimensionMismatch, NotInSpan, or InvalidProblem for a quotient that is not
/// C^{k+m}/J_{k,m}.
TensorElement make_tensor_element(OperatorSubsystem system, QuotientSystem quotient, std::size_t level,
                                  std::vector<HermitianMatrix> coeffs);

/// The LMI behind both deciders: s in the span of `witness_space` at the element's
/// level, s >= 0, s_i - s >= delta I for i <= k, s_{k+j} + s >= 0 for j <= m-1.
/// delta is config.delta_strict when strict, 0 otherwise.
LmiProblem tensor_problem(const TensorElement& u, const OperatorSubsystem& witness_space, bool strict,
                          const SolverConfig& config = {});

/// Positivity in the maximal tensor product: the witness s ranges over M_r(S)+.
FeasibilityOutcome max_positive(const TensorElement& u, bool strict, const SolverConfig& config = {});
/// Positivity in the minimal tensor product: the witness ranges over the ambient algebra.
FeasibilityOutcome min_positive(const TensorElement& u, bool strict, const SolverConfig& config = {});

/// The witness s of a feasible max_positive (respectively min_positive) outcome as a matrix.
HermitianMatrix max_witness(const TensorElement& u, const FeasibilityOutcome& outcome);
HermitianMatrix min_witness(const TensorElement& u, const FeasibilityOutcome& outcome);

/// sum_i kron(x_i, y_i) >= -tol, after checking x_i in s1 and y_i in s2.
/// Throws NotInSpan or DimensionMismatch.
bool min_positive_spatial(const OperatorSubsystem& s1, const OperatorSubsystem& s2,
                          const std::vector<std::pair<HermitianMatrix, HermitianMatrix>>& terms, double tol = 1e-7);

/// Normal form of y_1 (x) e_1 + ... + y_k (x) e_k - x_1 (x) e_{k+1} - ... - x_m (x) e_{k+m}:
/// coefficients (y_i - x_m) for i <= k, then (x_m - x_j) for j < m.
/// Throws DimensionMismatch, NotInSpan.
TensorElement interpolation_element(const OperatorSubsystem& system, std::size_t level,
                                    const std::vector<HermitianMatrix>& lower, const std::vector<HermitianMatrix>& upper);

/// Normal form of an element given by k+m coefficients on all of e_1..e_{k+m}.
TensorElement normalize_extended(const OperatorSubsystem& system, const QuotientSystem& quotient, std::size_t level,
                                 const std::vector<HermitianMatrix>& extended);

/// k+m coefficients with a zero last slot, the inverse of normalize_extended up to J.
std::vector<HermitianMatrix> extended_form(const TensorElement& u);

}  // namespace opcone
