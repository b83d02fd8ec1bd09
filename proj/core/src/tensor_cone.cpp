#include "opcone/tensor_cone.hpp"

#include "opcone/error.hpp"

namespace opcone {

namespace {

void require_same_dims(const std::vector<HermitianMatrix>& ms, std::size_t dim, const char* where) {
  for (const auto& m : ms)
    if (m.dim() != dim) throw DimensionMismatch(std::string(where) + ": matrices have different dimensions");
}

}  // namespace

TensorElement make_tensor_element(OperatorSubsystem system, QuotientSystem quotient, std::size_t level,
                                  std::vector<HermitianMatrix> coeffs) {
  if (!quotient.is_sign_vector()) throw InvalidProblem("tensor element: quotient must be C^{k+m}/J_{k,m}");
  if (level == 0) throw DimensionMismatch("tensor element: level must be >= 1");
  if (coeffs.size() + 1 != quotient.n()) {
    throw DimensionMismatch("tensor element: expected " + std::to_string(quotient.n() - 1) + " coefficients, got " +
                            std::to_string(coeffs.size()));
  }
  for (const auto& c : coeffs) {
    if (c.dim() != level * system.ambient_dim()) throw DimensionMismatch("tensor element: coefficient has wrong size");
    system.level_coords(c, level);
  }
  return TensorElement{std::move(system), std::move(quotient), level, std::move(coeffs)};
}

LmiProblem tensor_problem(const TensorElement& u, const OperatorSubsystem& witness_space, bool strict,
                          const SolverConfig& config) {
  const std::vector<HermitianMatrix> basis = witness_space.level_basis(u.level);
  const std::size_t dim = u.level * witness_space.ambient_dim();
  const std::size_t k = u.quotient.k();
  const double delta = strict ? config.delta_strict : 0.0;

  LmiProblem problem;
  problem.num_vars = basis.size();
  for (std::size_t i = 0; i < u.coeffs.size(); ++i) {
    const bool upper_slot = i < k;
    AffineBlock blk;
    blk.constant = u.coeffs[i];
    blk.margin = upper_slot ? delta : 0.0;
    blk.strict = upper_slot && strict;
    for (const auto& b : basis) blk.coefficients.push_back(upper_slot ? -b : b);
    problem.blocks.push_back(std::move(blk));
  }
  AffineBlock positive;
  positive.constant = HermitianMatrix(dim);
  positive.coefficients = basis;
  problem.blocks.push_back(std::move(positive));
  return problem;
}

FeasibilityOutcome max_positive(const TensorElement& u, bool strict, const SolverConfig& config) {
  return decide(tensor_problem(u, u.system, strict, config), config);
}

FeasibilityOutcome min_positive(const TensorElement& u, bool strict, const SolverConfig& config) {
  return decide(tensor_problem(u, u.system.ambient(), strict, config), config);
}

HermitianMatrix max_witness(const TensorElement& u, const FeasibilityOutcome& outcome) {
  if (!outcome.feasible()) throw InvalidProblem("max_witness: outcome is not feasible");
  return u.system.level_combine(outcome.witness, u.level);
}

HermitianMatrix min_witness(const TensorElement& u, const FeasibilityOutcome& outcome) {
  if (!outcome.feasible()) throw InvalidProblem("min_witness: outcome is not feasible");
  return u.system.ambient().level_combine(outcome.witness, u.level);
}

bool min_positive_spatial(const OperatorSubsystem& s1, const OperatorSubsystem& s2,
                          const std::vector<std::pair<HermitianMatrix, HermitianMatrix>>& terms, double tol) {
  HermitianMatrix sum(s1.ambient_dim() * s2.ambient_dim());
  for (const auto& [x, y] : terms) {
    s1.coords(x);
    s2.coords(y);
    sum += kron(x, y);
  }
  return min_eigenvalue(sum) >= -tol;
}

TensorElement interpolation_element(const OperatorSubsystem& system, std::size_t level,
                                    const std::vector<HermitianMatrix>& lower,
                                    const std::vector<HermitianMatrix>& upper) {
  if (lower.empty() || upper.empty()) throw DimensionMismatch("interpolation_element: empty lower or upper list");
  const std::size_t dim = level * system.ambient_dim();
  require_same_dims(lower, dim, "interpolation_element");
  require_same_dims(upper, dim, "interpolation_element");
  std::vector<HermitianMatrix> extended = upper;
  for (const auto& x : lower) extended.push_back(-x);
  return normalize_extended(system, QuotientSystem::jkm(upper.size(), lower.size()), level, extended);
}

TensorElement normalize_extended(const OperatorSubsystem& system, const QuotientSystem& quotient, std::size_t level,
                                 const std::vector<HermitianMatrix>& extended) {
  if (!quotient.is_sign_vector()) throw InvalidProblem("normalize_extended: quotient must be C^{k+m}/J_{k,m}");
  if (extended.size() != quotient.n()) throw DimensionMismatch("normalize_extended: wrong number of coefficients");
  // e_{k+m} = e_1 + ... + e_k - e_{k+1} - ... - e_{k+m-1} in the quotient.
  const HermitianMatrix& last = extended.back();
  std::vector<HermitianMatrix> coeffs;
  for (std::size_t p = 0; p + 1 < extended.size(); ++p) {
    HermitianMatrix c = extended[p];
    c.add_scaled(quotient.null_entry(p), last);
    coeffs.push_back(std::move(c));
  }
  return make_tensor_element(system, quotient, level, std::move(coeffs));
}

std::vector<HermitianMatrix> extended_form(const TensorElement& u) {
  std::vector<HermitianMatrix> out = u.coeffs;
  out.emplace_back(u.level * u.system.ambient_dim());
  return out;
}

}  // namespace opcone
