#include "opcone/lmi.hpp"

#include <algorithm>
#include <cmath>

#include "opcone/error.hpp"

namespace opcone {

HermitianMatrix AffineBlock::evaluate(const std::vector<double>& x) const {
  HermitianMatrix out = constant;
  for (std::size_t i = 0; i < coefficients.size(); ++i) out.add_scaled(x.at(i), coefficients[i]);
  return out;
}

void LmiProblem::validate() const {
  for (std::size_t p = 0; p < blocks.size(); ++p) {
    const AffineBlock& b = blocks[p];
    const std::string where = "block " + std::to_string(p) + ": ";
    if (b.coefficients.size() != num_vars) {
      throw InvalidProblem(where + std::to_string(b.coefficients.size()) + " coefficients for " +
                           std::to_string(num_vars) + " variables");
    }
    if (b.dim() == 0) throw InvalidProblem(where + "empty constant matrix");
    for (const auto& a : b.coefficients) {
      if (a.dim() != b.dim()) throw InvalidProblem(where + "coefficient dimension differs from the constant");
    }
    if (!std::isfinite(b.margin) || b.margin < 0.0) throw InvalidProblem(where + "margin must be finite and >= 0");
    if (b.strict && !(b.margin > 0.0)) throw InvalidProblem(where + "strict block needs a positive margin");
  }
}

bool LmiProblem::is_diagonal() const {
  for (const auto& b : blocks) {
    if (!b.constant.is_diagonal()) return false;
    for (const auto& a : b.coefficients)
      if (!a.is_diagonal()) return false;
  }
  return true;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Feasible:
      return "Feasible";
    case Status::Infeasible:
      return "Infeasible";
    case Status::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Numeric:
      return "numeric";
    case Method::FourierMotzkin:
      return "fourier-motzkin";
    case Method::Simplex:
      return "simplex";
    case Method::Trivial:
      return "trivial";
  }
  return "numeric";
}

double max_violation(const LmiProblem& problem, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& b : problem.blocks) {
    worst = std::max(worst, b.margin - min_eigenvalue(b.evaluate(x)));
  }
  return worst;
}

bool verify_witness(const LmiProblem& problem, const std::vector<double>& x, double tol) {
  if (x.size() != problem.num_vars) return false;
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return max_violation(problem, x) <= tol;
}

}  // namespace opcone
