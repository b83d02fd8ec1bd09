#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "opcone/linalg.hpp"
#include "opcone/rational.hpp"

namespace opcone {

/// One constraint  constant + sum_i x_i * coefficients[i]  >=  margin * I.
struct AffineBlock {
  HermitianMatrix constant;
  std::vector<HermitianMatrix> coefficients;
  double margin = 0.0;
  bool strict = false;

  std::size_t dim() const { return constant.dim(); }
  HermitianMatrix evaluate(const std::vector<double>& x) const;
};

/// A system of linear matrix inequalities over shared real variables.
struct LmiProblem {
  std::size_t num_vars = 0;
  std::vector<AffineBlock> blocks;

  /// Throws InvalidProblem when coefficient counts, dimensions or margins are inconsistent.
  void validate() const;
  bool is_diagonal() const;
};

struct SolverConfig {
  std::size_t max_iters = 50'000;
  std::size_t check_every = 20;
  double tol_feas = 1e-7;
  double tol_cert = 1e-7;
  double tol_eig = kTolEig;
  double tol_bisect = 1e-6;
  double delta_strict = 1e-6;
  /// Route all-diagonal problems through exact rational arithmetic in `decide`.
  bool exact_diagonal = true;
};

enum class Status { Feasible, Infeasible, Unknown };

std::string to_string(Status s);

enum class Method { Numeric, FourierMotzkin, Simplex, Trivial };

std::string to_string(Method m);

/// PSD multipliers, one per block, certifying that no x satisfies the blocks.
struct Certificate {
  std::vector<HermitianMatrix> multipliers;
};

/// Exact data carried by decisions made on the rational path.
struct ExactSolution {
  std::vector<Rational> witness;
  /// Farkas multipliers, per block, per diagonal position.
  std::vector<std::vector<Rational>> multipliers;
};

struct SolveStats {
  Method method = Method::Numeric;
  std::size_t iterations = 0;
  /// Distance between the affine slice and the cone iterate at exit.
  double residual = 0.0;
  /// max_p max(0, margin_p - lambda_min(block_p(x))) at the reported point.
  double max_violation = 0.0;
};

struct FeasibilityOutcome {
  Status status = Status::Unknown;
  std::vector<double> witness;
  std::optional<Certificate> certificate;
  std::optional<ExactSolution> exact;
  SolveStats stats;

  bool feasible() const { return status == Status::Feasible; }
  bool infeasible() const { return status == Status::Infeasible; }
};

/// max_p max(0, margin_p - lambda_min(block_p(x))).
double max_violation(const LmiProblem& problem, const std::vector<double>& x);

/// True when every block satisfies lambda_min(block(x)) >= margin - tol.
bool verify_witness(const LmiProblem& problem, const std::vector<double>& x, double tol);

}  // namespace opcone
