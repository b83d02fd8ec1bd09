#include "opcone/riesz.hpp"

#include <random>

#include "opcone/error.hpp"
#include "opcone/tensor_cone.hpp"

namespace opcone {

namespace {

HermitianMatrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HermitianMatrix out(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double re = u(rng);
      const double im = i == j ? 0.0 : u(rng);
      out.set(i, j, Complex(re, im));
    }
  return out;
}

/// B B^* / dim for B with entries uniform in the unit square.
HermitianMatrix random_psd(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix b(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) b(i, j) = Complex(u(rng), u(rng));
  HermitianMatrix out = HermitianMatrix::from_dense(b * b.adjoint());
  out *= 1.0 / static_cast<double>(dim);
  return out;
}

}  // namespace

void InterpolationInstance::validate() const {
  if (lower.empty() || upper.empty()) throw InvalidProblem("interpolation: lower and upper lists must be nonempty");
  if (!(delta > 0.0)) throw InvalidProblem("interpolation: delta must be positive");
  if (level == 0) throw InvalidProblem("interpolation: level must be >= 1");
  const std::size_t dim = level * system.ambient_dim();
  for (const auto* list : {&lower, &upper})
    for (const auto& x : *list) {
      if (x.dim() != dim) {
        throw DimensionMismatch("interpolation: expected " + std::to_string(dim) + "x" + std::to_string(dim) +
                                " matrices, got dimension " + std::to_string(x.dim()));
      }
      system.level_coords(x, level);
    }
}

LmiProblem interpolation_problem(const InterpolationInstance& inst, const OperatorSubsystem& space) {
  inst.validate();
  const std::vector<HermitianMatrix> basis = space.level_basis(inst.level);
  LmiProblem problem;
  problem.num_vars = basis.size();
  for (const auto& x : inst.lower) {
    AffineBlock blk;  // g - x
    blk.constant = -x;
    blk.coefficients = basis;
    blk.margin = inst.delta;
    blk.strict = true;
    problem.blocks.push_back(std::move(blk));
  }
  for (const auto& y : inst.upper) {
    AffineBlock blk;  // y - g
    blk.constant = y;
    for (const auto& b : basis) blk.coefficients.push_back(-b);
    blk.margin = inst.delta;
    blk.strict = true;
    problem.blocks.push_back(std::move(blk));
  }
  return problem;
}

FeasibilityOutcome ambient_interpolate(const InterpolationInstance& inst, const SolverConfig& config) {
  return decide(interpolation_problem(inst, inst.system.ambient()), config);
}

FeasibilityOutcome subsystem_interpolate(const InterpolationInstance& inst, const SolverConfig& config) {
  return decide(interpolation_problem(inst, inst.system), config);
}

HermitianMatrix ambient_interpolant(const InterpolationInstance& inst, const FeasibilityOutcome& outcome) {
  if (!outcome.feasible()) throw InvalidProblem("ambient_interpolant: outcome is not feasible");
  return inst.system.ambient().level_combine(outcome.witness, inst.level);
}

HermitianMatrix subsystem_interpolant(const InterpolationInstance& inst, const FeasibilityOutcome& outcome) {
  if (!outcome.feasible()) throw InvalidProblem("subsystem_interpolant: outcome is not feasible");
  return inst.system.level_combine(outcome.witness, inst.level);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

InterpolationInstance random_instance(const OperatorSubsystem& system, std::size_t k, std::size_t m,
                                      std::size_t level, double delta, std::uint64_t seed) {
  if (k == 0 || m == 0) throw InvalidDimension("random_instance: k and m must be >= 1");
  std::mt19937_64 rng(seed);
  const std::size_t dim = level * system.ambient_dim();
  const HermitianMatrix g0 = random_hermitian(rng, dim);
  const HermitianMatrix shift = delta * HermitianMatrix::identity(dim);
  InterpolationInstance inst{system, level, {}, {}, delta};
  for (std::size_t i = 0; i < m; ++i)
    inst.lower.push_back(system.level_project(g0 - shift - random_psd(rng, dim), level));
  for (std::size_t j = 0; j < k; ++j)
    inst.upper.push_back(system.level_project(g0 + shift + random_psd(rng, dim), level));
  return inst;
}

TrReport tr_property_check(const OperatorSubsystem& system, std::size_t k, std::size_t m, std::size_t level,
                           std::size_t trials, std::uint64_t seed, const SolverConfig& config,
                           const std::vector<std::pair<std::string, InterpolationInstance>>& extra) {
  if (trials == 0 && extra.empty()) throw InvalidProblem("tr_property_check: no trials requested");
  TrReport report;
  report.k = k;
  report.m = m;
  report.level = level;
  report.seed = seed;

  auto run = [&](TrTrial trial, const InterpolationInstance& inst) {
    trial.ambient = ambient_interpolate(inst, config).status;
    if (trial.ambient == Status::Unknown) ++report.unknown;
    if (trial.ambient == Status::Feasible) {
      ++report.ambient_feasible;
      const FeasibilityOutcome sub = subsystem_interpolate(inst, config);
      trial.subsystem = sub.status;
      trial.certified = sub.infeasible() && sub.certificate.has_value();
      if (sub.feasible()) ++report.subsystem_feasible;
      if (sub.status == Status::Unknown) ++report.unknown;
      if (trial.certified) {
        ++report.subsystem_infeasible;
        if (!report.first_counterexample) report.first_counterexample = inst;
      }
    }
    report.records.push_back(std::move(trial));
    ++report.trials;
  };

  for (std::size_t t = 0; t < trials; ++t) {
    TrTrial trial;
    trial.index = t;
    trial.seed = trial_seed(seed, t);
    run(trial, random_instance(system, k, m, level, config.delta_strict, trial.seed));
  }
  for (const auto& [label, inst] : extra) {
    TrTrial trial;
    trial.index = report.records.size();
    trial.label = label;
    run(trial, inst);
  }
  return report;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Agree:
      return "Agree";
    case Verdict::Disagree:
      return "Disagree";
    case Verdict::Undecided:
      return "Undecided";
  }
  return "Undecided";
}

ConsistencyVerdict cross_check_theorem(const InterpolationInstance& inst, const SolverConfig& config) {
  inst.validate();
  ConsistencyVerdict out;
  out.interpolation = subsystem_interpolate(inst, config).status;

  const std::size_t dim = inst.level * inst.system.ambient_dim();
  std::vector<HermitianMatrix> raised = inst.lower;
  for (auto& x : raised) x.add_scaled(inst.delta, HermitianMatrix::identity(dim));
  const TensorElement u = interpolation_element(inst.system, inst.level, raised, inst.upper);
  SolverConfig tensor_config = config;
  tensor_config.delta_strict = inst.delta;
  out.tensor = max_positive(u, true, tensor_config).status;

  if (out.interpolation == Status::Unknown || out.tensor == Status::Unknown) {
    out.verdict = Verdict::Undecided;
    out.details = "interpolation " + to_string(out.interpolation) + ", tensor " + to_string(out.tensor);
  } else if (out.interpolation == out.tensor) {
    out.verdict = Verdict::Agree;
  } else {
    out.verdict = Verdict::Disagree;
    out.details = "interpolation " + to_string(out.interpolation) + " but tensor " + to_string(out.tensor);
  }
  return out;
}

}  // namespace opcone
