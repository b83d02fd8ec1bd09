#include "opcone/feasibility.hpp"

#include <algorithm>
#include <cmath>

#include "opcone/error.hpp"
#include "opcone/exact_lp.hpp"

namespace opcone {

namespace {

using Product = std::vector<HermitianMatrix>;

double product_norm(const Product& z) {
  double acc = 0.0;
  for (const auto& b : z) acc += frobenius_inner(b, b);
  return std::sqrt(acc);
}

Product product_psd(const Product& z) {
  Product out;
  out.reserve(z.size());
  for (const auto& b : z) out.push_back(project_psd(b));
  return out;
}

/// Linear part x -> (sum_i x_i A_i^p)_p of an LMI and the projection onto its affine slice.
class AffineSlice {
 public:
  explicit AffineSlice(const LmiProblem& problem) : problem_(problem) {
    for (const auto& b : problem.blocks) {
      HermitianMatrix s = b.constant;
      s.add_scaled(-b.margin, HermitianMatrix::identity(b.dim()));
      shift_.push_back(std::move(s));
    }
    const std::size_t n = problem.num_vars;
    RealMatrix gram(n, n);
    for (const auto& b : problem.blocks)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
          const double g = frobenius_inner(b.coefficients[i], b.coefficients[j]);
          gram(i, j) += g;
          if (i != j) gram(j, i) += g;
        }
    pinv_ = RealMatrix(n, n);
    if (n == 0) return;
    const SymmetricEigen eg = jacobi_eigen(gram);
    const double top = std::max(eg.eigenvalues.back(), 0.0);
    const double cutoff = 1e-12 * std::max(top, 1e-300);
    for (std::size_t k = 0; k < n; ++k) {
      const double lambda = eg.eigenvalues[k];
      if (lambda <= cutoff) continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          pinv_(i, j) += eg.eigenvectors(i, k) * eg.eigenvectors(j, k) / lambda;
    }
  }

  const Product& shift() const { return shift_; }

  std::vector<double> adjoint(const Product& z) const {
    std::vector<double> r(problem_.num_vars, 0.0);
    for (std::size_t p = 0; p < z.size(); ++p)
      for (std::size_t i = 0; i < problem_.num_vars; ++i)
        r[i] += frobenius_inner(problem_.blocks[p].coefficients[i], z[p]);
    return r;
  }

  Product apply(const std::vector<double>& x) const {
    Product out;
    out.reserve(problem_.blocks.size());
    for (const auto& b : problem_.blocks) {
      HermitianMatrix m(b.dim());
      for (std::size_t i = 0; i < x.size(); ++i) m.add_scaled(x[i], b.coefficients[i]);
      out.push_back(std::move(m));
    }
    return out;
  }

  std::vector<double> solve_gram(const std::vector<double>& r) const {
    const std::size_t n = r.size();
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x[i] += pinv_(i, j) * r[j];
    return x;
  }

  /// argmin_x || shift + M x - z ||
  std::vector<double> nearest_variables(const Product& z) const {
    Product diff = z;
    for (std::size_t p = 0; p < diff.size(); ++p) diff[p] -= shift_[p];
    return solve_gram(adjoint(diff));
  }

  Product point(const std::vector<double>& x) const {
    Product out = apply(x);
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += shift_[p];
    return out;
  }

  /// Removes the component of z lying in the range of M.
  Product orthogonal_part(const Product& z) const {
    Product out = z;
    const Product in_range = apply(solve_gram(adjoint(z)));
    for (std::size_t p = 0; p < out.size(); ++p) out[p] -= in_range[p];
    return out;
  }

 private:
  const LmiProblem& problem_;
  Product shift_;
  RealMatrix pinv_;
};

std::optional<Certificate> extract_certificate(const LmiProblem& problem, const AffineSlice& slice, Product gap,
                                               const SolverConfig& config) {
  for (int round = 0; round < 4; ++round) gap = product_psd(slice.orthogonal_part(gap));
  double trace = 0.0;
  for (const auto& b : gap) trace += b.trace();
  if (!(trace > 0.0) || !std::isfinite(trace)) return std::nullopt;
  for (auto& b : gap) b *= 1.0 / trace;
  Certificate cert{std::move(gap)};
  if (!check_certificate(problem, cert, config)) return std::nullopt;
  return cert;
}

}  // namespace

FeasibilityOutcome solve_feasibility(const LmiProblem& problem, const SolverConfig& config) {
  problem.validate();
  FeasibilityOutcome out;
  out.stats.method = Method::Numeric;
  if (problem.blocks.empty()) {
    out.status = Status::Feasible;
    out.witness.assign(problem.num_vars, 0.0);
    out.stats.method = Method::Trivial;
    return out;
  }

  // The iteration starts at zero; take it if it already works.
  const std::vector<double> origin(problem.num_vars, 0.0);
  if (verify_witness(problem, origin, config.tol_feas)) {
    out.status = Status::Feasible;
    out.witness = origin;
    out.stats.max_violation = max_violation(problem, origin);
    return out;
  }

  const AffineSlice slice(problem);
  const std::size_t check_every = std::max<std::size_t>(1, config.check_every);
  Product z;
  for (const auto& b : problem.blocks) z.emplace_back(b.dim());

  std::vector<double> last_x(problem.num_vars, 0.0);
  double residual = 0.0;
  for (std::size_t it = 0; it < config.max_iters; ++it) {
    const Product k = product_psd(z);
    Product reflected = k;
    for (std::size_t p = 0; p < z.size(); ++p) {
      reflected[p] *= 2.0;
      reflected[p] -= z[p];
    }
    const std::vector<double> x = slice.nearest_variables(reflected);
    const Product l = slice.point(x);
    Product gap = k;
    for (std::size_t p = 0; p < gap.size(); ++p) gap[p] -= l[p];
    residual = product_norm(gap);

    if (it % check_every == 0 || it + 1 == config.max_iters) {
      const std::vector<double> shadow_x = slice.nearest_variables(k);
      for (const auto* cand : {&shadow_x, &x}) {
        if (verify_witness(problem, *cand, config.tol_feas)) {
          out.status = Status::Feasible;
          out.witness = *cand;
          out.stats.iterations = it + 1;
          out.stats.residual = residual;
          out.stats.max_violation = max_violation(problem, *cand);
          return out;
        }
      }
      last_x = shadow_x;
      if (residual > 0.0) {
        if (auto cert = extract_certificate(problem, slice, gap, config)) {
          out.status = Status::Infeasible;
          out.certificate = std::move(cert);
          out.stats.iterations = it + 1;
          out.stats.residual = residual;
          out.stats.max_violation = max_violation(problem, shadow_x);
          return out;
        }
      }
    }
    for (std::size_t p = 0; p < z.size(); ++p) {
      z[p] += l[p];
      z[p] -= k[p];
    }
  }
  out.status = Status::Unknown;
  out.stats.iterations = config.max_iters;
  out.stats.residual = residual;
  out.stats.max_violation = max_violation(problem, last_x);
  return out;
}

bool check_certificate(const LmiProblem& problem, const Certificate& cert, const SolverConfig& config) {
  if (cert.multipliers.size() != problem.blocks.size()) {
    throw DimensionMismatch("check_certificate: " + std::to_string(cert.multipliers.size()) + " multipliers for " +
                            std::to_string(problem.blocks.size()) + " blocks");
  }
  double trace = 0.0;
  for (std::size_t p = 0; p < problem.blocks.size(); ++p) {
    if (cert.multipliers[p].dim() != problem.blocks[p].dim()) {
      throw DimensionMismatch("check_certificate: multiplier " + std::to_string(p) + " has the wrong size");
    }
    trace += cert.multipliers[p].trace();
  }
  if (!(trace > 0.0) || !std::isfinite(trace)) return false;
  const double scale = 1.0 / trace;

  for (const auto& lam : cert.multipliers) {
    const double norm = lam.frobenius_norm() * scale;
    if (min_eigenvalue(lam) * scale < -config.tol_eig * std::max(1.0, norm)) return false;
  }
  for (std::size_t i = 0; i < problem.num_vars; ++i) {
    double pairing = 0.0;
    double norm2 = 0.0;
    for (std::size_t p = 0; p < problem.blocks.size(); ++p) {
      const auto& a = problem.blocks[p].coefficients[i];
      pairing += frobenius_inner(cert.multipliers[p], a);
      norm2 += frobenius_inner(a, a);
    }
    if (std::abs(pairing * scale) > config.tol_cert * std::max(1.0, std::sqrt(norm2))) return false;
  }
  double value = 0.0;
  for (std::size_t p = 0; p < problem.blocks.size(); ++p) {
    const auto& b = problem.blocks[p];
    value += frobenius_inner(cert.multipliers[p], b.constant) - b.margin * cert.multipliers[p].trace();
  }
  return value * scale <= -config.tol_cert;
}

FeasibilityOutcome decide(const LmiProblem& problem, const SolverConfig& config) {
  problem.validate();
  if (config.exact_diagonal && problem.is_diagonal()) return solve_diagonal_exact(problem);
  return solve_feasibility(problem, config);
}

MarginResult max_margin(const LmiProblem& problem, const SolverConfig& config) {
  problem.validate();
  MarginResult result;
  double biggest = 0.0;
  for (const auto& b : problem.blocks) biggest = std::max(biggest, b.constant.frobenius_norm());
  result.t_max = 1.0 + biggest;

  SolverConfig probe_config = config;
  probe_config.max_iters = std::max<std::size_t>(2000, config.max_iters / 10);

  auto probe = [&](double t) {
    LmiProblem shifted = problem;
    for (auto& b : shifted.blocks) {
      b.margin = t;
      b.strict = false;
    }
    return decide(shifted, probe_config);
  };

  FeasibilityOutcome at_zero = probe(0.0);
  if (!at_zero.feasible()) return result;
  result.feasible_at_zero = true;
  result.witness = at_zero.witness;

  FeasibilityOutcome at_top = probe(result.t_max);
  if (at_top.feasible()) {
    result.t_star = result.t_max;
    result.witness = at_top.witness;
    return result;
  }
  double lo = 0.0;
  double hi = result.t_max;
  while (hi - lo > config.tol_bisect) {
    const double mid = 0.5 * (lo + hi);
    FeasibilityOutcome o = probe(mid);
    if (o.feasible()) {
      lo = mid;
      result.witness = o.witness;
    } else {
      hi = mid;
    }
  }
  result.t_star = lo;
  return result;
}

}  // namespace opcone
