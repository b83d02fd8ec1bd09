#include "opcone/exact_lp.hpp"

#include <map>
#include <optional>
#include <stdexcept>

#include "opcone/error.hpp"

namespace opcone {

namespace {

constexpr std::size_t kFourierMotzkinMaxVars = 3;
constexpr std::size_t kFourierMotzkinMaxRows = 200'000;

struct TrackedRow {
  std::vector<Rational> g;
  Rational h;
  std::vector<Rational> lambda;
};

bool all_zero(const std::vector<Rational>& v, std::size_t upto) {
  for (std::size_t k = 0; k < upto; ++k)
    if (v[k] != 0) return false;
  return true;
}

// Scales the row so its first nonzero coefficient among the first `upto` has magnitude 1.
void normalize(TrackedRow& row, std::size_t upto) {
  for (std::size_t k = 0; k < upto; ++k) {
    if (row.g[k] != 0) {
      const Rational s = 1 / abs(row.g[k]);
      for (auto& v : row.g) v *= s;
      row.h *= s;
      for (auto& v : row.lambda) v *= s;
      return;
    }
  }
}

// Keeps, per normalized direction over variables [0, upto), the row with the largest rhs.
std::vector<TrackedRow> prune(std::vector<TrackedRow> rows, std::size_t upto) {
  std::map<std::vector<Rational>, TrackedRow> best;
  for (auto& row : rows) {
    normalize(row, upto);
    std::vector<Rational> key(row.g.begin(), row.g.begin() + static_cast<std::ptrdiff_t>(upto));
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(std::move(key), std::move(row));
    } else if (row.h > it->second.h) {
      it->second = std::move(row);
    }
  }
  std::vector<TrackedRow> out;
  out.reserve(best.size());
  for (auto& [key, row] : best) out.push_back(std::move(row));
  return out;
}

std::optional<ExactLpResult> fourier_motzkin_impl(const LinearSystem& system) {
  const std::size_t n = system.num_vars;
  const std::size_t m = system.rows.size();
  ExactLpResult result;
  result.method = Method::FourierMotzkin;

  std::vector<TrackedRow> rows;
  rows.reserve(m);
  for (std::size_t c = 0; c < m; ++c) {
    TrackedRow r{system.rows[c].coeffs, system.rows[c].rhs, std::vector<Rational>(m)};
    r.lambda[c] = 1;
    rows.push_back(std::move(r));
  }

  auto contradiction = [&](const std::vector<TrackedRow>& rs, std::size_t upto) -> const TrackedRow* {
    for (const auto& r : rs)
      if (all_zero(r.g, upto) && r.h > 0) return &r;
    return nullptr;
  };

  // stages[t] involves variables [0, n - t).
  std::vector<std::vector<TrackedRow>> stages;
  stages.push_back(prune(rows, n));
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t j = n - 1 - t;
    const auto& cur = stages.back();
    if (const TrackedRow* bad = contradiction(cur, j + 1)) {
      result.feasible = false;
      result.multipliers = bad->lambda;
      return result;
    }
    std::vector<const TrackedRow*> pos, neg;
    std::vector<TrackedRow> next;
    for (const auto& r : cur) {
      if (r.g[j] > 0) {
        pos.push_back(&r);
      } else if (r.g[j] < 0) {
        neg.push_back(&r);
      } else {
        next.push_back(r);
      }
    }
    if (next.size() + pos.size() * neg.size() > kFourierMotzkinMaxRows) return std::nullopt;
    for (const TrackedRow* p : pos) {
      const Rational sp = 1 / p->g[j];
      for (const TrackedRow* q : neg) {
        const Rational sq = -1 / q->g[j];
        TrackedRow r;
        r.g.resize(n);
        r.lambda.resize(m);
        for (std::size_t k = 0; k < n; ++k) r.g[k] = sp * p->g[k] + sq * q->g[k];
        r.g[j] = 0;
        r.h = sp * p->h + sq * q->h;
        for (std::size_t c = 0; c < m; ++c) r.lambda[c] = sp * p->lambda[c] + sq * q->lambda[c];
        next.push_back(std::move(r));
        ++result.steps;
      }
    }
    stages.push_back(prune(std::move(next), j));
  }
  if (const TrackedRow* bad = contradiction(stages.back(), 0)) {
    result.feasible = false;
    result.multipliers = bad->lambda;
    return result;
  }

  result.feasible = true;
  result.point.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    const auto& stage = stages[n - 1 - j];
    std::optional<Rational> lower, upper;
    for (const auto& r : stage) {
      if (r.g[j] == 0) continue;
      Rational rest = r.h;
      for (std::size_t k = 0; k < j; ++k) rest -= r.g[k] * result.point[k];
      const Rational bound = rest / r.g[j];
      if (r.g[j] > 0) {
        if (!lower || bound > *lower) lower = bound;
      } else {
        if (!upper || bound < *upper) upper = bound;
      }
    }
    if (lower && upper) {
      result.point[j] = (*lower + *upper) / 2;
    } else if (lower) {
      result.point[j] = *lower;
    } else if (upper) {
      result.point[j] = *upper;
    }
  }
  return result;
}

}  // namespace

ExactLpResult fourier_motzkin(const LinearSystem& system) {
  auto r = fourier_motzkin_impl(system);
  if (!r) throw InvalidProblem("fourier_motzkin: elimination exceeded the row budget");
  return *r;
}

ExactLpResult simplex_phase_one(const LinearSystem& system) {
  const std::size_t n = system.num_vars;
  const std::size_t m = system.rows.size();
  ExactLpResult result;
  result.method = Method::Simplex;
  if (m == 0) {
    result.feasible = true;
    result.point.assign(n, Rational(0));
    return result;
  }

  // Columns: x+ [0, n), x- [n, 2n), surplus [2n, 2n+m), artificial [2n+m, 2n+2m), rhs last.
  const std::size_t art0 = 2 * n + m;
  const std::size_t cols = 2 * n + 2 * m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1));
  std::vector<int> sigma(m, 1);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = system.rows[i];
    sigma[i] = row.rhs < 0 ? -1 : 1;
    for (std::size_t k = 0; k < n; ++k) {
      t[i][k] = sigma[i] * row.coeffs[k];
      t[i][n + k] = -sigma[i] * row.coeffs[k];
    }
    t[i][2 * n + i] = -sigma[i];
    t[i][art0 + i] = 1;
    t[i][cols] = sigma[i] * row.rhs;
    basis[i] = art0 + i;
  }
  // Reduced costs of the phase-1 objective (sum of artificials); last entry holds -z.
  std::vector<Rational> obj(cols + 1);
  for (std::size_t j = 0; j <= cols; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s += t[i][j];
    obj[j] = (j >= art0 && j < cols ? Rational(1) : Rational(0)) - s;
  }

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) throw std::logic_error("simplex_phase_one: unbounded phase-1 objective");
    const Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (obj[enter] != 0) {
      const Rational f = obj[enter];
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
    ++result.steps;
  }

  const Rational z = -obj[cols];
  if (z > 0) {
    result.feasible = false;
    result.multipliers.resize(m);
    for (std::size_t i = 0; i < m; ++i) result.multipliers[i] = sigma[i] * (1 - obj[art0 + i]);
    if (!is_farkas_certificate(system, result.multipliers)) {
      throw std::logic_error("simplex_phase_one: dual multipliers failed Farkas verification");
    }
    return result;
  }
  result.feasible = true;
  std::vector<Rational> values(cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) values[basis[i]] = t[i][cols];
  result.point.resize(n);
  for (std::size_t k = 0; k < n; ++k) result.point[k] = values[k] - values[n + k];
  return result;
}

ExactLpResult solve_linear_system(const LinearSystem& system) {
  if (system.num_vars <= kFourierMotzkinMaxVars) {
    if (auto r = fourier_motzkin_impl(system)) return *r;
  }
  return simplex_phase_one(system);
}

bool satisfies(const LinearSystem& system, const std::vector<Rational>& point) {
  if (point.size() != system.num_vars) return false;
  for (const auto& row : system.rows) {
    Rational lhs = 0;
    for (std::size_t k = 0; k < system.num_vars; ++k) lhs += row.coeffs[k] * point[k];
    if (lhs < row.rhs) return false;
  }
  return true;
}

bool is_farkas_certificate(const LinearSystem& system, const std::vector<Rational>& multipliers) {
  if (multipliers.size() != system.rows.size()) return false;
  std::vector<Rational> combo(system.num_vars, Rational(0));
  Rational rhs = 0;
  for (std::size_t c = 0; c < system.rows.size(); ++c) {
    if (multipliers[c] < 0) return false;
    if (multipliers[c] == 0) continue;
    for (std::size_t k = 0; k < system.num_vars; ++k) combo[k] += multipliers[c] * system.rows[c].coeffs[k];
    rhs += multipliers[c] * system.rows[c].rhs;
  }
  for (const auto& v : combo)
    if (v != 0) return false;
  return rhs > 0;
}

LinearSystem diagonal_lp(const LmiProblem& problem) {
  problem.validate();
  if (!problem.is_diagonal()) throw NotDiagonal("diagonal_lp: problem has off-diagonal entries");
  LinearSystem sys;
  sys.num_vars = problem.num_vars;
  for (const auto& b : problem.blocks) {
    const Rational margin = to_rational(b.margin);
    for (std::size_t i = 0; i < b.dim(); ++i) {
      LinearInequality row;
      row.coeffs.reserve(problem.num_vars);
      for (const auto& a : b.coefficients) row.coeffs.push_back(to_rational(a(i, i).real()));
      row.rhs = margin - to_rational(b.constant(i, i).real());
      sys.rows.push_back(std::move(row));
    }
  }
  return sys;
}

FeasibilityOutcome solve_diagonal_exact(const LmiProblem& problem) {
  const LinearSystem sys = diagonal_lp(problem);
  const ExactLpResult r = solve_linear_system(sys);

  FeasibilityOutcome out;
  out.stats.method = r.method;
  out.stats.iterations = r.steps;
  ExactSolution exact;
  if (r.feasible) {
    out.status = Status::Feasible;
    exact.witness = r.point;
    out.witness.reserve(r.point.size());
    for (const auto& q : r.point) out.witness.push_back(to_double(q));
    out.stats.max_violation = 0.0;
  } else {
    out.status = Status::Infeasible;
    Certificate cert;
    std::size_t c = 0;
    for (const auto& b : problem.blocks) {
      std::vector<Rational> ys(r.multipliers.begin() + static_cast<std::ptrdiff_t>(c),
                               r.multipliers.begin() + static_cast<std::ptrdiff_t>(c + b.dim()));
      std::vector<double> diag;
      diag.reserve(ys.size());
      for (const auto& y : ys) diag.push_back(to_double(y));
      cert.multipliers.push_back(HermitianMatrix::diagonal(diag));
      exact.multipliers.push_back(std::move(ys));
      c += b.dim();
    }
    out.certificate = std::move(cert);
  }
  out.exact = std::move(exact);
  return out;
}

}  // namespace opcone
