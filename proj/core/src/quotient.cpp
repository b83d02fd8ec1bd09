#include "opcone/quotient.hpp"

#include <cmath>

#include <algorithm>

#include "opcone/error.hpp"
#include "opcone/subsystem.hpp"

namespace opcone {

namespace {

/// Real and imaginary parts of every stored entry, read as rationals.
std::vector<Rational> rational_entries(const HermitianMatrix& m) {
  std::vector<Rational> out;
  out.reserve(2 * m.packed().size());
  for (const Complex& z : m.packed()) {
    out.push_back(to_rational(z.real()));
    out.push_back(to_rational(z.imag()));
  }
  return out;
}

void require_same_space(const QuotientElement& a, const QuotientElement& b, const char* where) {
  if (!(a.quotient == b.quotient) || a.level != b.level) {
    throw DimensionMismatch(std::string(where) + ": elements live in different quotients or levels");
  }
}

void require_member(const QuotientSystem& q, const QuotientElement& e, const char* where) {
  if (!(e.quotient == q)) throw DimensionMismatch(std::string(where) + ": element is not in the given quotient");
}

}  // namespace

QuotientSystem QuotientSystem::jkm(std::size_t k, std::size_t m) {
  if (k == 0 || m == 0) throw InvalidDimension("jkm: k and m must both be >= 1");
  std::vector<Rational> v(k, Rational(1));
  v.insert(v.end(), m, Rational(-1));
  return from_null_vector(std::move(v));
}

QuotientSystem QuotientSystem::from_null_vector(std::vector<Rational> v) {
  QuotientSystem q;
  for (const auto& x : v) {
    if (x > 0) ++q.k_;
    if (x < 0) ++q.m_;
  }
  if (q.k_ == 0 || q.m_ == 0) {
    throw InvalidDimension("quotient: the null vector needs both a positive and a negative entry");
  }
  q.sign_vector_ = true;
  for (std::size_t p = 0; p < v.size(); ++p) {
    const Rational want = p < q.k_ ? Rational(1) : Rational(-1);
    if (v[p] != want) q.sign_vector_ = false;
  }
  q.v_ = std::move(v);
  return q;
}

QuotientElement make_quotient_element(const QuotientSystem& q, std::vector<HermitianMatrix> blocks) {
  if (blocks.size() != q.n()) {
    throw DimensionMismatch("quotient element: expected " + std::to_string(q.n()) + " blocks, got " +
                            std::to_string(blocks.size()));
  }
  const std::size_t r = blocks.front().dim();
  if (r == 0) throw DimensionMismatch("quotient element: empty blocks");
  for (const auto& b : blocks)
    if (b.dim() != r) throw DimensionMismatch("quotient element: blocks have different sizes");
  return QuotientElement{q, r, std::move(blocks)};
}

QuotientElement scalar_element(const QuotientSystem& q, std::span<const double> coords) {
  std::vector<HermitianMatrix> blocks;
  for (double c : coords) blocks.push_back(HermitianMatrix::diagonal(std::vector<double>{c}));
  return make_quotient_element(q, std::move(blocks));
}

QuotientElement quotient_unit(const QuotientSystem& q, std::size_t level) {
  if (level == 0) throw InvalidDimension("quotient_unit: level must be >= 1");
  return make_quotient_element(q, std::vector<HermitianMatrix>(q.n(), HermitianMatrix::identity(level)));
}

LmiProblem quotient_positive_problem(const QuotientElement& e, double margin) {
  const std::size_t r = e.level;
  const auto t_basis = full_matrix_algebra(1).level_basis(r);
  LmiProblem problem;
  problem.num_vars = t_basis.size();
  for (std::size_t p = 0; p < e.blocks.size(); ++p) {
    AffineBlock blk;
    blk.constant = e.blocks[p];
    blk.margin = margin;
    const double vp = e.quotient.null_entry(p);
    for (const auto& t : t_basis) blk.coefficients.push_back(vp * t);
    problem.blocks.push_back(std::move(blk));
  }
  return problem;
}

FeasibilityOutcome quotient_positive(const QuotientElement& e, double margin, const SolverConfig& config) {
  return decide(quotient_positive_problem(e, margin), config);
}

QuotientElement lifted_representative(const QuotientElement& e, std::span<const double> witness) {
  const HermitianMatrix t = hermitian_from_coords(witness, e.level);
  QuotientElement out = e;
  for (std::size_t p = 0; p < out.blocks.size(); ++p) out.blocks[p].add_scaled(e.quotient.null_entry(p), t);
  return out;
}

bool quotient_equal(const QuotientElement& a, const QuotientElement& b) {
  require_same_space(a, b, "quotient_equal");
  const auto& v = a.quotient.null_vector();
  std::vector<std::vector<Rational>> diff;
  diff.reserve(v.size());
  for (std::size_t p = 0; p < v.size(); ++p) {
    std::vector<Rational> ea = rational_entries(a.blocks[p]);
    const std::vector<Rational> eb = rational_entries(b.blocks[p]);
    for (std::size_t i = 0; i < ea.size(); ++i) ea[i] -= eb[i];
    diff.push_back(std::move(ea));
  }
  const auto pivot = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
  const std::size_t p0 = static_cast<std::size_t>(pivot - v.begin());
  std::vector<Rational> t = diff[p0];
  for (auto& x : t) x /= v[p0];
  for (std::size_t p = 0; p < v.size(); ++p)
    for (std::size_t i = 0; i < t.size(); ++i)
      if (diff[p][i] != v[p] * t[i]) return false;
  return true;
}

double quotient_distance(const QuotientElement& a, const QuotientElement& b) {
  require_same_space(a, b, "quotient_distance");
  std::vector<HermitianMatrix> diff;
  double norm2 = 0.0;
  HermitianMatrix t(a.blocks.front().dim());
  for (std::size_t p = 0; p < a.blocks.size(); ++p) {
    diff.push_back(a.blocks[p] - b.blocks[p]);
    const double vp = a.quotient.null_entry(p);
    norm2 += vp * vp;
    t.add_scaled(vp, diff.back());
  }
  t *= 1.0 / norm2;
  double out = 0.0;
  for (std::size_t p = 0; p < diff.size(); ++p) {
    diff[p].add_scaled(-a.quotient.null_entry(p), t);
    out += frobenius_inner(diff[p], diff[p]);
  }
  return std::sqrt(out);
}

QuotientElement canonicalize(const QuotientElement& e) {
  double norm2 = 0.0;
  HermitianMatrix t(e.level);
  for (std::size_t p = 0; p < e.blocks.size(); ++p) {
    const double vp = e.quotient.null_entry(p);
    norm2 += vp * vp;
    t.add_scaled(vp, e.blocks[p]);
  }
  t *= 1.0 / norm2;
  QuotientElement out = e;
  for (std::size_t p = 0; p < out.blocks.size(); ++p) out.blocks[p].add_scaled(-e.quotient.null_entry(p), t);
  return out;
}

Coproduct::Coproduct(std::size_t k, std::size_t m) : k_(k), m_(m), quotient_(QuotientSystem::jkm(k, m)) {}

QuotientElement Coproduct::left(std::vector<HermitianMatrix> x) const {
  if (x.size() != k_) throw DimensionMismatch("coproduct left: expected " + std::to_string(k_) + " blocks");
  const std::size_t r = x.front().dim();
  for (auto& b : x) b *= 2.0;
  x.insert(x.end(), m_, HermitianMatrix(r));
  return make_quotient_element(quotient_, std::move(x));
}

QuotientElement Coproduct::right(std::vector<HermitianMatrix> y) const {
  if (y.size() != m_) throw DimensionMismatch("coproduct right: expected " + std::to_string(m_) + " blocks");
  const std::size_t r = y.front().dim();
  std::vector<HermitianMatrix> blocks(k_, HermitianMatrix(r));
  for (auto& b : y) blocks.push_back(2.0 * b);
  return make_quotient_element(quotient_, std::move(blocks));
}

QuotientElement Coproduct::left(std::span<const double> x) const {
  std::vector<HermitianMatrix> blocks;
  for (double c : x) blocks.push_back(HermitianMatrix::diagonal(std::vector<double>{c}));
  return left(std::move(blocks));
}

QuotientElement Coproduct::right(std::span<const double> y) const {
  std::vector<HermitianMatrix> blocks;
  for (double c : y) blocks.push_back(HermitianMatrix::diagonal(std::vector<double>{c}));
  return right(std::move(blocks));
}

QuotientElement embed_quotient(const QuotientSystem& small, const QuotientSystem& big, const QuotientElement& e) {
  require_member(small, e, "embed_quotient");
  if (!small.is_sign_vector() || !big.is_sign_vector()) {
    throw DimensionMismatch("embed_quotient: both quotients must be of the form C^{k+m}/J_{k,m}");
  }
  const std::size_t k = small.k();
  const std::size_t m = small.m();
  if (k > big.k() || m > big.m()) throw DimensionMismatch("embed_quotient: target is smaller than the source");
  std::vector<HermitianMatrix> blocks(big.k() - k, e.blocks.front());
  blocks.insert(blocks.end(), e.blocks.begin(), e.blocks.end());
  blocks.insert(blocks.end(), big.m() - m, e.blocks.back());
  return make_quotient_element(big, std::move(blocks));
}

QuotientElement project_quotient(const QuotientSystem& big, const QuotientSystem& small, const QuotientElement& e) {
  require_member(big, e, "project_quotient");
  if (!small.is_sign_vector() || !big.is_sign_vector()) {
    throw DimensionMismatch("project_quotient: both quotients must be of the form C^{k+m}/J_{k,m}");
  }
  const std::size_t k = small.k();
  const std::size_t m = small.m();
  const std::size_t k1 = big.k();
  if (k > k1 || m > big.m()) throw DimensionMismatch("project_quotient: target is larger than the source");
  std::vector<HermitianMatrix> blocks(e.blocks.begin() + static_cast<std::ptrdiff_t>(k1 - k),
                                      e.blocks.begin() + static_cast<std::ptrdiff_t>(k1 + m));
  return make_quotient_element(small, std::move(blocks));
}

}  // namespace opcone
