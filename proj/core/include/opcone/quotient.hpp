#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "opcone/feasibility.hpp"
#include "opcone/linalg.hpp"
#include "opcone/rational.hpp"

namespace opcone {

/// C^n / span{v} for a null vector v (one with both positive and negative entries).
class QuotientSystem {
 public:
  /// v = (1, ..., 1, -1, ..., -1) with k ones and m minus-ones. Throws InvalidDimension.
  static QuotientSystem jkm(std::size_t k, std::size_t m);
  /// Throws InvalidDimension when v has no entry of some sign.
  static QuotientSystem from_null_vector(std::vector<Rational> v);

  std::size_t n() const { return v_.size(); }
  /// Counts of positive and negative entries of v.
  std::size_t k() const { return k_; }
  std::size_t m() const { return m_; }
  /// True when v is the sign vector of jkm(k(), m()).
  bool is_sign_vector() const { return sign_vector_; }
  const std::vector<Rational>& null_vector() const { return v_; }
  double null_entry(std::size_t p) const { return to_double(v_.at(p)); }

  friend bool operator==(const QuotientSystem& a, const QuotientSystem& b) { return a.v_ == b.v_; }

 private:
  std::vector<Rational> v_;
  std::size_t k_ = 0;
  std::size_t m_ = 0;
  bool sign_vector_ = false;
};

/// An element of M_r(C^n / span{v}) given by a representative: n Hermitian r x r blocks.
struct QuotientElement {
  QuotientSystem quotient;
  std::size_t level = 1;
  std::vector<HermitianMatrix> blocks;
};

/// Validates block count and sizes. Throws DimensionMismatch.
QuotientElement make_quotient_element(const QuotientSystem& q, std::vector<HermitianMatrix> blocks);
/// Level-1 element with the given scalar coordinates.
QuotientElement scalar_element(const QuotientSystem& q, std::span<const double> coords);
/// The order unit: coset of (I_r, ..., I_r).
QuotientElement quotient_unit(const QuotientSystem& q, std::size_t level = 1);

/// The LMI "exists Hermitian T with A_p + v_p T >= margin I for every p" in the r^2
/// coordinates of T (see hermitian_from_coords).
LmiProblem quotient_positive_problem(const QuotientElement& e, double margin);

/// Decides whether e - margin * unit has a positive representative.
FeasibilityOutcome quotient_positive(const QuotientElement& e, double margin = 0.0, const SolverConfig& config = {});

/// The positive representative A_p + v_p T built from a witness of quotient_positive.
QuotientElement lifted_representative(const QuotientElement& e, std::span<const double> witness);

/// Exact coset equality: every entry is read with to_rational and the difference must be
/// v (x) T for a single T. Throws DimensionMismatch on different quotients or levels.
bool quotient_equal(const QuotientElement& a, const QuotientElement& b);
/// Frobenius distance between the classes of a and b.
double quotient_distance(const QuotientElement& a, const QuotientElement& b);

/// Representative orthogonal to v (x) M_r.
QuotientElement canonicalize(const QuotientElement& e);

/// C^k (+)_1 C^m realized as C^{k+m} / J_{k,m}.
class Coproduct {
 public:
  /// Throws InvalidDimension unless k, m >= 1.
  Coproduct(std::size_t k, std::size_t m);

  const QuotientSystem& quotient() const { return quotient_; }
  /// i(x): coset of (2x, 0). x holds k blocks of equal size.
  QuotientElement left(std::vector<HermitianMatrix> x) const;
  /// j(y): coset of (0, 2y). y holds m blocks of equal size.
  QuotientElement right(std::vector<HermitianMatrix> y) const;
  QuotientElement left(std::span<const double> x) const;
  QuotientElement right(std::span<const double> y) const;

 private:
  std::size_t k_;
  std::size_t m_;
  QuotientSystem quotient_;
};

/// C^{k+m}/J_{k,m} -> C^{k1+m1}/J_{k1,m1}: (a, b) -> (a_1 repeated k1-k times, a, b, b_m repeated m1-m times).
/// Throws DimensionMismatch unless k <= k1 and m <= m1, or when e does not live in `small`.
QuotientElement embed_quotient(const QuotientSystem& small, const QuotientSystem& big, const QuotientElement& e);
/// The left inverse of embed_quotient: keeps a_{k1-k+1..k1} and b_{1..m}.
QuotientElement project_quotient(const QuotientSystem& big, const QuotientSystem& small, const QuotientElement& e);

}  // namespace opcone
