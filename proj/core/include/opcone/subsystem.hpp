#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "opcone/linalg.hpp"
#include "opcone/rational.hpp"

namespace opcone {

/// Minimum eigenvalue of the Gram matrix of the normalized basis; also the relative
/// residual allowed by span membership tests.
inline constexpr double kTolSpan = 1e-9;

/// A unital self-adjoint subspace of M_d, given by a real basis of Hermitian matrices.
///
/// basis()[0] is always the identity. When every basis element is diagonal the
/// system is treated as living in the commutative ambient C^d.
class OperatorSubsystem {
 public:
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<HermitianMatrix>& basis() const { return basis_; }
  bool diagonal() const { return diagonal_; }

  HermitianMatrix combine(std::span<const double> coords) const;

  /// Basis coordinates of m. Diagonal systems solve the system exactly over the
  /// rationals first. Throws NotInSpan or DimensionMismatch.
  std::vector<double> coords(const HermitianMatrix& m) const;
  bool contains(const HermitianMatrix& m) const;
  /// Frobenius-orthogonal projection onto the span.
  HermitianMatrix project(const HermitianMatrix& m) const;

  /// Real spanning family of M_r(S) inside M_{r*d}, in the order
  /// for p <= q: p == q gives E_pp (x) B_j; p < q gives (E_pq + E_qp) (x) B_j, then i(E_pq - E_qp) (x) B_j.
  /// It has r^2 * dim() elements and is linearly independent.
  std::vector<HermitianMatrix> level_basis(std::size_t r) const;
  HermitianMatrix level_combine(std::span<const double> coords, std::size_t r) const;
  /// Coordinates with respect to level_basis(r). Throws NotInSpan.
  std::vector<double> level_coords(const HermitianMatrix& m, std::size_t r) const;
  bool level_contains(const HermitianMatrix& m, std::size_t r) const;
  /// Blockwise projection onto M_r(S).
  HermitianMatrix level_project(const HermitianMatrix& m, std::size_t r) const;

  /// The algebra the system sits in: C^d for diagonal systems, M_d otherwise.
  OperatorSubsystem ambient() const;

 private:
  friend OperatorSubsystem make_subsystem(std::vector<HermitianMatrix> basis);

  std::vector<double> solve_gram(std::span<const double> rhs) const;
  std::vector<double> least_squares(const HermitianMatrix& m, double* residual) const;
  std::vector<Rational> exact_coords(const HermitianMatrix& m, bool* consistent) const;

  std::size_t ambient_dim_ = 0;
  std::vector<HermitianMatrix> basis_;
  bool diagonal_ = false;
  RealMatrix gram_inverse_;
};

/// Validates a spanning list and returns the system with the identity first.
///
/// If the identity is not in the list but lies in its span, it replaces the basis
/// element with the largest coefficient in its expansion. Throws DimensionMismatch on
/// an empty or ragged list, DependentBasis when the Gram test fails, UnitNotInSpan
/// when the identity is missing from the span.
OperatorSubsystem make_subsystem(std::vector<HermitianMatrix> basis);

OperatorSubsystem full_matrix_algebra(std::size_t d);
OperatorSubsystem diagonal_algebra(std::size_t d);
/// diag(M_{n_1}, ..., M_{n_b}) inside M_{n_1 + ... + n_b}.
OperatorSubsystem block_diagonal_algebra(std::span<const std::size_t> sizes);

/// min_eigenvalue(m) >= margin, after checking m is in the span. Throws NotInSpan.
bool positive_in_subsystem(const OperatorSubsystem& s, const HermitianMatrix& m, double margin = 0.0);

/// r x r Hermitian matrix from coordinates in the order used by level_basis with d = 1.
HermitianMatrix hermitian_from_coords(std::span<const double> coords, std::size_t r);

}  // namespace opcone
