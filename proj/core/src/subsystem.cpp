#include "opcone/subsystem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "opcone/error.hpp"

namespace opcone {

namespace {

RealMatrix gram_matrix(const std::vector<HermitianMatrix>& family) {
  const std::size_t n = family.size();
  RealMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      g(i, j) = frobenius_inner(family[i], family[j]);
      g(j, i) = g(i, j);
    }
  return g;
}

RealMatrix symmetric_inverse(const RealMatrix& g) {
  const std::size_t n = g.rows();
  const SymmetricEigen eg = jacobi_eigen(g);
  RealMatrix inv(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eg.eigenvalues[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) += eg.eigenvectors(i, k) * eg.eigenvectors(j, k) / lambda;
  }
  return inv;
}

/// Reduced row echelon solve of A x = b over the rationals; nullopt when inconsistent.
/// Free variables are set to zero.
std::optional<std::vector<Rational>> rational_solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                                                    std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pick = row;
    while (pick < rows && a[pick][col] == 0) ++pick;
    if (pick == rows) continue;
    std::swap(a[pick], a[row]);
    std::swap(b[pick], b[row]);
    const Rational inv = 1 / a[row][col];
    for (auto& v : a[row]) v *= inv;
    b[row] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < cols; ++c) a[r][c] -= f * a[row][c];
      b[r] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r)
    if (b[r] != 0) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = b[r];
  return x;
}

HermitianMatrix hermitian_part(const ComplexMatrix& m) { return HermitianMatrix::from_dense(m); }

/// (m - m*) / (2i), the Hermitian "imaginary part".
HermitianMatrix skew_part(const ComplexMatrix& m) {
  const std::size_t d = m.rows();
  HermitianMatrix out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) out.set(i, j, (m(i, j) - std::conj(m(j, i))) / Complex(0.0, 2.0));
  return out;
}

void place_block(HermitianMatrix& out, std::size_t d, std::size_t p, std::size_t q, const ComplexMatrix& blk) {
  // Writes block (p, q) with p >= q; the (q, p) block follows by Hermitian symmetry.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t row = p * d + i;
      const std::size_t col = q * d + j;
      if (row >= col) out.set(row, col, blk(i, j));
    }
}

ComplexMatrix combine_complex(const HermitianMatrix& re_part, const HermitianMatrix& im_part) {
  const std::size_t d = re_part.dim();
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = re_part(i, j) + Complex(0.0, 1.0) * im_part(i, j);
  return out;
}

void check_level(const HermitianMatrix& m, std::size_t d, std::size_t r, const char* where) {
  if (r == 0 || m.dim() != r * d) {
    throw DimensionMismatch(std::string(where) + ": expected dimension " + std::to_string(r * d) + ", got " +
                            std::to_string(m.dim()));
  }
}

}  // namespace

HermitianMatrix OperatorSubsystem::combine(std::span<const double> coords) const {
  if (coords.size() != basis_.size()) throw DimensionMismatch("combine: wrong number of coordinates");
  HermitianMatrix out(ambient_dim_);
  for (std::size_t i = 0; i < coords.size(); ++i) out.add_scaled(coords[i], basis_[i]);
  return out;
}

std::vector<double> OperatorSubsystem::solve_gram(std::span<const double> rhs) const {
  const std::size_t n = basis_.size();
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x[i] += gram_inverse_(i, j) * rhs[j];
  return x;
}

std::vector<double> OperatorSubsystem::least_squares(const HermitianMatrix& m, double* residual) const {
  std::vector<double> rhs(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) rhs[i] = frobenius_inner(basis_[i], m);
  std::vector<double> x = solve_gram(rhs);
  if (residual != nullptr) *residual = (m - combine(x)).frobenius_norm();
  return x;
}

std::vector<Rational> OperatorSubsystem::exact_coords(const HermitianMatrix& m, bool* consistent) const {
  const std::size_t d = ambient_dim_;
  const std::size_t n = basis_.size();
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(n));
  std::vector<Rational> b(d);
  for (std::size_t p = 0; p < d; ++p) {
    for (std::size_t j = 0; j < n; ++j) a[p][j] = to_rational(basis_[j](p, p).real());
    b[p] = to_rational(m(p, p).real());
  }
  auto x = rational_solve(std::move(a), std::move(b), n);
  *consistent = x.has_value();
  return x ? *x : std::vector<Rational>{};
}

std::vector<double> OperatorSubsystem::coords(const HermitianMatrix& m) const {
  if (m.dim() != ambient_dim_) {
    throw DimensionMismatch("coords: matrix has dimension " + std::to_string(m.dim()) + ", system has " +
                            std::to_string(ambient_dim_));
  }
  const double scale = std::max(1.0, m.frobenius_norm());
  if (diagonal_ && m.is_diagonal()) {
    bool consistent = false;
    const std::vector<Rational> exact = exact_coords(m, &consistent);
    if (consistent) {
      std::vector<double> out;
      out.reserve(exact.size());
      for (const auto& q : exact) out.push_back(to_double(q));
      return out;
    }
    // Rounding noise in m can make the rational system inconsistent; the numeric
    // residual then decides.
  }
  double residual = 0.0;
  std::vector<double> x = least_squares(m, &residual);
  if (residual > kTolSpan * scale) {
    throw NotInSpan("coords: residual " + std::to_string(residual) + " exceeds the span tolerance");
  }
  return x;
}

bool OperatorSubsystem::contains(const HermitianMatrix& m) const {
  try {
    coords(m);
    return true;
  } catch (const NotInSpan&) {
    return false;
  }
}

HermitianMatrix OperatorSubsystem::project(const HermitianMatrix& m) const {
  if (m.dim() != ambient_dim_) throw DimensionMismatch("project: dimension differs from the system");
  return combine(least_squares(m, nullptr));
}

std::vector<HermitianMatrix> OperatorSubsystem::level_basis(std::size_t r) const {
  if (r == 0) throw InvalidDimension("level_basis: level must be >= 1");
  std::vector<HermitianMatrix> out;
  out.reserve(r * r * basis_.size());
  for (std::size_t p = 0; p < r; ++p)
    for (std::size_t q = p; q < r; ++q) {
      HermitianMatrix sym(r);
      HermitianMatrix anti(r);
      if (p == q) {
        sym.set(p, p, 1.0);
      } else {
        sym.set(q, p, 1.0);
        anti.set(q, p, Complex(0.0, -1.0));  // entry (p, q) = i
      }
      for (const auto& b : basis_) out.push_back(kron(sym, b));
      if (p != q)
        for (const auto& b : basis_) out.push_back(kron(anti, b));
    }
  return out;
}

HermitianMatrix OperatorSubsystem::level_combine(std::span<const double> coords, std::size_t r) const {
  const std::size_t n = basis_.size();
  if (r == 0 || coords.size() != r * r * n) throw DimensionMismatch("level_combine: wrong number of coordinates");
  const std::size_t d = ambient_dim_;
  HermitianMatrix out(r * d);
  std::size_t at = 0;
  for (std::size_t p = 0; p < r; ++p)
    for (std::size_t q = p; q < r; ++q) {
      const HermitianMatrix re_part = combine(coords.subspan(at, n));
      at += n;
      if (p == q) {
        place_block(out, d, p, p, re_part.dense());
        continue;
      }
      const HermitianMatrix im_part = combine(coords.subspan(at, n));
      at += n;
      // Block (p, q) = re + i im, so block (q, p) = re - i im.
      place_block(out, d, q, p, combine_complex(re_part, -im_part));
    }
  return out;
}

std::vector<double> OperatorSubsystem::level_coords(const HermitianMatrix& m, std::size_t r) const {
  check_level(m, ambient_dim_, r, "level_coords");
  const std::size_t d = ambient_dim_;
  std::vector<double> out;
  out.reserve(r * r * basis_.size());
  for (std::size_t p = 0; p < r; ++p)
    for (std::size_t q = p; q < r; ++q) {
      const ComplexMatrix blk = block(m, d, p, q);
      const auto re_coords = coords(hermitian_part(blk));
      out.insert(out.end(), re_coords.begin(), re_coords.end());
      if (p == q) continue;
      const auto im_coords = coords(skew_part(blk));
      out.insert(out.end(), im_coords.begin(), im_coords.end());
    }
  return out;
}

bool OperatorSubsystem::level_contains(const HermitianMatrix& m, std::size_t r) const {
  try {
    level_coords(m, r);
    return true;
  } catch (const NotInSpan&) {
    return false;
  }
}

HermitianMatrix OperatorSubsystem::level_project(const HermitianMatrix& m, std::size_t r) const {
  check_level(m, ambient_dim_, r, "level_project");
  const std::size_t d = ambient_dim_;
  HermitianMatrix out(r * d);
  for (std::size_t p = 0; p < r; ++p)
    for (std::size_t q = 0; q <= p; ++q) {
      const ComplexMatrix blk = block(m, d, p, q);
      const HermitianMatrix re_part = project(hermitian_part(blk));
      if (p == q) {
        place_block(out, d, p, p, re_part.dense());
        continue;
      }
      place_block(out, d, p, q, combine_complex(re_part, project(skew_part(blk))));
    }
  return out;
}

OperatorSubsystem OperatorSubsystem::ambient() const {
  return diagonal_ ? diagonal_algebra(ambient_dim_) : full_matrix_algebra(ambient_dim_);
}

OperatorSubsystem make_subsystem(std::vector<HermitianMatrix> basis) {
  if (basis.empty()) throw DimensionMismatch("make_subsystem: empty basis");
  const std::size_t d = basis.front().dim();
  if (d == 0) throw DimensionMismatch("make_subsystem: zero-dimensional matrices");
  for (const auto& b : basis)
    if (b.dim() != d) throw DimensionMismatch("make_subsystem: basis elements have different dimensions");

  std::vector<HermitianMatrix> normalized;
  for (const auto& b : basis) {
    const double norm = b.frobenius_norm();
    if (norm == 0.0) throw DependentBasis("make_subsystem: zero basis element");
    normalized.push_back((1.0 / norm) * b);
  }
  const SymmetricEigen eg = jacobi_eigen(gram_matrix(normalized), false);
  if (eg.eigenvalues.front() < kTolSpan) {
    throw DependentBasis("make_subsystem: Gram matrix has minimum eigenvalue " + std::to_string(eg.eigenvalues.front()));
  }

  const HermitianMatrix unit = HermitianMatrix::identity(d);
  auto is_unit = [&](const HermitianMatrix& b) { return max_abs_difference(b, unit) <= kTolSym; };
  auto found = std::find_if(basis.begin(), basis.end(), is_unit);
  if (found != basis.end()) {
    std::rotate(basis.begin(), found, found + 1);
    basis.front() = unit;
  } else {
    OperatorSubsystem probe;
    probe.ambient_dim_ = d;
    probe.basis_ = basis;
    probe.gram_inverse_ = symmetric_inverse(gram_matrix(basis));
    double residual = 0.0;
    const std::vector<double> c = probe.least_squares(unit, &residual);
    if (residual > kTolSpan * std::sqrt(static_cast<double>(d))) {
      throw UnitNotInSpan("make_subsystem: identity is not in the span (residual " + std::to_string(residual) + ")");
    }
    std::size_t swap_out = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
      if (std::abs(c[i]) * basis[i].frobenius_norm() > std::abs(c[swap_out]) * basis[swap_out].frobenius_norm())
        swap_out = i;
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(swap_out));
    basis.insert(basis.begin(), unit);
  }

  OperatorSubsystem s;
  s.ambient_dim_ = d;
  s.diagonal_ = std::all_of(basis.begin(), basis.end(), [](const HermitianMatrix& b) { return b.is_diagonal(); });
  s.gram_inverse_ = symmetric_inverse(gram_matrix(basis));
  s.basis_ = std::move(basis);
  return s;
}

OperatorSubsystem full_matrix_algebra(std::size_t d) {
  if (d == 0) throw InvalidDimension("full_matrix_algebra: dimension must be >= 1");
  std::vector<HermitianMatrix> basis{HermitianMatrix::identity(d)};
  for (std::size_t i = 1; i < d; ++i) {
    HermitianMatrix e(d);
    e.set(i, i, 1.0);
    basis.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      HermitianMatrix re_part(d);
      re_part.set(i, j, 1.0);
      basis.push_back(std::move(re_part));
      HermitianMatrix im_part(d);
      im_part.set(i, j, Complex(0.0, 1.0));
      basis.push_back(std::move(im_part));
    }
  return make_subsystem(std::move(basis));
}

OperatorSubsystem diagonal_algebra(std::size_t d) {
  if (d == 0) throw InvalidDimension("diagonal_algebra: dimension must be >= 1");
  std::vector<HermitianMatrix> basis{HermitianMatrix::identity(d)};
  for (std::size_t i = 1; i < d; ++i) {
    HermitianMatrix e(d);
    e.set(i, i, 1.0);
    basis.push_back(std::move(e));
  }
  return make_subsystem(std::move(basis));
}

OperatorSubsystem block_diagonal_algebra(std::span<const std::size_t> sizes) {
  if (sizes.empty()) throw InvalidDimension("block_diagonal_algebra: no blocks");
  const std::size_t d = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  for (std::size_t n : sizes)
    if (n == 0) throw InvalidDimension("block_diagonal_algebra: empty block");
  std::vector<HermitianMatrix> basis{HermitianMatrix::identity(d)};
  std::size_t offset = 0;
  bool skipped_one = false;
  for (std::size_t n : sizes) {
    for (std::size_t i = 0; i < n; ++i) {
      // The identity replaces the very first diagonal unit.
      if (!skipped_one) {
        skipped_one = true;
      } else {
        HermitianMatrix e(d);
        e.set(offset + i, offset + i, 1.0);
        basis.push_back(std::move(e));
      }
      for (std::size_t j = 0; j < i; ++j) {
        HermitianMatrix re_part(d);
        re_part.set(offset + i, offset + j, 1.0);
        basis.push_back(std::move(re_part));
        HermitianMatrix im_part(d);
        im_part.set(offset + i, offset + j, Complex(0.0, 1.0));
        basis.push_back(std::move(im_part));
      }
    }
    offset += n;
  }
  return make_subsystem(std::move(basis));
}

bool positive_in_subsystem(const OperatorSubsystem& s, const HermitianMatrix& m, double margin) {
  s.coords(m);
  return min_eigenvalue(m) >= margin;
}

HermitianMatrix hermitian_from_coords(std::span<const double> coords, std::size_t r) {
  static const OperatorSubsystem scalars = full_matrix_algebra(1);
  return scalars.level_combine(coords, r);
}

}  // namespace opcone
