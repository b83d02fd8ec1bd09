#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace opcone {

using Complex = std::complex<double>;

/// Tolerances shared by the dense linear algebra routines.
inline constexpr double kTolEig = 1e-10;
inline constexpr double kTolSym = 1e-12;
inline constexpr int kMaxSweeps = 100;

/// Dense row-major real matrix.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  static RealMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const double> data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Dense row-major complex matrix. Used for unitaries and intermediate products.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ComplexMatrix adjoint() const;
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Dense complex Hermitian matrix.
///
/// Only the lower triangle is stored and the diagonal is kept real, so
/// entry(i, j) == conj(entry(j, i)) holds by construction.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t dim) : dim_(dim), lower_(dim * (dim + 1) / 2) {}

  static HermitianMatrix identity(std::size_t dim);
  static HermitianMatrix diagonal(std::span<const double> entries);
  /// Hermitian part (m + m*) / 2 of a square matrix.
  static HermitianMatrix from_dense(const ComplexMatrix& m);

  std::size_t dim() const { return dim_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return i >= j ? lower_[index(i, j)] : std::conj(lower_[index(j, i)]);
  }
  /// Sets entry (i, j) and, implicitly, (j, i). Diagonal writes drop the imaginary part.
  void set(std::size_t i, std::size_t j, Complex value);

  ComplexMatrix dense() const;
  bool is_diagonal() const;
  std::vector<double> diagonal_entries() const;
  double trace() const;
  double frobenius_norm() const;

  /// Returns u * this * u^*.
  HermitianMatrix conjugated(const ComplexMatrix& u) const;

  HermitianMatrix& operator+=(const HermitianMatrix& other);
  HermitianMatrix& operator-=(const HermitianMatrix& other);
  HermitianMatrix& operator*=(double alpha);
  /// this += alpha * other
  void add_scaled(double alpha, const HermitianMatrix& other);

  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(double alpha, HermitianMatrix a) { return a *= alpha; }
  friend HermitianMatrix operator-(HermitianMatrix a) { return a *= -1.0; }
  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

  std::span<const Complex> packed() const { return lower_; }

 private:
  static std::size_t index(std::size_t i, std::size_t j) { return i * (i + 1) / 2 + j; }

  std::size_t dim_ = 0;
  std::vector<Complex> lower_;
};

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, unitary
};

struct SymmetricEigen {
  std::vector<double> eigenvalues;  // ascending
  RealMatrix eigenvectors;          // columns, orthogonal
};

HermitianMatrix hermitian_from_parts(const RealMatrix& real, const RealMatrix& imag, double tol_sym = kTolSym);

/// Cyclic Jacobi on a real symmetric matrix.
SymmetricEigen jacobi_eigen(RealMatrix a, bool want_vectors = true, int max_sweeps = kMaxSweeps);

/// Spectral decomposition of a Hermitian matrix through its real 2d x 2d embedding
/// [[Re, -Im], [Im, Re]]. The embedding duplicates every eigenvalue; each duplicated
/// cluster is collapsed back to a complex orthonormal basis.
SpectralDecomposition eig_hermitian(const HermitianMatrix& m, int max_sweeps = kMaxSweeps);
std::vector<double> eigenvalues(const HermitianMatrix& m, int max_sweeps = kMaxSweeps);
double min_eigenvalue(const HermitianMatrix& m);

HermitianMatrix reconstruct(const SpectralDecomposition& s);
HermitianMatrix project_psd(const HermitianMatrix& m);
/// Negative part: project_psd(m) - m, which is PSD.
HermitianMatrix negative_part(const HermitianMatrix& m);

double frobenius_inner(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b);

/// Block (p, q) of size d x d of an (r*d) x (r*d) matrix viewed as an element of M_r(M_d).
ComplexMatrix block(const HermitianMatrix& m, std::size_t d, std::size_t p, std::size_t q);

double max_abs_difference(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace opcone
