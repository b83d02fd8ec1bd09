#include "opcone/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "opcone/error.hpp"

namespace opcone {

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("RealMatrix: " + std::to_string(data_.size()) + " entries for a " +
                            std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  }
}

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("ComplexMatrix product: inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  HermitianMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.lower_[index(i, i)] = 1.0;
  return m;
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> entries) {
  HermitianMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.lower_[index(i, i)] = entries[i];
  return m;
}

HermitianMatrix HermitianMatrix::from_dense(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("from_dense: matrix is not square");
  HermitianMatrix h(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < i; ++j) h.lower_[index(i, j)] = 0.5 * (m(i, j) + std::conj(m(j, i)));
    h.lower_[index(i, i)] = m(i, i).real();
  }
  return h;
}

void HermitianMatrix::set(std::size_t i, std::size_t j, Complex value) {
  if (i == j) {
    lower_[index(i, i)] = value.real();
  } else if (i > j) {
    lower_[index(i, j)] = value;
  } else {
    lower_[index(j, i)] = std::conj(value);
  }
}

ComplexMatrix HermitianMatrix::dense() const {
  ComplexMatrix out(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      out(i, j) = lower_[index(i, j)];
      out(j, i) = std::conj(lower_[index(i, j)]);
    }
  return out;
}

bool HermitianMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (lower_[index(i, j)] != Complex{}) return false;
  return true;
}

std::vector<double> HermitianMatrix::diagonal_entries() const {
  std::vector<double> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = lower_[index(i, i)].real();
  return out;
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += lower_[index(i, i)].real();
  return t;
}

double HermitianMatrix::frobenius_norm() const { return std::sqrt(frobenius_inner(*this, *this)); }

HermitianMatrix HermitianMatrix::conjugated(const ComplexMatrix& u) const {
  if (u.cols() != dim_) throw DimensionMismatch("conjugated: unitary has wrong size");
  return from_dense(u * dense() * u.adjoint());
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& other) {
  if (other.dim_ != dim_) throw DimensionMismatch("HermitianMatrix +: dimensions differ");
  for (std::size_t k = 0; k < lower_.size(); ++k) lower_[k] += other.lower_[k];
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& other) {
  if (other.dim_ != dim_) throw DimensionMismatch("HermitianMatrix -: dimensions differ");
  for (std::size_t k = 0; k < lower_.size(); ++k) lower_[k] -= other.lower_[k];
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double alpha) {
  for (auto& z : lower_) z *= alpha;
  return *this;
}

void HermitianMatrix::add_scaled(double alpha, const HermitianMatrix& other) {
  if (other.dim_ != dim_) throw DimensionMismatch("HermitianMatrix add_scaled: dimensions differ");
  if (alpha == 0.0) return;
  for (std::size_t k = 0; k < lower_.size(); ++k) lower_[k] += alpha * other.lower_[k];
}

HermitianMatrix hermitian_from_parts(const RealMatrix& real, const RealMatrix& imag, double tol_sym) {
  const std::size_t d = real.rows();
  if (real.cols() != d || imag.rows() != d || imag.cols() != d) {
    throw DimensionMismatch("hermitian_from_parts: real and imaginary parts must be equal-size square matrices");
  }
  HermitianMatrix h(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (std::abs(imag(i, i)) > tol_sym) {
      throw NotHermitian("hermitian_from_parts: imaginary diagonal entry (" + std::to_string(i) + ") is nonzero");
    }
    h.set(i, i, real(i, i));
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(real(i, j) - real(j, i)) > tol_sym || std::abs(imag(i, j) + imag(j, i)) > tol_sym) {
        throw NotHermitian("hermitian_from_parts: symmetry violated at (" + std::to_string(i) + "," +
                           std::to_string(j) + ")");
      }
      h.set(i, j, {0.5 * (real(i, j) + real(j, i)), 0.5 * (imag(i, j) - imag(j, i))});
    }
  }
  return h;
}

namespace {

void sort_ascending(std::vector<double>& values, RealMatrix* vectors) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> sorted(n);
  for (std::size_t k = 0; k < n; ++k) sorted[k] = values[order[k]];
  values = std::move(sorted);
  if (vectors != nullptr) {
    RealMatrix v(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) v(i, k) = (*vectors)(i, order[k]);
    *vectors = std::move(v);
  }
}

}  // namespace

SymmetricEigen jacobi_eigen(RealMatrix a, bool want_vectors, int max_sweeps) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("jacobi_eigen: matrix is not square");
  RealMatrix v = want_vectors ? RealMatrix::identity(n) : RealMatrix();

  bool converged = n <= 1;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::abs(a(p, q));
    if (off == 0.0) {
      converged = true;
      break;
    }
    // Early sweeps skip small entries; later sweeps flush negligible ones to zero.
    const double threshold = sweep < 3 ? 0.2 * off / static_cast<double>(n * n) : 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) && std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        if (std::abs(apq) <= threshold) continue;
        const double h = a(q, q) - a(p, p);
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = apq / h;
        } else {
          const double theta = 0.5 * h / apq;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::abs(a(p, q));
    if (off != 0.0) {
      throw NoConvergence("jacobi_eigen: off-diagonal mass " + std::to_string(off) + " after " +
                          std::to_string(max_sweeps) + " sweeps");
    }
  }

  SymmetricEigen out;
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = a(i, i);
  sort_ascending(out.eigenvalues, want_vectors ? &v : nullptr);
  out.eigenvectors = std::move(v);
  return out;
}

namespace {

RealMatrix real_embedding(const HermitianMatrix& m) {
  const std::size_t d = m.dim();
  RealMatrix e(2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Complex z = m(i, j);
      e(i, j) = z.real();
      e(i, j + d) = -z.imag();
      e(i + d, j) = z.imag();
      e(i + d, j + d) = z.real();
    }
  return e;
}

double rayleigh(const HermitianMatrix& m, const std::vector<Complex>& w) {
  const std::size_t d = m.dim();
  Complex acc{};
  for (std::size_t i = 0; i < d; ++i) {
    Complex row{};
    for (std::size_t j = 0; j < d; ++j) row += m(i, j) * w[j];
    acc += std::conj(w[i]) * row;
  }
  return acc.real();
}

}  // namespace

SpectralDecomposition eig_hermitian(const HermitianMatrix& m, int max_sweeps) {
  const std::size_t d = m.dim();
  SymmetricEigen big = jacobi_eigen(real_embedding(m), true, max_sweeps);

  double scale = 1.0;
  for (double x : big.eigenvalues) scale = std::max(scale, std::abs(x));
  const double cluster_tol = 1e-9 * scale;

  std::vector<std::pair<double, std::vector<Complex>>> pairs;
  pairs.reserve(d);
  std::size_t start = 0;
  while (start < 2 * d) {
    std::size_t end = start + 1;
    while (end < 2 * d && big.eigenvalues[end] - big.eigenvalues[end - 1] <= cluster_tol) ++end;
    const std::size_t size = end - start;
    if (size % 2 != 0) throw NoConvergence("eig_hermitian: embedded spectrum is not paired");

    std::vector<std::vector<Complex>> candidates;
    for (std::size_t c = start; c < end; ++c) {
      std::vector<Complex> w(d);
      for (std::size_t i = 0; i < d; ++i) w[i] = {big.eigenvectors(i, c), big.eigenvectors(i + d, c)};
      candidates.push_back(std::move(w));
    }
    // Pivoted Gram-Schmidt: the 2k real columns span a k-dimensional complex space.
    std::vector<std::vector<Complex>> accepted;
    std::vector<bool> used(size, false);
    while (accepted.size() < size / 2) {
      double best_norm = -1.0;
      std::size_t best = 0;
      for (std::size_t c = 0; c < size; ++c) {
        if (used[c]) continue;
        double n2 = 0.0;
        for (auto z : candidates[c]) n2 += std::norm(z);
        if (n2 > best_norm) {
          best_norm = n2;
          best = c;
        }
      }
      if (best_norm < 1e-12) throw NoConvergence("eig_hermitian: degenerate cluster collapse failed");
      used[best] = true;
      std::vector<Complex> q = candidates[best];
      const double inv = 1.0 / std::sqrt(best_norm);
      for (auto& z : q) z *= inv;
      for (std::size_t c = 0; c < size; ++c) {
        if (used[c]) continue;
        Complex proj{};
        for (std::size_t i = 0; i < d; ++i) proj += std::conj(q[i]) * candidates[c][i];
        for (std::size_t i = 0; i < d; ++i) candidates[c][i] -= proj * q[i];
      }
      accepted.push_back(std::move(q));
    }
    for (auto& w : accepted) {
      const double lambda = rayleigh(m, w);
      pairs.emplace_back(lambda, std::move(w));
    }
    start = end;
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  SpectralDecomposition out;
  out.eigenvalues.resize(d);
  out.eigenvectors = ComplexMatrix(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    out.eigenvalues[k] = pairs[k].first;
    for (std::size_t i = 0; i < d; ++i) out.eigenvectors(i, k) = pairs[k].second[i];
  }
  return out;
}

std::vector<double> eigenvalues(const HermitianMatrix& m, int max_sweeps) {
  SymmetricEigen big = jacobi_eigen(real_embedding(m), false, max_sweeps);
  std::vector<double> out(m.dim());
  for (std::size_t k = 0; k < m.dim(); ++k) out[k] = 0.5 * (big.eigenvalues[2 * k] + big.eigenvalues[2 * k + 1]);
  return out;
}

double min_eigenvalue(const HermitianMatrix& m) {
  if (m.dim() == 0) return 0.0;
  if (m.dim() == 1) return m(0, 0).real();
  return eigenvalues(m).front();
}

HermitianMatrix reconstruct(const SpectralDecomposition& s) {
  const std::size_t d = s.eigenvalues.size();
  HermitianMatrix out(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double lambda = s.eigenvalues[k];
    if (lambda == 0.0) continue;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        out.set(i, j, out(i, j) + lambda * s.eigenvectors(i, k) * std::conj(s.eigenvectors(j, k)));
  }
  return out;
}

HermitianMatrix project_psd(const HermitianMatrix& m) {
  if (m.dim() == 1) return HermitianMatrix::diagonal(std::vector<double>{std::max(0.0, m(0, 0).real())});
  SpectralDecomposition s = eig_hermitian(m);
  if (s.eigenvalues.empty() || s.eigenvalues.front() >= 0.0) return m;
  for (double& x : s.eigenvalues) x = std::max(0.0, x);
  return reconstruct(s);
}

HermitianMatrix negative_part(const HermitianMatrix& m) { return project_psd(m) - m; }

double frobenius_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("frobenius_inner: dimensions differ");
  const auto pa = a.packed();
  const auto pb = b.packed();
  double acc = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < i; ++j, ++k) acc += 2.0 * (pa[k].real() * pb[k].real() + pa[k].imag() * pb[k].imag());
    acc += pa[k].real() * pb[k].real();
    ++k;
  }
  return acc;
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  HermitianMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) {
          const std::size_t row = i * db + k;
          const std::size_t col = j * db + l;
          if (row >= col) out.set(row, col, aij * b(k, l));
        }
    }
  return out;
}

ComplexMatrix block(const HermitianMatrix& m, std::size_t d, std::size_t p, std::size_t q) {
  if (d == 0 || m.dim() % d != 0 || (p + 1) * d > m.dim() || (q + 1) * d > m.dim()) {
    throw DimensionMismatch("block: index outside the block grid");
  }
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = m(p * d + i, q * d + j);
  return out;
}

double max_abs_difference(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("max_abs_difference: dimensions differ");
  double worst = 0.0;
  const auto pa = a.packed();
  const auto pb = b.packed();
  for (std::size_t k = 0; k < pa.size(); ++k) worst = std::max(worst, std::abs(pa[k] - pb[k]));
  return worst;
}

}  // namespace opcone
