#include <doctest.h>

#include <random>

#include "support/oracles.hpp"

using namespace opcone;

namespace {

RealMatrix rm(std::size_t n, std::vector<double> v) { return RealMatrix(n, n, std::move(v)); }

double reconstruction_error(const HermitianMatrix& m) {
  return (reconstruct(eig_hermitian(m)) - m).frobenius_norm();
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("hermitian_from_parts") {
    const HermitianMatrix a = hermitian_from_parts(rm(2, {1, 0, 0, 0}), rm(2, {0, 0, 0, 0}));
    CHECK(a == catalog::lattice_a());
    CHECK(hermitian_from_parts(RealMatrix::identity(3), RealMatrix(3, 3)) == HermitianMatrix::identity(3));

    const HermitianMatrix m = hermitian_from_parts(rm(2, {0, 1, 1, 0}), rm(2, {0, 1, -1, 0}));
    // lambda^2 - |1 + i|^2 = 0
    const auto ev = eigenvalues(m);
    CHECK(ev[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(m(0, 1) == Complex(1.0, 1.0));
    CHECK(m(1, 0) == Complex(1.0, -1.0));

    CHECK_THROWS_AS(hermitian_from_parts(rm(2, {0, 1, 0, 0}), RealMatrix(2, 2)), NotHermitian);
    CHECK_THROWS_AS(hermitian_from_parts(RealMatrix(2, 2), rm(2, {1, 0, 0, 0})), NotHermitian);
    CHECK_THROWS_AS(hermitian_from_parts(rm(2, {0, 1, 1, 0}), rm(2, {0, 1, 1, 0})), NotHermitian);
    CHECK_THROWS_AS(hermitian_from_parts(RealMatrix(2, 2), RealMatrix(3, 3)), DimensionMismatch);
    // Rounded literals within tol_sym are accepted and symmetrized.
    const HermitianMatrix near = hermitian_from_parts(rm(2, {0, 1, 1 + 1e-13, 0}), RealMatrix(2, 2));
    CHECK(near(1, 0).real() == doctest::Approx(1.0 + 5e-14).epsilon(1e-15));
  }

  TEST_CASE("structural Hermitian storage") {
    HermitianMatrix m(3);
    m.set(0, 2, Complex(1.0, 2.0));
    m.set(1, 1, Complex(4.0, 7.0));
    CHECK(m(2, 0) == Complex(1.0, -2.0));
    CHECK(m(1, 1) == Complex(4.0, 0.0));
  }

  TEST_CASE("eigenvalues of small examples") {
    for (double x : eigenvalues(HermitianMatrix::identity(4))) CHECK(x == doctest::Approx(1.0));
    const auto px = eigenvalues(oracle::real2(0, 1, 0));
    CHECK(px[0] == doctest::Approx(-1.0));
    CHECK(px[1] == doctest::Approx(1.0));

    // lambda^2 - 4.7 lambda + 3.71 = 0
    const auto ev = eigenvalues(catalog::lattice_c());
    const double disc = std::sqrt(4.7 * 4.7 - 4 * 3.71);
    CHECK(ev[0] == doctest::Approx((4.7 - disc) / 2).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx((4.7 + disc) / 2).epsilon(1e-12));
  }

  TEST_CASE("min_eigenvalue") {
    CHECK(min_eigenvalue(HermitianMatrix::identity(3)) == doctest::Approx(1.0));
    CHECK(min_eigenvalue(HermitianMatrix::diagonal(std::vector<double>{-2.0, 5.0})) == doctest::Approx(-2.0));
    const HermitianMatrix gap = catalog::lattice_d() - catalog::lattice_b();
    CHECK(max_abs_difference(gap, oracle::real2(2.6, -0.5, 0.1)) <= 1e-15);
    const double want = oracle::eig2(gap).first;
    CHECK(want > 0.0);
    CHECK(min_eigenvalue(gap) == doctest::Approx(want).epsilon(1e-12));
    for (const auto& lo : {catalog::lattice_a(), catalog::lattice_b()})
      for (const auto& hi : {catalog::lattice_c(), catalog::lattice_d()}) CHECK(min_eigenvalue(hi - lo) > 0.0);
  }

  TEST_CASE("spectral decomposition invariants on random matrices") {
    std::mt19937_64 rng(11);
    for (std::size_t d : {1u, 2u, 3u, 5u, 8u, 12u}) {
      for (int trial = 0; trial < 10; ++trial) {
        const HermitianMatrix m = oracle::random_hermitian(rng, d);
        const SpectralDecomposition s = eig_hermitian(m);
        CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
        CHECK(reconstruction_error(m) <= kTolEig * std::max(1.0, m.frobenius_norm()));
        const ComplexMatrix vv = s.eigenvectors.adjoint() * s.eigenvectors;
        double worst = 0.0;
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) worst = std::max(worst, std::abs(vv(i, j) - (i == j ? 1.0 : 0.0)));
        CHECK(worst <= kTolEig);
        CHECK(s.eigenvalues.front() == doctest::Approx(oracle::min_eigenvalue_bisect(m)).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("degenerate spectra") {
    std::mt19937_64 rng(5);
    const ComplexMatrix u = oracle::random_unitary(rng, 4);
    const HermitianMatrix m = HermitianMatrix::diagonal(std::vector<double>{2, 2, 2, -1}).conjugated(u);
    const auto ev = eigenvalues(m);
    CHECK(ev[0] == doctest::Approx(-1.0));
    for (std::size_t i = 1; i < 4; ++i) CHECK(ev[i] == doctest::Approx(2.0));
    CHECK(reconstruction_error(m) <= kTolEig * std::max(1.0, m.frobenius_norm()));
  }

  TEST_CASE("Jacobi sweep limit") {
    CHECK_THROWS_AS(jacobi_eigen(rm(2, {0, 1, 1, 0}), true, 0), NoConvergence);
    CHECK_NOTHROW(jacobi_eigen(rm(2, {3, 0, 0, 1}), true, 0));
  }

  TEST_CASE("project_psd") {
    std::mt19937_64 rng(3);
    const HermitianMatrix p = oracle::random_psd(rng, 3);
    CHECK(max_abs_difference(project_psd(p), p) <= kTolEig * std::max(1.0, p.frobenius_norm()));
    CHECK(project_psd(HermitianMatrix::diagonal(std::vector<double>{-1, 2})) ==
          HermitianMatrix::diagonal(std::vector<double>{0, 2}));
    CHECK(max_abs_difference(project_psd(oracle::real2(0, 1, 0)), oracle::real2(0.5, 0.5, 0.5)) <= 1e-12);

    for (int trial = 0; trial < 30; ++trial) {
      const HermitianMatrix m = oracle::random_hermitian(rng, 1 + trial % 6);
      const HermitianMatrix q = project_psd(m);
      CHECK(min_eigenvalue(q) >= -kTolEig);
      CHECK(max_abs_difference(project_psd(q), q) <= kTolEig * std::max(1.0, q.frobenius_norm()));
      CHECK(frobenius_inner(m, q) >= -kTolEig);
      CHECK(max_abs_difference(negative_part(m), q - m) == 0.0);
      CHECK(min_eigenvalue(negative_part(m)) >= -kTolEig);
      // Distance to the cone is the norm of the negative eigenvalues.
      double neg = 0.0;
      for (double x : eigenvalues(m)) neg += x < 0 ? x * x : 0.0;
      CHECK((m - q).frobenius_norm() == doctest::Approx(std::sqrt(neg)).epsilon(1e-9));
    }
  }

  TEST_CASE("frobenius_inner") {
    CHECK(frobenius_inner(HermitianMatrix::identity(4), HermitianMatrix::identity(4)) == 4.0);
    CHECK(frobenius_inner(HermitianMatrix::diagonal(std::vector<double>{1, -1}), HermitianMatrix::identity(2)) == 0.0);
    CHECK(frobenius_inner(catalog::lattice_a(), catalog::lattice_c()) == doctest::Approx(1.1));
    std::mt19937_64 rng(8);
    const HermitianMatrix a = oracle::random_hermitian(rng, 4);
    const HermitianMatrix b = oracle::random_hermitian(rng, 4);
    Complex tr{};
    const ComplexMatrix ab = a.dense() * b.dense();
    for (std::size_t i = 0; i < 4; ++i) tr += ab(i, i);
    CHECK(frobenius_inner(a, b) == doctest::Approx(tr.real()).epsilon(1e-12));
    CHECK(std::abs(tr.imag()) < 1e-12);
    CHECK(frobenius_inner(a, b) == frobenius_inner(b, a));
    CHECK_THROWS_AS(frobenius_inner(a, HermitianMatrix(3)), DimensionMismatch);
  }

  TEST_CASE("kron") {
    CHECK(kron(HermitianMatrix::identity(2), HermitianMatrix::identity(3)) == HermitianMatrix::identity(6));
    CHECK(kron(HermitianMatrix::diagonal(std::vector<double>{1, 0}), HermitianMatrix::diagonal(std::vector<double>{0, 1})) ==
          HermitianMatrix::diagonal(std::vector<double>{0, 1, 0, 0}));
    std::mt19937_64 rng(21);
    for (std::size_t d : {2u, 3u}) {
      for (int trial = 0; trial < 10; ++trial) {
        const HermitianMatrix p = oracle::random_psd(rng, d);
        const HermitianMatrix q = oracle::random_psd(rng, d);
        CHECK(min_eigenvalue(kron(p, q)) >= -kTolEig);

        const HermitianMatrix a = oracle::random_hermitian(rng, d);
        const HermitianMatrix b = oracle::random_hermitian(rng, d);
        double want = 1e300;
        for (double x : eigenvalues(a))
          for (double y : eigenvalues(b)) want = std::min(want, x * y);
        CHECK(min_eigenvalue(kron(a, b)) == doctest::Approx(want).epsilon(1e-9).scale(1.0));
      }
    }
  }

  TEST_CASE("block extraction") {
    const HermitianMatrix m = kron(oracle::real2(1, 2, 3), catalog::lattice_c());
    const ComplexMatrix b01 = block(m, 2, 0, 1);
    CHECK(b01(0, 0) == Complex(2.2, 0.0));
    CHECK(b01(1, 1) == Complex(7.2, 0.0));
    CHECK_THROWS_AS(block(m, 3, 0, 0), DimensionMismatch);
  }
}
