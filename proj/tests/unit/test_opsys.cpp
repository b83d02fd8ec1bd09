#include <doctest.h>

#include <random>

#include "support/oracles.hpp"

using namespace opcone;

namespace {

HermitianMatrix diag(std::vector<double> v) { return HermitianMatrix::diagonal(v); }

QuotientElement scalars(const QuotientSystem& q, std::vector<double> v) { return scalar_element(q, v); }

QuotientElement random_element(std::mt19937_64& rng, const QuotientSystem& q, std::size_t r) {
  std::vector<HermitianMatrix> blocks;
  for (std::size_t p = 0; p < q.n(); ++p) blocks.push_back(oracle::random_hermitian(rng, r));
  return make_quotient_element(q, std::move(blocks));
}

QuotientElement random_positive(std::mt19937_64& rng, const QuotientSystem& q, std::size_t r) {
  std::vector<HermitianMatrix> blocks;
  for (std::size_t p = 0; p < q.n(); ++p) blocks.push_back(oracle::random_psd(rng, r));
  return make_quotient_element(q, std::move(blocks));
}

}  // namespace

TEST_SUITE("subsystem") {
  TEST_CASE("make_subsystem examples") {
    const OperatorSubsystem s = catalog::five_point_system();
    CHECK(s.dim() == 3);
    CHECK(s.ambient_dim() == 5);
    CHECK(s.diagonal());
    CHECK(s.basis()[0] == HermitianMatrix::identity(5));

    const OperatorSubsystem trivial = make_subsystem({HermitianMatrix::identity(2)});
    CHECK(trivial.dim() == 1);
    CHECK_FALSE(trivial.contains(diag({1, 0})));

    CHECK_THROWS_AS(make_subsystem({HermitianMatrix::identity(2), diag({1, -1}), diag({1, -1})}), DependentBasis);
    CHECK_THROWS_AS(make_subsystem({diag({1, 0})}), UnitNotInSpan);
    CHECK_THROWS_AS(make_subsystem({}), DimensionMismatch);
    CHECK_THROWS_AS(make_subsystem({HermitianMatrix::identity(2), HermitianMatrix::identity(3)}), DimensionMismatch);
    CHECK_THROWS_AS(make_subsystem({HermitianMatrix::identity(2), HermitianMatrix(2)}), DependentBasis);
  }

  TEST_CASE("identity in the span is swapped in") {
    const OperatorSubsystem s = make_subsystem({diag({1, 0, 0}), diag({0, 1, 1}), diag({0, 1, -1})});
    CHECK(s.basis()[0] == HermitianMatrix::identity(3));
    CHECK(s.dim() == 3);
    CHECK(s.contains(diag({1, 0, 0})));
    CHECK(s.contains(diag({0, 1, -1})));
    CHECK(s.contains(diag({5, 2, 3})));

    const OperatorSubsystem moved = make_subsystem({diag({1, -1}), HermitianMatrix::identity(2)});
    CHECK(moved.basis()[0] == HermitianMatrix::identity(2));
  }

  TEST_CASE("coords") {
    const OperatorSubsystem s = catalog::five_point_system();
    const auto unit = s.coords(HermitianMatrix::identity(5));
    CHECK(unit == std::vector<double>{1, 0, 0});
    const auto ab = s.coords(catalog::five_point_a() + catalog::five_point_b());
    CHECK(ab == std::vector<double>{0, 1, 1});
    CHECK_THROWS_AS(s.coords(diag({1, 1, 1, 1, 0})), NotInSpan);
    CHECK_THROWS_AS(s.coords(HermitianMatrix::identity(4)), DimensionMismatch);

    // Rounding noise in a combination is tolerated through the numeric residual.
    const HermitianMatrix noisy = 0.6 * catalog::five_point_e() + 0.1 * catalog::five_point_a() +
                                  0.7 * catalog::five_point_b();
    const auto c = s.coords(noisy);
    CHECK(c[0] == doctest::Approx(0.6));
    CHECK(c[1] == doctest::Approx(0.1));
    CHECK(c[2] == doctest::Approx(0.7));

    const OperatorSubsystem m2 = full_matrix_algebra(2);
    std::mt19937_64 rng(2);
    const HermitianMatrix x = oracle::random_hermitian(rng, 2);
    CHECK(max_abs_difference(m2.combine(m2.coords(x)), x) < 1e-12);
  }

  TEST_CASE("named algebras") {
    CHECK(full_matrix_algebra(3).dim() == 9);
    CHECK_FALSE(full_matrix_algebra(3).diagonal());
    CHECK(diagonal_algebra(4).dim() == 4);
    CHECK(diagonal_algebra(4).diagonal());
    const std::size_t sizes[] = {2, 2};
    const OperatorSubsystem bd = block_diagonal_algebra(sizes);
    CHECK(bd.dim() == 8);
    CHECK(bd.ambient_dim() == 4);
    HermitianMatrix inside(4);
    inside.set(1, 0, Complex(1, 2));
    inside.set(3, 2, Complex(0, 1));
    CHECK(bd.contains(inside));
    HermitianMatrix outside(4);
    outside.set(2, 1, 1.0);
    CHECK_FALSE(bd.contains(outside));
    CHECK(bd.ambient().dim() == 16);
    CHECK(catalog::five_point_system().ambient().dim() == 5);
    CHECK_THROWS_AS(full_matrix_algebra(0), InvalidDimension);
  }

  TEST_CASE("positive_in_subsystem") {
    CHECK(positive_in_subsystem(catalog::five_point_system(), HermitianMatrix::identity(5)));
    CHECK(positive_in_subsystem(diagonal_algebra(5), catalog::five_point_c()));
    CHECK_FALSE(positive_in_subsystem(full_matrix_algebra(2), diag({1, -1})));
    CHECK_FALSE(positive_in_subsystem(full_matrix_algebra(2), HermitianMatrix::identity(2), 1.5));
    CHECK_THROWS_AS(positive_in_subsystem(catalog::five_point_system(), catalog::five_point_c()), NotInSpan);
  }

  TEST_CASE("level bases") {
    const OperatorSubsystem s = catalog::five_point_system();
    for (std::size_t r : {1u, 2u, 3u}) {
      const auto basis = s.level_basis(r);
      CHECK(basis.size() == r * r * s.dim());
      // Linear independence: Gram matrix is positive definite.
      RealMatrix g(basis.size(), basis.size());
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) g(i, j) = frobenius_inner(basis[i], basis[j]);
      CHECK(jacobi_eigen(g, false).eigenvalues.front() > 1e-6);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        std::vector<double> e(basis.size(), 0.0);
        e[i] = 1.0;
        CHECK(s.level_combine(e, r) == basis[i]);
        const auto back = s.level_coords(basis[i], r);
        for (std::size_t j = 0; j < back.size(); ++j) CHECK(back[j] == doctest::Approx(e[j]).scale(1.0));
      }
    }
    std::mt19937_64 rng(6);
    const OperatorSubsystem m2 = full_matrix_algebra(2);
    const HermitianMatrix big = oracle::random_hermitian(rng, 6);
    CHECK(m2.level_contains(big, 3));
    CHECK(max_abs_difference(m2.level_combine(m2.level_coords(big, 3), 3), big) < 1e-12);
    CHECK(max_abs_difference(m2.level_project(big, 3), big) < 1e-12);
    CHECK_THROWS_AS(m2.level_coords(big, 2), DimensionMismatch);

    const HermitianMatrix off = kron(oracle::real2(0, 1, 0), diag({1, 1, 1, 1, 0}));
    CHECK_FALSE(s.level_contains(off, 2));
    const HermitianMatrix projected = s.level_project(off, 2);
    CHECK(s.level_contains(projected, 2));
    // The projection residual is orthogonal to M_2(S).
    for (const auto& b : s.level_basis(2)) CHECK(std::abs(frobenius_inner(off - projected, b)) < 1e-12);

    CHECK(hermitian_from_coords(std::vector<double>{1, 2, 3, 4}, 2)(0, 1) == Complex(2, 3));
  }
}

TEST_SUITE("quotient") {
  TEST_CASE("quotient systems") {
    const QuotientSystem q = QuotientSystem::jkm(2, 3);
    CHECK(q.n() == 5);
    CHECK(q.k() == 2);
    CHECK(q.m() == 3);
    CHECK(q.is_sign_vector());
    CHECK(q.null_vector() == std::vector<Rational>{1, 1, -1, -1, -1});
    CHECK_THROWS_AS(QuotientSystem::jkm(0, 2), InvalidDimension);
    CHECK_THROWS_AS(QuotientSystem::from_null_vector({Rational(1), Rational(2)}), InvalidDimension);
    const QuotientSystem g = QuotientSystem::from_null_vector({Rational(2), Rational(0), Rational(-1, 2)});
    CHECK_FALSE(g.is_sign_vector());
    CHECK(g.k() == 1);
    CHECK(g.m() == 1);
  }

  TEST_CASE("quotient_positive examples") {
    const QuotientSystem q = QuotientSystem::jkm(2, 3);
    const FeasibilityOutcome zero = quotient_positive(scalars(q, {1, 1, -1, -1, -1}));
    CHECK(zero.feasible());
    CHECK(quotient_equal(scalars(q, {1, 1, -1, -1, -1}), scalars(q, {0, 0, 0, 0, 0})));
    CHECK(quotient_positive(scalars(q, {1, 1, -1, -1, -1}), 0.0).exact.has_value());

    CHECK(quotient_positive(quotient_unit(q)).feasible());
    const FeasibilityOutcome neg = quotient_positive(scalars(q, {-1, 0, 0, 0, 0}));
    CHECK(neg.infeasible());
    REQUIRE(neg.exact.has_value());
    CHECK(oracle::diagonal_farkas(quotient_positive_problem(scalars(q, {-1, 0, 0, 0, 0}), 0.0), neg.exact->multipliers));
  }

  TEST_CASE("level-1 positivity matches the interval test") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> coef(-6, 6);
    for (std::size_t k : {1u, 2u, 3u})
      for (std::size_t m : {1u, 2u, 3u}) {
        const QuotientSystem q = QuotientSystem::jkm(k, m);
        for (int trial = 0; trial < 8; ++trial) {
          std::vector<double> a(q.n());
          for (auto& x : a) x = coef(rng) / 4.0;
          // A_p + t >= 0 on plus coordinates, A_p - t >= 0 on minus coordinates.
          double lower = -1e300;
          double upper = 1e300;
          for (std::size_t p = 0; p < k; ++p) lower = std::max(lower, -a[p]);
          for (std::size_t p = k; p < q.n(); ++p) upper = std::min(upper, a[p]);
          CHECK(quotient_positive(scalars(q, a)).feasible() == (lower <= upper));
        }
      }
  }

  TEST_CASE("complete proximinality at levels 2 and 3") {
    std::mt19937_64 rng(23);
    const QuotientSystem q = QuotientSystem::jkm(2, 2);
    for (std::size_t r : {2u, 3u})
      for (int trial = 0; trial < 6; ++trial) {
        const QuotientElement e = random_element(rng, q, r);
        const FeasibilityOutcome o = quotient_positive(e);
        if (!o.feasible()) continue;
        const QuotientElement lifted = lifted_representative(e, o.witness);
        for (const auto& b : lifted.blocks) CHECK(min_eigenvalue(b) >= -1e-7);
        CHECK(max_abs_difference(canonicalize(lifted).blocks[0], canonicalize(e).blocks[0]) < 1e-9);
      }
  }

  TEST_CASE("quotient_equal") {
    const QuotientSystem q = QuotientSystem::jkm(2, 3);
    CHECK(quotient_equal(scalars(q, {2, 2, 0, 0, 0}), quotient_unit(q)));
    const QuotientElement x = scalars(q, {0.3, -1, 2, 0.1, 7});
    CHECK(quotient_equal(x, x));
    CHECK_FALSE(quotient_equal(scalars(q, {1, 0, 0, 0, 0}), scalars(q, {0, 1, 0, 0, 0})));
    CHECK_THROWS_AS(quotient_equal(quotient_unit(q), quotient_unit(q, 2)), DimensionMismatch);
    CHECK_THROWS_AS(quotient_equal(quotient_unit(q), quotient_unit(QuotientSystem::jkm(3, 2))), DimensionMismatch);

    // Equivalence relation and representative independence on random level-2 elements.
    std::mt19937_64 rng(3);
    const QuotientSystem q22 = QuotientSystem::jkm(2, 2);
    for (int trial = 0; trial < 5; ++trial) {
      const QuotientElement a = random_positive(rng, q22, 2);
      QuotientElement b = a;
      const HermitianMatrix t = oracle::real2(0.25, 0.5, -0.75);
      for (std::size_t p = 0; p < 4; ++p) b.blocks[p].add_scaled(q22.null_entry(p), t);
      QuotientElement c = b;
      for (std::size_t p = 0; p < 4; ++p) c.blocks[p].add_scaled(-2 * q22.null_entry(p), t);
      CHECK(quotient_distance(a, b) < 1e-14);
      CHECK(quotient_distance(b, a) < 1e-14);
      CHECK(quotient_distance(b, c) < 1e-14);
      CHECK(quotient_distance(a, c) < 1e-14);
      QuotientElement shifted = a;
      shifted.blocks[0].add_scaled(1.0, HermitianMatrix::identity(2));
      CHECK(quotient_distance(a, shifted) > 0.1);
      CHECK(quotient_positive(a).status == quotient_positive(b).status);
      CHECK(quotient_positive(a).feasible());
    }

    const QuotientSystem general = QuotientSystem::from_null_vector({Rational(2), Rational(-1), Rational(-1)});
    CHECK(quotient_equal(scalars(general, {2, -1, -1}), scalars(general, {0, 0, 0})));
    CHECK(quotient_equal(scalars(general, {3, 0, 0}), scalars(general, {1, 1, 1})));
    CHECK(quotient_positive(scalars(general, {-1, 1, 1})).feasible());
  }

  TEST_CASE("canonicalize") {
    const QuotientSystem q = QuotientSystem::jkm(2, 3);
    const QuotientElement e = canonicalize(scalars(q, {1, 1, -1, -1, -1}));
    for (const auto& b : e.blocks) CHECK(std::abs(b(0, 0).real()) < 1e-15);
    const QuotientElement u = canonicalize(quotient_unit(q));
    double dot = 0.0;
    for (std::size_t p = 0; p < 5; ++p) dot += q.null_entry(p) * u.blocks[p](0, 0).real();
    CHECK(std::abs(dot) < 1e-15);
  }

  TEST_CASE("coproduct") {
    const Coproduct c23(2, 3);
    const QuotientElement i_unit = c23.left(std::vector<double>{1, 1});
    const QuotientElement j_unit = c23.right(std::vector<double>{1, 1, 1});
    CHECK(quotient_equal(i_unit, scalars(c23.quotient(), {2, 2, 0, 0, 0})));
    CHECK(quotient_equal(i_unit, quotient_unit(c23.quotient())));
    CHECK(quotient_equal(j_unit, quotient_unit(c23.quotient())));

    const Coproduct c11(1, 1);
    CHECK(quotient_equal(c11.left(std::vector<double>{1}), quotient_unit(c11.quotient())));
    CHECK(quotient_equal(c11.right(std::vector<double>{1}), quotient_unit(c11.quotient())));
    CHECK_THROWS_AS(Coproduct(0, 1), InvalidDimension);
    CHECK_THROWS_AS(c23.left(std::vector<double>{1, 1, 1}), DimensionMismatch);

    // Unital and order preserving on sampled positive inputs at levels 1..3.
    std::mt19937_64 rng(41);
    for (std::size_t r : {1u, 2u, 3u}) {
      CHECK(quotient_equal(c23.left(std::vector<HermitianMatrix>(2, HermitianMatrix::identity(r))),
                           quotient_unit(c23.quotient(), r)));
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<HermitianMatrix> x{oracle::random_psd(rng, r), oracle::random_psd(rng, r)};
        std::vector<HermitianMatrix> y{oracle::random_psd(rng, r), oracle::random_psd(rng, r),
                                       oracle::random_psd(rng, r)};
        CHECK(quotient_positive(c23.left(x)).feasible());
        CHECK(quotient_positive(c23.right(y)).feasible());
      }
    }
  }

  TEST_CASE("embedding and projection") {
    const QuotientSystem small = QuotientSystem::jkm(2, 3);
    const QuotientSystem big = QuotientSystem::jkm(3, 4);
    CHECK(quotient_equal(embed_quotient(small, big, quotient_unit(small)), quotient_unit(big)));
    const QuotientElement x = scalars(small, {1, 2, 3, 4, 5});
    const QuotientElement up = embed_quotient(small, big, x);
    CHECK(up.blocks.size() == 7);
    CHECK(quotient_equal(up, scalars(big, {1, 1, 2, 3, 4, 5, 5})));
    CHECK(quotient_equal(project_quotient(big, small, up), x));
    // The embedding respects the J spans.
    CHECK(quotient_equal(embed_quotient(small, big, scalars(small, {1, 1, -1, -1, -1})), scalars(big, std::vector<double>(7, 0.0))));
    CHECK_THROWS_AS(embed_quotient(big, small, up), DimensionMismatch);
    CHECK_THROWS_AS(embed_quotient(small, big, up), DimensionMismatch);

    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 5; ++trial) {
      const QuotientElement pos = random_positive(rng, small, 2);
      CHECK(quotient_positive(embed_quotient(small, big, pos)).feasible());
      const QuotientElement pos_big = random_positive(rng, big, 2);
      CHECK(quotient_positive(project_quotient(big, small, pos_big)).feasible());
    }
  }
}
