/** Exact-arithmetic core: rationals, rational matrices, Lie algebra tables,
 *  and the polynomial ring with its Poisson bracket.
 */
#include <doctest.h>

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "liehamsys/liehamsys.hpp"

using namespace liehamsys;

TEST_CASE("rational arithmetic normalizes and is exact") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) * Rational(3, 7) == Rational(1, 7));
  CHECK(Rational(1, 3) - Rational(1, 3) == Rational(0));
  CHECK(Rational(5, 7) / Rational(5, 7) == Rational(1));
  CHECK(Rational(7, 3).to_double() == doctest::Approx(7.0 / 3.0));
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK(Rational(3, 2).num() == 3);
  CHECK(Rational(3, 2).den() == 2);
}

TEST_CASE("rational rejects zero denominators and signals overflow") {
  CHECK_THROWS_AS(Rational(1, 0), Error);
  CHECK_THROWS_AS(Rational(1, 2) / Rational(0), Error);
  const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 2 + 1;
  try {
    Rational x = Rational(big) + Rational(big);
    (void)x;
    FAIL("expected overflow signal");
  } catch (const Error& e) {
    CHECK(e.kind() == errkind::numeric_overflow);
  }
}

TEST_CASE("rational matrix rank, kernel, and solve are exact") {
  // Rank-2 matrix with the third row a combination of the first two.
  RMat m = RMat::from_int({{1, 2, 3},
                           {4, 5, 6},
                           {5, 7, 9}});
  CHECK(m.rank() == 2);
  auto ker = m.kernel();
  REQUIRE(ker.size() == 1);
  // Kernel vector must satisfy m v = 0 exactly.
  for (int r = 0; r < 3; ++r) {
    Rational acc(0);
    for (int c = 0; c < 3; ++c) acc += m(r, c) * ker[0][static_cast<std::size_t>(c)];
    CHECK(acc.is_zero());
  }

  RMat a = RMat::from_int({{2, 1}, {1, 3}});
  auto x = a.solve({Rational(5), Rational(10)});
  REQUIRE(x.size() == 2);
  CHECK(x[0] == Rational(1));
  CHECK(x[1] == Rational(3));

  RMat idm = RMat::identity(2);
  CHECK(idm.kernel().empty());
  CHECK(commutator(a, idm).rank() == 0);
}

TEST_CASE("built-in algebras satisfy antisymmetry and the Jacobi identity") {
  for (auto which : {BuiltinAlgebra::sl2, BuiltinAlgebra::schrodinger_h6, BuiltinAlgebra::so13,
                     BuiltinAlgebra::sp4}) {
    auto g = builtin_algebra(which);
    auto report = validate(g);
    INFO(g.name());
    CHECK(report.ok());
  }
  CHECK(builtin_algebra(BuiltinAlgebra::sl2).dim() == 3);
  CHECK(builtin_algebra(BuiltinAlgebra::schrodinger_h6).dim() == 6);
  CHECK(builtin_algebra(BuiltinAlgebra::so13).dim() == 6);
  CHECK(builtin_algebra(BuiltinAlgebra::sp4).dim() == 10);
}

TEST_CASE("a deliberately broken bracket table fails validation") {
  auto g = builtin_algebra(BuiltinAlgebra::sl2);
  g.set_structure(0, 1, 2, Rational(1));  // breaks Jacobi/antisymmetry coherence
  CHECK_FALSE(validate(g).ok());
}

TEST_CASE("negated algebra flips every structure constant and stays valid") {
  auto g = builtin_algebra(BuiltinAlgebra::schrodinger_h6);
  auto gn = g.negated();
  CHECK(validate(gn).ok());
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      for (int k = 0; k < g.dim(); ++k)
        CHECK(gn.structure(i, j, k) == -g.structure(i, j, k));
}

TEST_CASE("built-in representations are exact homomorphisms") {
  for (auto which : {BuiltinRepresentation::sl2_adjoint, BuiltinRepresentation::h6_gamma,
                     BuiltinRepresentation::so13_gamma, BuiltinRepresentation::sp4_fundamental}) {
    auto rep = builtin_representation(which);
    INFO(rep.algebra.name());
    CHECK(validate_representation(rep).ok());
  }
  CHECK(builtin_representation(BuiltinRepresentation::sl2_adjoint).n == 3);
  CHECK(builtin_representation(BuiltinRepresentation::h6_gamma).n == 4);
  CHECK(builtin_representation(BuiltinRepresentation::so13_gamma).n == 4);
  CHECK(builtin_representation(BuiltinRepresentation::sp4_fundamental).n == 4);
}

TEST_CASE("unknown algebra and representation names are rejected") {
  CHECK_THROWS_AS(builtin_algebra("nope"), Error);
  CHECK_THROWS_AS(builtin_representation("nope"), Error);
}

namespace {

/// Deterministic small random polynomial on a chart (degree <= 2).
Polynomial random_poly(const Chart& chart, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> var(0, chart.var_count() - 1);
  Polynomial p = Polynomial::constant(chart, Rational(coeff(rng)));
  for (int t = 0; t < 4; ++t) {
    Polynomial mono = Polynomial::variable(chart, var(rng), Rational(coeff(rng)));
    if (t % 2 == 0) mono = mono * Polynomial::variable(chart, var(rng));
    p = p + mono;
  }
  return p;
}

}  // namespace

TEST_CASE("polynomial ring laws hold on random samples") {
  Chart chart = Chart::canonical(2, 1);
  std::mt19937_64 rng(20260823);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial f = random_poly(chart, rng);
    Polynomial g = random_poly(chart, rng);
    Polynomial h = random_poly(chart, rng);
    CHECK(f + g == g + f);
    CHECK(f * g == g * f);
    CHECK((f + g) + h == f + (g + h));
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f - f == Polynomial::zero(chart));
    CHECK(Rational(2) * f == f + f);
  }
}

TEST_CASE("poisson bracket is antisymmetric, Jacobi, and Leibniz") {
  Chart chart = Chart::canonical(2, 1);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    Polynomial f = random_poly(chart, rng);
    Polynomial g = random_poly(chart, rng);
    Polynomial h = random_poly(chart, rng);
    CHECK(bracket(f, g) == Rational(-1) * bracket(g, f));
    Polynomial jac =
        bracket(f, bracket(g, h)) + bracket(g, bracket(h, f)) + bracket(h, bracket(f, g));
    CHECK(jac.is_zero());
    CHECK(bracket(f, g * h) == bracket(f, g) * h + g * bracket(f, h));
  }
}

TEST_CASE("canonical bracket pairs coordinates the standard way") {
  Chart chart = Chart::canonical(2, 1);
  Polynomial q1 = Polynomial::variable(chart, chart.q_index(0, 0));
  Polynomial q2 = Polynomial::variable(chart, chart.q_index(1, 0));
  Polynomial p1 = Polynomial::variable(chart, chart.p_index(0, 0));
  Polynomial p2 = Polynomial::variable(chart, chart.p_index(1, 0));
  CHECK(bracket(q1, p1) == Polynomial::constant(chart, Rational(1)));
  CHECK(bracket(q2, p2) == Polynomial::constant(chart, Rational(1)));
  CHECK(bracket(q1, p2).is_zero());
  CHECK(bracket(q1, q2).is_zero());
  CHECK(bracket(p1, p2).is_zero());
}

TEST_CASE("copy prolongation inserts a function on the chosen copy") {
  Chart one = Chart::canonical(2, 1);
  Polynomial f = Polynomial::variable(one, one.q_index(0, 0)) *
                 Polynomial::variable(one, one.p_index(1, 0));
  Polynomial lifted = f.prolong_to_copy(3, 1);
  Chart three = Chart::canonical(2, 3);
  Polynomial expect = Polynomial::variable(three, three.q_index(0, 1)) *
                      Polynomial::variable(three, three.p_index(1, 1));
  CHECK(lifted == expect);
  // Swapping copies 0 and 1 moves it to copy 0.
  Polynomial swapped = lifted.permute_copies(0, 1);
  Polynomial expect0 = Polynomial::variable(three, three.q_index(0, 0)) *
                       Polynomial::variable(three, three.p_index(1, 0));
  CHECK(swapped == expect0);
}

TEST_CASE("exact and floating evaluation agree on rational points") {
  Chart chart = Chart::canonical(1, 1);
  Polynomial f = Polynomial::variable(chart, 0) * Polynomial::variable(chart, 1) +
                 Polynomial::constant(chart, Rational(1, 3));
  std::vector<Rational> pt{Rational(1, 2), Rational(2, 3)};
  CHECK(f.eval_exact(pt) == Rational(1, 2) * Rational(2, 3) + Rational(1, 3));
  CHECK(f.eval({0.5, 2.0 / 3.0}) == doctest::Approx(1.0 / 3.0 + 1.0 / 3.0).epsilon(1e-14));
}
