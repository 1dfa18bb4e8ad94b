/** Linear vector fields from representations, their Hamiltonian lifts, rank
 *  and invariant diagnostics, and the Casimir layer.
 */
#include <doctest.h>

#include <random>

#include "liehamsys/liehamsys.hpp"

using namespace liehamsys;

TEST_CASE("sl2 adjoint fields match their quadratic-cone geometry") {
  auto fields = linearize(builtin_representation(BuiltinRepresentation::sl2_adjoint));
  REQUIRE(fields.size() == 3);
  CHECK(fields[0].n == 3);
  // x1 alone is not conserved, but x1 x3 - x2^2 is annihilated by all fields.
  Chart chart = Chart::abstract({"x1", "x2", "x3"});
  CHECK_FALSE(annihilates(fields, Polynomial::variable(chart, 0)));
  CHECK(annihilates(fields, sl2_phi()));
  auto found = discover_invariants(fields, chart);
  REQUIRE(found.size() == 1);
  // The discovered invariant is proportional to x1 x3 - x2^2.
  bool prop = found[0] == sl2_phi() || found[0] == Rational(-1) * sl2_phi();
  CHECK(prop);
}

TEST_CASE("h6 realization leaves q2 untouched, so q2 and q2^2 are invariants") {
  auto fields = linearize(builtin_representation(BuiltinRepresentation::h6_gamma));
  Chart chart = Chart::canonical(2, 1);
  Polynomial q2 = Polynomial::variable(chart, chart.q_index(1, 0));
  CHECK(annihilates(fields, q2));
  auto found = discover_invariants(fields, chart);
  CHECK(found.size() == 2);  // q2 and q2^2 up to degree 2
}

TEST_CASE("generic distribution ranks match the structure of each realization") {
  std::mt19937_64 rng(20260823);
  auto rank_of = [&](BuiltinRepresentation which) {
    return generic_rank(linearize(builtin_representation(which)), 32, rng);
  };
  CHECK(rank_of(BuiltinRepresentation::sl2_adjoint) == 2);
  CHECK(rank_of(BuiltinRepresentation::h6_gamma) == 3);
  CHECK(rank_of(BuiltinRepresentation::so13_gamma) == 4);
  CHECK(rank_of(BuiltinRepresentation::sp4_fundamental) == 4);
}

TEST_CASE("independent-invariant counts from random structure pencils") {
  std::mt19937_64 rng(20260823);
  CHECK(invariant_count(builtin_algebra(BuiltinAlgebra::sl2), 16, rng) == 1);
  CHECK(invariant_count(builtin_algebra(BuiltinAlgebra::schrodinger_h6), 16, rng) == 2);
  CHECK(invariant_count(builtin_algebra(BuiltinAlgebra::so13), 16, rng) == 2);
  CHECK(invariant_count(builtin_algebra(BuiltinAlgebra::sp4), 16, rng) == 2);
}

TEST_CASE("named generators produce the expected fields and Hamiltonians") {
  Chart chart = Chart::canonical(2, 1);
  Polynomial q1 = Polynomial::variable(chart, chart.q_index(0, 0));
  Polynomial q2 = Polynomial::variable(chart, chart.q_index(1, 0));
  Polynomial p1 = Polynomial::variable(chart, chart.p_index(0, 0));
  Polynomial p2 = Polynomial::variable(chart, chart.p_index(1, 0));

  // sp4 slot 4 (lower-triangular square generator): flow -q1 d/dp1,
  // Hamiltonian q1^2/2.
  auto sp4f = linearize(builtin_representation(BuiltinRepresentation::sp4_fundamental));
  auto sp4h = builtin_hamiltonians(BuiltinRepresentation::sp4_fundamental);
  Eigen::Vector4d x(1.3, -0.4, 0.8, 2.1);
  Eigen::Vector4d v = sp4f[4].value(x);
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(0.0));
  CHECK(v[2] == doctest::Approx(-x[0]));
  CHECK(v[3] == doctest::Approx(0.0));
  CHECK(sp4h[4] == Rational(1, 2) * (q1 * q1));

  // h6 slot 5 (central generator): flow 2 q2 d/dp2, Hamiltonian -q2^2.
  auto h6f = linearize(builtin_representation(BuiltinRepresentation::h6_gamma));
  auto h6h = builtin_hamiltonians(BuiltinRepresentation::h6_gamma);
  Eigen::Vector4d w = h6f[5].value(x);
  CHECK(w[0] == doctest::Approx(0.0));
  CHECK(w[1] == doctest::Approx(0.0));
  CHECK(w[2] == doctest::Approx(0.0));
  CHECK(w[3] == doctest::Approx(2.0 * x[1]));
  CHECK(h6h[5] == Rational(-1) * (q2 * q2));

  // h6 slot 0 (dilation, flow -q1 d/dq1 + p1 d/dp1): Hamiltonian -q1 p1.
  Eigen::Vector4d d = h6f[0].value(x);
  CHECK(d[0] == doctest::Approx(-x[0]));
  CHECK(d[2] == doctest::Approx(x[2]));
  CHECK(h6h[0] == Rational(-1) * (q1 * p1));

  // A pure dilation in all coordinates is not Hamiltonian.
  LinearVectorField dilation(RMat::identity(4));
  CHECK_FALSE(is_hamiltonian(dilation, SymplecticStructure(2)));

  // The zero field lifts to the zero polynomial.
  LinearVectorField zero(RMat::zero(4, 4));
  CHECK(hamiltonian_of(zero, SymplecticStructure(2)).is_zero());

  // All fields being linear, every distribution collapses at the origin.
  CHECK(distribution_rank(sp4f, Eigen::Vector4d::Zero()) == 0);
}

TEST_CASE("hamiltonian_of inverts the field construction on every generator") {
  SymplecticStructure sym(2);
  for (auto which : {BuiltinRepresentation::h6_gamma, BuiltinRepresentation::so13_gamma,
                     BuiltinRepresentation::sp4_fundamental}) {
    auto fields = linearize(builtin_representation(which));
    for (const auto& f : fields) {
      CHECK(is_hamiltonian(f, sym));
      Polynomial h = hamiltonian_of(f, sym);
      // The recovered function must reproduce the field through the bracket:
      // dx/dt components are {x_i, h}.
      Chart chart = Chart::canonical(2, 1);
      Eigen::Vector4d x(0.7, 1.2, -0.5, 0.3);
      Eigen::Vector4d v = f.value(x);
      const std::vector<double> pt{x[0], x[1], x[2], x[3]};
      for (int i = 0; i < 4; ++i) {
        Polynomial xi = Polynomial::variable(chart, i);
        CHECK(bracket(xi, h).eval(pt) == doctest::Approx(v[i]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("odd-dimensional realizations have no Hamiltonian lift") {
  try {
    builtin_hamiltonians(BuiltinRepresentation::sl2_adjoint);
    FAIL("expected a not-Hamiltonian signal");
  } catch (const Error& e) {
    CHECK(e.kind() == errkind::not_hamiltonian);
  }
  // A mismatched phase space is reported as a dimension problem.
  auto fields = linearize(builtin_representation(BuiltinRepresentation::sl2_adjoint));
  CHECK_THROWS_AS(is_hamiltonian(fields[0], SymplecticStructure(1)), Error);
}

TEST_CASE("bracket tables of the Hamiltonian lifts close with one global sign") {
  const int sign = -1;
  CHECK(verify_bracket_table(builtin_hamiltonians(BuiltinRepresentation::h6_gamma),
                             builtin_algebra(BuiltinAlgebra::schrodinger_h6), sign)
            .ok());
  CHECK(verify_bracket_table(builtin_hamiltonians(BuiltinRepresentation::so13_gamma),
                             builtin_algebra(BuiltinAlgebra::so13), sign)
            .ok());
  CHECK(verify_bracket_table(builtin_hamiltonians(BuiltinRepresentation::sp4_fundamental),
                             builtin_algebra(BuiltinAlgebra::sp4), sign)
            .ok());
  // The opposite sign must fail, so the calibration is sharp.
  CHECK_FALSE(verify_bracket_table(builtin_hamiltonians(BuiltinRepresentation::h6_gamma),
                                   builtin_algebra(BuiltinAlgebra::schrodinger_h6), +1)
                  .ok());
}

TEST_CASE("the six-generator subfamily inside sp4 closes on the h6 table") {
  CHECK(verify_bracket_table(sp4_hamiltonians_as_h6(),
                             builtin_algebra(BuiltinAlgebra::schrodinger_h6), -1)
            .ok());
}

TEST_CASE("casimir functions Poisson-commute with every lifted Hamiltonian") {
  auto h6h = builtin_hamiltonians(BuiltinRepresentation::h6_gamma);
  CHECK(casimir_commutes(casimir_h6_C3(), h6h));
  CHECK(casimir_commutes(casimir_h6_C4(), h6h));
  auto so13h = builtin_hamiltonians(BuiltinRepresentation::so13_gamma);
  CHECK(casimir_commutes(casimir_so13_C2(), so13h));
  CHECK(casimir_commutes(casimir_so13_C2prime(), so13h));
  auto sp4h = builtin_hamiltonians(BuiltinRepresentation::sp4_fundamental);
  CHECK(casimir_commutes(casimir_sp4_C2(), sp4h));
  CHECK(casimir_commutes(casimir_sp4_C4(), sp4h));
}

TEST_CASE("the quartic h6 casimir factors through the central generator") {
  Chart c = Chart::generators(6);
  Polynomial central = Polynomial::variable(c, 5);
  CHECK(casimir_h6_C4() == central * casimir_h6_C3());
}

TEST_CASE("prolonged-constant identities hold exactly") {
  auto report = identity_checks();
  for (const auto& issue : report.issues) {
    INFO(issue.check << " @ " << issue.location);
    CHECK(false);
  }
  CHECK(report.ok());
}

TEST_CASE("five quadratic seeds bracket-generate the full ten-dimensional family") {
  // Seeds: angular momentum plus the four axis-aligned squares.
  Chart chart = Chart::canonical(2, 1);
  Polynomial q1 = Polynomial::variable(chart, chart.q_index(0, 0));
  Polynomial q2 = Polynomial::variable(chart, chart.q_index(1, 0));
  Polynomial p1 = Polynomial::variable(chart, chart.p_index(0, 0));
  Polynomial p2 = Polynomial::variable(chart, chart.p_index(1, 0));
  std::vector<Polynomial> seeds{q1 * p2 - q2 * p1, Rational(1, 2) * (q1 * q1),
                                Rational(1, 2) * (q2 * q2), Rational(1, 2) * (p1 * p1),
                                Rational(1, 2) * (p2 * p2)};

  // Coordinates over the ten quadratic monomials in (q1,q2,p1,p2).
  std::vector<std::array<int, 4>> monos;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      std::array<int, 4> e{0, 0, 0, 0};
      e[static_cast<std::size_t>(a)]++;
      e[static_cast<std::size_t>(b)]++;
      monos.push_back(e);
    }
  REQUIRE(monos.size() == 10);
  auto coords = [&](const Polynomial& p) {
    std::vector<Rational> row(10, Rational(0));
    for (const auto& [expo, coeff] : p.terms()) {
      bool placed = false;
      for (std::size_t m = 0; m < monos.size(); ++m) {
        bool match = true;
        for (int v = 0; v < 4; ++v)
          if (expo[static_cast<std::size_t>(v)] != monos[m][static_cast<std::size_t>(v)])
            match = false;
        if (match) {
          row[m] = coeff;
          placed = true;
        }
      }
      REQUIRE(placed);  // brackets of quadratics stay quadratic
    }
    return row;
  };

  std::vector<Polynomial> span = seeds;
  auto rank_now = [&]() {
    RMat m = RMat::zero(static_cast<int>(span.size()), 10);
    for (std::size_t r = 0; r < span.size(); ++r) {
      auto row = coords(span[r]);
      for (int c = 0; c < 10; ++c) m(static_cast<int>(r), c) = row[static_cast<std::size_t>(c)];
    }
    return m.rank();
  };
  int rank = rank_now();
  CHECK(rank == 5);
  for (int round = 0; round < 4 && rank < 10; ++round) {
    const std::size_t frozen = span.size();
    for (std::size_t i = 0; i < frozen; ++i)
      for (std::size_t j = i + 1; j < frozen; ++j) {
        Polynomial b = bracket(span[i], span[j]);
        if (!b.is_zero()) span.push_back(b);
      }
    rank = rank_now();
  }
  CHECK(rank == 10);
}
