/** Time-dependent coefficients, the fixed-step integrator, the hyperbolic
 *  closed form, and monodromy symplecticity.
 */
#include <doctest.h>

#include <cmath>
#include <random>

#include "liehamsys/liehamsys.hpp"

using namespace liehamsys;
using Eigen::Vector4d;

namespace {

std::vector<CoefficientFunction> sinusoids(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0), om(0.3, 2.0), ph(0.0, 6.28);
  std::vector<CoefficientFunction> cs;
  for (int i = 0; i < n; ++i)
    cs.push_back(CoefficientFunction::sinusoid(amp(rng), om(rng), ph(rng)));
  return cs;
}

}  // namespace

TEST_CASE("coefficient factories evaluate their closed forms") {
  auto c = CoefficientFunction::constant(2.5);
  CHECK(c.eval(0.0) == 2.5);
  CHECK(c.eval(-3.7) == 2.5);

  auto p = CoefficientFunction::poly_in_t({1.0, -2.0, 3.0});  // 1 - 2t + 3t^2
  CHECK(p.eval(2.0) == doctest::Approx(1.0 - 4.0 + 12.0));

  auto s = CoefficientFunction::sinusoid(2.0, 3.0, 0.5, 0.25);
  CHECK(s.eval(1.2) == doctest::Approx(2.0 * std::sin(3.0 * 1.2 + 0.5) + 0.25));

  auto lc = CoefficientFunction::linear_combo({{2.0, c}, {-1.0, p}});
  CHECK(lc.eval(2.0) == doctest::Approx(2.0 * 2.5 - 9.0));

  CHECK(CoefficientFunction::zero().eval(5.0) == 0.0);
}

TEST_CASE("tabulated coefficients interpolate linearly and clamp outside") {
  auto t = CoefficientFunction::tabulated(1.0, 0.5, {2.0, 4.0, 3.0});
  CHECK(t.eval(1.0) == doctest::Approx(2.0));
  CHECK(t.eval(1.25) == doctest::Approx(3.0));
  CHECK(t.eval(1.5) == doctest::Approx(4.0));
  CHECK(t.eval(1.75) == doctest::Approx(3.5));
  CHECK(t.eval(0.0) == doctest::Approx(2.0));  // clamped left
  CHECK(t.eval(9.0) == doctest::Approx(3.0));  // clamped right
  CHECK_THROWS_AS(CoefficientFunction::tabulated(0.0, 0.5, {1.0}), Error);
}

TEST_CASE("cumulative simpson integral matches antiderivatives") {
  CumulativeIntegral ci([](double t) { return std::sin(t); }, 1e-3);
  for (double t : {0.3, 1.0, 4.7}) CHECK(ci.integral_to(t) == doctest::Approx(1.0 - std::cos(t)).epsilon(1e-10));
  // Negative times integrate backwards.
  CHECK(ci.integral_to(-2.0) == doctest::Approx(1.0 - std::cos(-2.0)).epsilon(1e-10));
  // Off-grid points include the partial interval.
  CHECK(ci.integral_to(0.7513) == doctest::Approx(1.0 - std::cos(0.7513)).epsilon(1e-10));
}

TEST_CASE("exp_integral coefficient matches an exponential closed form") {
  auto inner = CoefficientFunction::constant(0.4);
  auto f = CoefficientFunction::exp_integral(inner, -2.0, 3.0, 1e-4);
  for (double t : {0.0, 1.1, 2.9})
    CHECK(f.eval(t) == doctest::Approx(3.0 * std::exp(-0.8 * t)).epsilon(1e-9));
}

TEST_CASE("integrator grid rejects degenerate spans") {
  auto sys = make_system(BuiltinRepresentation::h6_gamma,
                         std::vector<CoefficientFunction>(6, CoefficientFunction::constant(0.1)));
  Eigen::Vector4d x0(1, 1, 1, 1);
  CHECK_THROWS_AS(integrate(sys, x0, 0.0, 0.0, 1e-3), Error);
  CHECK_THROWS_AS(integrate(sys, x0, 0.0, 1.0, -1e-3), Error);
  CHECK_THROWS_AS(integrate(sys, x0, 1.0, 0.0, 1e-3), Error);
}

TEST_CASE("make_system validates the coefficient count") {
  CHECK_THROWS_AS(make_system(BuiltinRepresentation::h6_gamma,
                              std::vector<CoefficientFunction>(5, CoefficientFunction::zero())),
                  Error);
}

TEST_CASE("constant-coefficient hyperbolic system matches cosh/sinh exactly") {
  auto sys = make_sp4_preset_system("hyperbolic",
                                    hyperbolic_preset(CoefficientFunction::constant(1.0)))
                 .system;
  Eigen::Vector4d x0(1, 0, 0, 0);
  auto traj = integrate(sys, x0, 0.0, 1.0, 1e-3);
  const auto& xe = traj.states.back();
  CHECK(xe[0] == doctest::Approx(std::cosh(1.0)).epsilon(1e-10));
  CHECK(xe[1] == doctest::Approx(std::sinh(1.0)).epsilon(1e-10));
  CHECK(std::abs(xe[2]) < 1e-12);
  CHECK(std::abs(xe[3]) < 1e-12);
}

TEST_CASE("time-dependent hyperbolic flow matches the quadrature closed form") {
  auto b = CoefficientFunction::sinusoid(0.8, 1.1, 0.3);
  auto sys = make_sp4_preset_system("hyperbolic", hyperbolic_preset(b)).system;
  Eigen::Vector4d c(0.7, -0.2, 0.4, 1.1);
  auto traj = integrate(sys, c, 0.0, 5.0, 1e-3);
  HyperbolicClosedForm hc(b, 1e-4);
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.size(); i += 100) {
    double B = hc.phase(traj.times[i]);
    worst = std::max(worst,
                     (traj.states[i] - Eigen::VectorXd(hyperbolic_state(c, B)))
                         .lpNorm<Eigen::Infinity>());
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("step halving shows fourth-order convergence") {
  auto b = CoefficientFunction::sinusoid(0.8, 1.1, 0.3);
  auto sys = make_sp4_preset_system("hyperbolic", hyperbolic_preset(b)).system;
  Eigen::Vector4d c(0.7, -0.2, 0.4, 1.1);
  HyperbolicClosedForm hc(b, 1e-4);
  auto err_at = [&](double dt) {
    auto tr = integrate(sys, c, 0.0, 2.0, dt);
    return (tr.states.back() - Eigen::VectorXd(hyperbolic_state(c, hc.phase(2.0))))
        .lpNorm<Eigen::Infinity>();
  };
  const double order = std::log2(err_at(0.02) / err_at(0.01));
  CHECK(order > 3.5);
  CHECK(order < 4.5);
}

TEST_CASE("lockstep copies integrate the same flow as independent runs") {
  std::mt19937_64 rng(11);
  auto sys = make_system(BuiltinRepresentation::sp4_fundamental, sinusoids(rng, 10));
  std::vector<Eigen::VectorXd> x0s{Vector4d(0.4, 0.1, -0.2, 0.8), Vector4d(-0.5, 0.9, 0.3, 0.2)};
  auto trajs = integrate_prolonged(sys, x0s, 0.0, 1.0, 1e-3);
  REQUIRE(trajs.size() == 2);
  for (std::size_t c = 0; c < 2; ++c) {
    auto solo = integrate(sys, x0s[c], 0.0, 1.0, 1e-3);
    REQUIRE(solo.size() == trajs[c].size());
    double diff = 0.0;
    for (std::size_t i = 0; i < solo.size(); ++i)
      diff = std::max(diff, (solo.states[i] - trajs[c].states[i]).lpNorm<Eigen::Infinity>());
    CHECK(diff == 0.0);  // same stages, same arithmetic
  }
}

TEST_CASE("monodromy of a hamiltonian flow is symplectic") {
  std::mt19937_64 rng(5);
  for (auto which : {BuiltinRepresentation::h6_gamma, BuiltinRepresentation::so13_gamma,
                     BuiltinRepresentation::sp4_fundamental}) {
    auto rep = builtin_representation(which);
    auto sys = make_system(rep, sinusoids(rng, rep.algebra.dim()));
    Eigen::MatrixXd M = monodromy(sys, 0.0, 2.0, 1e-3);
    SymplecticStructure sym(2);
    Eigen::MatrixXd J = sym.J_eigen();
    CHECK((M.transpose() * J * M - J).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("monodromy reproduces endpoint states for linear flows") {
  std::mt19937_64 rng(6);
  auto sys = make_system(BuiltinRepresentation::h6_gamma, sinusoids(rng, 6));
  Eigen::MatrixXd M = monodromy(sys, 0.0, 1.5, 1e-3);
  Eigen::Vector4d x0(0.3, 1.1, -0.4, 0.6);
  auto traj = integrate(sys, x0, 0.0, 1.5, 1e-3);
  CHECK((M * x0 - traj.states.back()).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("coefficient singularities surface with a stable kind") {
  auto bad = CoefficientFunction::mapped([](double t) { return 1.0 / t; });
  auto sys = make_system(BuiltinRepresentation::h6_gamma,
                         std::vector<CoefficientFunction>(6, bad));
  Eigen::Vector4d x0(1, 1, 1, 1);
  try {
    integrate(sys, x0, -0.5, 0.5, 0.25);  // steps straddle t=0
    FAIL("expected a singular-coefficient signal");
  } catch (const Error& e) {
    CHECK(e.kind() == errkind::coefficient_singular);
  }
}
