/** Polynomial vector fields, the planar sl2 reduction with its level-set
 *  diffeomorphism, and the central-level h6 reductions.
 */
#include <doctest.h>

#include <random>

#include "liehamsys/liehamsys.hpp"

using namespace liehamsys;
using Eigen::Vector2d;
using Eigen::Vector3d;
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

TEST_CASE("3d sl2 fields close exactly and equal the linearized adjoint") {
  auto xf = sl2_3d_fields();
  CHECK(verify_field_closure(xf, builtin_algebra(BuiltinAlgebra::sl2)).ok());
  auto lin = linearize(builtin_representation(BuiltinRepresentation::sl2_adjoint));
  for (int a = 0; a < 3; ++a)
    for (double x1 : {0.3, -1.2})
      for (double x2 : {0.9, 0.1})
        for (double x3 : {-0.4, 2.0}) {
          Vector3d p(x1, x2, x3);
          CHECK((vf_value(xf[static_cast<std::size_t>(a)], p) -
                 lin[static_cast<std::size_t>(a)].value(p))
                    .lpNorm<Eigen::Infinity>() < 1e-14);
        }
}

TEST_CASE("planar sl2 fields close on the same structure table") {
  Sl2Reduction red(Rational(3, 2), Rational(1));
  CHECK(verify_field_closure(sl2_reduced_fields(red), builtin_algebra(BuiltinAlgebra::sl2)).ok());
  // A second curvature parameter closes too.
  Sl2Reduction red2(Rational(-2), Rational(2));
  CHECK(verify_field_closure(sl2_reduced_fields(red2), builtin_algebra(BuiltinAlgebra::sl2)).ok());
}

TEST_CASE("reduction parameters reject a vanishing scale") {
  CHECK_THROWS_AS(Sl2Reduction(Rational(1), Rational(0)), Error);
}

TEST_CASE("chart map lands on the level set and pushes fields forward") {
  Sl2Reduction red(Rational(3, 2), Rational(1));
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> z1d(-2.0, 2.0), z2d(0.2, 2.0);
  double worst = 0.0, level = 0.0;
  for (int i = 0; i < 50; ++i) {
    Vector2d z(z1d(rng), (i % 2 ? 1.0 : -1.0) * z2d(rng));
    auto res = sl2_pushforward_residual(red, z);
    for (double r : res) worst = std::max(worst, r);
    level = std::max(level, std::abs(sl2_phi_value(sl2_diffeo(red, z)) - red.lambda_d()));
  }
  CHECK(worst < 1e-12);
  CHECK(level < 1e-12);
}

TEST_CASE("chart jacobian matches central finite differences") {
  Sl2Reduction red(Rational(3, 2), Rational(1));
  Vector2d z(0.7, 1.3);
  Eigen::Matrix<double, 3, 2> J = sl2_diffeo_jacobian(red, z);
  const double h = 1e-6;
  for (int c = 0; c < 2; ++c) {
    Vector2d zp = z, zm = z;
    zp[c] += h;
    zm[c] -= h;
    Vector3d fd = (sl2_diffeo(red, zp) - sl2_diffeo(red, zm)) / (2 * h);
    for (int r = 0; r < 3; ++r) CHECK(J(r, c) == doctest::Approx(fd[r]).epsilon(1e-6));
  }
}

TEST_CASE("the chart map rejects the z2 = 0 line") {
  Sl2Reduction red(Rational(1), Rational(1));
  try {
    sl2_diffeo(red, Vector2d(0.5, 0.0));
    FAIL("expected singular-chart");
  } catch (const Error& e) {
    CHECK(e.kind() == errkind::singular_chart);
  }
}

TEST_CASE("planar and 3d runs are carried onto each other by the chart map") {
  Sl2Reduction red(Rational(3, 2), Rational(1));
  std::mt19937_64 rng(19);
  auto b3 = sinusoids(rng, 3);
  Vector2d z0(0.4, 0.8);
  Vector3d x0 = sl2_diffeo(red, z0);
  auto sys3 = make_system(BuiltinRepresentation::sl2_adjoint, b3);
  auto traj3 = integrate(sys3, x0, 0.0, 3.0, 1e-3);
  auto trajz = integrate_poly_fields(sl2_reduced_fields(red), b3, z0, 0.0, 3.0, 1e-3);
  double phi_drift = 0.0, lift = 0.0;
  for (std::size_t i = 0; i < trajz.size(); ++i) {
    phi_drift = std::max(phi_drift,
                         std::abs(sl2_phi_value(traj3.states[i]) - red.lambda_d()));
    lift = std::max(lift, (Vector3d(sl2_diffeo(red, Vector2d(trajz.states[i]))) -
                           Vector3d(traj3.states[i]))
                              .lpNorm<Eigen::Infinity>());
  }
  CHECK(phi_drift < 1e-10);
  CHECK(lift < 1e-8);
}

TEST_CASE("surface sampler stays on the level set and respects its box") {
  Sl2Reduction red(Rational(1, 2), Rational(1));
  auto pts = sl2_surface_sample(red, 7);
  CHECK(pts.size() == 2u * 7u * 7u);  // both signs of z2
  for (const auto& p : pts) CHECK(std::abs(sl2_phi_value(p) - 0.5) < 1e-10);
  CHECK_THROWS_AS(sl2_surface_sample(red, 1), Error);
}

TEST_CASE("central-level h6 fields close exactly for any level value") {
  CHECK(verify_field_closure(h6_reduced_fields_exact(Rational(1)),
                             builtin_algebra(BuiltinAlgebra::schrodinger_h6))
            .ok());
  CHECK(verify_field_closure(h6_reduced_fields_exact(Rational(7, 3)),
                             builtin_algebra(BuiltinAlgebra::schrodinger_h6))
            .ok());
}

TEST_CASE("4d, 3d, and planar h6 runs agree on shared components") {
  std::mt19937_64 rng(23);
  auto b6 = sinusoids(rng, 6);
  const double lambda0 = 1.0;
  auto sys4 = make_system(BuiltinRepresentation::h6_gamma, b6);
  Vector4d x0(0.3, lambda0, -0.5, 0.9);
  auto t4 = integrate(sys4, x0, 0.0, 3.0, 1e-3);
  auto t3 = integrate_affine(h6_reduce(lambda0).fields, b6, Vector3d(0.3, -0.5, 0.9), 0.0, 3.0,
                             1e-3);
  auto t2 = integrate_affine(h6_project(lambda0).fields, b6, Vector2d(0.3, -0.5), 0.0, 3.0, 1e-3);
  double q2dev = 0.0, d43 = 0.0, d32 = 0.0;
  for (std::size_t i = 0; i < t4.size(); ++i) {
    q2dev = std::max(q2dev, std::abs(t4.states[i][1] - lambda0));
    Vector3d proj(t4.states[i][0], t4.states[i][2], t4.states[i][3]);
    d43 = std::max(d43, (proj - Vector3d(t3.states[i])).lpNorm<Eigen::Infinity>());
    d32 = std::max(d32, (Vector2d(t3.states[i][0], t3.states[i][1]) - Vector2d(t2.states[i]))
                            .lpNorm<Eigen::Infinity>());
  }
  CHECK(q2dev == 0.0);  // q2 is untouched by every generator
  CHECK(d43 < 1e-9);
  CHECK(d32 < 1e-9);
}

TEST_CASE("reduced 3-solution rule agrees with the lifted rule and its planar part") {
  std::array<Vector3d, 3> s3{Vector3d(0.4, 0.2, -0.1), Vector3d(-0.3, 0.8, 0.5),
                             Vector3d(1.1, -0.6, 0.2)};
  std::array<double, 4> k{0.7, -0.4, 1.2, 0.3};
  Vector3d r3 = h6_reduced_superpose(s3, k);
  std::array<Vector2d, 3> s2{Vector2d(0.4, 0.2), Vector2d(-0.3, 0.8), Vector2d(1.1, -0.6)};
  Vector2d r2 = p5_superpose(s2, {k[0], k[1], k[2]});
  CHECK((Vector2d(r3[0], r3[1]) - r2).lpNorm<Eigen::Infinity>() < 1e-14);
  // With the first two constants off, the third component has a closed form.
  std::array<double, 4> k0{0.0, 0.0, 1.2, 0.3};
  Vector3d rr = h6_reduced_superpose(s3, k0);
  CHECK(rr[2] == doctest::Approx((s3[0][2] - k0[2] * k0[3]) / k0[2]).epsilon(1e-14));
}
