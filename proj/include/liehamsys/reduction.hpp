#pragma once
/** @file reduction.hpp
 *  @brief Dimensional reduction of the built-in realizations.
 *
 *  The 3D sl2 realization preserves the quadric phi = x1 x3 - x2^2; on a
 *  level set phi = lambda it reduces to a planar realization in chart
 *  coordinates (z1, z2), and an explicit diffeomorphism maps planar solutions
 *  back onto the level set.  The 4D h6 realization fixes q2, so freezing
 *  q2 = lambda0 gives a 3D realization in (q, p, s) whose further projection
 *  to (q, p) is the classical affine 3-solution system.  All reduced fields
 *  are kept exactly (rational coefficients) so closure of the commutator
 *  tables can be checked symbolically.
 */

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "liehamsys/algebra.hpp"
#include "liehamsys/coefficients.hpp"
#include "liehamsys/dynamics.hpp"
#include "liehamsys/errors.hpp"
#include "liehamsys/polynomial.hpp"
#include "liehamsys/rational.hpp"
#include "liehamsys/realization.hpp"

namespace liehamsys {

/// A vector field with polynomial components, one per chart variable.
using PolyVectorField = std::vector<Polynomial>;

/// Lie bracket of polynomial vector fields on a shared chart:
/// [X, Y]^i = sum_j (X^j d_j Y^i - Y^j d_j X^i).
inline PolyVectorField vf_commutator(const PolyVectorField& X, const PolyVectorField& Y) {
  if (X.size() != Y.size())
    fail(errkind::dimension_mismatch, "vf_commutator: field dimensions differ");
  const Chart& chart = X[0].chart();
  PolyVectorField out;
  out.reserve(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    Polynomial comp(chart);
    for (std::size_t j = 0; j < X.size(); ++j)
      comp += X[j] * Y[i].derivative(int(j)) - Y[j] * X[i].derivative(int(j));
    out.push_back(comp);
  }
  return out;
}

/// Check that fields close on the structure table of g:
/// [X_i, X_j] = sum_k C_ij^k X_k exactly.
inline ValidationReport verify_field_closure(const std::vector<PolyVectorField>& fields,
                                             const LieAlgebra& g) {
  ValidationReport report;
  const int r = g.dim();
  if (static_cast<int>(fields.size()) != r) {
    report.add("closure", "field count", "expected " + std::to_string(r));
    return report;
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      PolyVectorField lhs = vf_commutator(fields[size_t(i)], fields[size_t(j)]);
      for (std::size_t comp = 0; comp < lhs.size(); ++comp) {
        Polynomial rhs(lhs[comp].chart());
        for (int k = 0; k < r; ++k) {
          const Rational c = g.structure(i, j, k);
          if (!c.is_zero()) rhs += c * fields[size_t(k)][comp];
        }
        if (lhs[comp] != rhs)
          report.add("closure",
                     "[" + g.labels()[size_t(i)] + "," + g.labels()[size_t(j)] + "] component " +
                         std::to_string(comp),
                     "mismatch");
      }
    }
  return report;
}

/// Evaluate a polynomial field at a point.
inline Eigen::VectorXd vf_value(const PolyVectorField& X, const Eigen::VectorXd& y) {
  std::vector<double> pt(y.data(), y.data() + y.size());
  Eigen::VectorXd v(static_cast<Eigen::Index>(X.size()));
  for (std::size_t i = 0; i < X.size(); ++i) v[static_cast<Eigen::Index>(i)] = X[i].eval(pt);
  return v;
}

/// RK4 integration of dy/dt = sum_alpha b_alpha(t) X_alpha(y) for polynomial
/// fields.
inline Trajectory integrate_poly_fields(const std::vector<PolyVectorField>& fields,
                                        const std::vector<CoefficientFunction>& coeffs,
                                        const Eigen::VectorXd& y0, double t0, double t1,
                                        double dt) {
  if (fields.size() != coeffs.size())
    fail(errkind::dimension_mismatch, "integrate_poly_fields: one coefficient per field");
  auto rhs = [&](double t, const Eigen::VectorXd& y) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(y.size());
    for (std::size_t a = 0; a < fields.size(); ++a) {
      const double b = coeffs[a].eval(t);
      if (b != 0.0) v += b * vf_value(fields[a], y);
    }
    return v;
  };
  return rk4_generic(rhs, y0, t0, t1, dt);
}

/// Level-set data for the sl2 reduction: the quadric level phi = lambda and
/// the chart scale beta (beta != 0), with c = lambda / beta^2.
struct Sl2Reduction {
  Rational lambda;
  Rational beta;

  Sl2Reduction(Rational lam, Rational bet) : lambda(lam), beta(bet) {
    if (beta.is_zero()) fail(errkind::invalid_argument, "Sl2Reduction: beta must be nonzero");
  }

  Rational c() const { return lambda / (beta * beta); }
  double lambda_d() const { return lambda.to_double(); }
  double beta_d() const { return beta.to_double(); }
};

/// The 3D sl2 fields as exact polynomial fields on the chart (x1, x2, x3),
/// ordered like the algebra basis (h, e-, e+):
/// X_h = (-x1, 0, x3), X_{e-} = (0, x1, 2 x2), X_{e+} = (-2 x2, -x3, 0).
inline std::vector<PolyVectorField> sl2_3d_fields() {
  Chart chart = Chart::abstract({"x1", "x2", "x3"});
  auto v = [&](int i, Rational c = Rational(1)) { return Polynomial::variable(chart, i, c); };
  Polynomial zero(chart);
  return {{v(0, Rational(-1)), zero, v(2)},
          {zero, v(0), v(1, Rational(2))},
          {v(1, Rational(-2)), v(2, Rational(-1)), zero}};
}

/// The conserved quadric phi = x1 x3 - x2^2 of the 3D sl2 fields.
inline Polynomial sl2_phi() {
  Chart chart = Chart::abstract({"x1", "x2", "x3"});
  auto v = [&](int i) { return Polynomial::variable(chart, i); };
  return v(0) * v(2) - v(1) * v(1);
}

inline double sl2_phi_value(const Eigen::Vector3d& x) { return x[0] * x[2] - x[1] * x[1]; }

/// Planar reduced sl2 fields on the chart (z1, z2), ordered like the algebra
/// basis (h, e-, e+):
/// Z_h = (z1, z2), Z_{e-} = (1, 0), Z_{e+} = (z1^2 - c z2^2, 2 z1 z2).
inline std::vector<PolyVectorField> sl2_reduced_fields(const Sl2Reduction& red) {
  Chart chart = Chart::abstract({"z1", "z2"});
  auto v = [&](int i, Rational c = Rational(1)) { return Polynomial::variable(chart, i, c); };
  Polynomial zero(chart);
  Polynomial quad = v(0) * v(0) - red.c() * (v(1) * v(1));
  return {{v(0), v(1)}, {Polynomial::constant(chart, Rational(1)), zero},
          {quad, Rational(2) * (v(0) * v(1))}};
}

/// Chart-to-level-set diffeomorphism
/// Phi(z1, z2) = (beta/z2, beta z1/z2, (beta^2 z1^2 + lambda z2^2)/(beta z2));
/// its image lies on phi = lambda.  z2 = 0 is outside the chart.
inline Eigen::Vector3d sl2_diffeo(const Sl2Reduction& red, const Eigen::Vector2d& z) {
  if (z[1] == 0.0) fail(errkind::singular_chart, "sl2_diffeo: z2 = 0 is outside the chart");
  const double b = red.beta_d(), lam = red.lambda_d();
  return {b / z[1], b * z[0] / z[1], (b * b * z[0] * z[0] + lam * z[1] * z[1]) / (b * z[1])};
}

/// Analytic Jacobian d Phi / d (z1, z2).
inline Eigen::Matrix<double, 3, 2> sl2_diffeo_jacobian(const Sl2Reduction& red,
                                                       const Eigen::Vector2d& z) {
  if (z[1] == 0.0)
    fail(errkind::singular_chart, "sl2_diffeo_jacobian: z2 = 0 is outside the chart");
  const double b = red.beta_d(), lam = red.lambda_d();
  Eigen::Matrix<double, 3, 2> J;
  J(0, 0) = 0.0;
  J(0, 1) = -b / (z[1] * z[1]);
  J(1, 0) = b / z[1];
  J(1, 1) = -b * z[0] / (z[1] * z[1]);
  J(2, 0) = 2.0 * b * z[0] / z[1];
  J(2, 1) = -b * z[0] * z[0] / (z[1] * z[1]) + lam / b;
  return J;
}

/// Sup-norm defect of the pushforward identity dPhi . Z_alpha = X_alpha o Phi
/// for each generator at a chart point.
inline std::array<double, 3> sl2_pushforward_residual(const Sl2Reduction& red,
                                                      const Eigen::Vector2d& z) {
  const auto zfields = sl2_reduced_fields(red);
  const auto xfields = linearize(builtin_representation(BuiltinRepresentation::sl2_adjoint));
  const Eigen::Vector3d X = sl2_diffeo(red, z);
  const Eigen::Matrix<double, 3, 2> J = sl2_diffeo_jacobian(red, z);
  std::array<double, 3> out{};
  for (int a = 0; a < 3; ++a) {
    const Eigen::Vector2d zv = vf_value(zfields[size_t(a)], z);
    const Eigen::Vector3d defect = J * zv - xfields[size_t(a)].value(X);
    out[size_t(a)] = defect.lpNorm<Eigen::Infinity>();
  }
  return out;
}

/// Sample the level set phi = lambda through the chart map on a z grid
/// (both signs of z2, away from the singular line).  Returns (x1, x2, x3)
/// triples.
inline std::vector<Eigen::Vector3d> sl2_surface_sample(const Sl2Reduction& red, int per_axis) {
  if (per_axis < 2) fail(errkind::invalid_argument, "sl2_surface_sample: need >= 2 per axis");
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(static_cast<std::size_t>(per_axis) * static_cast<std::size_t>(per_axis) * 2);
  for (int i = 0; i < per_axis; ++i) {
    const double z1 = -2.0 + 4.0 * static_cast<double>(i) / static_cast<double>(per_axis - 1);
    for (int j = 0; j < per_axis; ++j) {
      const double mag =
          0.2 + 1.8 * static_cast<double>(j) / static_cast<double>(per_axis - 1);
      for (double sign : {-1.0, 1.0})
        pts.push_back(sl2_diffeo(red, Eigen::Vector2d(z1, sign * mag)));
    }
  }
  return pts;
}

/// Exact 3D reduced h6 fields on the chart (q, p, s) obtained by freezing
/// q2 = lambda0 in the 4D realization (s is the leftover conjugate momentum):
/// Y1 = (-q, p, 0), Y2 = (-p, 0, 0), Y3 = (0, q, 0),
/// Y4 = (-lambda0, 0, p), Y5 = (0, lambda0, q), Y6 = (0, 0, 2 lambda0).
inline std::vector<PolyVectorField> h6_reduced_fields_exact(const Rational& lambda0) {
  Chart chart = Chart::abstract({"q", "p", "s"});
  auto v = [&](int i, Rational c = Rational(1)) { return Polynomial::variable(chart, i, c); };
  auto cst = [&](Rational c) { return Polynomial::constant(chart, c); };
  Polynomial zero(chart);
  return {{v(0, Rational(-1)), v(1), zero},
          {v(1, Rational(-1)), zero, zero},
          {zero, v(0), zero},
          {cst(Rational(-1) * lambda0), zero, v(1)},
          {zero, cst(lambda0), v(0)},
          {zero, zero, cst(Rational(2) * lambda0)}};
}

/// Numeric affine form of the reduced h6 system.
struct H6ReducedSystem {
  double lambda0 = 1.0;
  int dim = 3;
  std::vector<AffineField> fields;  ///< one per h6 generator, basis order
};

/// 3D reduced h6 system at level q2 = lambda0 on the chart (q, p, s).
inline H6ReducedSystem h6_reduce(double lambda0 = 1.0) {
  H6ReducedSystem sys;
  sys.lambda0 = lambda0;
  sys.dim = 3;
  auto zero3 = [] { return AffineField{Eigen::MatrixXd::Zero(3, 3), Eigen::VectorXd::Zero(3)}; };
  for (int a = 0; a < 6; ++a) sys.fields.push_back(zero3());
  sys.fields[0].M(0, 0) = -1.0;
  sys.fields[0].M(1, 1) = 1.0;
  sys.fields[1].M(0, 1) = -1.0;
  sys.fields[2].M(1, 0) = 1.0;
  sys.fields[3].c[0] = -lambda0;
  sys.fields[3].M(2, 1) = 1.0;
  sys.fields[4].c[1] = lambda0;
  sys.fields[4].M(2, 0) = 1.0;
  sys.fields[5].c[2] = 2.0 * lambda0;
  return sys;
}

/// Planar projection of the reduced h6 system onto (q, p); the s direction
/// decouples and the central generator acts trivially.
inline H6ReducedSystem h6_project(double lambda0 = 1.0) {
  H6ReducedSystem sys;
  sys.lambda0 = lambda0;
  sys.dim = 2;
  auto zero2 = [] { return AffineField{Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Zero(2)}; };
  for (int a = 0; a < 6; ++a) sys.fields.push_back(zero2());
  sys.fields[0].M(0, 0) = -1.0;
  sys.fields[0].M(1, 1) = 1.0;
  sys.fields[1].M(0, 1) = -1.0;
  sys.fields[2].M(1, 0) = 1.0;
  sys.fields[3].c[0] = -lambda0;
  sys.fields[4].c[1] = lambda0;
  return sys;
}

}  // namespace liehamsys
