#pragma once
/** @file dynamics.hpp
 *  @brief Time-dependent linear Hamiltonian systems and fixed-step RK4.
 *
 *  A system is dx/dt = A(t) x with A(t) = sum_alpha b_alpha(t) A_alpha, where
 *  the A_alpha come from a matrix realization and the b_alpha are scalar
 *  coefficient functions.  Integration is classical fixed-step RK4; several
 *  copies of the same system can be integrated in lockstep so that shared
 *  invariants can be evaluated on the joint trajectory.
 */

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "liehamsys/algebra.hpp"
#include "liehamsys/coefficients.hpp"
#include "liehamsys/errors.hpp"
#include "liehamsys/realization.hpp"

namespace liehamsys {

/// A linear system with time-dependent coefficients on a frozen generator
/// basis.  `field_mats[alpha]` is the ODE matrix of generator alpha (the
/// transpose of its realization matrix).
struct TDLinearSystem {
  Representation rep;
  std::vector<Eigen::MatrixXd> field_mats;
  std::vector<CoefficientFunction> coeffs;

  int n() const { return rep.n; }

  /// A(t) = sum_alpha b_alpha(t) * field_mats[alpha].
  Eigen::MatrixXd assemble(double t) const {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rep.n, rep.n);
    assemble_into(t, A);
    return A;
  }

  void assemble_into(double t, Eigen::MatrixXd& A) const {
    A.setZero();
    for (std::size_t a = 0; a < field_mats.size(); ++a) {
      const double b = coeffs[a].eval(t);
      if (b != 0.0) A.noalias() += b * field_mats[a];
    }
  }
};

inline TDLinearSystem make_system(const Representation& rep,
                                  std::vector<CoefficientFunction> coeffs) {
  if (coeffs.size() != static_cast<std::size_t>(rep.algebra.dim()))
    fail(errkind::dimension_mismatch, "make_system: one coefficient per generator required");
  TDLinearSystem sys{rep, {}, std::move(coeffs)};
  for (const auto& field : linearize(rep)) sys.field_mats.push_back(field.Ad);
  return sys;
}

inline TDLinearSystem make_system(BuiltinRepresentation which,
                                  std::vector<CoefficientFunction> coeffs) {
  return make_system(builtin_representation(which), std::move(coeffs));
}

/// A sampled solution: states[i] is the state at times[i].
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;

  std::size_t size() const { return times.size(); }
};

namespace detail {

/// Uniform grid covering [t0, t1] with step as close to dt_request as an
/// integer subdivision allows.
inline std::pair<std::int64_t, double> grid_for(double t0, double t1, double dt_request) {
  if (!(t1 > t0)) fail(errkind::invalid_argument, "integrate: need t1 > t0");
  if (!(dt_request > 0.0) || dt_request > t1 - t0)
    fail(errkind::invalid_argument, "integrate: need 0 < dt <= t1 - t0");
  const auto steps =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround((t1 - t0) / dt_request)));
  return {steps, (t1 - t0) / static_cast<double>(steps)};
}

}  // namespace detail

/// Fixed-step RK4 for a generic first-order system dy/dt = f(t, y).
inline Trajectory rk4_generic(
    const std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& y0, double t0, double t1, double dt) {
  auto [steps, h] = detail::grid_for(t0, t1, dt);
  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(steps) + 1);
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  Eigen::VectorXd y = y0;
  traj.times.push_back(t0);
  traj.states.push_back(y);
  for (std::int64_t i = 0; i < steps; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    const Eigen::VectorXd k1 = f(t, y);
    const Eigen::VectorXd k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    const Eigen::VectorXd k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    const Eigen::VectorXd k4 = f(t + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    traj.times.push_back(t0 + static_cast<double>(i + 1) * h);
    traj.states.push_back(y);
  }
  return traj;
}

/// Integrate several copies of the same linear system in lockstep: one A(t)
/// evaluation per RK4 stage is shared by all copies, so corresponding samples
/// are stage-consistent across copies.  1 <= copies <= 5.
inline std::vector<Trajectory> integrate_prolonged(const TDLinearSystem& sys,
                                                   const std::vector<Eigen::VectorXd>& x0s,
                                                   double t0, double t1, double dt) {
  const auto k = x0s.size();
  if (k < 1 || k > 5)
    fail(errkind::invalid_argument, "integrate_prolonged: need between 1 and 5 copies");
  for (const auto& x0 : x0s)
    if (x0.size() != sys.n())
      fail(errkind::dimension_mismatch, "integrate_prolonged: initial state has wrong length");
  auto [steps, h] = detail::grid_for(t0, t1, dt);

  std::vector<Trajectory> out(k);
  std::vector<Eigen::VectorXd> y(x0s.begin(), x0s.end());
  for (std::size_t c = 0; c < k; ++c) {
    out[c].times.reserve(static_cast<std::size_t>(steps) + 1);
    out[c].states.reserve(static_cast<std::size_t>(steps) + 1);
    out[c].times.push_back(t0);
    out[c].states.push_back(y[c]);
  }
  Eigen::MatrixXd A1(sys.n(), sys.n()), A2(sys.n(), sys.n()), A4(sys.n(), sys.n());
  for (std::int64_t i = 0; i < steps; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    sys.assemble_into(t, A1);
    sys.assemble_into(t + 0.5 * h, A2);  // midpoint matrix shared by stages 2 and 3
    sys.assemble_into(t + h, A4);
    for (std::size_t c = 0; c < k; ++c) {
      const Eigen::VectorXd k1 = A1 * y[c];
      const Eigen::VectorXd k2 = A2 * (y[c] + 0.5 * h * k1);
      const Eigen::VectorXd k3 = A2 * (y[c] + 0.5 * h * k2);
      const Eigen::VectorXd k4 = A4 * (y[c] + h * k3);
      y[c] += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      out[c].times.push_back(t0 + static_cast<double>(i + 1) * h);
      out[c].states.push_back(y[c]);
    }
  }
  return out;
}

/// Single-copy convenience wrapper around integrate_prolonged.
inline Trajectory integrate(const TDLinearSystem& sys, const Eigen::VectorXd& x0, double t0,
                            double t1, double dt) {
  return std::move(integrate_prolonged(sys, {x0}, t0, t1, dt)[0]);
}

/// Fundamental matrix solution M(t1) of dM/dt = A(t) M, M(t0) = I, by RK4 on
/// the matrix equation with the same stage layout as `integrate`.
inline Eigen::MatrixXd monodromy(const TDLinearSystem& sys, double t0, double t1, double dt) {
  auto [steps, h] = detail::grid_for(t0, t1, dt);
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(sys.n(), sys.n());
  Eigen::MatrixXd A1(sys.n(), sys.n()), A2(sys.n(), sys.n()), A4(sys.n(), sys.n());
  for (std::int64_t i = 0; i < steps; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    sys.assemble_into(t, A1);
    sys.assemble_into(t + 0.5 * h, A2);
    sys.assemble_into(t + h, A4);
    const Eigen::MatrixXd k1 = A1 * M;
    const Eigen::MatrixXd k2 = A2 * (M + 0.5 * h * k1);
    const Eigen::MatrixXd k3 = A2 * (M + 0.5 * h * k2);
    const Eigen::MatrixXd k4 = A4 * (M + h * k3);
    M += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return M;
}

/// Closed-form solution component for the hyperbolic-rotation family: the
/// sp(4,R) system with equal cross couplings b2(t) = b3(t) = b(t) and all
/// other coefficients zero decouples into components of the form
/// lambda1 sinh B(t) + lambda2 cosh B(t) with B(t) = int_0^t b.
class HyperbolicClosedForm {
 public:
  HyperbolicClosedForm(CoefficientFunction b, double quad_step = 5e-4)
      : cum_([b](double t) { return b.eval(t); }, quad_step) {}

  double operator()(double lambda1, double lambda2, double t) const {
    const double B = cum_.integral_to(t);
    return lambda1 * std::sinh(B) + lambda2 * std::cosh(B);
  }

  double phase(double t) const { return cum_.integral_to(t); }

 private:
  CumulativeIntegral cum_;
};

/// One-shot evaluation of the hyperbolic closed form.
inline double hyperbolic_closed_form(const CoefficientFunction& b, double lambda1,
                                     double lambda2, double t, double quad_step = 5e-4) {
  return HyperbolicClosedForm(b, quad_step)(lambda1, lambda2, t);
}

/// Exact closed-form state of the b2 = b3 = b hyperbolic-rotation system for
/// initial state (c1, c2, c3, c4) at phase B = int_0^t b:
///   q1 =  c1 cosh B + c2 sinh B,   q2 =  c1 sinh B + c2 cosh B,
///   p1 =  c3 cosh B - c4 sinh B,   p2 = -c3 sinh B + c4 cosh B.
inline Eigen::Vector4d hyperbolic_state(const Eigen::Vector4d& c, double B) {
  const double ch = std::cosh(B), sh = std::sinh(B);
  return {c[0] * ch + c[1] * sh, c[0] * sh + c[1] * ch, c[2] * ch - c[3] * sh,
          -c[2] * sh + c[3] * ch};
}

/// An affine vector field y -> M y + c (reduced systems are of this form).
struct AffineField {
  Eigen::MatrixXd M;
  Eigen::VectorXd c;

  Eigen::VectorXd value(const Eigen::VectorXd& y) const { return M * y + c; }
};

/// Integrate dy/dt = sum_alpha b_alpha(t) (M_alpha y + c_alpha) with RK4.
inline Trajectory integrate_affine(const std::vector<AffineField>& fields,
                                   const std::vector<CoefficientFunction>& coeffs,
                                   const Eigen::VectorXd& y0, double t0, double t1, double dt) {
  if (fields.size() != coeffs.size())
    fail(errkind::dimension_mismatch, "integrate_affine: one coefficient per field required");
  auto rhs = [&](double t, const Eigen::VectorXd& y) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(y.size());
    for (std::size_t a = 0; a < fields.size(); ++a) {
      const double b = coeffs[a].eval(t);
      if (b != 0.0) v += b * fields[a].value(y);
    }
    return v;
  };
  return rk4_generic(rhs, y0, t0, t1, dt);
}

}  // namespace liehamsys
