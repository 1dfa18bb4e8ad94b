#pragma once
/** @file presets.hpp
 *  @brief Named physical presets mapped onto system coefficients.
 *
 *  Oscillator-family presets (Bateman, coupled Caldirola-Kanai, coupled
 *  harmonic oscillators, charged particles in a time-dependent
 *  electromagnetic field, hyperbolic rotations) are expressed as coefficient
 *  choices for the Lorentz so(1,3) or sp(4,R) linear systems.  The Lorentz
 *  family uses a relabeled coefficient basis a1..a6 related to the generator
 *  coefficients b1..b6 by an invertible linear dictionary.
 */

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "liehamsys/casimirs.hpp"
#include "liehamsys/coefficients.hpp"
#include "liehamsys/dynamics.hpp"
#include "liehamsys/errors.hpp"
#include "liehamsys/polynomial.hpp"

namespace liehamsys {

/// Time-dependent parameters of one damped oscillator: mass m(t) > 0, spring
/// constant k(t) > 0, damping gamma(t) >= 0 on the span of interest.
struct OscillatorParams {
  CoefficientFunction m = CoefficientFunction::constant(1.0);
  CoefficientFunction k = CoefficientFunction::constant(1.0);
  CoefficientFunction gamma = CoefficientFunction::zero();
};

namespace detail {

inline void require_on_span(const CoefficientFunction& f, double t0, double t1, int samples,
                            bool strict, const std::string& what) {
  for (int i = 0; i < samples; ++i) {
    const double t =
        t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(samples - 1);
    const double v = f.eval(t);
    if (strict ? !(v > 0.0) : !(v >= 0.0))
      fail(errkind::invalid_params,
           what + " violated at t = " + std::to_string(t) + " (value " + std::to_string(v) +
               ")");
  }
}

}  // namespace detail

/// Relabeled Lorentz coefficients: a1 = b1 + b6, a2 = b2 - b4, a3 = b3,
/// a4 = b2 + b4, a5 = b5, a6 = b1 - b6.
inline std::array<CoefficientFunction, 6> lorentz_relabel(
    const std::array<CoefficientFunction, 6>& b) {
  using CF = CoefficientFunction;
  return {CF::linear_combo({{1.0, b[0]}, {1.0, b[5]}}),
          CF::linear_combo({{1.0, b[1]}, {-1.0, b[3]}}),
          b[2],
          CF::linear_combo({{1.0, b[1]}, {1.0, b[3]}}),
          b[4],
          CF::linear_combo({{1.0, b[0]}, {-1.0, b[5]}})};
}

/// Inverse dictionary: b1 = (a1+a6)/2, b2 = (a2+a4)/2, b3 = a3,
/// b4 = (a4-a2)/2, b5 = a5, b6 = (a1-a6)/2.
inline std::array<CoefficientFunction, 6> lorentz_inverse_relabel(
    const std::array<CoefficientFunction, 6>& a) {
  using CF = CoefficientFunction;
  return {CF::linear_combo({{0.5, a[0]}, {0.5, a[5]}}),
          CF::linear_combo({{0.5, a[1]}, {0.5, a[3]}}),
          a[2],
          CF::linear_combo({{0.5, a[3]}, {-0.5, a[1]}}),
          a[4],
          CF::linear_combo({{0.5, a[0]}, {-0.5, a[5]}})};
}

/// Quadratic basis h1'..h6' in which the Lorentz-family Hamiltonians are
/// displayed: h1' = p1 p2, h2' = (p1^2 - p2^2)/2, h3' = (q1 p2 - q2 p1)/2,
/// h4' = (q1^2 - q2^2)/2, h5' = (q1 p1 + q2 p2)/2, h6' = q1 q2.
inline std::vector<Polynomial> lorentz_hprime_basis() {
  Chart chart = Chart::canonical(2, 1);
  auto v = [&](int i) { return Polynomial::variable(chart, i); };
  const Polynomial q1 = v(0), q2 = v(1), p1 = v(2), p2 = v(3);
  const Rational half(1, 2);
  return {p1 * p2,           half * (p1 * p1 - p2 * p2), half * (q1 * p2 - q2 * p1),
          half * (q1 * q1 - q2 * q2), half * (q1 * p1 + q2 * p2), q1 * q2};
}

/// Displayed Hamiltonian value sum_i a_i(t) h_i'(x) of a Lorentz-family
/// preset.
inline double lorentz_display_value(const std::array<CoefficientFunction, 6>& a, double t,
                                    const Eigen::Vector4d& x) {
  static const std::vector<Polynomial> basis = lorentz_hprime_basis();
  std::vector<double> pt(x.data(), x.data() + 4);
  double h = 0.0;
  for (int i = 0; i < 6; ++i) h += a[size_t(i)].eval(t) * basis[size_t(i)].eval(pt);
  return h;
}

/// Weights of h1'..h6' for the generator of the assembled Lorentz flow: the
/// flow Hamiltonian is (a1 h1' + a2 h2' + a4 h4' + a6 h6')/2 + a3 h3' + a5 h5'
/// (the displayed Hamiltonian halves only the paired coefficients).
inline std::array<double, 6> lorentz_flow_weights(const std::array<CoefficientFunction, 6>& a,
                                                  double t) {
  return {0.5 * a[0].eval(t), 0.5 * a[1].eval(t), a[2].eval(t),
          0.5 * a[3].eval(t), a[4].eval(t),       0.5 * a[5].eval(t)};
}

/// Gradient of sum_i w_i basis_i at x, for Hamilton-equation consistency
/// checks.
inline Eigen::VectorXd weighted_gradient(const std::vector<Polynomial>& basis,
                                         const std::vector<double>& w,
                                         const Eigen::VectorXd& x) {
  std::vector<double> pt(x.data(), x.data() + x.size());
  Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (w[i] == 0.0) continue;
    for (Eigen::Index j = 0; j < x.size(); ++j)
      g[j] += w[i] * basis[i].derivative(int(j)).eval(pt);
  }
  return g;
}

/// Bateman damped-oscillator pair as Lorentz a-coefficients:
/// a2 = 1/m, a3 = gamma/m, a4 = m Omega^2 = k - gamma^2/(4m), rest zero.
/// Validity (m, k > 0, gamma >= 0, k > gamma^2/(4m)) is sampled on
/// [t0, t1].
inline std::array<CoefficientFunction, 6> bateman_preset(const OscillatorParams& p, double t0,
                                                         double t1, int samples = 101) {
  using CF = CoefficientFunction;
  detail::require_on_span(p.m, t0, t1, samples, true, "bateman: m(t) > 0");
  detail::require_on_span(p.k, t0, t1, samples, true, "bateman: k(t) > 0");
  detail::require_on_span(p.gamma, t0, t1, samples, false, "bateman: gamma(t) >= 0");
  CF omega2_m = CF::mapped([m = p.m, k = p.k, g = p.gamma](double t) {
    return k.eval(t) - g.eval(t) * g.eval(t) / (4.0 * m.eval(t));
  });
  detail::require_on_span(omega2_m, t0, t1, samples, true, "bateman: k > gamma^2/(4m)");
  CF a2 = CF::mapped([m = p.m](double t) { return 1.0 / m.eval(t); });
  CF a3 = CF::mapped([m = p.m, g = p.gamma](double t) { return g.eval(t) / m.eval(t); });
  return {CF::zero(), a2, a3, omega2_m, CF::zero(), CF::zero()};
}

/// Coupled Caldirola-Kanai pair as Lorentz a-coefficients:
/// a2 = e^{-2 int lambda}/m, a4 = k e^{+2 int lambda} with lambda = gamma/m,
/// and a user-chosen coupling a3.
inline std::array<CoefficientFunction, 6> coupled_ck_preset(
    const OscillatorParams& p, const CoefficientFunction& a3, double t0, double t1,
    int samples = 101, double quad_step = 5e-4) {
  using CF = CoefficientFunction;
  detail::require_on_span(p.m, t0, t1, samples, true, "coupled_ck: m(t) > 0");
  detail::require_on_span(p.k, t0, t1, samples, true, "coupled_ck: k(t) > 0");
  detail::require_on_span(p.gamma, t0, t1, samples, false, "coupled_ck: gamma(t) >= 0");
  CF lambda = CF::mapped([m = p.m, g = p.gamma](double t) { return g.eval(t) / m.eval(t); });
  CF em = CF::exp_integral(lambda, -2.0, 1.0, quad_step);
  CF ep = CF::exp_integral(lambda, 2.0, 1.0, quad_step);
  CF a2 = CF::mapped([em, m = p.m](double t) { return em.eval(t) / m.eval(t); });
  CF a4 = CF::mapped([ep, k = p.k](double t) { return k.eval(t) * ep.eval(t); });
  return {CF::zero(), a2, a3, a4, CF::zero(), CF::zero()};
}

/// Oscillator-family sp(4,R) coefficient layout: amplitude weights
/// (a2, a5, a7, a8, a10) on (coupling, q1^2, q2^2, p1^2, p2^2) become
/// generator coefficients b2 = a2, b3 = -a2, b5 = a5, b7 = a7, b8 = a8,
/// b10 = a10 (1-based positions; the rest vanish).
inline std::array<CoefficientFunction, 10> sp4_coeffs_from_oscillator(
    const CoefficientFunction& a2, const CoefficientFunction& a5,
    const CoefficientFunction& a7, const CoefficientFunction& a8,
    const CoefficientFunction& a10) {
  using CF = CoefficientFunction;
  std::array<CoefficientFunction, 10> b{};
  for (auto& f : b) f = CF::zero();
  b[1] = a2;
  b[2] = CF::linear_combo({{-1.0, a2}});
  b[4] = a5;
  b[6] = a7;
  b[7] = a8;
  b[9] = a10;
  return b;
}

/// Generalized coupled Caldirola-Kanai pair as sp(4,R) coefficients:
/// per oscillator i, b_{p_i^2} = e^{-2 int lambda_i}/m_i and
/// b_{q_i^2} = k_i e^{+2 int lambda_i}; coupling a2 on q1 p2 - q2 p1.
inline std::array<CoefficientFunction, 10> generalized_cck_preset(
    const OscillatorParams& p1, const OscillatorParams& p2, const CoefficientFunction& a2,
    double t0, double t1, int samples = 101, double quad_step = 5e-4) {
  using CF = CoefficientFunction;
  for (const auto* p : {&p1, &p2}) {
    detail::require_on_span(p->m, t0, t1, samples, true, "generalized_cck: m(t) > 0");
    detail::require_on_span(p->k, t0, t1, samples, true, "generalized_cck: k(t) > 0");
    detail::require_on_span(p->gamma, t0, t1, samples, false, "generalized_cck: gamma >= 0");
  }
  auto factor_pair = [&](const OscillatorParams& p) {
    CF lambda = CF::mapped([m = p.m, g = p.gamma](double t) { return g.eval(t) / m.eval(t); });
    CF em = CF::exp_integral(lambda, -2.0, 1.0, quad_step);
    CF ep = CF::exp_integral(lambda, 2.0, 1.0, quad_step);
    CF bp = CF::mapped([em, m = p.m](double t) { return em.eval(t) / m.eval(t); });
    CF bq = CF::mapped([ep, k = p.k](double t) { return k.eval(t) * ep.eval(t); });
    return std::pair<CF, CF>(bp, bq);
  };
  auto [b8, b5] = factor_pair(p1);
  auto [b10, b7] = factor_pair(p2);
  return sp4_coeffs_from_oscillator(a2, b5, b7, b8, b10);
}

/// Time-dependent coupled harmonic oscillators as sp(4,R) coefficients:
/// b_{p_i^2} = 1/m_i, b_{q_i^2} = m_i Omega_i^2 = k_i - gamma_i^2/(4 m_i),
/// coupling a2 on the angular momentum.
inline std::array<CoefficientFunction, 10> coupled_ho_preset(const OscillatorParams& p1,
                                                             const OscillatorParams& p2,
                                                             const CoefficientFunction& a2,
                                                             double t0, double t1,
                                                             int samples = 101) {
  using CF = CoefficientFunction;
  auto factor_pair = [&](const OscillatorParams& p, const std::string& which) {
    detail::require_on_span(p.m, t0, t1, samples, true, "coupled_ho: m(t) > 0 (" + which + ")");
    detail::require_on_span(p.k, t0, t1, samples, true, "coupled_ho: k(t) > 0 (" + which + ")");
    detail::require_on_span(p.gamma, t0, t1, samples, false,
                            "coupled_ho: gamma >= 0 (" + which + ")");
    CF bq = CF::mapped([m = p.m, k = p.k, g = p.gamma](double t) {
      return k.eval(t) - g.eval(t) * g.eval(t) / (4.0 * m.eval(t));
    });
    detail::require_on_span(bq, t0, t1, samples, true,
                            "coupled_ho: k > gamma^2/(4m) (" + which + ")");
    CF bp = CF::mapped([m = p.m](double t) { return 1.0 / m.eval(t); });
    return std::pair<CF, CF>(bp, bq);
  };
  auto [b8, b5] = factor_pair(p1, "oscillator 1");
  auto [b10, b7] = factor_pair(p2, "oscillator 2");
  return sp4_coeffs_from_oscillator(a2, b5, b7, b8, b10);
}

/// Charged planar particles in a t-dependent electromagnetic field as
/// sp(4,R) coefficients: with charges e1, e2, masses m1, m2 and field
/// strength g(t),
///   b2 = -g e2/(2 m2), b3 = g e1/(2 m1),
///   b5 = e1 + g^2 e2^2/(4 m2), b7 = e2 + g^2 e1^2/(4 m1),
///   b8 = 1/m1, b10 = 1/m2.
/// b5/b7 follow the exact expansion of the minimally coupled Hamiltonian;
/// an alternative tabulation with 4 m1^2 / 4 m2^2 denominators does not
/// reproduce that expansion and is not used.  A non-constant g(t) is the
/// intended modeling regime but is not enforced.
inline std::array<CoefficientFunction, 10> em_preset(
    const CoefficientFunction& m1, const CoefficientFunction& m2,
    const CoefficientFunction& e1, const CoefficientFunction& e2,
    const CoefficientFunction& g, double t0, double t1, int samples = 101) {
  using CF = CoefficientFunction;
  detail::require_on_span(m1, t0, t1, samples, true, "em: m1(t) > 0");
  detail::require_on_span(m2, t0, t1, samples, true, "em: m2(t) > 0");
  std::array<CoefficientFunction, 10> b{};
  for (auto& f : b) f = CF::zero();
  b[1] = CF::mapped([g, e2, m2](double t) { return -g.eval(t) * e2.eval(t) / (2.0 * m2.eval(t)); });
  b[2] = CF::mapped([g, e1, m1](double t) { return g.eval(t) * e1.eval(t) / (2.0 * m1.eval(t)); });
  b[4] = CF::mapped([g, e1, e2, m2](double t) {
    const double gg = g.eval(t), ee = e2.eval(t);
    return e1.eval(t) + gg * gg * ee * ee / (4.0 * m2.eval(t));
  });
  b[6] = CF::mapped([g, e1, e2, m1](double t) {
    const double gg = g.eval(t), ee = e1.eval(t);
    return e2.eval(t) + gg * gg * ee * ee / (4.0 * m1.eval(t));
  });
  b[7] = CF::mapped([m1](double t) { return 1.0 / m1.eval(t); });
  b[9] = CF::mapped([m2](double t) { return 1.0 / m2.eval(t); });
  return b;
}

/// Hyperbolic-rotation subcase: equal cross couplings b2 = b3 = b(t), all
/// other coefficients zero.  Admits the sinh/cosh closed form.
inline std::array<CoefficientFunction, 10> hyperbolic_preset(const CoefficientFunction& b) {
  using CF = CoefficientFunction;
  std::array<CoefficientFunction, 10> out{};
  for (auto& f : out) f = CF::zero();
  out[1] = b;
  out[2] = b;
  return out;
}

/// Display Hamiltonian of the sp(4,R) oscillator family:
/// H = a8 p1^2/2 + a5 q1^2/2 + a10 p2^2/2 + a7 q2^2/2 + a2 (q1 p2 - q2 p1).
inline double sp4_oscillator_display_value(double a2, double a5, double a7, double a8,
                                           double a10, const Eigen::Vector4d& x) {
  const double q1 = x[0], q2 = x[1], p1 = x[2], p2 = x[3];
  return 0.5 * (a8 * p1 * p1 + a5 * q1 * q1 + a10 * p2 * p2 + a7 * q2 * q2) +
         a2 * (q1 * p2 - q2 * p1);
}

/// A named preset bundled with its assembled system and audit table.
struct PresetSystem {
  std::string name;
  TDLinearSystem system;
  std::vector<std::pair<std::string, CoefficientFunction>> table;
  std::vector<std::string> notes;
};

/// Assemble a Lorentz-family preset (a-coefficients) into a system over the
/// so(1,3) realization, recording both coefficient bases for audit.
inline PresetSystem make_lorentz_preset_system(const std::string& name,
                                               const std::array<CoefficientFunction, 6>& a) {
  PresetSystem out;
  out.name = name;
  const std::array<CoefficientFunction, 6> b = lorentz_inverse_relabel(a);
  out.system = make_system(BuiltinRepresentation::so13_gamma,
                           std::vector<CoefficientFunction>(b.begin(), b.end()));
  for (int i = 0; i < 6; ++i) out.table.emplace_back("a" + std::to_string(i + 1), a[size_t(i)]);
  for (int i = 0; i < 6; ++i) out.table.emplace_back("b" + std::to_string(i + 1), b[size_t(i)]);
  return out;
}

/// Assemble an sp(4,R)-family preset (b-coefficients) into a system over the
/// fundamental realization.
inline PresetSystem make_sp4_preset_system(const std::string& name,
                                           const std::array<CoefficientFunction, 10>& b) {
  PresetSystem out;
  out.name = name;
  out.system = make_system(BuiltinRepresentation::sp4_fundamental,
                           std::vector<CoefficientFunction>(b.begin(), b.end()));
  for (int i = 0; i < 10; ++i) out.table.emplace_back("b" + std::to_string(i + 1), b[size_t(i)]);
  return out;
}

}  // namespace liehamsys
