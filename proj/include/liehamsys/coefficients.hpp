#pragma once
/** @file coefficients.hpp
 *  @brief Scalar time-dependent coefficient functions b_alpha(t).
 *
 *  A small closed family of coefficient shapes covers every system in this
 *  library: constants, polynomials in t, sinusoids, tabulated samples,
 *  exponentials of running integrals (for damped-oscillator changes of
 *  variables), arbitrary point-wise maps, and linear combinations.  Values are
 *  deterministic: repeated evaluation at the same t returns the same double.
 */

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "liehamsys/errors.hpp"

namespace liehamsys {

/// Cumulative integral B(t) = int_0^t f(s) ds with per-interval Simpson
/// quadrature on a fixed grid of width `step` (global error O(step^4)).
/// Interval sums are cached so repeated evaluation along a sweep is O(1)
/// amortized.  Negative t integrates backwards from 0.
class CumulativeIntegral {
 public:
  CumulativeIntegral(std::function<double(double)> f, double step)
      : f_(std::move(f)), step_(step), state_(std::make_shared<State>()) {
    if (!(step_ > 0.0)) fail(errkind::invalid_argument, "CumulativeIntegral: step must be > 0");
  }

  /// int_0^t f(s) ds.
  double integral_to(double t) const {
    if (t == 0.0) return 0.0;
    const double sign = t < 0.0 ? -1.0 : 1.0;
    const double tt = std::fabs(t);
    const auto k = static_cast<std::int64_t>(std::floor(tt / step_ + 1e-12));
    double base = cumulative(sign, k);
    double a = sign * static_cast<double>(k) * step_;
    if (std::fabs(tt - static_cast<double>(k) * step_) > 1e-12 * (1.0 + tt))
      base += simpson(a, t);
    if (!std::isfinite(base))
      fail(errkind::coefficient_singular, "CumulativeIntegral: non-finite quadrature value");
    return base;
  }

 private:
  struct State {
    std::mutex mu;
    std::vector<double> fwd{0.0};  // fwd[k] = int_0^{k step}
    std::vector<double> bwd{0.0};  // bwd[k] = int_0^{-k step}
  };

  double simpson(double a, double b) const {
    const double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f_(a) + 4.0 * f_(m) + f_(b));
  }

  double cumulative(double sign, std::int64_t k) const {
    std::lock_guard<std::mutex> lock(state_->mu);
    auto& table = sign > 0 ? state_->fwd : state_->bwd;
    while (static_cast<std::int64_t>(table.size()) <= k) {
      const auto done = static_cast<std::int64_t>(table.size()) - 1;
      const double a = sign * static_cast<double>(done) * step_;
      table.push_back(table.back() + simpson(a, a + sign * step_));
    }
    return table[static_cast<std::size_t>(k)];
  }

  std::function<double(double)> f_;
  double step_;
  std::shared_ptr<State> state_;
};

/// A scalar function of time.  Instances are cheap to copy (shared immutable
/// payload) and compare-free; construct via the named factories.
class CoefficientFunction {
 public:
  enum class Kind { constant, poly_in_t, sinusoid, exp_integral, tabulated, mapped, linear_combo };

  CoefficientFunction() : CoefficientFunction(constant(0.0)) {}

  /// b(t) = c.
  static CoefficientFunction constant(double c) {
    CoefficientFunction out(Kind::constant);
    out.data_->params = {c};
    return out;
  }

  /// b(t) = sum_i coeffs[i] t^i.
  static CoefficientFunction poly_in_t(std::vector<double> coeffs) {
    CoefficientFunction out(Kind::poly_in_t);
    out.data_->params = std::move(coeffs);
    return out;
  }

  /// b(t) = amp * sin(omega t + phase) + offset.
  static CoefficientFunction sinusoid(double amp, double omega, double phase,
                                      double offset = 0.0) {
    CoefficientFunction out(Kind::sinusoid);
    out.data_->params = {amp, omega, phase, offset};
    return out;
  }

  /// b(t) = prefactor * exp(scale * int_0^t inner(s) ds); the running
  /// integral uses Simpson quadrature with the given step.
  static CoefficientFunction exp_integral(CoefficientFunction inner, double scale,
                                          double prefactor = 1.0, double quad_step = 5e-4) {
    CoefficientFunction out(Kind::exp_integral);
    out.data_->params = {scale, prefactor};
    out.data_->children = {std::move(inner)};
    out.data_->integral = std::make_shared<CumulativeIntegral>(
        [child = out.data_->children[0]](double t) { return child.eval(t); }, quad_step);
    return out;
  }

  /// Piecewise-linear interpolation of samples values[i] at t0 + i*dt.
  /// Evaluation outside [t0, t0 + (n-1) dt] clamps to the end samples.
  static CoefficientFunction tabulated(double t0, double dt, std::vector<double> values) {
    if (values.size() < 2) fail(errkind::invalid_argument, "tabulated: need >= 2 samples");
    if (!(dt > 0.0)) fail(errkind::invalid_argument, "tabulated: dt must be > 0");
    CoefficientFunction out(Kind::tabulated);
    out.data_->params = {t0, dt};
    out.data_->table = std::move(values);
    return out;
  }

  /// b(t) = f(t) for an arbitrary callable (used for derived composite
  /// parameters such as k(t) - gamma(t)^2 / (4 m(t))).
  static CoefficientFunction mapped(std::function<double(double)> f) {
    CoefficientFunction out(Kind::mapped);
    out.data_->fn = std::move(f);
    return out;
  }

  /// b(t) = sum_i w_i * terms_i(t).
  static CoefficientFunction linear_combo(
      std::vector<std::pair<double, CoefficientFunction>> terms) {
    CoefficientFunction out(Kind::linear_combo);
    for (auto& [w, f] : terms) {
      out.data_->params.push_back(w);
      out.data_->children.push_back(std::move(f));
    }
    return out;
  }

  static CoefficientFunction zero() { return constant(0.0); }

  Kind kind() const { return data_->kind; }

  double eval(double t) const {
    double v = 0.0;
    const auto& d = *data_;
    switch (d.kind) {
      case Kind::constant:
        v = d.params[0];
        break;
      case Kind::poly_in_t: {
        for (std::size_t i = d.params.size(); i-- > 0;) v = v * t + d.params[i];
        break;
      }
      case Kind::sinusoid:
        v = d.params[0] * std::sin(d.params[1] * t + d.params[2]) + d.params[3];
        break;
      case Kind::exp_integral:
        v = d.params[1] * std::exp(d.params[0] * d.integral->integral_to(t));
        break;
      case Kind::tabulated: {
        const double t0 = d.params[0], dt = d.params[1];
        const auto n = d.table.size();
        double u = (t - t0) / dt;
        if (u <= 0.0) return d.table.front();
        if (u >= static_cast<double>(n - 1)) return d.table.back();
        const auto i = static_cast<std::size_t>(u);
        const double frac = u - static_cast<double>(i);
        v = d.table[i] * (1.0 - frac) + d.table[i + 1] * frac;
        break;
      }
      case Kind::mapped:
        v = d.fn(t);
        break;
      case Kind::linear_combo:
        for (std::size_t i = 0; i < d.children.size(); ++i)
          v += d.params[i] * d.children[i].eval(t);
        break;
    }
    if (!std::isfinite(v))
      fail(errkind::coefficient_singular, "CoefficientFunction: non-finite value");
    return v;
  }

  double operator()(double t) const { return eval(t); }

 private:
  struct Data {
    Kind kind = Kind::constant;
    std::vector<double> params;
    std::vector<double> table;
    std::vector<CoefficientFunction> children;
    std::function<double(double)> fn;
    std::shared_ptr<CumulativeIntegral> integral;
  };

  explicit CoefficientFunction(Kind k) : data_(std::make_shared<Data>()) { data_->kind = k; }

  std::shared_ptr<Data> data_;
};

}  // namespace liehamsys
