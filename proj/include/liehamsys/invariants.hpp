#pragma once
/** @file invariants.hpp
 *  @brief Constants of the motion on joint (multi-copy) trajectories.
 *
 *  Constants are built by composing a Casimir of the underlying algebra with
 *  copy-summed Hamiltonian functions: with h_alpha^(l) the Hamiltonian of
 *  generator alpha in copy l, F = C(H_1, ..., H_r) for H_alpha = sum_l
 *  h_alpha^(l).  Such F Poisson-commutes with every prolonged Hamiltonian and
 *  is therefore constant along joint solutions of the system, whatever the
 *  time-dependent coefficients are.  Copy permutations of partially-summed
 *  constants give further independent invariants.
 */

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "liehamsys/casimirs.hpp"
#include "liehamsys/dynamics.hpp"
#include "liehamsys/errors.hpp"
#include "liehamsys/polynomial.hpp"

namespace liehamsys {

/// A polynomial observable on the joint phase space of `copies` lockstep
/// solutions of a 2*dof-dimensional system.
struct ProlongedObservable {
  int copies = 1;
  Polynomial poly;

  /// Evaluate on one state per copy (each of length 2*dof, ordered
  /// q1..qdof, p1..pdof).
  double value(const std::vector<Eigen::VectorXd>& states) const {
    const Chart& chart = poly.chart();
    if (static_cast<int>(states.size()) != copies)
      fail(errkind::dimension_mismatch, "ProlongedObservable: wrong number of copies");
    std::vector<double> x;
    x.reserve(static_cast<std::size_t>(chart.var_count()));
    for (const auto& s : states)
      for (Eigen::Index i = 0; i < s.size(); ++i) x.push_back(s[i]);
    if (static_cast<int>(x.size()) != chart.var_count())
      fail(errkind::dimension_mismatch, "ProlongedObservable: state lengths do not match chart");
    return poly.eval(x);
  }
};

/// H_alpha = sum over the first `used` copies of a k-copy chart (all copies
/// when used < 0) of the single-copy Hamiltonian h_alpha.
inline std::vector<Polynomial> prolonged_hamiltonians(const std::vector<Polynomial>& hams,
                                                      int k, int used = -1) {
  if (used < 0) used = k;
  if (used < 1 || used > k)
    fail(errkind::invalid_argument, "prolonged_hamiltonians: bad copy count");
  std::vector<Polynomial> out;
  out.reserve(hams.size());
  for (const auto& h : hams) {
    Polynomial sum = h.prolong_to_copy(k, 0);
    for (int l = 1; l < used; ++l) sum += h.prolong_to_copy(k, l);
    out.push_back(sum);
  }
  return out;
}

/// F = C(H_1, ..., H_r) on the k-copy chart, with the H_alpha summed over the
/// first `used` copies.
inline ProlongedObservable casimir_prolonged(const Polynomial& casimir,
                                             const std::vector<Polynomial>& hams, int k,
                                             int used = -1) {
  return {k, compose(casimir, prolonged_hamiltonians(hams, k, used))};
}

/// Swap copies i and j (0-based) of an observable.
inline ProlongedObservable permute_copies(const ProlongedObservable& obs, int i, int j) {
  return {obs.copies, obs.poly.permute_copies(i, j)};
}

/// Trilinear alternating form on three copies (a, b, c) of the 2-dof chart:
/// T = q2^(a) (p1^(b) q1^(c) - p1^(c) q1^(b))
///   + q2^(b) (q1^(a) p1^(c) - q1^(c) p1^(a))
///   + q2^(c) (p1^(a) q1^(b) - p1^(b) q1^(a)).
inline Polynomial trilinear_T(int k, int a, int b, int c) {
  Chart chart = Chart::canonical(2, k);
  auto q1 = [&](int l) { return Polynomial::variable(chart, chart.q_index(0, l)); };
  auto q2 = [&](int l) { return Polynomial::variable(chart, chart.q_index(1, l)); };
  auto p1 = [&](int l) { return Polynomial::variable(chart, chart.p_index(0, l)); };
  return q2(a) * (p1(b) * q1(c) - p1(c) * q1(b)) + q2(b) * (q1(a) * p1(c) - q1(c) * p1(a)) +
         q2(c) * (p1(a) * q1(b) - p1(b) * q1(a));
}

/// Pairwise angular-momentum-like form on copies (a, b):
/// L = p1^(b) q1^(a) - p1^(a) q1^(b) + p2^(b) q2^(a) - p2^(a) q2^(b).
inline Polynomial angular_L(int k, int a, int b) {
  Chart chart = Chart::canonical(2, k);
  auto v = [&](int idx) { return Polynomial::variable(chart, idx); };
  return v(chart.p_index(0, b)) * v(chart.q_index(0, a)) -
         v(chart.p_index(0, a)) * v(chart.q_index(0, b)) +
         v(chart.p_index(1, b)) * v(chart.q_index(1, a)) -
         v(chart.p_index(1, a)) * v(chart.q_index(1, b));
}

/// Extra quadratic two-copy constant of the h6 system, G2 = -L(1,2)^2.
inline ProlongedObservable h6_G2() {
  Polynomial L = angular_L(2, 0, 1);
  return {2, -(L * L)};
}

/// Drift of an observable along lockstep trajectories.
struct InvariantSeries {
  std::vector<double> values;
  double reference = 0.0;      ///< value at the first sample
  double max_abs_drift = 0.0;  ///< max |F(t) - F(t0)|
  double max_rel_drift = 0.0;  ///< max_abs_drift / max(1, |F(t0)|)
};

inline InvariantSeries evaluate_series(const ProlongedObservable& obs,
                                       const std::vector<Trajectory>& trajs) {
  if (static_cast<int>(trajs.size()) != obs.copies)
    fail(errkind::dimension_mismatch, "evaluate_series: trajectory count != observable copies");
  const auto n = trajs[0].size();
  for (const auto& tr : trajs)
    if (tr.size() != n || tr.times != trajs[0].times)
      fail(errkind::grid_mismatch, "evaluate_series: trajectories sampled on different grids");
  InvariantSeries out;
  out.values.reserve(n);
  std::vector<Eigen::VectorXd> point(trajs.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < trajs.size(); ++c) point[c] = trajs[c].states[i];
    out.values.push_back(obs.value(point));
  }
  out.reference = out.values.front();
  for (double v : out.values)
    out.max_abs_drift = std::max(out.max_abs_drift, std::fabs(v - out.reference));
  out.max_rel_drift = out.max_abs_drift / std::max(1.0, std::fabs(out.reference));
  return out;
}

/// Named invariant set appropriate for `system` at copy count k, as used by
/// drift audits.  Systems: "h6", "so13", "sp4".
inline std::vector<std::pair<std::string, ProlongedObservable>> invariant_catalog(
    const std::string& system, int k) {
  std::vector<std::pair<std::string, ProlongedObservable>> out;
  if (system == "h6") {
    auto hams = builtin_hamiltonians(BuiltinRepresentation::h6_gamma);
    if (k == 2) out.emplace_back("G2", h6_G2());
    if (k == 3) out.emplace_back("F3", casimir_prolonged(casimir_h6_C3(), hams, 3));
    if (k == 4) {
      ProlongedObservable F3in4 = casimir_prolonged(casimir_h6_C3(), hams, 4, 3);
      out.emplace_back("F3_124", permute_copies(F3in4, 2, 3));
      out.emplace_back("F3_134", permute_copies(F3in4, 1, 3));
      out.emplace_back("F3_234", permute_copies(F3in4, 0, 3));
      out.emplace_back("F3_123", F3in4);
      out.emplace_back("F4", casimir_prolonged(casimir_h6_C3(), hams, 4));
    }
  } else if (system == "so13") {
    auto hams = builtin_hamiltonians(BuiltinRepresentation::so13_gamma);
    if (k == 2) {
      out.emplace_back("C2_2copy", casimir_prolonged(casimir_so13_C2(), hams, 2));
      out.emplace_back("C2prime_2copy", casimir_prolonged(casimir_so13_C2prime(), hams, 2));
    }
  } else if (system == "sp4") {
    auto hams = builtin_hamiltonians(BuiltinRepresentation::sp4_fundamental);
    if (k == 2) out.emplace_back("F2", casimir_prolonged(casimir_sp4_C2(), hams, 2));
    if (k == 3) {
      ProlongedObservable F2in3 = casimir_prolonged(casimir_sp4_C2(), hams, 3, 2);
      out.emplace_back("F2_12", F2in3);
      out.emplace_back("F2_13", permute_copies(F2in3, 1, 2));
      out.emplace_back("F2_23", permute_copies(F2in3, 0, 2));
      out.emplace_back("F3", casimir_prolonged(casimir_sp4_C2(), hams, 3));
    }
  } else {
    fail(errkind::unknown_algebra, "invariant_catalog: unknown system '" + system + "'");
  }
  if (out.empty())
    fail(errkind::invalid_argument,
         "invariant_catalog: no built-in invariants for " + system + " at k=" +
             std::to_string(k));
  return out;
}

/// Exact structural identities between the built-in constants of the motion.
inline ValidationReport identity_checks() {
  ValidationReport report;
  auto check = [&](bool ok, const std::string& name, const std::string& detail = {}) {
    if (!ok) report.add("identity", name, detail);
  };

  {  // two-photon algebra h6
    auto hams = builtin_hamiltonians(BuiltinRepresentation::h6_gamma);
    Polynomial C3 = casimir_h6_C3();
    check(casimir_prolonged(C3, hams, 1).poly.is_zero(), "h6 F1 == 0");
    check(casimir_prolonged(C3, hams, 2).poly.is_zero(), "h6 F2 == 0");

    ProlongedObservable F3 = casimir_prolonged(C3, hams, 3);
    Polynomial T = trilinear_T(3, 0, 1, 2);
    check(F3.poly == T * T, "h6 F3 == T(1,2,3)^2");

    ProlongedObservable F4 = casimir_prolonged(C3, hams, 4);
    ProlongedObservable F3in4 = casimir_prolonged(C3, hams, 4, 3);
    Polynomial sum = F3in4.poly + F3in4.poly.permute_copies(2, 3) +
                     F3in4.poly.permute_copies(1, 3) + F3in4.poly.permute_copies(0, 3);
    check(F4.poly == sum, "h6 F4 == F3_123 + F3_124 + F3_134 + F3_234");

    ProlongedObservable G2 = h6_G2();
    auto H2 = prolonged_hamiltonians(hams, 2);
    bool commutes = true;
    for (const auto& H : H2) commutes = commutes && bracket(G2.poly, H).is_zero();
    check(commutes, "h6 G2 Poisson-commutes with all prolonged Hamiltonians");

    auto H3 = prolonged_hamiltonians(hams, 3);
    bool f3c = true;
    for (const auto& H : H3) f3c = f3c && bracket(F3.poly, H).is_zero();
    check(f3c, "h6 F3 Poisson-commutes with all prolonged Hamiltonians");
  }

  {  // symplectic algebra sp4
    auto hams = builtin_hamiltonians(BuiltinRepresentation::sp4_fundamental);
    Polynomial C2 = casimir_sp4_C2();
    check(casimir_prolonged(C2, hams, 1).poly.is_zero(), "sp4 F1 == 0");

    ProlongedObservable F2 = casimir_prolonged(C2, hams, 2);
    Polynomial L = angular_L(2, 0, 1);
    check(F2.poly == -(L * L), "sp4 F2 == -L(1,2)^2");
    check(F2.poly == h6_G2().poly, "sp4 F2 == h6 G2");

    ProlongedObservable F3 = casimir_prolonged(C2, hams, 3);
    ProlongedObservable F2in3 = casimir_prolonged(C2, hams, 3, 2);
    Polynomial sum = F2in3.poly + F2in3.poly.permute_copies(1, 2) +
                     F2in3.poly.permute_copies(0, 2);
    check(F3.poly == sum, "sp4 F3 == F2_12 + F2_13 + F2_23");

    auto H3 = prolonged_hamiltonians(hams, 3);
    bool f3c = true;
    for (const auto& H : H3) f3c = f3c && bracket(F3.poly, H).is_zero();
    check(f3c, "sp4 F3 Poisson-commutes with all prolonged Hamiltonians");
  }

  {  // Lorentz algebra so(1,3)
    auto hams = builtin_hamiltonians(BuiltinRepresentation::so13_gamma);
    auto H2 = prolonged_hamiltonians(hams, 2);
    ProlongedObservable F = casimir_prolonged(casimir_so13_C2(), hams, 2);
    ProlongedObservable Fp = casimir_prolonged(casimir_so13_C2prime(), hams, 2);
    bool commutes = true;
    for (const auto& H : H2)
      commutes = commutes && bracket(F.poly, H).is_zero() && bracket(Fp.poly, H).is_zero();
    check(commutes, "so13 C2/C2' compositions Poisson-commute with all prolonged Hamiltonians");
  }

  return report;
}

/// Numerical rank of the Jacobian of `polys` with respect to the chart
/// variables listed in `var_indices`, evaluated at `point`.
inline int functional_rank(const std::vector<Polynomial>& polys,
                           const std::vector<int>& var_indices,
                           const std::vector<double>& point, double tol = 1e-8) {
  Eigen::MatrixXd J(static_cast<Eigen::Index>(polys.size()),
                    static_cast<Eigen::Index>(var_indices.size()));
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = 0; j < var_indices.size(); ++j)
      J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          polys[i].derivative(var_indices[j]).eval(point);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > tol * std::max(1.0, sv[0])) ++rank;
  return rank;
}

}  // namespace liehamsys
