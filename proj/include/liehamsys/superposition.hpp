#pragma once
/** @file superposition.hpp
 *  @brief Explicit superposition rules: the general solution from finitely
 *         many particular solutions and significant constants.
 *
 *  The h6 rule reconstructs the general 4D solution from 3 particular
 *  solutions and 4 constants; the sp(4,R) rule from 4 particular solutions
 *  and 4 constants.  Constants are recovered from a target state via the
 *  shared constants of the motion (trilinear form T for h6, pairwise form L
 *  for sp4).  The invariants pin the constants up to signs, so the solver does
 *  a 16-way sign search and keeps the combination with the smallest residual
 *  at the anchor time.  A Lorentz so(1,3) system is a subalgebra case of the
 *  sp(4,R) system on the same coordinates, so it reuses the sp4 rule; the
 *  coefficient dictionary between the two bases is computed by exact linear
 *  solve.
 */

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "liehamsys/algebra.hpp"
#include "liehamsys/coefficients.hpp"
#include "liehamsys/errors.hpp"
#include "liehamsys/realization.hpp"
#include "liehamsys/rmatrix.hpp"

namespace liehamsys {

/// T evaluated on three states a, b, c (each ordered q1, q2, p1, p2).
inline double trilinear_T_value(const Eigen::Vector4d& a, const Eigen::Vector4d& b,
                                const Eigen::Vector4d& c) {
  return a[1] * (b[2] * c[0] - c[2] * b[0]) + b[1] * (a[0] * c[2] - c[0] * a[2]) +
         c[1] * (a[2] * b[0] - b[2] * a[0]);
}

/// L evaluated on two states a, b: L = p1(b) q1(a) - p1(a) q1(b)
///                                   + p2(b) q2(a) - p2(a) q2(b).
inline double angular_L_value(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  return b[2] * a[0] - a[2] * b[0] + b[3] * a[1] - a[3] * b[1];
}

/// Significant constants of a superposition rule, with diagnostics from the
/// solve that produced them.
struct SignificantConstants {
  std::array<double, 4> k{};      ///< constants fed to the rule
  std::array<double, 4> kappa{};  ///< raw invariant pairings with the target
  double residual = 0.0;          ///< sup-norm reconstruction error at the anchor
  std::string method;             ///< how the constants were determined
};

/// General h6 solution from three particular solutions and four constants.
/// Degenerate k3 = 0 and q2 = 0 in the first solution are rejected.
inline Eigen::Vector4d h6_superpose(const std::array<Eigen::Vector4d, 3>& s,
                                    const std::array<double, 4>& k) {
  const double k1 = k[0], k2 = k[1], k3 = k[2], k4 = k[3];
  if (k3 == 0.0) fail(errkind::degenerate_constants, "h6_superpose: k3 must be nonzero");
  if (s[0][1] == 0.0)
    fail(errkind::singular_denominator, "h6_superpose: q2 of the first solution vanishes");
  Eigen::Vector4d x;
  for (int i : {0, 1, 2}) x[i] = (s[0][i] - k2 * s[1][i] + k1 * s[2][i]) / k3;
  const double num = s[0][3] * s[0][1] +
                     k2 * (s[1][2] * s[0][0] - s[0][2] * s[1][0] - s[0][3] * s[1][1]) +
                     k1 * (-s[2][2] * s[0][0] + s[0][2] * s[2][0] + s[0][3] * s[2][1]) -
                     k3 * k4;
  x[3] = num / (k3 * s[0][1]);
  return x;
}

/// h6 constants from a target state via the shared invariants
/// kappa1 = T(x, s1, s2), kappa2 = T(x, s1, s3), kappa3 = T(x, s3, s2),
/// kappa4 = L(x, s1): the magnitudes |kappa1/kappa3|, |kappa2/kappa3|,
/// |W/kappa3| (W = T(s1, s2, s3)), |kappa4| determine k up to signs, which a
/// 16-way search fixes by the anchor residual.
inline SignificantConstants solve_constants_h6(const std::array<Eigen::Vector4d, 3>& s,
                                               const Eigen::Vector4d& target) {
  SignificantConstants out;
  out.kappa = {trilinear_T_value(target, s[0], s[1]), trilinear_T_value(target, s[0], s[2]),
               trilinear_T_value(target, s[2], s[1]), angular_L_value(target, s[0])};
  const double W = trilinear_T_value(s[0], s[1], s[2]);
  if (out.kappa[2] == 0.0)
    fail(errkind::degenerate_constants,
         "solve_constants_h6: vanishing invariant pairing T(x, s3, s2)");
  const std::array<double, 4> mag = {std::fabs(out.kappa[0] / out.kappa[2]),
                                     std::fabs(out.kappa[1] / out.kappa[2]),
                                     std::fabs(W / out.kappa[2]), std::fabs(out.kappa[3])};
  double best = std::numeric_limits<double>::infinity();
  for (int bits = 0; bits < 16; ++bits) {
    std::array<double, 4> cand;
    for (int i = 0; i < 4; ++i) cand[i] = ((bits >> i) & 1) ? -mag[i] : mag[i];
    if (cand[2] == 0.0) continue;
    double res;
    try {
      res = (h6_superpose(s, cand) - target).lpNorm<Eigen::Infinity>();
    } catch (const Error&) {
      continue;
    }
    if (res < best) {
      best = res;
      out.k = cand;
    }
  }
  out.residual = best;
  out.method = "ratios of T/L invariant pairings, signs by anchor residual";
  if (!(best <= 1e-6))
    fail(errkind::inconsistent_invariants,
         "solve_constants_h6: no sign choice reproduces the target (residual " +
             std::to_string(best) + ")");
  return out;
}

namespace detail {

/// p_comp(i) q_comp(j) - q_comp(i) p_comp(j) for same-index component pairs of
/// two states (comp 0 pairs q1 with p1, comp 1 pairs q2 with p2).
inline double lam(const std::array<Eigen::Vector4d, 4>& s, int comp, int i, int j) {
  return s[i][2 + comp] * s[j][comp] - s[i][comp] * s[j][2 + comp];
}

}  // namespace detail

/// General sp(4,R) solution from four particular solutions and four
/// constants.  A vanishing denominator form means the four solutions are not
/// in general position and is rejected.
inline Eigen::Vector4d sp4_superpose(const std::array<Eigen::Vector4d, 4>& s,
                                     const std::array<double, 4>& k) {
  auto L11 = [&](int i, int j) { return detail::lam(s, 0, i - 1, j - 1); };
  auto L22 = [&](int i, int j) { return detail::lam(s, 1, i - 1, j - 1); };
  const double beta = L11(1, 3) * L22(4, 2) + L11(4, 2) * L22(1, 3) + L11(2, 1) * L22(4, 3) +
                      L11(4, 3) * L22(2, 1) + L11(3, 2) * L22(4, 1) + L11(4, 1) * L22(3, 2);
  if (beta == 0.0)
    fail(errkind::degenerate_solution_set,
         "sp4_superpose: particular solutions are not in general position");

  // sel[r][c]: coefficient of the c-th *other* copy in the k_{r+1} group.
  const std::array<std::array<double, 3>, 4> sel_a = {{{L22(4, 3), L22(2, 4), L22(3, 2)},
                                                       {L22(3, 4), L22(4, 1), L22(1, 3)},
                                                       {L22(2, 4), L22(4, 1), L22(1, 2)},
                                                       {L22(3, 2), L22(1, 3), L22(2, 1)}}};
  const std::array<std::array<double, 3>, 4> sel_b = {{{L11(3, 4), L11(4, 2), L11(2, 3)},
                                                       {L11(4, 3), L11(1, 4), L11(3, 1)},
                                                       {L11(4, 2), L11(1, 4), L11(2, 1)},
                                                       {L11(2, 3), L11(3, 1), L11(1, 2)}}};
  auto comp = [&](int vals, const std::array<std::array<double, 3>, 4>& sel) {
    auto v = [&](int l) { return s[l - 1][vals]; };
    return (k[0] * (v(2) * sel[0][0] + v(3) * sel[0][1] + v(4) * sel[0][2]) +
            k[1] * (v(1) * sel[1][0] + v(3) * sel[1][1] + v(4) * sel[1][2]) +
            k[2] * (v(1) * sel[2][0] + v(2) * sel[2][1] + v(4) * sel[2][2]) +
            k[3] * (v(1) * sel[3][0] + v(2) * sel[3][1] + v(3) * sel[3][2])) /
           beta;
  };
  return {comp(0, sel_a), -comp(1, sel_b), comp(2, sel_a), -comp(3, sel_b)};
}

/// sp4 constants from a target state: kappa_i = L(x, s_i) equals k_i up to the
/// fixed signs (-,-,+,+), so |kappa_i| are the magnitudes and a 16-way sign
/// search against the anchor residual resolves the orientation.
inline SignificantConstants solve_constants_sp4(const std::array<Eigen::Vector4d, 4>& s,
                                                const Eigen::Vector4d& target) {
  SignificantConstants out;
  for (int i = 0; i < 4; ++i) out.kappa[i] = angular_L_value(target, s[i]);
  const std::array<double, 4> mag = {std::fabs(out.kappa[0]), std::fabs(out.kappa[1]),
                                     std::fabs(out.kappa[2]), std::fabs(out.kappa[3])};
  double best = std::numeric_limits<double>::infinity();
  for (int bits = 0; bits < 16; ++bits) {
    std::array<double, 4> cand;
    for (int i = 0; i < 4; ++i) cand[i] = ((bits >> i) & 1) ? -mag[i] : mag[i];
    double res;
    try {
      res = (sp4_superpose(s, cand) - target).lpNorm<Eigen::Infinity>();
    } catch (const Error&) {
      continue;
    }
    if (res < best) {
      best = res;
      out.k = cand;
    }
  }
  out.residual = best;
  out.method = "L invariant pairings, signs by anchor residual";
  if (!(best <= 1e-6))
    fail(errkind::inconsistent_invariants,
         "solve_constants_sp4: no sign choice reproduces the target (residual " +
             std::to_string(best) + ")");
  return out;
}

/// Reduced 3D h6 rule on the chart (q, p, s): the 4D rule evaluated on the
/// q2 = 1 slice.
inline Eigen::Vector3d h6_reduced_superpose(const std::array<Eigen::Vector3d, 3>& s,
                                            const std::array<double, 4>& k) {
  std::array<Eigen::Vector4d, 3> lifted;
  for (int l = 0; l < 3; ++l) lifted[l] = Eigen::Vector4d(s[l][0], 1.0, s[l][1], s[l][2]);
  const Eigen::Vector4d x = h6_superpose(lifted, k);
  return {x[0], x[2], x[3]};
}

/// Planar projection of the reduced rule: an affine 3-solution rule on (q, p)
/// with constants (k1, k2, k3).
inline Eigen::Vector2d p5_superpose(const std::array<Eigen::Vector2d, 3>& s,
                                    const std::array<double, 3>& k) {
  if (k[2] == 0.0) fail(errkind::degenerate_constants, "p5_superpose: k3 must be nonzero");
  Eigen::Vector2d x;
  for (int i : {0, 1}) x[i] = (s[0][i] - k[1] * s[1][i] + k[0] * s[2][i]) / k[2];
  return x;
}

/// Exact change of basis taking Lorentz so(1,3) coefficients b to sp(4,R)
/// coefficients bt with sum_i b_i A_so13,i = sum_j bt_j A_sp4,j, solved
/// exactly against the sp4 field-matrix basis.  Returns the 10 x 6 matrix.
inline RMat so13_to_sp4_matrix() {
  auto sp4_fields = linearize(builtin_representation(BuiltinRepresentation::sp4_fundamental));
  auto so13_fields = linearize(builtin_representation(BuiltinRepresentation::so13_gamma));
  RMat basis(16, 10);
  for (int j = 0; j < 10; ++j)
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) basis(r * 4 + c, j) = sp4_fields[size_t(j)].A(r, c);
  RMat map(10, 6);
  for (int i = 0; i < 6; ++i) {
    std::vector<Rational> rhs(16);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) rhs[size_t(r * 4 + c)] = so13_fields[size_t(i)].A(r, c);
    std::vector<Rational> x = basis.solve(rhs);
    for (int j = 0; j < 10; ++j) map(j, i) = x[size_t(j)];
  }
  return map;
}

/// Coefficient dictionary for running a Lorentz system through the sp(4,R)
/// superposition rule: bt_j(t) = sum_i M_ji b_i(t).
inline std::array<CoefficientFunction, 10> embed_so13_in_sp4(
    const std::array<CoefficientFunction, 6>& b) {
  const RMat M = so13_to_sp4_matrix();
  std::array<CoefficientFunction, 10> bt;
  for (int j = 0; j < 10; ++j) {
    std::vector<std::pair<double, CoefficientFunction>> terms;
    for (int i = 0; i < 6; ++i)
      if (!M(j, i).is_zero()) terms.emplace_back(M(j, i).to_double(), b[size_t(i)]);
    bt[size_t(j)] = terms.empty() ? CoefficientFunction::zero()
                                  : CoefficientFunction::linear_combo(std::move(terms));
  }
  return bt;
}

}  // namespace liehamsys
