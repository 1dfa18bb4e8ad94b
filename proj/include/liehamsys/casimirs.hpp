#pragma once
/** @file casimirs.hpp
 *  @brief Built-in Hamiltonian function lists and Casimir elements.
 *
 *  Casimirs are written on abstract generator charts (variables v1..vr in the
 *  frozen basis order of the matching algebra) and are composed with
 *  Hamiltonian lists elsewhere.  Hamiltonians come from the symplectic lift of
 *  the built-in realizations, so a single code path defines them.
 */

#include <vector>

#include "liehamsys/algebra.hpp"
#include "liehamsys/polynomial.hpp"
#include "liehamsys/realization.hpp"

namespace liehamsys {

/// Hamiltonian functions of the built-in 4D realizations (one per generator),
/// h_alpha = -1/2 x^T (J A_alpha) x on the canonical 2-dof chart.
inline std::vector<Polynomial> builtin_hamiltonians(BuiltinRepresentation which) {
  Representation rep = builtin_representation(which);
  if (rep.n % 2 != 0)
    fail(errkind::not_hamiltonian, "builtin_hamiltonians: odd-dimensional realization");
  SymplecticStructure sym(rep.n / 2);
  std::vector<Polynomial> hams;
  for (const auto& field : linearize(rep)) hams.push_back(hamiltonian_of(field, sym));
  return hams;
}

namespace detail {

/// Monomial helper on a chart: product of listed (variable, exponent) pairs.
inline Polynomial mono(const Chart& chart, std::vector<std::pair<int, int>> factors,
                       Rational coeff) {
  Polynomial p(chart);
  std::vector<int> e(chart.var_count(), 0);
  for (auto [idx, ex] : factors) e[idx] += ex;
  p.add_term(e, coeff);
  return p;
}

}  // namespace detail

/// Cubic Casimir of the two-photon algebra h6, basis (D,K,H,G,P,M) = v1..v6:
/// C3 = M (D^2 - 4 K H) + 2 (H G^2 + K P^2 - D G P).
inline Polynomial casimir_h6_C3() {
  Chart c = Chart::generators(6);
  using detail::mono;
  Polynomial out(c);
  out += mono(c, {{5, 1}, {0, 2}}, Rational(1));
  out += mono(c, {{5, 1}, {1, 1}, {2, 1}}, Rational(-4));
  out += mono(c, {{2, 1}, {3, 2}}, Rational(2));
  out += mono(c, {{1, 1}, {4, 2}}, Rational(2));
  out += mono(c, {{0, 1}, {3, 1}, {4, 1}}, Rational(-2));
  return out;
}

/// Quartic Casimir of h6: C4 = (P^2 - 2 M H)(2 M K - G^2) + (M D - G P)^2;
/// it factorizes exactly as M * C3.
inline Polynomial casimir_h6_C4() {
  Chart c = Chart::generators(6);
  using detail::mono;
  Polynomial f1 = mono(c, {{4, 2}}, Rational(1)) + mono(c, {{5, 1}, {2, 1}}, Rational(-2));
  Polynomial f2 = mono(c, {{5, 1}, {1, 1}}, Rational(2)) + mono(c, {{3, 2}}, Rational(-1));
  Polynomial f3 = mono(c, {{5, 1}, {0, 1}}, Rational(1)) + mono(c, {{3, 1}, {4, 1}}, Rational(-1));
  return f1 * f2 + f3 * f3;
}

/// First quadratic Casimir of so(1,3), basis (J,P1,P2,H,K1,K2) = v1..v6:
/// C2 = J^2 + P1^2 + P2^2 - H^2 - K1^2 - K2^2.
inline Polynomial casimir_so13_C2() {
  Chart c = Chart::generators(6);
  using detail::mono;
  Polynomial out(c);
  for (int i : {0, 1, 2}) out += mono(c, {{i, 2}}, Rational(1));
  for (int i : {3, 4, 5}) out += mono(c, {{i, 2}}, Rational(-1));
  return out;
}

/// Second quadratic Casimir of so(1,3): C2' = -J H - P1 K2 + P2 K1.
inline Polynomial casimir_so13_C2prime() {
  Chart c = Chart::generators(6);
  using detail::mono;
  Polynomial out(c);
  out += mono(c, {{0, 1}, {3, 1}}, Rational(-1));
  out += mono(c, {{1, 1}, {5, 1}}, Rational(-1));
  out += mono(c, {{2, 1}, {4, 1}}, Rational(1));
  return out;
}

/// Quadratic Casimir of sp(4,R), basis order
/// (X11,X12,X21,X22,Xm11,Xm12,Xm22,X1m1,X1m2,X2m2) = v1..v10:
/// C2 = X11^2 + X22^2 - 4 Xm11 X1m1 - 4 Xm22 X2m2 - 2 Xm12 X1m2 + 2 X12 X21.
inline Polynomial casimir_sp4_C2() {
  Chart c = Chart::generators(10);
  using detail::mono;
  Polynomial out(c);
  out += mono(c, {{0, 2}}, Rational(1));
  out += mono(c, {{3, 2}}, Rational(1));
  out += mono(c, {{4, 1}, {7, 1}}, Rational(-4));
  out += mono(c, {{6, 1}, {9, 1}}, Rational(-4));
  out += mono(c, {{5, 1}, {8, 1}}, Rational(-2));
  out += mono(c, {{1, 1}, {2, 1}}, Rational(2));
  return out;
}

/// Quartic Casimir of sp(4,R) in the same basis order.
inline Polynomial casimir_sp4_C4() {
  Chart c = Chart::generators(10);
  using detail::mono;
  // variable slots: 0:X11 1:X12 2:X21 3:X22 4:Xm11 5:Xm12 6:Xm22 7:X1m1
  //                 8:X1m2 9:X2m2
  Polynomial out(c);
  out += mono(c, {{5, 2}, {8, 2}}, Rational(1));
  out += mono(c, {{5, 2}, {7, 1}, {9, 1}}, Rational(-4));
  out += mono(c, {{1, 1}, {2, 1}, {5, 1}, {8, 1}}, Rational(-2));
  out += mono(c, {{1, 1}, {3, 1}, {5, 1}, {7, 1}}, Rational(4));
  out += mono(c, {{4, 1}, {6, 1}, {8, 2}}, Rational(-4));
  out += mono(c, {{1, 2}, {6, 1}, {7, 1}}, Rational(-4));
  out += mono(c, {{1, 2}, {2, 2}}, Rational(1));
  out += mono(c, {{2, 2}, {4, 1}, {9, 1}}, Rational(-4));
  out += mono(c, {{3, 2}, {4, 1}, {7, 1}}, Rational(-4));
  out += mono(c, {{4, 1}, {6, 1}, {7, 1}, {9, 1}}, Rational(16));
  out += mono(c, {{2, 1}, {3, 1}, {4, 1}, {8, 1}}, Rational(4));
  out += mono(c, {{0, 1}, {1, 1}, {6, 1}, {8, 1}}, Rational(4));
  out += mono(c, {{0, 1}, {1, 1}, {2, 1}, {3, 1}}, Rational(-2));
  out += mono(c, {{0, 1}, {2, 1}, {5, 1}, {9, 1}}, Rational(4));
  out += mono(c, {{0, 1}, {3, 1}, {5, 1}, {8, 1}}, Rational(-2));
  out += mono(c, {{0, 2}, {3, 2}}, Rational(1));
  out += mono(c, {{0, 2}, {6, 1}, {9, 1}}, Rational(-4));
  return out;
}

/// The six sp(4,R) Hamiltonians that close on the h6 table, reordered to the
/// h6 basis (D,K,H,G,P,M) -> (h1, h5, h8, h2, h9, 2 h10).
inline std::vector<Polynomial> sp4_hamiltonians_as_h6() {
  std::vector<Polynomial> h = builtin_hamiltonians(BuiltinRepresentation::sp4_fundamental);
  return {h[0], h[4], h[7], h[1], h[8], Rational(2) * h[9]};
}

}  // namespace liehamsys
