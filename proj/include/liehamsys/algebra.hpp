#pragma once
/** @file algebra.hpp
 *  @brief Finite-dimensional real Lie algebras with exact structure constants,
 *         their matrix representations, and structural validity checks.
 *
 *  Built-ins cover the four algebras used throughout: sl(2,R), the centrally
 *  extended Schrodinger algebra h6 (two-photon algebra), the Lorentz algebra
 *  so(1,3), and sp(4,R) with its fundamental representation.
 */

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "liehamsys/errors.hpp"
#include "liehamsys/rational.hpp"
#include "liehamsys/rmatrix.hpp"

namespace liehamsys {

/// One violated identity found by a validation pass.
struct ValidationIssue {
  std::string check;     ///< which identity family (e.g. "jacobi")
  std::string location;  ///< indices involved, human readable
  std::string detail;    ///< residual or explanation
};

/// Collection of violations; empty list means valid.
struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const noexcept { return issues.empty(); }
  void add(std::string check, std::string location, std::string detail = {}) {
    issues.push_back({std::move(check), std::move(location), std::move(detail)});
  }
};

/// Lie algebra described by basis labels and exact structure constants
/// C_ij^k with [X_i, X_j] = C_ij^k X_k.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(std::string name, std::vector<std::string> labels)
      : name_(std::move(name)),
        labels_(std::move(labels)),
        dim_(int(labels_.size())),
        c_(size_t(dim_) * dim_ * dim_) {}

  const std::string& name() const noexcept { return name_; }
  int dim() const noexcept { return dim_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  const Rational& structure(int i, int j, int k) const {
    return c_[(size_t(i) * dim_ + j) * dim_ + k];
  }

  /// Set [X_i, X_j] = sum of coeff * X_k terms (and the antisymmetric pair).
  void set_bracket(int i, int j, std::vector<std::pair<int, Rational>> terms) {
    for (const auto& [k, coeff] : terms) {
      c_[(size_t(i) * dim_ + j) * dim_ + k] = coeff;
      c_[(size_t(j) * dim_ + i) * dim_ + k] = -coeff;
    }
  }

  /// Raw single-entry setter (used by the JSON importer; no antisymmetry fix-up).
  void set_structure(int i, int j, int k, Rational v) {
    c_[(size_t(i) * dim_ + j) * dim_ + k] = v;
  }

  /// The algebra with every bracket negated; its table matches the Poisson
  /// brackets of the Hamiltonian functions attached to the built-in
  /// realizations (the lift X -> h is an anti-homomorphism here).
  LieAlgebra negated() const {
    LieAlgebra g = *this;
    g.name_ = name_ + "_lh";
    for (auto& v : g.c_) v = -v;
    return g;
  }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  int dim_ = 0;
  std::vector<Rational> c_;
};

/// Matrix representation: one exact n x n matrix per basis generator.
struct Representation {
  LieAlgebra algebra;
  int n = 0;
  std::vector<RMat> mats;
};

/// Antisymmetry and Jacobi checks; violations become report entries.
inline ValidationReport validate(const LieAlgebra& g) {
  ValidationReport report;
  const int r = g.dim();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        if (g.structure(i, j, k) != -g.structure(j, i, k))
          report.add("antisymmetry", "(" + std::to_string(i) + "," + std::to_string(j) +
                                         "," + std::to_string(k) + ")");
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l) {
          Rational acc;
          for (int m = 0; m < r; ++m) {
            acc += g.structure(i, j, m) * g.structure(m, k, l);
            acc += g.structure(j, k, m) * g.structure(m, i, l);
            acc += g.structure(k, i, m) * g.structure(m, j, l);
          }
          if (!acc.is_zero())
            report.add("jacobi", "(" + std::to_string(i) + "," + std::to_string(j) + "," +
                                     std::to_string(k) + ")->" + std::to_string(l),
                       acc.str());
        }
  return report;
}

/// Homomorphism property (matrix commutators vs the table) plus linear
/// independence of the representation matrices.
inline ValidationReport validate_representation(const Representation& rep) {
  ValidationReport report;
  const int r = rep.algebra.dim();
  if (int(rep.mats.size()) != r) {
    report.add("arity", "mats", "expected " + std::to_string(r) + " matrices");
    return report;
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      RMat lhs = commutator(rep.mats[i], rep.mats[j]);
      RMat rhs = RMat::zero(rep.n, rep.n);
      for (int k = 0; k < r; ++k) {
        const Rational& c = rep.algebra.structure(i, j, k);
        if (!c.is_zero()) rhs = rhs + c * rep.mats[k];
      }
      if (!(lhs == rhs))
        report.add("homomorphism",
                   "[" + rep.algebra.labels()[i] + "," + rep.algebra.labels()[j] + "]");
    }
  RMat flat(rep.n * rep.n, r);
  for (int k = 0; k < r; ++k)
    for (int a = 0; a < rep.n; ++a)
      for (int b = 0; b < rep.n; ++b) flat(a * rep.n + b, k) = rep.mats[k](a, b);
  if (flat.rank() != r)
    report.add("independence", "mats", "matrices are linearly dependent");
  return report;
}

enum class BuiltinAlgebra { sl2, schrodinger_h6, so13, sp4 };
enum class BuiltinRepresentation { sl2_adjoint, h6_gamma, so13_gamma, sp4_fundamental };

namespace detail {

inline RMat unit4(int i, int j) {
  RMat m(4, 4);
  m(i - 1, j - 1) = Rational(1);
  return m;
}

}  // namespace detail

/// The four frozen bracket tables.  Basis orderings: sl2 {h, e-, e+};
/// h6 {D, K, H, G, P, M}; so13 {J, P1, P2, H, K1, K2}; sp4 the ten ladder
/// generators {X11, X12, X21, X22, Xm11, Xm12, Xm22, X1m1, X1m2, X2m2}.
inline LieAlgebra builtin_algebra(BuiltinAlgebra which) {
  switch (which) {
    case BuiltinAlgebra::sl2: {
      LieAlgebra g("sl2", {"h", "e-", "e+"});
      g.set_bracket(0, 1, {{1, -1}});  // [h, e-] = -e-
      g.set_bracket(0, 2, {{2, 1}});   // [h, e+] = e+
      g.set_bracket(1, 2, {{0, 2}});   // [e-, e+] = 2h
      return g;
    }
    case BuiltinAlgebra::schrodinger_h6: {
      LieAlgebra g("schrodinger_h6", {"D", "K", "H", "G", "P", "M"});
      g.set_bracket(0, 1, {{1, 2}});   // [D, K] = 2K
      g.set_bracket(0, 2, {{2, -2}});  // [D, H] = -2H
      g.set_bracket(0, 3, {{3, 1}});   // [D, G] = G
      g.set_bracket(0, 4, {{4, -1}});  // [D, P] = -P
      g.set_bracket(1, 2, {{0, -1}});  // [K, H] = -D
      g.set_bracket(1, 4, {{3, -1}});  // [K, P] = -G
      g.set_bracket(2, 3, {{4, 1}});   // [H, G] = P
      g.set_bracket(3, 4, {{5, -1}});  // [G, P] = -M
      return g;
    }
    case BuiltinAlgebra::so13: {
      LieAlgebra g("so13", {"J", "P1", "P2", "H", "K1", "K2"});
      g.set_bracket(0, 1, {{2, 1}});   // [J, P1] = P2
      g.set_bracket(0, 2, {{1, -1}});  // [J, P2] = -P1
      g.set_bracket(0, 4, {{5, 1}});   // [J, K1] = K2
      g.set_bracket(0, 5, {{4, -1}});  // [J, K2] = -K1
      g.set_bracket(1, 2, {{0, 1}});   // [P1, P2] = J
      g.set_bracket(1, 3, {{4, 1}});   // [P1, H] = K1
      g.set_bracket(1, 4, {{3, -1}});  // [P1, K1] = -H
      g.set_bracket(2, 3, {{5, 1}});   // [P2, H] = K2
      g.set_bracket(2, 5, {{3, -1}});  // [P2, K2] = -H
      g.set_bracket(3, 4, {{1, -1}});  // [H, K1] = -P1
      g.set_bracket(3, 5, {{2, -1}});  // [H, K2] = -P2
      g.set_bracket(4, 5, {{0, -1}});  // [K1, K2] = -J
      return g;
    }
    case BuiltinAlgebra::sp4: {
      LieAlgebra g("sp4", {"X11", "X12", "X21", "X22", "Xm11", "Xm12", "Xm22", "X1m1",
                           "X1m2", "X2m2"});
      g.set_bracket(0, 1, {{1, 1}});
      g.set_bracket(0, 2, {{2, -1}});
      g.set_bracket(0, 4, {{4, 2}});
      g.set_bracket(0, 5, {{5, 1}});
      g.set_bracket(0, 7, {{7, -2}});
      g.set_bracket(0, 8, {{8, -1}});
      g.set_bracket(1, 2, {{0, 1}, {3, -1}});
      g.set_bracket(1, 3, {{1, 1}});
      g.set_bracket(1, 5, {{4, 2}});
      g.set_bracket(1, 6, {{5, 1}});
      g.set_bracket(1, 7, {{8, -1}});
      g.set_bracket(1, 8, {{9, -2}});
      g.set_bracket(2, 3, {{2, -1}});
      g.set_bracket(2, 4, {{5, 1}});
      g.set_bracket(2, 5, {{6, 2}});
      g.set_bracket(2, 8, {{7, -2}});
      g.set_bracket(2, 9, {{8, -1}});
      g.set_bracket(3, 5, {{5, 1}});
      g.set_bracket(3, 6, {{6, 2}});
      g.set_bracket(3, 8, {{8, -1}});
      g.set_bracket(3, 9, {{9, -2}});
      g.set_bracket(4, 7, {{0, -1}});
      g.set_bracket(4, 8, {{1, -1}});
      g.set_bracket(5, 7, {{2, -1}});
      g.set_bracket(5, 8, {{0, -1}, {3, -1}});
      g.set_bracket(5, 9, {{1, -1}});
      g.set_bracket(6, 8, {{2, -1}});
      g.set_bracket(6, 9, {{3, -1}});
      return g;
    }
  }
  fail(errkind::unknown_algebra, "unrecognized built-in algebra id");
}

inline LieAlgebra builtin_algebra(const std::string& name) {
  if (name == "sl2") return builtin_algebra(BuiltinAlgebra::sl2);
  if (name == "schrodinger_h6" || name == "h6")
    return builtin_algebra(BuiltinAlgebra::schrodinger_h6);
  if (name == "so13") return builtin_algebra(BuiltinAlgebra::so13);
  if (name == "sp4") return builtin_algebra(BuiltinAlgebra::sp4);
  fail(errkind::unknown_algebra, "unknown algebra name: " + name);
}

/// Adjoint representation in the algebra's own basis ordering:
/// Gamma(X_i) has entry (k, j) = C_ij^k, i.e. column j holds [X_i, X_j].
inline Representation adjoint_representation(const LieAlgebra& g) {
  Representation rep;
  rep.algebra = g;
  rep.n = g.dim();
  for (int i = 0; i < g.dim(); ++i) {
    RMat m(g.dim(), g.dim());
    for (int j = 0; j < g.dim(); ++j)
      for (int k = 0; k < g.dim(); ++k) m(k, j) = g.structure(i, j, k);
    rep.mats.push_back(std::move(m));
  }
  return rep;
}

/// The exact generator matrices of the four frozen representations.
///
/// sl2_adjoint uses the weight-ordered coordinate basis (e-, h, e+) so that
/// the induced linear fields are x1 d2 + 2 x2 d3, -x1 d1 + x3 d3 and
/// -2 x2 d1 - x3 d2; the generator list order stays {h, e-, e+}.
inline Representation builtin_representation(BuiltinRepresentation which) {
  using detail::unit4;
  const Rational half(1, 2);
  Representation rep;
  switch (which) {
    case BuiltinRepresentation::sl2_adjoint: {
      rep.algebra = builtin_algebra(BuiltinAlgebra::sl2);
      rep.n = 3;
      Representation ad = adjoint_representation(rep.algebra);
      // permute coordinates: generator order (h, e-, e+) -> slots (2, 1, 3)
      RMat perm(3, 3);
      perm(1, 0) = Rational(1);  // h -> slot 2
      perm(0, 1) = Rational(1);  // e- -> slot 1
      perm(2, 2) = Rational(1);  // e+ -> slot 3
      for (const RMat& m : ad.mats) rep.mats.push_back(perm * m * perm.transposed());
      return rep;
    }
    case BuiltinRepresentation::h6_gamma: {
      rep.algebra = builtin_algebra(BuiltinAlgebra::schrodinger_h6);
      rep.n = 4;
      rep.mats = {
          Rational(-1) * unit4(1, 1) + unit4(3, 3),  // D
          Rational(-1) * unit4(3, 1),                // K
          unit4(1, 3),                               // H
          Rational(-1) * unit4(2, 1) + unit4(3, 4),  // G
          unit4(1, 4) + unit4(2, 3),                 // P
          Rational(2) * unit4(2, 4),                 // M
      };
      return rep;
    }
    case BuiltinRepresentation::so13_gamma: {
      rep.algebra = builtin_algebra(BuiltinAlgebra::so13);
      rep.n = 4;
      auto scale = [&](RMat m) { return half * m; };
      rep.mats = {
          scale(Rational(-1) * unit4(1, 4) - Rational(1) * unit4(2, 3) + unit4(3, 2) +
                unit4(4, 1)),  // J
          scale(Rational(-1) * unit4(1, 3) + unit4(2, 4) + unit4(3, 1) -
                Rational(1) * unit4(4, 2)),  // P1
          scale(unit4(1, 2) - Rational(1) * unit4(2, 1) + unit4(3, 4) -
                Rational(1) * unit4(4, 3)),  // P2
          scale(Rational(-1) * unit4(1, 3) + unit4(2, 4) - Rational(1) * unit4(3, 1) +
                unit4(4, 2)),                                                    // H
          scale(unit4(1, 1) + unit4(2, 2) - Rational(1) * unit4(3, 3) -
                Rational(1) * unit4(4, 4)),                                      // K1
          scale(unit4(1, 4) + unit4(2, 3) + unit4(3, 2) + unit4(4, 1)),          // K2
      };
      return rep;
    }
    case BuiltinRepresentation::sp4_fundamental: {
      rep.algebra = builtin_algebra(BuiltinAlgebra::sp4);
      rep.n = 4;
      rep.mats = {
          unit4(1, 1) - Rational(1) * unit4(3, 3),                   // X11
          unit4(1, 2) - Rational(1) * unit4(4, 3),                   // X12
          unit4(2, 1) - Rational(1) * unit4(3, 4),                   // X21
          unit4(2, 2) - Rational(1) * unit4(4, 4),                   // X22
          Rational(-1) * unit4(1, 3),                                // Xm11
          Rational(-1) * unit4(1, 4) - Rational(1) * unit4(2, 3),    // Xm12
          Rational(-1) * unit4(2, 4),                                // Xm22
          unit4(3, 1),                                               // X1m1
          unit4(3, 2) + unit4(4, 1),                                 // X1m2
          unit4(4, 2),                                               // X2m2
      };
      return rep;
    }
  }
  fail(errkind::unknown_representation, "unrecognized built-in representation id");
}

inline Representation builtin_representation(const std::string& name) {
  if (name == "sl2_adjoint") return builtin_representation(BuiltinRepresentation::sl2_adjoint);
  if (name == "h6_gamma") return builtin_representation(BuiltinRepresentation::h6_gamma);
  if (name == "so13_gamma") return builtin_representation(BuiltinRepresentation::so13_gamma);
  if (name == "sp4_fundamental")
    return builtin_representation(BuiltinRepresentation::sp4_fundamental);
  fail(errkind::unknown_representation, "unknown representation name: " + name);
}

/// Number of functionally independent polynomial invariants: dim g minus the
/// generic rank of the antisymmetric matrix A(x)_ij = x^k C_ij^k, with the
/// rank computed exactly at random small-integer points and maximized over
/// `trials` draws (the generic value is the maximum).
inline int invariant_count(const LieAlgebra& g, int trials, std::mt19937_64& rng) {
  if (trials <= 0) fail(errkind::invalid_argument, "invariant_count: trials must be >= 1");
  const int r = g.dim();
  std::uniform_int_distribution<int> dist(-9, 9);
  int best = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<Rational> x(r);
    bool all_zero = true;
    for (int k = 0; k < r; ++k) {
      int v = dist(rng);
      x[k] = Rational(v);
      all_zero = all_zero && v == 0;
    }
    if (all_zero) x[0] = Rational(1);
    RMat a(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        Rational acc;
        for (int k = 0; k < r; ++k) acc += x[k] * g.structure(i, j, k);
        a(i, j) = acc;
      }
    best = std::max(best, a.rank());
  }
  return r - best;
}

inline int invariant_count(const LieAlgebra& g, int trials, std::uint64_t seed = 20260823) {
  std::mt19937_64 rng(seed);
  return invariant_count(g, trials, rng);
}

}  // namespace liehamsys
