#pragma once
/** @file realization.hpp
 *  @brief Linear vector fields induced by matrix representations, the
 *         canonical symplectic structure, Hamiltonian extraction, ranks of
 *         generalized distributions, and invariant-annihilation checks.
 *
 *  Index convention: the field of generator alpha is
 *  X_alpha = x^i Gamma(X_alpha)_i^j d/dx^j, so its ODE matrix (acting on
 *  column vectors) is A_alpha = Gamma(X_alpha)^T.
 */

#include <Eigen/Dense>
#include <map>
#include <random>
#include <vector>

#include "liehamsys/algebra.hpp"
#include "liehamsys/errors.hpp"
#include "liehamsys/polynomial.hpp"
#include "liehamsys/rmatrix.hpp"

namespace liehamsys {

/// Linear vector field x -> A x with exact matrix and cached double copy.
struct LinearVectorField {
  int n = 0;
  RMat A;               ///< exact matrix
  Eigen::MatrixXd Ad;   ///< double mirror of A, for numerics

  explicit LinearVectorField(RMat a) : n(a.rows()), A(std::move(a)) { Ad = A.to_eigen(); }

  Eigen::VectorXd value(const Eigen::VectorXd& x) const { return Ad * x; }
};

/// Canonical symplectic block structure on coordinates (q_1..q_m, p_1..p_m).
struct SymplecticStructure {
  int m = 0;  ///< degrees of freedom; phase-space dimension is 2m

  explicit SymplecticStructure(int dof) : m(dof) {}

  int n() const noexcept { return 2 * m; }

  /// J = [[0, I], [-I, 0]].
  RMat J() const {
    RMat j(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
      j(i, m + i) = Rational(1);
      j(m + i, i) = Rational(-1);
    }
    return j;
  }

  Eigen::MatrixXd J_eigen() const { return J().to_eigen(); }
};

/// Fields of a representation under the frozen index convention A = Gamma^T.
inline std::vector<LinearVectorField> linearize(const Representation& rep) {
  std::vector<LinearVectorField> fields;
  fields.reserve(rep.mats.size());
  for (const RMat& g : rep.mats) fields.emplace_back(g.transposed());
  return fields;
}

/// Exact test of J A + A^T J = 0.
inline bool is_hamiltonian(const LinearVectorField& field, const SymplecticStructure& sym) {
  if (field.n != sym.n()) fail(errkind::dimension_mismatch, "is_hamiltonian: size mismatch");
  RMat j = sym.J();
  return (j * field.A + field.A.transposed() * j).is_zero();
}

/// Quadratic Hamiltonian h(x) = -1/2 x^T (J A) x of a Hamiltonian field,
/// satisfying grad h = -J A x and A x = J grad h.
inline Polynomial hamiltonian_of(const LinearVectorField& field, const SymplecticStructure& sym) {
  if (!is_hamiltonian(field, sym))
    fail(errkind::not_hamiltonian, "hamiltonian_of: field is not Hamiltonian");
  RMat s = sym.J() * field.A;
  Chart chart = Chart::canonical(sym.m, 1);
  Polynomial h(chart);
  const Rational mhalf(-1, 2);
  for (int i = 0; i < field.n; ++i)
    for (int j = i; j < field.n; ++j) {
      Rational coeff = (i == j) ? mhalf * s(i, i) : mhalf * (s(i, j) + s(j, i));
      if (coeff.is_zero()) continue;
      std::vector<int> e(chart.var_count(), 0);
      e[i] += 1;
      e[j] += 1;
      h.add_term(e, coeff);
    }
  return h;
}

/// Numeric rank of the n x r matrix of field values at a point (singular
/// values below tol * sigma_max count as zero).
inline int distribution_rank(const std::vector<LinearVectorField>& fields,
                             const Eigen::VectorXd& point, double tol = 1e-10) {
  if (fields.empty()) fail(errkind::invalid_argument, "distribution_rank: no fields");
  const int n = fields.front().n;
  Eigen::MatrixXd m(n, int(fields.size()));
  for (size_t k = 0; k < fields.size(); ++k) {
    if (fields[k].n != n) fail(errkind::dimension_mismatch, "distribution_rank: mixed sizes");
    m.col(int(k)) = fields[k].value(point);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

/// Exact rank of the span of field values at an exact point.
inline int distribution_rank_exact(const std::vector<LinearVectorField>& fields,
                                   const std::vector<Rational>& point) {
  if (fields.empty()) fail(errkind::invalid_argument, "distribution_rank: no fields");
  const int n = fields.front().n;
  if (int(point.size()) != n)
    fail(errkind::dimension_mismatch, "distribution_rank: point dimension mismatch");
  RMat m(n, int(fields.size()));
  for (size_t k = 0; k < fields.size(); ++k)
    for (int i = 0; i < n; ++i) {
      Rational acc;
      for (int j = 0; j < n; ++j) acc += fields[k].A(i, j) * point[j];
      m(i, int(k)) = acc;
    }
  return m.rank();
}

/// Generic rank: maximum exact rank over random small-integer sample points.
inline int generic_rank(const std::vector<LinearVectorField>& fields, int samples,
                        std::mt19937_64& rng) {
  if (samples < 1) fail(errkind::invalid_argument, "generic_rank: samples must be >= 1");
  const int n = fields.front().n;
  std::uniform_int_distribution<int> dist(-9, 9);
  int best = 0;
  for (int s = 0; s < samples; ++s) {
    std::vector<Rational> x(n);
    bool all_zero = true;
    for (int i = 0; i < n; ++i) {
      int v = dist(rng);
      x[i] = Rational(v);
      all_zero = all_zero && v == 0;
    }
    if (all_zero) x[0] = Rational(1);
    best = std::max(best, distribution_rank_exact(fields, x));
  }
  return best;
}

inline int generic_rank(const std::vector<LinearVectorField>& fields, int samples,
                        std::uint64_t seed = 20260823) {
  std::mt19937_64 rng(seed);
  return generic_rank(fields, samples, rng);
}

/// Exact Lie derivative (A x) . grad phi of a polynomial along a linear
/// field.
inline Polynomial lie_derivative(const LinearVectorField& field, const Polynomial& phi) {
  const Chart& chart = phi.chart();
  if (field.n != chart.var_count())
    fail(errkind::dimension_mismatch, "lie_derivative: chart/field dimension mismatch");
  Polynomial lie(chart);
  for (int j = 0; j < field.n; ++j) {
    Polynomial comp(chart);
    for (int i = 0; i < field.n; ++i)
      if (!field.A(j, i).is_zero()) comp += Polynomial::variable(chart, i, field.A(j, i));
    lie += comp * phi.derivative(j);
  }
  return lie;
}

/// True iff every field annihilates the polynomial: (A_alpha x) . grad phi = 0
/// identically, checked exactly.
inline bool annihilates(const std::vector<LinearVectorField>& fields, const Polynomial& inv) {
  for (const auto& f : fields)
    if (!lie_derivative(f, inv).is_zero()) return false;
  return true;
}

/// Exact basis of the polynomial invariants of degree 1..max_degree shared by
/// all fields, found by a graded linear ansatz (kernel of the stacked Lie
/// derivative maps).  Only degrees 1 and 2 are supported; that covers every
/// built-in realization.
inline std::vector<Polynomial> discover_invariants(
    const std::vector<LinearVectorField>& fields, const Chart& chart, int max_degree = 2) {
  if (fields.empty()) fail(errkind::invalid_argument, "discover_invariants: no fields");
  if (max_degree < 1 || max_degree > 2)
    fail(errkind::invalid_argument, "discover_invariants: max_degree must be 1 or 2");
  const int n = chart.var_count();
  if (fields.front().n != n)
    fail(errkind::dimension_mismatch, "discover_invariants: chart/field dimension mismatch");

  // Monomial ansatz basis of degree 1..max_degree.
  std::vector<std::vector<int>> expos;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    expos.push_back(e);
  }
  if (max_degree >= 2)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        std::vector<int> e(n, 0);
        e[i] += 1;
        e[j] += 1;
        expos.push_back(e);
      }

  // Lie derivatives of each ansatz monomial, expressed over the same basis.
  std::map<std::vector<int>, int> slot;
  for (std::size_t c = 0; c < expos.size(); ++c) slot[expos[c]] = int(c);
  RMat constraints(int(fields.size() * expos.size()), int(expos.size()));
  for (std::size_t a = 0; a < fields.size(); ++a)
    for (std::size_t c = 0; c < expos.size(); ++c) {
      Polynomial m(chart);
      m.add_term(expos[c], Rational(1));
      Polynomial lie = lie_derivative(fields[a], m);
      for (const auto& [e, coeff] : lie.terms()) {
        auto it = slot.find(e);
        if (it == slot.end())
          fail(errkind::invalid_argument, "discover_invariants: derivative left the ansatz space");
        constraints(int(a * expos.size()) + it->second, int(c)) = coeff;
      }
    }

  std::vector<Polynomial> out;
  for (const auto& v : constraints.kernel()) {
    Polynomial phi(chart);
    for (std::size_t c = 0; c < expos.size(); ++c)
      if (!v[c].is_zero()) phi.add_term(expos[c], v[c]);
    out.push_back(phi);
  }
  return out;
}

}  // namespace liehamsys
