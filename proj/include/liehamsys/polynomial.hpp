#pragma once
/** @file polynomial.hpp
 *  @brief Exact multivariate polynomials over a named coordinate chart, with
 *         the canonical Poisson bracket and bracket-table verification.
 *
 *  Charts are either canonical (q_1..q_n, p_1..p_n, possibly in several
 *  labelled copies for diagonal prolongations) or abstract (free generator
 *  variables used to write Casimir elements before composition).
 */

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "liehamsys/algebra.hpp"
#include "liehamsys/errors.hpp"
#include "liehamsys/rational.hpp"

namespace liehamsys {

/// Variable layout for polynomials.  Canonical charts order variables
/// copy-major with q's before p's inside each copy.
class Chart {
 public:
  enum class Kind { canonical, abstract };

  static Chart canonical(int dof, int copies = 1) {
    if (dof <= 0 || copies <= 0)
      fail(errkind::invalid_argument, "chart: dof and copies must be positive");
    Chart c;
    c.kind_ = Kind::canonical;
    c.dof_ = dof;
    c.copies_ = copies;
    for (int l = 0; l < copies; ++l) {
      for (int i = 0; i < dof; ++i) c.names_.push_back(var_label("q", i, l, copies));
      for (int i = 0; i < dof; ++i) c.names_.push_back(var_label("p", i, l, copies));
    }
    return c;
  }

  static Chart abstract(std::vector<std::string> names) {
    if (names.empty()) fail(errkind::invalid_argument, "chart: no variables");
    Chart c;
    c.kind_ = Kind::abstract;
    c.dof_ = int(names.size());
    c.copies_ = 1;
    c.names_ = std::move(names);
    return c;
  }

  /// Abstract chart with variables v1..vr (generator placeholders).
  static Chart generators(int r) {
    std::vector<std::string> names;
    for (int i = 1; i <= r; ++i) names.push_back("v" + std::to_string(i));
    return abstract(std::move(names));
  }

  Kind kind() const noexcept { return kind_; }
  bool is_canonical() const noexcept { return kind_ == Kind::canonical; }
  int dof() const noexcept { return dof_; }
  int copies() const noexcept { return copies_; }
  int var_count() const noexcept { return int(names_.size()); }
  const std::string& var_name(int i) const { return names_[i]; }

  /// Flat index of q_i (0-based) in copy l (0-based).
  int q_index(int i, int l = 0) const { return l * 2 * dof_ + i; }
  /// Flat index of p_i (0-based) in copy l (0-based).
  int p_index(int i, int l = 0) const { return l * 2 * dof_ + dof_ + i; }

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.kind_ == b.kind_ && a.dof_ == b.dof_ && a.copies_ == b.copies_ &&
           a.names_ == b.names_;
  }
  friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

 private:
  static std::string var_label(const char* base, int i, int copy, int copies) {
    std::string s = std::string(base) + std::to_string(i + 1);
    if (copies > 1) s += "^(" + std::to_string(copy + 1) + ")";
    return s;
  }

  Kind kind_ = Kind::canonical;
  int dof_ = 0;
  int copies_ = 1;
  std::vector<std::string> names_;
};

/// Exact polynomial in normal form: map from exponent vectors to nonzero
/// rational coefficients.
class Polynomial {
 public:
  using Terms = std::map<std::vector<int>, Rational>;

  explicit Polynomial(Chart chart) : chart_(std::move(chart)) {}

  static Polynomial zero(const Chart& chart) { return Polynomial(chart); }

  static Polynomial constant(const Chart& chart, Rational c) {
    Polynomial p(chart);
    if (!c.is_zero()) p.terms_[std::vector<int>(chart.var_count(), 0)] = c;
    return p;
  }

  static Polynomial variable(const Chart& chart, int index, Rational coeff = Rational(1)) {
    if (index < 0 || index >= chart.var_count())
      fail(errkind::invalid_argument, "polynomial: variable index out of range");
    Polynomial p(chart);
    if (!coeff.is_zero()) {
      std::vector<int> e(chart.var_count(), 0);
      e[index] = 1;
      p.terms_[std::move(e)] = coeff;
    }
    return p;
  }

  const Chart& chart() const noexcept { return chart_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  void add_term(const std::vector<int>& expo, const Rational& coeff) {
    if (int(expo.size()) != chart_.var_count())
      fail(errkind::invalid_argument, "polynomial: exponent vector length mismatch");
    if (coeff.is_zero()) return;
    auto it = terms_.find(expo);
    if (it == terms_.end()) {
      terms_[expo] = coeff;
    } else {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    a.check_chart(b);
    Polynomial out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    a.check_chart(b);
    Polynomial out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
    return out;
  }
  Polynomial operator-() const {
    Polynomial out(chart_);
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_chart(b);
    Polynomial out(a.chart_);
    std::vector<int> e(a.chart_.var_count());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend Polynomial operator*(const Rational& s, const Polynomial& p) {
    Polynomial out(p.chart_);
    if (s.is_zero()) return out;
    for (const auto& [e, c] : p.terms_) out.terms_[e] = s * c;
    return out;
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  Polynomial pow(int e) const {
    Polynomial out = constant(chart_, Rational(1));
    for (int i = 0; i < e; ++i) out = out * *this;
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.chart_ == b.chart_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Exact partial derivative with respect to variable `index`.
  Polynomial derivative(int index) const {
    Polynomial out(chart_);
    for (const auto& [e, c] : terms_) {
      if (e[index] == 0) continue;
      std::vector<int> d = e;
      Rational coeff = c * Rational(d[index]);
      d[index] -= 1;
      out.add_term(d, coeff);
    }
    return out;
  }

  double eval(const std::vector<double>& x) const {
    if (int(x.size()) != chart_.var_count())
      fail(errkind::dimension_mismatch, "polynomial eval: point dimension mismatch");
    double acc = 0;
    for (const auto& [e, c] : terms_) {
      double term = c.to_double();
      for (size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) term *= x[i];
      acc += term;
    }
    return acc;
  }

  Rational eval_exact(const std::vector<Rational>& x) const {
    if (int(x.size()) != chart_.var_count())
      fail(errkind::dimension_mismatch, "polynomial eval: point dimension mismatch");
    Rational acc;
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) term *= x[i];
      acc += term;
    }
    return acc;
  }

  /// Substitute variable i by args[i]; all args share one target chart.
  Polynomial substitute(const std::vector<Polynomial>& args) const {
    if (int(args.size()) != chart_.var_count())
      fail(errkind::invalid_argument, "substitute: arity mismatch");
    const Chart& target = args.front().chart();
    for (const auto& a : args)
      if (a.chart() != target) fail(errkind::chart_mismatch, "substitute: mixed charts");
    Polynomial out(target);
    for (const auto& [e, c] : terms_) {
      Polynomial term = Polynomial::constant(target, c);
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) term = term * args[i].pow(e[i]);
      out += term;
    }
    return out;
  }

  /// Re-chart a single-copy canonical polynomial into copy `l` (0-based) of a
  /// k-copy chart over the same dof.
  Polynomial prolong_to_copy(int k, int l) const {
    if (!chart_.is_canonical() || chart_.copies() != 1)
      fail(errkind::invalid_argument, "prolong_to_copy: needs a single-copy canonical chart");
    if (l < 0 || l >= k) fail(errkind::invalid_argument, "prolong_to_copy: bad copy index");
    Chart big = Chart::canonical(chart_.dof(), k);
    Polynomial out(big);
    const int w = 2 * chart_.dof();
    for (const auto& [e, c] : terms_) {
      std::vector<int> be(big.var_count(), 0);
      for (int i = 0; i < w; ++i) be[l * w + i] = e[i];
      out.add_term(be, c);
    }
    return out;
  }

  /// Swap the variables of copies i and j (0-based) on a multi-copy chart.
  Polynomial permute_copies(int i, int j) const {
    if (!chart_.is_canonical())
      fail(errkind::invalid_argument, "permute_copies: canonical chart required");
    const int k = chart_.copies();
    if (i < 0 || j < 0 || i >= k || j >= k)
      fail(errkind::invalid_argument, "permute_copies: copy index out of range");
    if (i == j) return *this;
    const int w = 2 * chart_.dof();
    Polynomial out(chart_);
    for (const auto& [e, c] : terms_) {
      std::vector<int> pe = e;
      for (int v = 0; v < w; ++v) std::swap(pe[i * w + v], pe[j * w + v]);
      out.add_term(pe, c);
    }
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Rational a = c;
      if (!first) {
        os << (a < Rational(0) ? " - " : " + ");
        if (a < Rational(0)) a = -a;
      }
      first = false;
      bool has_var = false;
      std::ostringstream vs;
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (has_var) vs << "*";
        vs << chart_.var_name(int(i));
        if (e[i] > 1) vs << "^" << e[i];
        has_var = true;
      }
      if (!has_var) {
        os << a.str();
      } else {
        if (!a.is_one()) os << a.str() << "*";
        os << vs.str();
      }
    }
    return os.str();
  }

 private:
  void check_chart(const Polynomial& o) const {
    if (chart_ != o.chart_) fail(errkind::chart_mismatch, "polynomial chart mismatch");
  }

  Chart chart_;
  Terms terms_;
};

/// Canonical Poisson bracket summed over all copies and degrees of freedom:
/// {f, g} = sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i).
inline Polynomial bracket(const Polynomial& f, const Polynomial& g) {
  if (f.chart() != g.chart()) fail(errkind::chart_mismatch, "bracket: chart mismatch");
  if (!f.chart().is_canonical()) fail(errkind::not_canonical, "bracket: canonical chart required");
  const Chart& chart = f.chart();
  Polynomial out(chart);
  for (int l = 0; l < chart.copies(); ++l)
    for (int i = 0; i < chart.dof(); ++i) {
      const int qi = chart.q_index(i, l), pi = chart.p_index(i, l);
      out += f.derivative(qi) * g.derivative(pi) - f.derivative(pi) * g.derivative(qi);
    }
  return out;
}

/// Check {h_i, h_j} = sign * C_ij^k h_k for all pairs; failed pairs are
/// reported with the residual polynomial.  sign = -1 matches the built-in
/// realizations (their lift X -> h reverses the bracket).
inline ValidationReport verify_bracket_table(const std::vector<Polynomial>& hams,
                                             const LieAlgebra& algebra, int sign = 1) {
  if (int(hams.size()) != algebra.dim())
    fail(errkind::invalid_argument, "verify_bracket_table: wrong number of Hamiltonians");
  ValidationReport report;
  const int r = algebra.dim();
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      Polynomial lhs = bracket(hams[i], hams[j]);
      Polynomial rhs = Polynomial::zero(hams[i].chart());
      for (int k = 0; k < r; ++k) {
        Rational c = Rational(sign) * algebra.structure(i, j, k);
        if (!c.is_zero()) rhs += c * hams[k];
      }
      Polynomial resid = lhs - rhs;
      if (!resid.is_zero())
        report.add("bracket_table",
                   "{" + algebra.labels()[i] + "," + algebra.labels()[j] + "}", resid.str());
    }
  return report;
}

/// Substitute generator variables by Hamiltonian functions and expand.
inline Polynomial compose(const Polynomial& casimir, const std::vector<Polynomial>& hams) {
  if (casimir.chart().is_canonical())
    fail(errkind::invalid_argument, "compose: casimir must live on an abstract chart");
  if (casimir.chart().var_count() != int(hams.size()))
    fail(errkind::invalid_argument, "compose: arity mismatch");
  return casimir.substitute(hams);
}

/// True iff the composed element Poisson-commutes with every Hamiltonian.
inline bool casimir_commutes(const Polynomial& casimir, const std::vector<Polynomial>& hams) {
  Polynomial f = compose(casimir, hams);
  for (const auto& h : hams)
    if (!bracket(f, h).is_zero()) return false;
  return true;
}

}  // namespace liehamsys
