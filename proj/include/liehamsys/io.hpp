#pragma once
/** @file io.hpp
 *  @brief JSON configuration parsing, JSON reports, CSV emission, atomic
 *         writes, and the config hash used in run manifests.
 *
 *  All numbers in CSV output are printed with %.17g so outputs round-trip
 *  bit-exactly; identical config + seed therefore produce byte-identical
 *  files.
 */

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "liehamsys/algebra.hpp"
#include "liehamsys/coefficients.hpp"
#include "liehamsys/dynamics.hpp"
#include "liehamsys/errors.hpp"
#include "liehamsys/polynomial.hpp"

namespace liehamsys {

using Json = nlohmann::json;

/// FNV-1a 64-bit hash, hex-encoded; used to fingerprint configs in manifests.
inline std::string fnv1a64_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Shortest round-trip decimal form of a double.
inline std::string fmt_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Write content to path via temp file + rename so failures never leave a
/// partial file at the destination.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(errkind::io, "cannot open for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(errkind::io, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(errkind::io, "rename failed: " + path.string() + " (" + ec.message() + ")");
}

inline Json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errkind::io, "cannot open config: " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(errkind::schema_violation, "invalid JSON in " + path.string() + ": " + e.what());
  }
}

/// Schema-checked field access.
inline const Json& require_field(const Json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key))
    fail(errkind::schema_violation, "missing required field '" + key + "'");
  return j.at(key);
}

inline double require_double(const Json& j, const std::string& key) {
  const Json& v = require_field(j, key);
  if (!v.is_number()) fail(errkind::schema_violation, "field '" + key + "' must be a number");
  return v.get<double>();
}

inline double optional_double(const Json& j, const std::string& key, double fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number()) fail(errkind::schema_violation, "field '" + key + "' must be a number");
  return v.get<double>();
}

inline int optional_int(const Json& j, const std::string& key, int fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer())
    fail(errkind::schema_violation, "field '" + key + "' must be an integer");
  return v.get<int>();
}

inline std::string require_string(const Json& j, const std::string& key) {
  const Json& v = require_field(j, key);
  if (!v.is_string()) fail(errkind::schema_violation, "field '" + key + "' must be a string");
  return v.get<std::string>();
}

inline std::vector<double> require_double_array(const Json& j, const std::string& key) {
  const Json& v = require_field(j, key);
  if (!v.is_array()) fail(errkind::schema_violation, "field '" + key + "' must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number())
      fail(errkind::schema_violation, "field '" + key + "' must contain numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

/// Time span of a run: {t0, t1, dt} with dt > 0.
struct Span {
  double t0 = 0.0;
  double t1 = 1.0;
  double dt = 1e-3;
};

inline Span span_from_json(const Json& j) {
  const Json& s = require_field(j, "span");
  Span out;
  out.t0 = optional_double(s, "t0", 0.0);
  out.t1 = require_double(s, "t1");
  out.dt = require_double(s, "dt");
  if (!(out.dt > 0.0) || !(out.t1 > out.t0))
    fail(errkind::schema_violation, "span requires t1 > t0 and dt > 0");
  return out;
}

/// One coefficient function from its JSON spec.  Kinds: constant, poly_in_t,
/// sinusoid, exp_integral, tabulated, random_sinusoid (parameters drawn from
/// the run RNG: amp in [-1,1), omega in [0.3,2), phase in [0,2pi)).
inline CoefficientFunction coefficient_from_json(const Json& j, std::mt19937_64& rng) {
  using CF = CoefficientFunction;
  if (j.is_number()) return CF::constant(j.get<double>());
  if (j.is_string() && j.get<std::string>() == "random_sinusoid") {
    std::uniform_real_distribution<double> amp(-1.0, 1.0), omega(0.3, 2.0),
        phase(0.0, 6.283185307179586);
    return CF::sinusoid(amp(rng), omega(rng), phase(rng));
  }
  const std::string kind = require_string(j, "kind");
  if (kind == "constant") return CF::constant(require_double(j, "value"));
  if (kind == "poly_in_t") return CF::poly_in_t(require_double_array(j, "coeffs"));
  if (kind == "sinusoid")
    return CF::sinusoid(require_double(j, "amp"), require_double(j, "omega"),
                        optional_double(j, "phase", 0.0), optional_double(j, "offset", 0.0));
  if (kind == "exp_integral")
    return CF::exp_integral(coefficient_from_json(require_field(j, "inner"), rng),
                            require_double(j, "scale"), optional_double(j, "prefactor", 1.0),
                            optional_double(j, "quad_step", 5e-4));
  if (kind == "tabulated")
    return CF::tabulated(require_double(j, "t0"), require_double(j, "dt"),
                         require_double_array(j, "values"));
  if (kind == "random_sinusoid") {
    std::uniform_real_distribution<double> amp(-1.0, 1.0), omega(0.3, 2.0),
        phase(0.0, 6.283185307179586);
    return CF::sinusoid(amp(rng), omega(rng), phase(rng));
  }
  fail(errkind::schema_violation, "unknown coefficient kind '" + kind + "'");
}

/// A full coefficient list: either an array of specs (length = count) or the
/// string "random_sinusoid" meaning one random sinusoid per generator.
inline std::vector<CoefficientFunction> coefficients_from_json(const Json& j, int count,
                                                               std::mt19937_64& rng) {
  std::vector<CoefficientFunction> out;
  if (j.is_string() && j.get<std::string>() == "random_sinusoid") {
    for (int i = 0; i < count; ++i)
      out.push_back(coefficient_from_json(Json("random_sinusoid"), rng));
    return out;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != count)
    fail(errkind::schema_violation,
         "coeffs must be an array of " + std::to_string(count) + " specs");
  for (const auto& e : j) out.push_back(coefficient_from_json(e, rng));
  return out;
}

inline Json validation_report_to_json(const ValidationReport& report) {
  Json out;
  out["passed"] = report.ok();
  out["failure_count"] = report.issues.size();
  Json list = Json::array();
  for (const auto& issue : report.issues) {
    Json e;
    e["check"] = issue.check;
    e["location"] = issue.location;
    e["detail"] = issue.detail;
    list.push_back(e);
  }
  out["failures"] = list;
  return out;
}

/// CSV for a trajectory: header t,x1..xn, one row per sample, %.17g.
inline std::string trajectory_to_csv(const Trajectory& traj) {
  std::ostringstream out;
  const Eigen::Index n = traj.states.empty() ? 0 : traj.states.front().size();
  out << "t";
  for (Eigen::Index i = 0; i < n; ++i) out << ",x" << (i + 1);
  out << "\n";
  for (std::size_t r = 0; r < traj.size(); ++r) {
    out << fmt_g17(traj.times[r]);
    for (Eigen::Index i = 0; i < n; ++i) out << "," << fmt_g17(traj.states[r][i]);
    out << "\n";
  }
  return out.str();
}

// ---- algebra / representation / polynomial serialization ----

inline Json rational_to_json(const Rational& r) {
  return Json::array({r.num(), r.den()});
}

inline Rational rational_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    fail(errkind::schema_violation, "rational must be [num, den]");
  return Rational(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
}

inline Json algebra_to_json(const LieAlgebra& g) {
  Json out;
  out["name"] = g.name();
  out["dim"] = g.dim();
  out["labels"] = g.labels();
  Json st = Json::array();
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      for (int k = 0; k < g.dim(); ++k) {
        const Rational c = g.structure(i, j, k);
        if (c.is_zero()) continue;
        Json e;
        e["i"] = i;
        e["j"] = j;
        e["k"] = k;
        e["num"] = c.num();
        e["den"] = c.den();
        st.push_back(e);
      }
  out["structure"] = st;
  return out;
}

inline LieAlgebra algebra_from_json(const Json& j) {
  const std::string name = require_string(j, "name");
  const Json& labels_j = require_field(j, "labels");
  if (!labels_j.is_array() || labels_j.empty())
    fail(errkind::schema_violation, "labels must be a non-empty array");
  std::vector<std::string> labels;
  for (const auto& l : labels_j) {
    if (!l.is_string()) fail(errkind::schema_violation, "labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  const int dim = optional_int(j, "dim", int(labels.size()));
  if (dim != int(labels.size()))
    fail(errkind::schema_violation, "dim does not match number of labels");
  LieAlgebra g(name, labels);
  const Json& st = require_field(j, "structure");
  if (!st.is_array()) fail(errkind::schema_violation, "structure must be an array");
  for (const auto& e : st) {
    const int i = optional_int(e, "i", -1), jj = optional_int(e, "j", -1),
              k = optional_int(e, "k", -1);
    if (i < 0 || jj < 0 || k < 0 || i >= dim || jj >= dim || k >= dim)
      fail(errkind::schema_violation, "structure entry indices out of range");
    const auto num = static_cast<std::int64_t>(optional_int(e, "num", 0));
    const auto den = static_cast<std::int64_t>(optional_int(e, "den", 1));
    g.set_structure(i, jj, k, Rational(num, den));
  }
  return g;
}

inline Json representation_to_json(const Representation& rep) {
  Json out = algebra_to_json(rep.algebra);
  out["n"] = rep.n;
  Json mats = Json::array();
  for (const RMat& m : rep.mats) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m(r, c)));
      rows.push_back(row);
    }
    mats.push_back(rows);
  }
  out["mats"] = mats;
  return out;
}

inline Representation representation_from_json(const Json& j) {
  Representation rep;
  rep.algebra = algebra_from_json(j);
  const Json& n_j = require_field(j, "n");
  if (!n_j.is_number_integer() || n_j.get<int>() < 1)
    fail(errkind::schema_violation, "n must be a positive integer");
  rep.n = n_j.get<int>();
  const Json& mats = require_field(j, "mats");
  if (!mats.is_array() || static_cast<int>(mats.size()) != rep.algebra.dim())
    fail(errkind::schema_violation, "mats must have one matrix per generator");
  for (const auto& rows : mats) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != rep.n)
      fail(errkind::schema_violation, "each matrix must have n rows");
    RMat m(rep.n, rep.n);
    for (int r = 0; r < rep.n; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != rep.n)
        fail(errkind::schema_violation, "each matrix row must have n entries");
      for (int c = 0; c < rep.n; ++c) m(r, c) = rational_from_json(row[static_cast<std::size_t>(c)]);
    }
    rep.mats.push_back(std::move(m));
  }
  return rep;
}

inline Json polynomial_to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t;
    t["expo"] = e;
    t["num"] = c.num();
    t["den"] = c.den();
    terms.push_back(t);
  }
  Json out;
  out["vars"] = p.chart().var_count();
  out["terms"] = terms;
  out["pretty"] = p.str();
  return out;
}

}  // namespace liehamsys
