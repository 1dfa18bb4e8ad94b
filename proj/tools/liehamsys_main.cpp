/** @file liehamsys_main.cpp
 *  @brief Command-line front end: verification, simulation, invariant drift,
 *         superposition, rank tables, and the sl2 reduction, with JSON
 *         configs in and CSV/JSON reports out.
 *
 *  Exit codes: 0 success, 1 verification failures, 2 config/schema problems,
 *  3 numerical error signals (the error kind is printed).
 */

#include <CLI11.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "liehamsys/liehamsys.hpp"

namespace lhs = liehamsys;
namespace fs = std::filesystem;
using lhs::Json;

namespace {

struct RunContext {
  fs::path config_path;
  fs::path out_dir = ".";
  std::uint64_t seed = 12345;
  Json config;      // parsed config (empty object when no --config given)
  std::string raw;  // raw config bytes for hashing
};

Json load_config(RunContext& ctx, bool required) {
  if (ctx.config_path.empty()) {
    if (required) lhs::fail(lhs::errkind::schema_violation, "--config is required");
    ctx.raw = "{}";
    return Json::object();
  }
  std::ifstream in(ctx.config_path, std::ios::binary);
  if (!in) lhs::fail(lhs::errkind::io, "cannot open config: " + ctx.config_path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  ctx.raw = buf.str();
  try {
    return Json::parse(ctx.raw);
  } catch (const Json::exception& e) {
    lhs::fail(lhs::errkind::schema_violation,
              "invalid JSON in " + ctx.config_path.string() + ": " + e.what());
  }
}

Json base_manifest(const RunContext& ctx, const std::string& command) {
  Json m;
  m["schema"] = 1;
  m["command"] = command;
  m["seed"] = ctx.seed;
  m["config_hash"] = lhs::fnv1a64_hex(ctx.raw);
  return m;
}

void write_json(const RunContext& ctx, const std::string& name, const Json& doc) {
  fs::create_directories(ctx.out_dir);
  lhs::atomic_write(ctx.out_dir / name, doc.dump(2) + "\n");
}

void write_text(const RunContext& ctx, const std::string& name, const std::string& content) {
  fs::create_directories(ctx.out_dir);
  lhs::atomic_write(ctx.out_dir / name, content);
}

lhs::BuiltinRepresentation rep_by_system(const std::string& system) {
  if (system == "sl2" || system == "sl2_adjoint") return lhs::BuiltinRepresentation::sl2_adjoint;
  if (system == "h6") return lhs::BuiltinRepresentation::h6_gamma;
  if (system == "so13") return lhs::BuiltinRepresentation::so13_gamma;
  if (system == "sp4") return lhs::BuiltinRepresentation::sp4_fundamental;
  lhs::fail(lhs::errkind::unknown_representation, "unknown system '" + system + "'");
}

/// Build the configured system: either {"system": name, "coeffs": ...} or
/// {"preset": {"name":..., "params": {...}}} with a span for validity checks.
struct ConfiguredSystem {
  std::string name;
  lhs::TDLinearSystem system;
  std::vector<std::pair<std::string, lhs::CoefficientFunction>> table;
};

ConfiguredSystem system_from_config(const Json& cfg, const lhs::Span& span,
                                    std::mt19937_64& rng) {
  using CF = lhs::CoefficientFunction;
  ConfiguredSystem out;
  if (cfg.contains("preset")) {
    const Json& pj = cfg.at("preset");
    const std::string name = lhs::require_string(pj, "name");
    const Json params = pj.contains("params") ? pj.at("params") : Json::object();
    auto cf = [&](const char* key, double fallback) {
      if (params.contains(key)) return lhs::coefficient_from_json(params.at(key), rng);
      return CF::constant(fallback);
    };
    auto osc = [&](const char* suffix) {
      lhs::OscillatorParams p;
      p.m = cf((std::string("m") + suffix).c_str(), 1.0);
      p.k = cf((std::string("k") + suffix).c_str(), 1.0);
      p.gamma = cf((std::string("gamma") + suffix).c_str(), 0.0);
      return p;
    };
    lhs::PresetSystem ps;
    if (name == "bateman") {
      ps = lhs::make_lorentz_preset_system(name, lhs::bateman_preset(osc(""), span.t0, span.t1));
    } else if (name == "coupled_ck") {
      ps = lhs::make_lorentz_preset_system(
          name, lhs::coupled_ck_preset(osc(""), cf("a3", 0.0), span.t0, span.t1));
    } else if (name == "generalized_cck") {
      ps = lhs::make_sp4_preset_system(
          name, lhs::generalized_cck_preset(osc("1"), osc("2"), cf("a2", 0.0), span.t0, span.t1));
    } else if (name == "coupled_ho") {
      ps = lhs::make_sp4_preset_system(
          name, lhs::coupled_ho_preset(osc("1"), osc("2"), cf("a2", 0.0), span.t0, span.t1));
    } else if (name == "em") {
      ps = lhs::make_sp4_preset_system(
          name, lhs::em_preset(cf("m1", 1.0), cf("m2", 1.0), cf("e1", 1.0), cf("e2", 1.0),
                               cf("gamma", 1.0), span.t0, span.t1));
    } else if (name == "hyperbolic") {
      ps = lhs::make_sp4_preset_system(name, lhs::hyperbolic_preset(cf("b", 1.0)));
    } else {
      lhs::fail(lhs::errkind::schema_violation, "unknown preset '" + name + "'");
    }
    out.name = "preset:" + name;
    out.system = ps.system;
    out.table = ps.table;
    return out;
  }
  const std::string system = lhs::require_string(cfg, "system");
  auto rep = lhs::builtin_representation(rep_by_system(system));
  auto coeffs =
      lhs::coefficients_from_json(lhs::require_field(cfg, "coeffs"), rep.algebra.dim(), rng);
  out.name = system;
  out.system = lhs::make_system(rep, coeffs);
  for (int i = 0; i < rep.algebra.dim(); ++i)
    out.table.emplace_back("b" + std::to_string(i + 1), out.system.coeffs[size_t(i)]);
  return out;
}

/// Sampled audit table of the coefficient functions over the span.
Json table_to_json(const std::vector<std::pair<std::string, lhs::CoefficientFunction>>& table,
                   const lhs::Span& span, int samples = 11) {
  Json out = Json::object();
  for (const auto& [name, cf] : table) {
    Json vals = Json::array();
    for (int i = 0; i < samples; ++i) {
      const double t =
          span.t0 + (span.t1 - span.t0) * static_cast<double>(i) / (samples - 1);
      vals.push_back(cf.eval(t));
    }
    out[name] = vals;
  }
  return out;
}

std::vector<Eigen::VectorXd> states_from_config(const Json& cfg, const std::string& key, int n) {
  const Json& arr = lhs::require_field(cfg, key);
  if (!arr.is_array() || arr.empty())
    lhs::fail(lhs::errkind::schema_violation, "'" + key + "' must be a non-empty array");
  std::vector<Eigen::VectorXd> out;
  for (const auto& e : arr) {
    if (!e.is_array() || static_cast<int>(e.size()) != n)
      lhs::fail(lhs::errkind::schema_violation,
                "'" + key + "' entries must be arrays of length " + std::to_string(n));
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) {
      if (!e[size_t(i)].is_number())
        lhs::fail(lhs::errkind::schema_violation, "'" + key + "' entries must contain numbers");
      x[i] = e[size_t(i)].get<double>();
    }
    out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------- verify ----

int cmd_verify(RunContext& ctx, const std::string& scope) {
  Json report;
  report["schema"] = 1;
  report["command"] = "verify";
  report["scope"] = scope;
  Json checks = Json::array();
  int failures = 0;

  auto record = [&](const std::string& name, const lhs::ValidationReport& r) {
    Json c = lhs::validation_report_to_json(r);
    c["name"] = name;
    checks.push_back(c);
    if (!r.ok()) ++failures;
    std::cout << (r.ok() ? "pass" : "FAIL") << "  " << name << "\n";
  };
  auto record_bool = [&](const std::string& name, bool ok, const std::string& detail = {}) {
    lhs::ValidationReport r;
    if (!ok) r.add("check", name, detail);
    record(name, r);
  };

  const bool all = scope == "all";

  // Optional user-supplied algebra/representation JSON.
  if (!ctx.config.empty() && ctx.config.contains("algebra")) {
    lhs::LieAlgebra user = lhs::algebra_from_json(ctx.config.at("algebra"));
    record("user algebra: antisymmetry + Jacobi", lhs::validate(user));
    if (ctx.config.at("algebra").contains("mats")) {
      lhs::Representation urep = lhs::representation_from_json(ctx.config.at("algebra"));
      record("user representation: homomorphism + independence",
             lhs::validate_representation(urep));
    }
  }

  if (all || scope == "algebra") {
    for (auto which : {lhs::BuiltinAlgebra::sl2, lhs::BuiltinAlgebra::schrodinger_h6,
                       lhs::BuiltinAlgebra::so13, lhs::BuiltinAlgebra::sp4}) {
      auto g = lhs::builtin_algebra(which);
      record("algebra " + g.name() + ": antisymmetry + Jacobi", lhs::validate(g));
    }
  }
  if (all || scope == "representation") {
    for (auto which :
         {lhs::BuiltinRepresentation::sl2_adjoint, lhs::BuiltinRepresentation::h6_gamma,
          lhs::BuiltinRepresentation::so13_gamma, lhs::BuiltinRepresentation::sp4_fundamental}) {
      auto rep = lhs::builtin_representation(which);
      record("representation " + rep.algebra.name() + ": homomorphism + independence",
             lhs::validate_representation(rep));
    }
  }
  if (all || scope == "brackets") {
    auto h6 = lhs::builtin_hamiltonians(lhs::BuiltinRepresentation::h6_gamma);
    record("h6 Hamiltonian bracket table (sign -1)",
           lhs::verify_bracket_table(h6, lhs::builtin_algebra(lhs::BuiltinAlgebra::schrodinger_h6),
                                     -1));
    auto so13 = lhs::builtin_hamiltonians(lhs::BuiltinRepresentation::so13_gamma);
    record("so13 Hamiltonian bracket table (sign -1)",
           lhs::verify_bracket_table(so13, lhs::builtin_algebra(lhs::BuiltinAlgebra::so13), -1));
    auto sp4 = lhs::builtin_hamiltonians(lhs::BuiltinRepresentation::sp4_fundamental);
    record("sp4 Hamiltonian bracket table (sign -1)",
           lhs::verify_bracket_table(sp4, lhs::builtin_algebra(lhs::BuiltinAlgebra::sp4), -1));
    record("h6 subfamily inside the sp4 Hamiltonians (sign -1)",
           lhs::verify_bracket_table(lhs::sp4_hamiltonians_as_h6(),
                                     lhs::builtin_algebra(lhs::BuiltinAlgebra::schrodinger_h6),
                                     -1));
  }
  if (all || scope == "casimirs") {
    auto h6 = lhs::builtin_hamiltonians(lhs::BuiltinRepresentation::h6_gamma);
    record_bool("h6 C3 Poisson-commutes with all Hamiltonians",
                lhs::casimir_commutes(lhs::casimir_h6_C3(), h6));
    record_bool("h6 C4 Poisson-commutes with all Hamiltonians",
                lhs::casimir_commutes(lhs::casimir_h6_C4(), h6));
    auto so13 = lhs::builtin_hamiltonians(lhs::BuiltinRepresentation::so13_gamma);
    record_bool("so13 C2 Poisson-commutes with all Hamiltonians",
                lhs::casimir_commutes(lhs::casimir_so13_C2(), so13));
    record_bool("so13 C2' Poisson-commutes with all Hamiltonians",
                lhs::casimir_commutes(lhs::casimir_so13_C2prime(), so13));
    auto sp4 = lhs::builtin_hamiltonians(lhs::BuiltinRepresentation::sp4_fundamental);
    record_bool("sp4 C2 Poisson-commutes with all Hamiltonians",
                lhs::casimir_commutes(lhs::casimir_sp4_C2(), sp4));
    record_bool("sp4 C4 Poisson-commutes with all Hamiltonians",
                lhs::casimir_commutes(lhs::casimir_sp4_C4(), sp4));
    {
      lhs::Chart c = lhs::Chart::generators(6);
      record_bool("h6 C4 factorizes as M * C3",
                  lhs::casimir_h6_C4() ==
                      lhs::Polynomial::variable(c, 5) * lhs::casimir_h6_C3());
    }
  }
  if (all || scope == "identities") {
    record("prolonged-constant identities", lhs::identity_checks());
  }

  report["checks"] = checks;
  report["failures"] = failures;
  report["passed"] = failures == 0;
  write_json(ctx, "verify_report.json", report);
  std::cout << (failures == 0 ? "all checks passed" : "FAILURES: " + std::to_string(failures))
            << "\n";
  return failures == 0 ? 0 : 1;
}

// -------------------------------------------------------------- simulate ----

int cmd_simulate(RunContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const lhs::Span span = lhs::span_from_json(ctx.config);
  ConfiguredSystem cs = system_from_config(ctx.config, span, rng);
  auto x0s = states_from_config(ctx.config, "x0", cs.system.n());
  if (x0s.size() != 1)
    lhs::fail(lhs::errkind::schema_violation, "simulate expects exactly one state in 'x0'");

  lhs::Trajectory traj = lhs::integrate(cs.system, x0s[0], span.t0, span.t1, span.dt);
  write_text(ctx, "trajectory.csv", lhs::trajectory_to_csv(traj));

  Json manifest = base_manifest(ctx, "simulate");
  manifest["system"] = cs.name;
  manifest["span"] = {{"t0", span.t0}, {"t1", span.t1}, {"dt", span.dt}};
  manifest["samples"] = traj.size();
  manifest["coefficient_table"] = table_to_json(cs.table, span);
  manifest["outputs"] = Json::array({"trajectory.csv"});
  if (ctx.config.contains("monodromy") && ctx.config.at("monodromy").is_boolean() &&
      ctx.config.at("monodromy").get<bool>()) {
    Eigen::MatrixXd M = lhs::monodromy(cs.system, span.t0, span.t1, span.dt);
    lhs::SymplecticStructure sym(cs.system.n() / 2);
    Json mm = Json::array();
    for (int r = 0; r < M.rows(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
      mm.push_back(row);
    }
    manifest["monodromy"] = mm;
    if (cs.system.n() % 2 == 0) {
      Eigen::MatrixXd J = sym.J_eigen();
      manifest["symplectic_defect"] = (M.transpose() * J * M - J).cwiseAbs().maxCoeff();
    }
  }
  write_json(ctx, "manifest.json", manifest);
  std::cout << "wrote trajectory.csv (" << traj.size() << " samples) and manifest.json\n";
  return 0;
}

// ------------------------------------------------------------ invariants ----

int cmd_invariants(RunContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const lhs::Span span = lhs::span_from_json(ctx.config);
  ConfiguredSystem cs = system_from_config(ctx.config, span, rng);
  auto x0s = states_from_config(ctx.config, "x0s", cs.system.n());
  const int k = static_cast<int>(x0s.size());
  const std::string system = lhs::require_string(ctx.config, "system");

  auto trajs = lhs::integrate_prolonged(cs.system, x0s, span.t0, span.t1, span.dt);
  auto catalog = lhs::invariant_catalog(system, k);

  Json report = base_manifest(ctx, "invariants");
  report["system"] = system;
  report["copies"] = k;
  Json inv = Json::array();
  std::ostringstream csv;
  csv << "t";
  std::vector<lhs::InvariantSeries> series;
  for (const auto& [name, obs] : catalog) {
    series.push_back(lhs::evaluate_series(obs, trajs));
    csv << "," << name;
  }
  csv << "\n";
  for (std::size_t i = 0; i < trajs[0].size(); ++i) {
    csv << lhs::fmt_g17(trajs[0].times[i]);
    for (const auto& s : series) csv << "," << lhs::fmt_g17(s.values[i]);
    csv << "\n";
  }
  double worst = 0.0;
  for (std::size_t c = 0; c < catalog.size(); ++c) {
    Json e;
    e["name"] = catalog[c].first;
    e["reference"] = series[c].reference;
    e["max_abs_drift"] = series[c].max_abs_drift;
    e["max_rel_drift"] = series[c].max_rel_drift;
    inv.push_back(e);
    worst = std::max(worst, series[c].max_rel_drift);
    std::cout << catalog[c].first << ": max relative drift " << series[c].max_rel_drift << "\n";
  }
  report["invariants"] = inv;
  report["worst_rel_drift"] = worst;
  report["outputs"] = Json::array({"invariants.csv"});
  write_text(ctx, "invariants.csv", csv.str());
  write_json(ctx, "drift_report.json", report);
  return 0;
}

// ------------------------------------------------------------- superpose ----

int cmd_superpose(RunContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const lhs::Span span = lhs::span_from_json(ctx.config);
  ConfiguredSystem cs = system_from_config(ctx.config, span, rng);
  const std::string system = lhs::require_string(ctx.config, "system");
  const bool is_h6 = system == "h6";
  const bool is_sp4_rule = system == "sp4" || system == "so13";
  if (!is_h6 && !is_sp4_rule)
    lhs::fail(lhs::errkind::schema_violation,
              "superpose supports systems h6, sp4, so13 (got '" + system + "')");
  const int need = is_h6 ? 3 : 4;

  auto sols = states_from_config(ctx.config, "x0s", cs.system.n());
  if (static_cast<int>(sols.size()) != need)
    lhs::fail(lhs::errkind::schema_violation,
              system + " superposition needs exactly " + std::to_string(need) +
                  " particular solutions in 'x0s'");
  auto targets = states_from_config(ctx.config, "target_x0", cs.system.n());
  if (targets.size() != 1)
    lhs::fail(lhs::errkind::schema_violation, "'target_x0' must hold exactly one state");

  std::vector<Eigen::VectorXd> all = sols;
  all.push_back(targets[0]);
  auto trajs = lhs::integrate_prolonged(cs.system, all, span.t0, span.t1, span.dt);
  const auto n_samples = trajs[0].size();
  const std::size_t anchor =
      static_cast<std::size_t>(lhs::optional_int(ctx.config, "anchor_index", 0));
  if (anchor >= n_samples)
    lhs::fail(lhs::errkind::schema_violation, "anchor_index out of range");

  lhs::SignificantConstants sc;
  if (is_h6) {
    std::array<Eigen::Vector4d, 3> a{trajs[0].states[anchor], trajs[1].states[anchor],
                                     trajs[2].states[anchor]};
    sc = lhs::solve_constants_h6(a, Eigen::Vector4d(trajs[3].states[anchor]));
  } else {
    std::array<Eigen::Vector4d, 4> a{trajs[0].states[anchor], trajs[1].states[anchor],
                                     trajs[2].states[anchor], trajs[3].states[anchor]};
    sc = lhs::solve_constants_sp4(a, Eigen::Vector4d(trajs[4].states[anchor]));
  }

  std::ostringstream csv;
  csv << "t,x1,x2,x3,x4,r1,r2,r3,r4,err\n";
  double sup_err = 0.0;
  const std::size_t target_idx = static_cast<std::size_t>(need);
  for (std::size_t i = 0; i < n_samples; ++i) {
    Eigen::Vector4d rec;
    if (is_h6) {
      std::array<Eigen::Vector4d, 3> s{trajs[0].states[i], trajs[1].states[i],
                                       trajs[2].states[i]};
      rec = lhs::h6_superpose(s, sc.k);
    } else {
      std::array<Eigen::Vector4d, 4> s{trajs[0].states[i], trajs[1].states[i],
                                       trajs[2].states[i], trajs[3].states[i]};
      rec = lhs::sp4_superpose(s, sc.k);
    }
    const Eigen::Vector4d direct = trajs[target_idx].states[i];
    const double err = (rec - direct).lpNorm<Eigen::Infinity>();
    sup_err = std::max(sup_err, err);
    csv << lhs::fmt_g17(trajs[0].times[i]);
    for (int c = 0; c < 4; ++c) csv << "," << lhs::fmt_g17(direct[c]);
    for (int c = 0; c < 4; ++c) csv << "," << lhs::fmt_g17(rec[c]);
    csv << "," << lhs::fmt_g17(err) << "\n";
  }

  Json report = base_manifest(ctx, "superpose");
  report["system"] = system;
  report["rule"] = is_h6 ? "h6 (3 solutions, 4 constants)" : "sp4 (4 solutions, 4 constants)";
  if (system == "so13")
    report["note"] =
        "so13 runs through the sp4 rule; the coefficient dictionary is the exact subalgebra "
        "embedding";
  report["constants"] = sc.k;
  report["invariant_pairings"] = sc.kappa;
  report["method"] = sc.method;
  report["residual_at_anchor"] = sc.residual;
  report["sup_error"] = sup_err;
  report["outputs"] = Json::array({"reconstruction.csv"});
  if (system == "so13") {
    std::array<lhs::CoefficientFunction, 6> b;
    for (int i = 0; i < 6; ++i) b[size_t(i)] = cs.system.coeffs[size_t(i)];
    auto bt = lhs::embed_so13_in_sp4(b);
    std::vector<std::pair<std::string, lhs::CoefficientFunction>> table;
    for (int i = 0; i < 10; ++i) table.emplace_back("bt" + std::to_string(i + 1), bt[size_t(i)]);
    report["sp4_coefficient_table"] = table_to_json(table, span);
  }
  write_text(ctx, "reconstruction.csv", csv.str());
  write_json(ctx, "superpose_report.json", report);
  std::cout << "sup-norm reconstruction error " << sup_err << " (anchor residual "
            << sc.residual << ")\n";
  return 0;
}

// ------------------------------------------------------------------ rank ----

int cmd_rank(RunContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const int samples = lhs::optional_int(ctx.config, "samples", 64);
  Json report = base_manifest(ctx, "rank");
  Json entries = Json::array();
  for (auto which :
       {lhs::BuiltinRepresentation::sl2_adjoint, lhs::BuiltinRepresentation::h6_gamma,
        lhs::BuiltinRepresentation::so13_gamma, lhs::BuiltinRepresentation::sp4_fundamental}) {
    auto rep = lhs::builtin_representation(which);
    auto fields = lhs::linearize(rep);
    Json e;
    e["algebra"] = rep.algebra.name();
    e["space_dim"] = rep.n;
    e["generic_rank"] = lhs::generic_rank(fields, samples, rng);
    e["invariant_count"] = lhs::invariant_count(rep.algebra, samples, rng);
    auto inv = lhs::discover_invariants(
        fields, rep.n == 4 ? lhs::Chart::canonical(rep.n / 2, 1)
                           : lhs::Chart::abstract({"x1", "x2", "x3"}));
    Json basis = Json::array();
    for (const auto& p : inv) basis.push_back(p.str());
    e["invariants_deg_le_2"] = basis;
    entries.push_back(e);
    std::cout << rep.algebra.name() << ": generic rank " << e["generic_rank"]
              << ", invariant count " << e["invariant_count"] << "\n";
  }
  report["representations"] = entries;
  write_json(ctx, "rank_report.json", report);
  return 0;
}

// ------------------------------------------------------------ reduce sl2 ----

int cmd_reduce_sl2(RunContext& ctx) {
  std::mt19937_64 rng(ctx.seed);
  const lhs::Span span = lhs::span_from_json(ctx.config);
  auto to_rational = [](double v) {
    return lhs::Rational(static_cast<std::int64_t>(std::llround(v * 1e6)), 1000000);
  };
  const double lambda = lhs::require_double(ctx.config, "lambda");
  const double beta = lhs::optional_double(ctx.config, "beta", 1.0);
  lhs::Sl2Reduction red(to_rational(lambda), to_rational(beta));

  auto coeffs = lhs::coefficients_from_json(lhs::require_field(ctx.config, "coeffs"), 3, rng);
  auto z0s = states_from_config(ctx.config, "z0", 2);
  if (z0s.size() != 1)
    lhs::fail(lhs::errkind::schema_violation, "'z0' must hold exactly one planar state");
  const Eigen::Vector2d z0(z0s[0]);

  // Planar run, lifted 3D run, and their comparison along the level set.
  auto zfields = lhs::sl2_reduced_fields(red);
  lhs::Trajectory trajz = lhs::integrate_poly_fields(zfields, coeffs, z0, span.t0, span.t1,
                                                     span.dt);
  auto sys3 = lhs::make_system(lhs::BuiltinRepresentation::sl2_adjoint, coeffs);
  const Eigen::Vector3d x0 = lhs::sl2_diffeo(red, z0);
  lhs::Trajectory traj3 = lhs::integrate(sys3, x0, span.t0, span.t1, span.dt);

  std::ostringstream csv;
  csv << "t,z1,z2,x1,x2,x3,phi\n";
  double phi_drift = 0.0, lift_diff = 0.0;
  for (std::size_t i = 0; i < trajz.size(); ++i) {
    const Eigen::Vector2d z(trajz.states[i]);
    const Eigen::Vector3d x(traj3.states[i]);
    const double phi = lhs::sl2_phi_value(x);
    phi_drift = std::max(phi_drift, std::abs(phi - red.lambda_d()));
    lift_diff = std::max(
        lift_diff, (Eigen::Vector3d(lhs::sl2_diffeo(red, z)) - x).lpNorm<Eigen::Infinity>());
    csv << lhs::fmt_g17(trajz.times[i]) << "," << lhs::fmt_g17(z[0]) << ","
        << lhs::fmt_g17(z[1]) << "," << lhs::fmt_g17(x[0]) << "," << lhs::fmt_g17(x[1]) << ","
        << lhs::fmt_g17(x[2]) << "," << lhs::fmt_g17(phi) << "\n";
  }

  // Pushforward residuals at random chart points.
  const int points = lhs::optional_int(ctx.config, "residual_points", 100);
  std::uniform_real_distribution<double> z1d(-2.0, 2.0), z2d(0.2, 2.0);
  double worst_residual = 0.0;
  for (int i = 0; i < points; ++i) {
    const Eigen::Vector2d z(z1d(rng), (i % 2 == 0 ? 1.0 : -1.0) * z2d(rng));
    for (double r : lhs::sl2_pushforward_residual(red, z))
      worst_residual = std::max(worst_residual, r);
  }

  // Exact closure of the reduced fields.
  const bool closes =
      lhs::verify_field_closure(zfields, lhs::builtin_algebra(lhs::BuiltinAlgebra::sl2)).ok();

  Json report = base_manifest(ctx, "reduce-sl2");
  report["lambda"] = red.lambda_d();
  report["beta"] = red.beta_d();
  report["reduced_fields_close_exactly"] = closes;
  report["max_pushforward_residual"] = worst_residual;
  report["residual_points"] = points;
  report["phi_drift_3d"] = phi_drift;
  report["lift_consistency"] = lift_diff;
  report["outputs"] = Json::array({"reduced_trajectory.csv"});
  const int surface = lhs::optional_int(ctx.config, "surface_samples", 0);
  if (surface > 1) {
    std::ostringstream surf;
    surf << "x1,x2,x3,lambda\n";
    for (const auto& p : lhs::sl2_surface_sample(red, surface))
      surf << lhs::fmt_g17(p[0]) << "," << lhs::fmt_g17(p[1]) << "," << lhs::fmt_g17(p[2])
           << "," << lhs::fmt_g17(red.lambda_d()) << "\n";
    write_text(ctx, "surface.csv", surf.str());
    report["outputs"].push_back("surface.csv");
  }
  write_text(ctx, "reduced_trajectory.csv", csv.str());
  write_json(ctx, "reduction_report.json", report);
  std::cout << "max pushforward residual " << worst_residual << ", phi drift " << phi_drift
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"liehamsys: linear Hamiltonian systems on Lie algebras - verification, "
               "simulation, shared invariants, superposition rules"};
  app.require_subcommand(1);

  RunContext ctx;
  std::string scope = "all";

  auto add_common = [&](CLI::App* cmd, bool config_required) {
    auto* opt = cmd->add_option("--config", ctx.config_path, "JSON config file");
    if (config_required) opt->required();
    cmd->add_option("--seed", ctx.seed, "RNG seed for all random sampling");
    cmd->add_option("--out", ctx.out_dir, "output directory");
  };

  CLI::App* verify = app.add_subcommand("verify", "run exact identity checks");
  verify->add_option("--scope", scope, "algebra|representation|brackets|casimirs|identities|all")
      ->check(CLI::IsMember({"algebra", "representation", "brackets", "casimirs", "identities",
                             "all"}));
  add_common(verify, false);
  CLI::App* simulate = app.add_subcommand("simulate", "integrate one system or preset");
  add_common(simulate, true);
  CLI::App* invariants =
      app.add_subcommand("invariants", "drift of shared constants along lockstep copies");
  add_common(invariants, true);
  CLI::App* superpose =
      app.add_subcommand("superpose", "reconstruct a target solution from particular ones");
  add_common(superpose, true);
  CLI::App* rank = app.add_subcommand("rank", "distribution ranks and invariant counts");
  add_common(rank, false);
  CLI::App* reduce = app.add_subcommand("reduce-sl2", "planar reduction of the 3D sl2 system");
  add_common(reduce, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is a config problem
  }

  try {
    ctx.config = load_config(ctx, !ctx.config_path.empty() || !(verify->parsed() || rank->parsed()));
    if (verify->parsed()) return cmd_verify(ctx, scope);
    if (simulate->parsed()) return cmd_simulate(ctx);
    if (invariants->parsed()) return cmd_invariants(ctx);
    if (superpose->parsed()) return cmd_superpose(ctx);
    if (rank->parsed()) return cmd_rank(ctx);
    if (reduce->parsed()) return cmd_reduce_sl2(ctx);
  } catch (const lhs::Error& e) {
    std::cerr << e.what() << "\n";  // what() already carries the kind prefix
    return e.is_schema() ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
