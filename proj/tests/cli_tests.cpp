/** End-to-end CLI checks: exit codes, report files, determinism.  Expects the
 *  CLI binary path as argv[1].
 */
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#if defined(__unix__) || defined(__APPLE__)
#include <sys/wait.h>
#endif

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  std::printf("%s  %s\n", ok ? "ok  " : "FAIL", what.c_str());
  if (!ok) ++failures;
}

int run(const std::string& command) {
  const int ret = std::system((command + " >/dev/null 2>&1").c_str());
  if (ret == -1) return -1;
#ifdef WEXITSTATUS
  return WEXITSTATUS(ret);
#else
  return ret / 256;
#endif
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <path-to-cli>\n");
    return 2;
  }
  const std::string exe = argv[1];
  const fs::path base = fs::temp_directory_path() / "liehamsys_cli_tests";
  fs::remove_all(base);
  fs::create_directories(base);
  auto dir = [&](const char* name) {
    fs::path d = base / name;
    fs::create_directories(d);
    return d;
  };

  // ---- verify ----
  {
    fs::path d = dir("verify");
    check(run(exe + " verify --scope all --out " + d.string()) == 0, "verify exits 0");
    json rep = json::parse(slurp(d / "verify_report.json"));
    check(rep["passed"] == true, "verify report passes");
    check(rep["schema"] == 1, "verify report carries schema version");
  }

  // ---- simulate + determinism ----
  {
    fs::path d1 = dir("sim1"), d2 = dir("sim2");
    fs::path cfg = base / "sim.json";
    write(cfg, R"({
      "preset": {"name": "hyperbolic", "params": {"b": 1.0}},
      "span": {"t0": 0.0, "t1": 1.0, "dt": 0.001},
      "x0": [[1.0, 0.0, 0.0, 0.0]],
      "monodromy": true
    })");
    const std::string cmd = exe + " simulate --config " + cfg.string() + " --seed 9 --out ";
    check(run(cmd + d1.string()) == 0, "simulate exits 0");
    check(run(cmd + d2.string()) == 0, "simulate rerun exits 0");
    check(slurp(d1 / "trajectory.csv") == slurp(d2 / "trajectory.csv"),
          "identical config and seed give byte-identical trajectories");
    check(slurp(d1 / "manifest.json") == slurp(d2 / "manifest.json"),
          "identical config and seed give byte-identical manifests");

    // Endpoint of the unit-coefficient flow is (cosh 1, sinh 1, 0, 0).
    std::istringstream csv(slurp(d1 / "trajectory.csv"));
    std::string line, last, header;
    std::getline(csv, header);
    while (std::getline(csv, line))
      if (!line.empty()) last = line;
    check(header == "t,x1,x2,x3,x4", "trajectory header names coordinates");
    double t, x1, x2, x3, x4;
    char c;
    std::istringstream row(last);
    row >> t >> c >> x1 >> c >> x2 >> c >> x3 >> c >> x4;
    check(std::abs(x1 - std::cosh(1.0)) < 1e-8 && std::abs(x2 - std::sinh(1.0)) < 1e-8 &&
              std::abs(x3) < 1e-12 && std::abs(x4) < 1e-12,
          "simulated endpoint matches cosh/sinh");
    json man = json::parse(slurp(d1 / "manifest.json"));
    check(man["seed"] == 9, "manifest records the seed");
    check(man.contains("config_hash"), "manifest records the config hash");
    check(man["symplectic_defect"].get<double>() < 1e-10, "monodromy defect reported tiny");
    check(!slurp(d1 / "manifest.json").empty() &&
              slurp(d1 / "manifest.json").find("timestamp") == std::string::npos,
          "manifest carries no timestamps");
  }

  // ---- schema and IO failures ----
  {
    fs::path cfg = base / "bad.json";
    write(cfg, R"({"system": "h6", "span": {"t0": 0, "t1": 1, "dt": 0.01}})");
    check(run(exe + " simulate --config " + cfg.string() + " --out " +
              dir("bad").string()) == 2,
          "missing required field exits 2");
    check(run(exe + " simulate --config " + (base / "absent.json").string() + " --out " +
              dir("absent").string()) == 3,
          "unreadable config exits 3");
    fs::path garbled = base / "garbled.json";
    write(garbled, "{not json");
    check(run(exe + " simulate --config " + garbled.string() + " --out " +
              dir("garbled").string()) == 2,
          "malformed JSON exits 2");
    check(run(exe + " bogus") == 2, "unknown subcommand exits 2");
    check(run(exe + " verify --scope nope") == 2, "invalid scope value exits 2");
    check(run(exe + " --help") == 0, "--help exits 0");
  }

  // ---- superpose ----
  {
    fs::path d = dir("sup");
    fs::path cfg = base / "sup.json";
    write(cfg, R"({
      "system": "sp4",
      "coeffs": "random_sinusoid",
      "span": {"t0": 0.0, "t1": 2.0, "dt": 0.001},
      "x0s": [[0.9, 0.1, -0.2, 0.5], [0.2, 1.0, 0.4, -0.6],
              [-0.5, 0.3, 1.1, 0.2], [0.4, -0.7, 0.3, 0.9]],
      "target_x0": [[0.25, -0.35, 0.65, 0.15]]
    })");
    check(run(exe + " superpose --config " + cfg.string() + " --seed 11 --out " + d.string()) ==
              0,
          "superpose exits 0");
    json rep = json::parse(slurp(d / "superpose_report.json"));
    check(rep["sup_error"].get<double>() < 1e-6, "superpose reconstruction below 1e-6");
    check(fs::exists(d / "reconstruction.csv"), "superpose writes the reconstruction table");
  }

  // ---- invariants ----
  {
    fs::path d = dir("inv");
    fs::path cfg = base / "inv.json";
    write(cfg, R"({
      "system": "h6",
      "coeffs": "random_sinusoid",
      "span": {"t0": 0.0, "t1": 2.0, "dt": 0.001},
      "x0s": [[0.3, 0.9, -0.4, 0.2], [1.1, 0.7, 0.5, -0.3], [-0.6, 1.2, 0.1, 0.8]]
    })");
    check(run(exe + " invariants --config " + cfg.string() + " --seed 7 --out " + d.string()) ==
              0,
          "invariants exits 0");
    json rep = json::parse(slurp(d / "drift_report.json"));
    check(rep["worst_rel_drift"].get<double>() < 1e-8, "constants drift below 1e-8");
    check(fs::exists(d / "invariants.csv"), "invariants writes the value table");
  }

  // ---- rank ----
  {
    fs::path d = dir("rank");
    check(run(exe + " rank --out " + d.string()) == 0, "rank exits 0");
    json rep = json::parse(slurp(d / "rank_report.json"));
    bool ok = rep["representations"].size() == 4;
    int idx = 0;
    const int expect_rank[4] = {2, 3, 4, 4};
    const int expect_count[4] = {1, 2, 2, 2};
    for (const auto& e : rep["representations"]) {
      ok = ok && e["generic_rank"] == expect_rank[idx] &&
           e["invariant_count"] == expect_count[idx];
      ++idx;
    }
    check(ok, "rank report lists the expected ranks and counts");
  }

  // ---- reduce-sl2 ----
  {
    fs::path d = dir("red");
    fs::path cfg = base / "red.json";
    write(cfg, R"({
      "lambda": 1.5,
      "beta": 1.0,
      "coeffs": "random_sinusoid",
      "span": {"t0": 0.0, "t1": 3.0, "dt": 0.001},
      "z0": [[0.4, 1.2]],
      "surface_samples": 5
    })");
    check(run(exe + " reduce-sl2 --config " + cfg.string() + " --seed 3 --out " + d.string()) ==
              0,
          "reduce-sl2 exits 0");
    json rep = json::parse(slurp(d / "reduction_report.json"));
    check(rep["reduced_fields_close_exactly"] == true, "reduced fields close exactly");
    check(rep["max_pushforward_residual"].get<double>() < 1e-9,
          "pushforward residual below 1e-9");
    check(rep["phi_drift_3d"].get<double>() < 1e-8, "level-function drift below 1e-8");
    check(fs::exists(d / "surface.csv"), "surface sample requested and written");
  }

  std::printf("cli_tests: %d failure(s)\n", failures);
  fs::remove_all(base);
  return failures == 0 ? 0 : 1;
}
