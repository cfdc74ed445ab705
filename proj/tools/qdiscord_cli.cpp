// qdiscord: quantum and geometric discord of two-qubit states.
//
//   qdiscord compute  STATE.json           single-state report
//   qdiscord survey   --n N --sampler K    Monte Carlo survey to CSV
//   qdiscord boundary SURVEY.csv           per-bin min/max 2 D_G
//   qdiscord surface  STATE.json           S(theta, phi) grid dump
//
// Exit codes: 0 ok, 2 parse/validation error, 3 hierarchy violation.

#include "qdiscord/config.hpp"
#include "qdiscord/families.hpp"
#include "qdiscord/geometric.hpp"
#include "qdiscord/sampler.hpp"
#include "qdiscord/solver.hpp"
#include "qdiscord/state_io.hpp"
#include "qdiscord/survey.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

using namespace qdiscord;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitHierarchy = 3;

struct SolverFlags {
  std::string config;
  std::optional<int> grid_theta, grid_phi;
  std::optional<double> refine_tol;
  std::optional<std::string> side;

  void add_to(CLI::App* app, bool grid_only = false) {
    app->add_option("--grid-theta", grid_theta, "Coarse grid points in theta")->check(CLI::PositiveNumber);
    app->add_option("--grid-phi", grid_phi, "Coarse grid points in phi")->check(CLI::PositiveNumber);
    app->add_option("--side", side, "Measured subsystem")->check(CLI::IsMember({"A", "B"}));
    if (grid_only) return;
    app->add_option("--refine-tol", refine_tol, "Refinement function tolerance")->check(CLI::PositiveNumber);
    app->add_option("--config", config, "Solver config JSON")->check(CLI::ExistingFile);
  }

  SolverConfig build() const {
    SolverConfig cfg;
    if (!config.empty()) cfg = load_solver_config(config, cfg);
    if (grid_theta) cfg.grid_theta = *grid_theta;
    if (grid_phi) cfg.grid_phi = *grid_phi;
    if (refine_tol) cfg.refine_tol = *refine_tol;
    if (side) cfg.measured = *side == "A" ? Subsystem::A : Subsystem::B;
    validate(cfg);
    return cfg;
  }
};

unsigned default_workers() {
  if (const char* env = std::getenv("QDISCORD_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Writes to `path`, or stdout when empty or "-".
template <typename F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file " + path);
  write(out);
  if (!out) throw std::runtime_error("failed writing " + path);
}

json record_json(const SurveyRecord& r) {
  return {{"id", r.id},
          {"seed", r.seed},
          {"sampler_kind", r.sampler_kind},
          {"rank", r.rank},
          {"discord", r.discord},
          {"classical", r.classical},
          {"mutual_info", r.mutual_info},
          {"dg_normalized", r.dg_normalized},
          {"theta_min", r.theta_min},
          {"phi_min", r.phi_min},
          {"n_stationary", r.n_stationary},
          {"hierarchy_margin", r.hierarchy_margin}};
}

int run_compute(const std::string& state_file, const SolverFlags& flags, bool as_json, const std::string& out_path) {
  const DensityMatrix rho = load_density_file(state_file);
  const SolverConfig cfg = flags.build();
  const DiscordResult d = quantum_discord(rho, cfg);
  const GeometricResult g = geometric_discord(rho, cfg.measured);
  const HierarchyCheck h = hierarchy_check(d.discord, g.dg_normalized);

  with_output(out_path, [&](std::ostream& os) {
    if (as_json) {
      json points = json::array();
      for (const auto& sp : d.stationary_points)
        points.push_back({{"theta", sp.angles.theta},
                          {"phi", sp.angles.phi},
                          {"value", sp.value},
                          {"hessian", to_string(sp.hessian_signature)},
                          {"is_minimum", sp.is_minimum},
                          {"residual_form", to_string(sp.residual_form)},
                          {"residual1", sp.residual1},
                          {"residual2", sp.residual2}});
      json report = {{"discord", d.discord},
                     {"classical", d.classical_correlations},
                     {"mutual_info", d.mutual_information},
                     {"min_conditional_entropy", d.min_conditional_entropy},
                     {"dg", g.dg},
                     {"dg_normalized", g.dg_normalized},
                     {"theta_min", d.minimizer.theta},
                     {"phi_min", d.minimizer.phi},
                     {"hierarchy_margin", h.margin},
                     {"measured", cfg.measured == Subsystem::A ? "A" : "B"},
                     {"stationary_points", points}};
      os << report.dump(2) << '\n';
      return;
    }
    char line[160];
    auto put = [&](const char* name, double v) {
      std::snprintf(line, sizeof line, "%-18s %.9f\n", name, std::abs(v) < 5e-10 ? 0.0 : v);
      os << line;
    };
    put("discord", d.discord);
    put("classical", d.classical_correlations);
    put("mutual_info", d.mutual_information);
    put("dg_normalized", g.dg_normalized);
    put("theta_min", d.minimizer.theta);
    put("phi_min", d.minimizer.phi);
    put("hierarchy_margin", h.margin);
    os << "stationary points (normal-form frame):\n";
    std::snprintf(line, sizeof line, "  %12s %12s %14s  %-10s %-5s %-10s %12s %12s\n", "theta", "phi", "S", "hessian", "min",
                  "residual", "res1", "res2");
    os << line;
    for (const auto& sp : d.stationary_points) {
      std::snprintf(line, sizeof line, "  %12.9f %12.9f %14.10f  %-10s %-5s %-10s %12.3e %12.3e\n", sp.angles.theta, sp.angles.phi,
                    sp.value, to_string(sp.hessian_signature), sp.is_minimum ? "yes" : "no", to_string(sp.residual_form),
                    sp.residual1, sp.residual2);
      os << line;
    }
  });
  if (!h.holds) {
    std::cerr << "error: hierarchy bound violated (margin " << h.margin << ")\n";
    return kExitHierarchy;
  }
  return 0;
}

int run_survey_cmd(std::uint64_t n, const std::string& sampler, std::uint64_t seed, const std::string& out_path, unsigned workers,
                   const SolverFlags& flags, bool as_json) {
  SurveyOptions opts;
  opts.sampler = parse_sampler(sampler, seed);
  opts.n = n;
  opts.workers = workers;
  opts.solver = flags.build();
  std::uint64_t last_report = 0;
  opts.progress = [&last_report](std::uint64_t done, std::uint64_t total) {
    if (done == total || done - last_report >= std::max<std::uint64_t>(total / 20, 1)) {
      last_report = done;
      std::cerr << "\rsurvey: " << done << " / " << total << std::flush;
      if (done == total) std::cerr << '\n';
    }
  };
  const auto records = run_survey(opts);

  with_output(out_path, [&](std::ostream& os) {
    if (as_json) {
      json arr = json::array();
      for (const auto& r : records) arr.push_back(record_json(r));
      os << arr.dump() << '\n';
    } else {
      write_survey_csv(os, records);
    }
  });

  std::uint64_t violations = 0;
  for (const auto& r : records)
    if (!hierarchy_check(r.discord, r.dg_normalized).holds) ++violations;
  if (violations > 0) {
    std::cerr << "error: " << violations << " record(s) violate the hierarchy bound 2 D_G >= D^2\n";
    return kExitHierarchy;
  }
  return 0;
}

int run_boundary_cmd(const std::string& csv, double bin_width, const std::string& out_path, bool as_json) {
  std::ifstream in(csv);
  if (!in) throw std::invalid_argument("cannot open survey file " + csv);
  std::vector<SurveyRecord> records;
  try {
    records = read_survey_csv(in);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument(csv + ": " + e.what());
  }
  const BoundaryCurve curve = extract_boundary(records, bin_width);
  with_output(out_path, [&](std::ostream& os) {
    if (!as_json) {
      write_boundary_csv(os, curve);
      return;
    }
    json bins = json::array();
    for (const auto& b : curve.bins) {
      json j = {{"discord_bin_center", b.discord_bin_center}};
      j["min_dg"] = b.min_dg ? json(*b.min_dg) : json(nullptr);
      j["max_dg"] = b.max_dg ? json(*b.max_dg) : json(nullptr);
      j["state_id_min"] = b.state_id_min ? json(*b.state_id_min) : json(nullptr);
      j["state_id_max"] = b.state_id_max ? json(*b.state_id_max) : json(nullptr);
      bins.push_back(j);
    }
    os << json{{"bin_width", curve.bin_width}, {"bins", bins}}.dump(2) << '\n';
  });
  return 0;
}

int run_surface_cmd(const std::string& state_file, const SolverFlags& flags, const std::string& out_path, bool as_json) {
  const DensityMatrix rho = load_density_file(state_file);
  const int n_theta = flags.grid_theta.value_or(100);
  const int n_phi = flags.grid_phi.value_or(200);
  const auto surface = conditional_entropy_surface(rho, n_theta, n_phi, flags.side.value_or("B") == "A" ? Subsystem::A : Subsystem::B);
  with_output(out_path, [&](std::ostream& os) {
    if (!as_json) {
      write_surface_csv(os, surface);
      return;
    }
    json values = json::array();
    for (int i = 0; i < n_theta; ++i) {
      json row = json::array();
      for (int j = 0; j < n_phi; ++j) row.push_back(surface[static_cast<std::size_t>(i) * n_phi + j].value);
      values.push_back(row);
    }
    os << json{{"n_theta", n_theta}, {"n_phi", n_phi}, {"theta_range", {0.0, "pi"}}, {"phi_range", {0.0, "2pi"}}, {"values", values}}.dump()
       << '\n';
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum discord and geometric discord of two-qubit states"};
  app.require_subcommand(1);

  bool as_json = false;
  std::string out_path;

  auto* compute = app.add_subcommand("compute", "Discord report for one state file");
  std::string compute_state;
  SolverFlags compute_flags;
  compute->add_option("state", compute_state, "State JSON file")->required()->check(CLI::ExistingFile);
  compute_flags.add_to(compute);
  compute->add_flag("--json", as_json, "Machine-readable output");
  compute->add_option("--out", out_path, "Output file (default stdout)");

  auto* survey = app.add_subcommand("survey", "Monte Carlo survey of the (D, 2 D_G) plane");
  std::uint64_t n = 1000;
  std::string sampler = "ginibre4";
  std::uint64_t seed = 1;
  unsigned workers = default_workers();
  SolverFlags survey_flags;
  survey->add_option("--n", n, "Number of states")->check(CLI::PositiveNumber);
  survey->add_option("--sampler", sampler, "pure|ginibre1..4|xstate|mixed")
      ->check(CLI::IsMember({"pure", "ginibre1", "ginibre2", "ginibre3", "ginibre4", "xstate", "mixed"}));
  survey->add_option("--seed", seed, "Sampler seed");
  survey->add_option("--workers", workers, "Worker threads (default $QDISCORD_WORKERS or core count)")->check(CLI::PositiveNumber);
  survey_flags.add_to(survey);
  survey->add_flag("--json", as_json, "Write JSON instead of CSV");
  survey->add_option("--out", out_path, "Output file (default stdout)");

  auto* boundary = app.add_subcommand("boundary", "Per-bin min/max 2 D_G from a survey CSV");
  std::string boundary_csv;
  double bin_width = 0.01;
  boundary->add_option("csv", boundary_csv, "Survey CSV")->required()->check(CLI::ExistingFile);
  boundary->add_option("--bin-width", bin_width, "Discord bin width")->check(CLI::Range(1e-6, 1.0));
  boundary->add_flag("--json", as_json, "Write JSON instead of CSV");
  boundary->add_option("--out", out_path, "Output file (default stdout)");

  auto* surface = app.add_subcommand("surface", "Conditional entropy grid over theta in [0, pi), phi in [0, 2 pi)");
  std::string surface_state;
  SolverFlags surface_flags;
  surface->add_option("state", surface_state, "State JSON file")->required()->check(CLI::ExistingFile);
  surface_flags.add_to(surface, true);
  surface->add_flag("--json", as_json, "Write JSON instead of CSV");
  surface->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*compute) return run_compute(compute_state, compute_flags, as_json, out_path);
    if (*survey) return run_survey_cmd(n, sampler, seed, out_path, workers, survey_flags, as_json);
    if (*boundary) return run_boundary_cmd(boundary_csv, bin_width, out_path, as_json);
    if (*surface) return run_surface_cmd(surface_state, surface_flags, out_path, as_json);
  } catch (const StateError& e) {
    std::cerr << "error: invalid state (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
