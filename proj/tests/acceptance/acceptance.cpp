// Acceptance criteria, one line each:
//   [PASS|FAIL] <n> <name>: <measured figures> (<seconds>)
// Exit status is the number of failed criteria.

#include "../oracles.hpp"
#include "qdiscord/families.hpp"
#include "qdiscord/geometric.hpp"
#include "qdiscord/measurement.hpp"
#include "qdiscord/normal_form.hpp"
#include "qdiscord/sampler.hpp"
#include "qdiscord/solver.hpp"
#include "qdiscord/survey.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>

using namespace qdiscord;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Outcome branch_i() {
  double worst_d = 0.0, worst_g = 0.0;
  for (int i = 0; i <= 6; ++i) {
    const double a = 0.05 * i;
    const FamilyPoint fp = alpha_state(a);
    worst_d = std::max(worst_d, std::abs(quantum_discord(fp.state).discord - a));
    worst_g = std::max(worst_g, std::abs(geometric_discord(fp.state).dg_normalized - a * a));
  }
  return {worst_d <= 1e-6 && worst_g <= 1e-10, fmt("max|D - alpha| = %.2e (<= 1e-6), max|2D_G - alpha^2| = %.2e (<= 1e-10)", worst_d, worst_g)};
}

Outcome branch_iv() {
  double worst_d = 0.0, worst_g = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double p = i / 49.0;
    const FamilyPoint fp = pure_state(p);
    const double h = -(p > 0 ? p * std::log2(p) : 0.0) - (p < 1 ? (1 - p) * std::log2(1 - p) : 0.0);
    worst_d = std::max(worst_d, std::abs(quantum_discord(fp.state).discord - h));
    worst_g = std::max(worst_g, std::abs(geometric_discord(fp.state).dg_normalized - 4 * p * (1 - p)));
  }
  return {worst_d <= 1e-6 && worst_g <= 1e-10, fmt("50 p values: max|D - H2(p)| = %.2e (<= 1e-6), max|2D_G - 4p(1-p)| = %.2e (<= 1e-10)", worst_d, worst_g)};
}

Outcome branch_iii() {
  double worst_d = 0.0, worst_g = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double g = i / 21.0;
    const FamilyPoint fp = branch3_state(g);
    worst_d = std::max(worst_d, std::abs(quantum_discord(fp.state).discord - *fp.analytic_discord));
    worst_g = std::max(worst_g, std::abs(geometric_discord(fp.state).dg_normalized - g));
  }
  return {worst_d <= 1e-6 && worst_g <= 1e-8, fmt("20 g values: max|D - closed form| = %.2e (<= 1e-6), max|2D_G - g| = %.2e (<= 1e-8)", worst_d, worst_g)};
}

Outcome hierarchy() {
  SurveyOptions opts;
  opts.sampler = parse_sampler("ginibre4", 2024);
  opts.n = 100000;
  opts.workers = workers();
  std::uint64_t violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& r : run_survey(opts)) {
    if (!hierarchy_check(r.discord, r.dg_normalized).holds) ++violations;
    worst = std::min(worst, r.hierarchy_margin);
  }
  return {violations == 0, fmt("1e5 Ginibre(4) states: %llu violations, smallest margin 2D_G - D^2 = %.3e", static_cast<unsigned long long>(violations), worst)};
}

Outcome dense_grid() {
  const auto states = sample(parse_sampler("mixed", 505), 100);
  double worst = 0.0;
  for (const auto& rho : states)
    worst = std::max(worst, std::abs(quantum_discord(rho).discord - oracle::dense_grid_discord(rho.matrix(), 1000, 2000)));
  return {worst <= 1e-4, fmt("100 mixed-rank states: max|D - D_grid(1000x2000)| = %.2e (<= 1e-4)", worst)};
}

Outcome symmetry() {
  Rng rng = make_rng(606, 0);
  double worst_period = 0.0, worst_constraint = 0.0;
  for (const auto& rho : sample(parse_sampler("mixed", 606), 1000)) {
    const NormalForm nf = to_normal_form(rho).nf;
    for (int k = 0; k < 100; ++k) {
      const MeasurementAngles a{uniform(rng, 0.0, std::numbers::pi), uniform(rng, 0.0, 2.0 * std::numbers::pi)};
      worst_period = std::max(worst_period, std::abs(conditional_entropy(nf, a) - conditional_entropy(nf, MeasurementAngles{a.theta + std::numbers::pi / 2, a.phi})));
      const Hjk v = angles_to_hjk(a);
      worst_constraint = std::max(worst_constraint, std::abs(v.k * v.k + v.h * v.h + v.j * v.j - v.k));
    }
  }
  return {worst_period <= 1e-10 && worst_constraint <= 1e-12,
          fmt("1e3 states x 1e2 angles: max|S(t,p) - S(t+pi/2,p)| = %.2e (<= 1e-10), max|k^2+h^2+j^2-k| = %.2e (<= 1e-12)", worst_period, worst_constraint)};
}

Outcome stationarity() {
  int certified = 0, gradient_form = 0, undefined = 0;
  double worst = 0.0;
  for (const auto& rho : sample(parse_sampler("mixed", 707), 1000)) {
    const NormalForm nf = to_normal_form(rho).nf;
    const MinimizationResult m = minimize_conditional_entropy(nf);
    for (const auto& sp : m.diagnostics) {
      if (!(sp.angles == m.at)) continue;
      switch (sp.residual_form) {
        case ResidualForm::EigenvalueForm:
          ++certified;
          worst = std::max({worst, std::abs(sp.residual1), std::abs(sp.residual2)});
          break;
        case ResidualForm::Gradient: ++gradient_form; break;
        case ResidualForm::Undefined: ++undefined; break;
      }
      break;
    }
  }
  return {worst <= 1e-6 && certified > 0,
          fmt("1e3 states: %d interior minimizers with nonsingular alpha, beta; max residual = %.2e (<= 1e-6); %d singular, %d degenerate-outcome skipped",
              certified, worst, gradient_form, undefined)};
}

Outcome zero_discord() {
  Rng rng = make_rng(808, 0);
  double worst_d = 0.0, worst_g = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const DensityMatrix rho = random_classical_quantum_state(rng);
    worst_d = std::max(worst_d, std::abs(quantum_discord(rho).discord));
    worst_g = std::max(worst_g, geometric_discord(rho).dg);
  }
  return {worst_d <= 1e-6 && worst_g <= 1e-10, fmt("1e3 classical-quantum states: max D = %.2e (<= 1e-6), max D_G = %.2e (<= 1e-10)", worst_d, worst_g)};
}

Outcome local_unitary() {
  Rng rng = make_rng(909, 0);
  double worst = 0.0;
  for (const auto& rho : sample(parse_sampler("mixed", 909), 100)) {
    const DensityMatrix u = apply_local_unitaries(rho, random_su2(rng), random_su2(rng));
    worst = std::max(worst, std::abs(quantum_discord(rho).discord - quantum_discord(u).discord));
  }
  return {worst <= 1e-6, fmt("100 states: max|D(rho) - D(U rho U^dagger)| = %.2e (<= 1e-6)", worst)};
}

Outcome figure_reproduction() {
  SurveyOptions opts;
  opts.sampler = parse_sampler("mixed", 1010);
  opts.n = 100000;
  opts.workers = workers();
  const auto records = run_survey(opts);
  const LowerBoundary lower;
  double worst_below = 0.0;
  std::uint64_t worst_id = 0;
  for (const auto& r : records) {
    const auto lb = lower.at(std::clamp(r.discord, 0.0, 1.0));
    if (!lb) continue;
    if (*lb - r.dg_normalized > worst_below) {
      worst_below = *lb - r.dg_normalized;
      worst_id = r.id;
    }
  }
  const BoundaryCurve curve = extract_boundary(records, 0.01);
  double prev = -1.0, worst_drop = 0.0;
  const BoundaryBin* last = nullptr;
  int populated = 0;
  for (const auto& b : curve.bins) {
    if (!b.max_dg) continue;
    ++populated;
    if (prev >= 0.0) worst_drop = std::max(worst_drop, prev - *b.max_dg);
    prev = std::max(prev, *b.max_dg);
    last = &b;
  }
  const bool endpoint = last != nullptr && last->discord_bin_center >= 0.99 && *last->max_dg >= 1.0 - 1e-2;
  const bool pass = worst_below <= 1e-2 && worst_drop <= 1e-2 && endpoint;
  return {pass, fmt("1e5 mixed states: deepest point below lower union = %.2e (id %llu, <= 1e-2); %d/100 bins populated; upper curve largest drop = %.2e (<= 1e-2); "
                    "last bin D = %.3f, max 2D_G = %.6f (endpoint (1,1))",
                    worst_below, static_cast<unsigned long long>(worst_id), populated, worst_drop, last ? last->discord_bin_center : 0.0,
                    last ? *last->max_dg : 0.0)};
}

Outcome gradient() {
  Rng rng = make_rng(1111, 0);
  double worst = 0.0;
  const double h = 1e-6;
  for (const auto& rho : sample(parse_sampler("mixed", 1111), 1000)) {
    const NormalForm nf = to_normal_form(rho).nf;
    const MeasurementAngles a{uniform(rng, 0.0, std::numbers::pi), uniform(rng, 0.0, 2.0 * std::numbers::pi)};
    const AngleGradient g = conditional_entropy_gradient(nf, a);
    const double ft = (conditional_entropy(nf, MeasurementAngles{a.theta + h, a.phi}) - conditional_entropy(nf, MeasurementAngles{a.theta - h, a.phi})) / (2 * h);
    const double fp = (conditional_entropy(nf, MeasurementAngles{a.theta, a.phi + h}) - conditional_entropy(nf, MeasurementAngles{a.theta, a.phi - h})) / (2 * h);
    // Relative to the larger magnitude, floored at 1e-3 bits/rad where the
    // difference quotient itself carries ~1e-10 rounding error.
    worst = std::max(worst, std::abs(g.d_theta - ft) / std::max({std::abs(ft), std::abs(g.d_theta), 1e-3}));
    worst = std::max(worst, std::abs(g.d_phi - fp) / std::max({std::abs(fp), std::abs(g.d_phi), 1e-3}));
  }
  return {worst <= 1e-5, fmt("1e3 (state, angle) pairs: max relative error = %.2e (<= 1e-5)", worst)};
}

Outcome determinism() {
  auto csv = [](unsigned w) {
    SurveyOptions opts;
    opts.sampler = parse_sampler("mixed", 1212);
    opts.n = 3000;
    opts.workers = w;
    std::ostringstream os;
    write_survey_csv(os, run_survey(opts));
    return os.str();
  };
  const std::string a = csv(1), b = csv(1), c = csv(4);
  return {a == b && a == c, fmt("3000-state CSV (%zu bytes): repeat run %s, workers 1 vs 4 %s", a.size(), a == b ? "identical" : "DIFFERS",
                               a == c ? "identical" : "DIFFERS")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double time_limit;  // seconds; 0 = none
  };
  const Criterion criteria[] = {
      {1, "branch (i) oracle", branch_i, 5.0},
      {2, "branch (iv) oracle", branch_iv, 10.0},
      {3, "branch (iii) cross-check", branch_iii, 0.0},
      {4, "hierarchy bound", hierarchy, 0.0},
      {5, "solver vs dense grid", dense_grid, 0.0},
      {6, "symmetry suite", symmetry, 0.0},
      {7, "stationarity certificate", stationarity, 0.0},
      {8, "zero-discord set", zero_discord, 0.0},
      {9, "local-unitary invariance", local_unitary, 0.0},
      {10, "boundary reproduction", figure_reproduction, 0.0},
      {11, "gradient check", gradient, 0.0},
      {12, "determinism", determinism, 0.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0 && secs > c.time_limit) {
      o.pass = false;
      o.detail += fmt("; runtime over %.0f s", c.time_limit);
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/12 criteria passed\n", 12 - failed);
  return failed;
}
