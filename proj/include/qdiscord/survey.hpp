#pragma once

// Monte Carlo surveys of the (D, 2 D_G) plane, boundary extraction and
// conditional-entropy surface dumps.

#include "qdiscord/sampler.hpp"
#include "qdiscord/solver.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qdiscord {

struct SurveyRecord {
  std::uint64_t id = 0;
  std::uint64_t seed = 0;
  std::string sampler_kind;
  int rank = 0;
  double discord = 0.0;
  double classical = 0.0;
  double mutual_info = 0.0;
  double dg_normalized = 0.0;
  double theta_min = 0.0;
  double phi_min = 0.0;
  int n_stationary = 0;
  double hierarchy_margin = 0.0;
};

/// Solver and geometric discord for one state, measured on cfg.measured.
SurveyRecord analyse_state(const DensityMatrix& rho, const SolverConfig& cfg);

struct SurveyOptions {
  SamplerSpec sampler;
  std::uint64_t n = 1;
  unsigned workers = 1;
  SolverConfig solver;
  // Called from worker threads with the number of finished states.
  std::function<void(std::uint64_t done, std::uint64_t total)> progress;
};

/// Records in id order; identical for any worker count.
std::vector<SurveyRecord> run_survey(const SurveyOptions& opts);

extern const char* const kSurveyHeader;

/// "%.9g" formatting.
std::string format_number(double v);

void write_survey_csv(std::ostream& os, const std::vector<SurveyRecord>& records);
/// Parses CSV produced by write_survey_csv. Throws std::runtime_error on a
/// malformed header or row.
std::vector<SurveyRecord> read_survey_csv(std::istream& is);

struct BoundaryBin {
  double discord_bin_center = 0.0;
  // Empty when no record falls in the bin.
  std::optional<double> min_dg;
  std::optional<double> max_dg;
  std::optional<std::uint64_t> state_id_min;
  std::optional<std::uint64_t> state_id_max;
};

struct BoundaryCurve {
  double bin_width = 0.01;
  std::vector<BoundaryBin> bins;
};

/// Bins [0, 1] in discord with the given width (last bin closed) and keeps the
/// extreme 2 D_G of each bin together with the witness ids.
BoundaryCurve extract_boundary(const std::vector<SurveyRecord>& records, double bin_width);

void write_boundary_csv(std::ostream& os, const BoundaryCurve& curve);

struct SurfaceSample {
  double theta = 0.0;
  double phi = 0.0;
  double value = 0.0;
};

/// S(theta, phi) in the normal-form frame of rho (after swapping when A is
/// measured), theta in [0, pi), phi in [0, 2 pi), row-major in theta.
std::vector<SurfaceSample> conditional_entropy_surface(const DensityMatrix& rho, int n_theta, int n_phi,
                                                       Subsystem measured = Subsystem::B);

void write_surface_csv(std::ostream& os, const std::vector<SurfaceSample>& surface);

}  // namespace qdiscord
