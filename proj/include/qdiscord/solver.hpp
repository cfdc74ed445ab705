#pragma once

// Minimization of the measurement-conditional entropy and quantum discord.
//
// Strategy: evaluate S(theta, phi) on a coarse grid over theta in [0, pi/2),
// phi in [0, 2 pi), refine every distinct grid basin with a Newton iteration
// on the Bloch sphere, classify each refined point by the signature of its
// Hessian (falling back to a direct neighbourhood comparison when the
// Hessian is singular) and keep the smallest minimum. The eigenvalue form of
// the stationarity conditions is evaluated at every refined point as a
// certificate; it is never used to drive the search.

#include "qdiscord/density.hpp"
#include "qdiscord/entropy_kernels.hpp"
#include "qdiscord/measurement.hpp"
#include "qdiscord/normal_form.hpp"

#include <vector>

namespace qdiscord {

struct SolverConfig {
  int grid_theta = 24;
  int grid_phi = 48;
  double refine_tol = 1e-10;
  int max_refine_iters = 200;
  // Upper bound on the number of grid basins refined (plateaus can make
  // every grid point a local minimum).
  int max_basins = 8;
  // Subsystem that is measured. A is handled by swapping the qubits first.
  Subsystem measured = Subsystem::B;
  kernels::Isa isa = kernels::best_isa();
};

/// Rejects non-positive grid sizes and tolerances.
void validate(const SolverConfig& cfg);

enum class HessianSignature { Minimum, Maximum, Saddle, Degenerate };

const char* to_string(HessianSignature s);

enum class ResidualForm {
  EigenvalueForm,  // res1, res2 of the divided eigenvalue relations
  Gradient,        // dS/dtheta, dS/dphi (alpha or beta singular)
  Undefined,       // degenerate outcome or pure conditional state
};

const char* to_string(ResidualForm f);

struct StationaryPoint {
  MeasurementAngles angles;
  double value = 0.0;
  double residual1 = 0.0;
  double residual2 = 0.0;
  ResidualForm residual_form = ResidualForm::Undefined;
  HessianSignature hessian_signature = HessianSignature::Degenerate;
  // True when the Hessian is positive definite, or it is singular and no
  // neighbouring point is lower.
  bool is_minimum = false;
};

struct MinimizationResult {
  double min = 0.0;
  MeasurementAngles at;
  std::vector<StationaryPoint> diagnostics;
};

MinimizationResult minimize_conditional_entropy(const NormalForm& nf, const SolverConfig& cfg = {});

/// Hessian of the conditional entropy at a point, in an orthonormal tangent
/// chart of the Bloch sphere (signature is chart independent at critical
/// points). Central differences of the analytic gradient.
Eigen::Matrix2d tangent_hessian(const NormalForm& nf, const Vector3& direction, double step = 1e-5);

struct DiscordResult {
  double discord = 0.0;
  double classical_correlations = 0.0;
  double mutual_information = 0.0;
  double min_conditional_entropy = 0.0;
  MeasurementAngles minimizer;
  std::vector<StationaryPoint> stationary_points;
};

/// D = S(B) - S(A,B) + min S, C = S(A) - min S for measurement on B (roles
/// swapped when cfg.measured is A).
DiscordResult quantum_discord(const DensityMatrix& rho, const SolverConfig& cfg = {});

}  // namespace qdiscord
