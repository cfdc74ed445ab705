#pragma once

// Projective measurement on qubit B of a state in Bloch normal form.
//
// The measurement basis is {|psi>, |psi_perp>} with
//   |psi> = cos(theta)|0> + e^{i phi} sin(theta)|1>,
// whose Bloch direction is X = (2j, 2h, 2k - 1) with
//   h = cos(theta) sin(theta) sin(phi), j = cos(theta) sin(theta) cos(phi),
//   k = cos^2(theta).
// With p = b.X and m_pm = a +- c o X (o = componentwise product),
// r_pm = |m_pm|, the two outcomes have probabilities (1 -+ p)/2 and the
// conditional states of A have eigenvalues
//   lambda_0^pm = (1 +- r_- / (1 - p)) / 2,  lambda_1^pm = (1 +- r_+ / (1 + p)) / 2.

#include "qdiscord/normal_form.hpp"

#include <stdexcept>

namespace qdiscord {

/// theta in [0, pi/2), phi in [0, 2 pi).
struct MeasurementAngles {
  double theta = 0.0;
  double phi = 0.0;

  friend bool operator==(const MeasurementAngles&, const MeasurementAngles&) = default;
};

struct Hjk {
  double h = 0.0;
  double j = 0.0;
  double k = 1.0;
};

Hjk angles_to_hjk(const MeasurementAngles& angles);

/// Unit Bloch direction X of the measurement.
Vector3 measurement_direction(const MeasurementAngles& angles);

/// dX/dtheta and dX/dphi.
Vector3 direction_dtheta(const MeasurementAngles& angles);
Vector3 direction_dphi(const MeasurementAngles& angles);

/// Angles for a unit direction, folded into the canonical domain. X and -X
/// describe the same measurement; the representative with the
/// lexicographically smaller (theta, phi) is returned.
MeasurementAngles direction_to_angles(const Vector3& x);

/// Wraps arbitrary angles into theta in [0, pi/2), phi in [0, 2 pi) using
/// S(theta, phi) = S(theta + pi/2, phi) and (-theta, phi) ~ (theta, phi + pi).
MeasurementAngles wrap_angles(double theta, double phi);

struct MeasurementGeometry {
  Vector3 X = Vector3::UnitZ();
  Vector3 m_plus = Vector3::Zero();
  Vector3 m_minus = Vector3::Zero();
  double p = 0.0;
  double r_plus = 0.0;
  double r_minus = 0.0;
};

MeasurementGeometry measurement_geometry(const NormalForm& nf, const Vector3& direction);
MeasurementGeometry measurement_geometry(const NormalForm& nf, const MeasurementAngles& angles);

struct EnsembleAfterMeasurement {
  double p0 = 0.5;  // (1 - p) / 2
  double p1 = 0.5;  // (1 + p) / 2
  double lambda0_plus = 0.5;
  double lambda0_minus = 0.5;
  double lambda1_plus = 0.5;
  double lambda1_minus = 0.5;
  // Set when the corresponding outcome has probability below 1e-12; its
  // eigenvalues are then reported as 1/2 and it contributes nothing.
  bool outcome0_degenerate = false;
  bool outcome1_degenerate = false;
};

EnsembleAfterMeasurement ensemble_after_measurement(const NormalForm& nf, const MeasurementAngles& angles);
EnsembleAfterMeasurement ensemble_after_measurement(const MeasurementGeometry& g);

/// p0 S(rho_0) + p1 S(rho_1) assembled from the ensemble eigenvalues.
double ensemble_entropy(const EnsembleAfterMeasurement& e);

/// Conditional entropy via the compact p / r_pm expression.
double conditional_entropy(const NormalForm& nf, const MeasurementAngles& angles);
double conditional_entropy(const NormalForm& nf, const Vector3& direction);
double conditional_entropy(const MeasurementGeometry& g);

/// Partial derivatives of the conditional entropy with respect to
/// (p, r_+, r_-), the quantities the compact expression depends on.
struct EntropyPartials {
  double d_p = 0.0;
  double d_r_plus = 0.0;
  double d_r_minus = 0.0;
};

EntropyPartials entropy_partials(const MeasurementGeometry& g);

/// Euclidean gradient of the conditional entropy with respect to the
/// (unconstrained) direction vector X.
Vector3 direction_gradient(const NormalForm& nf, const Vector3& direction);

struct AngleGradient {
  double d_theta = 0.0;
  double d_phi = 0.0;
};

AngleGradient conditional_entropy_gradient(const NormalForm& nf, const MeasurementAngles& angles);

/// Thrown when alpha or beta is below 1e-12 in magnitude; the divided form of
/// the stationarity system is then undefined.
class SingularDeterminant : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when an outcome has vanishing probability or a conditional state is
/// pure, so the eigenvalue ratios are undefined.
class DegenerateOutcome : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Jacobian determinants of (p, r_+, r_-) with respect to (theta, phi):
/// alpha = det d(p, r_+), beta = det d(p, r_-), gamma = det d(r_+, r_-).
struct StationarityDeterminants {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

StationarityDeterminants stationarity_determinants(const NormalForm& nf, const MeasurementAngles& angles);

struct StationarityResiduals {
  double res1 = 0.0;
  double res2 = 0.0;
  StationarityDeterminants det;
};

/// Residuals of the eigenvalue form of the stationarity conditions:
///   res1 = l0m (1 + q) - q,             q = (l1p / l1m)^(alpha / beta)
///   res2 = l1m - l0m (l0p / l0m)^((alpha + beta + gamma) / (2 alpha)).
/// Both vanish at every interior stationary point.
StationarityResiduals stationarity_residuals(const NormalForm& nf, const MeasurementAngles& angles);

inline constexpr double kSingularDeterminant = 1e-12;
inline constexpr double kDegenerateProbability = 1e-12;

}  // namespace qdiscord
