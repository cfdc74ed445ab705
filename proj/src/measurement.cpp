#include "qdiscord/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qdiscord {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

double log2_floor(double x) { return std::log2(std::max(x, tol::kLogFloor)); }

double wrap_2pi(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

struct AngleJacobian {
  double p_theta, p_phi;
  double rp_theta, rp_phi;
  double rm_theta, rm_phi;
};

double radial(const Vector3& m, const Vector3& dm, double r) { return r > 0.0 ? m.dot(dm) / r : 0.0; }

AngleJacobian angle_jacobian(const NormalForm& nf, const MeasurementGeometry& g, const MeasurementAngles& angles) {
  const Vector3 xt = direction_dtheta(angles);
  const Vector3 xp = direction_dphi(angles);
  const Vector3 ct = nf.c.cwiseProduct(xt);
  const Vector3 cp = nf.c.cwiseProduct(xp);
  AngleJacobian j{};
  j.p_theta = nf.b.dot(xt);
  j.p_phi = nf.b.dot(xp);
  j.rp_theta = radial(g.m_plus, ct, g.r_plus);
  j.rp_phi = radial(g.m_plus, cp, g.r_plus);
  j.rm_theta = radial(g.m_minus, -ct, g.r_minus);
  j.rm_phi = radial(g.m_minus, -cp, g.r_minus);
  return j;
}

}  // namespace

Hjk angles_to_hjk(const MeasurementAngles& angles) {
  const double ct = std::cos(angles.theta);
  const double st = std::sin(angles.theta);
  return Hjk{ct * st * std::sin(angles.phi), ct * st * std::cos(angles.phi), ct * ct};
}

Vector3 measurement_direction(const MeasurementAngles& angles) {
  const double s2 = std::sin(2.0 * angles.theta);
  return Vector3(s2 * std::cos(angles.phi), s2 * std::sin(angles.phi), std::cos(2.0 * angles.theta));
}

Vector3 direction_dtheta(const MeasurementAngles& angles) {
  const double c2 = 2.0 * std::cos(2.0 * angles.theta);
  return Vector3(c2 * std::cos(angles.phi), c2 * std::sin(angles.phi), -2.0 * std::sin(2.0 * angles.theta));
}

Vector3 direction_dphi(const MeasurementAngles& angles) {
  const double s2 = std::sin(2.0 * angles.theta);
  return Vector3(-s2 * std::sin(angles.phi), s2 * std::cos(angles.phi), 0.0);
}

MeasurementAngles direction_to_angles(const Vector3& x) {
  const Vector3 u = x.normalized();
  auto angles_of = [](const Vector3& v) {
    const double theta = 0.5 * std::acos(std::clamp(v.z(), -1.0, 1.0));
    const double rho = std::hypot(v.x(), v.y());
    const double phi = rho < 1e-14 ? 0.0 : wrap_2pi(std::atan2(v.y(), v.x()));
    return MeasurementAngles{theta, phi};
  };
  const MeasurementAngles first = angles_of(u);
  const MeasurementAngles second = angles_of(-u);
  if (second.theta < first.theta || (second.theta == first.theta && second.phi < first.phi)) return second;
  return first;
}

MeasurementAngles wrap_angles(double theta, double phi) {
  double t = std::fmod(theta, std::numbers::pi);
  if (t < 0.0) t += std::numbers::pi;
  if (t >= kHalfPi) t -= kHalfPi;
  if (t >= kHalfPi || t < 0.0) t = 0.0;
  return MeasurementAngles{t, wrap_2pi(phi)};
}

MeasurementGeometry measurement_geometry(const NormalForm& nf, const Vector3& direction) {
  MeasurementGeometry g;
  g.X = direction;
  const Vector3 cx = nf.c.cwiseProduct(direction);
  g.m_plus = nf.a + cx;
  g.m_minus = nf.a - cx;
  g.p = nf.b.dot(direction);
  g.r_plus = g.m_plus.norm();
  g.r_minus = g.m_minus.norm();
  return g;
}

MeasurementGeometry measurement_geometry(const NormalForm& nf, const MeasurementAngles& angles) {
  return measurement_geometry(nf, measurement_direction(angles));
}

EnsembleAfterMeasurement ensemble_after_measurement(const MeasurementGeometry& g) {
  EnsembleAfterMeasurement e;
  e.p0 = 0.5 * (1.0 - g.p);
  e.p1 = 0.5 * (1.0 + g.p);
  const double q0 = 1.0 - g.p;
  const double q1 = 1.0 + g.p;
  if (q0 < kDegenerateProbability) {
    e.outcome0_degenerate = true;
  } else {
    const double u = std::min(g.r_minus / q0, 1.0);
    e.lambda0_plus = 0.5 * (1.0 + u);
    e.lambda0_minus = 0.5 * (1.0 - u);
  }
  if (q1 < kDegenerateProbability) {
    e.outcome1_degenerate = true;
  } else {
    const double u = std::min(g.r_plus / q1, 1.0);
    e.lambda1_plus = 0.5 * (1.0 + u);
    e.lambda1_minus = 0.5 * (1.0 - u);
  }
  return e;
}

EnsembleAfterMeasurement ensemble_after_measurement(const NormalForm& nf, const MeasurementAngles& angles) {
  return ensemble_after_measurement(measurement_geometry(nf, angles));
}

double ensemble_entropy(const EnsembleAfterMeasurement& e) {
  double s = 0.0;
  if (!e.outcome0_degenerate) s += e.p0 * binary_entropy(e.lambda0_plus);
  if (!e.outcome1_degenerate) s += e.p1 * binary_entropy(e.lambda1_plus);
  return s;
}

double conditional_entropy(const MeasurementGeometry& g) {
  const double p = g.p;
  const double lo = std::max(0.0, 1.0 - p);
  const double hi = std::max(0.0, 1.0 + p);
  const double sum = xlog2x(std::max(0.0, lo - g.r_minus)) + xlog2x(lo + g.r_minus) + xlog2x(hi + g.r_plus) +
                     xlog2x(std::max(0.0, hi - g.r_plus));
  return -0.25 * (sum - 4.0 - 2.0 * xlog2x(lo) - 2.0 * xlog2x(hi));
}

double conditional_entropy(const NormalForm& nf, const Vector3& direction) {
  return conditional_entropy(measurement_geometry(nf, direction));
}

double conditional_entropy(const NormalForm& nf, const MeasurementAngles& angles) {
  return conditional_entropy(measurement_geometry(nf, angles));
}

EntropyPartials entropy_partials(const MeasurementGeometry& g) {
  const double lo = 1.0 - g.p;
  const double hi = 1.0 + g.p;
  EntropyPartials d;
  d.d_p = -0.25 * (-log2_floor(lo - g.r_minus) - log2_floor(lo + g.r_minus) + log2_floor(hi + g.r_plus) +
                   log2_floor(hi - g.r_plus) + 2.0 * log2_floor(lo) - 2.0 * log2_floor(hi));
  d.d_r_plus = -0.25 * (log2_floor(hi + g.r_plus) - log2_floor(hi - g.r_plus));
  d.d_r_minus = -0.25 * (log2_floor(lo + g.r_minus) - log2_floor(lo - g.r_minus));
  return d;
}

Vector3 direction_gradient(const NormalForm& nf, const Vector3& direction) {
  const MeasurementGeometry g = measurement_geometry(nf, direction);
  const EntropyPartials d = entropy_partials(g);
  Vector3 grad = d.d_p * nf.b;
  if (g.r_plus > 0.0) grad += (d.d_r_plus / g.r_plus) * nf.c.cwiseProduct(g.m_plus);
  if (g.r_minus > 0.0) grad -= (d.d_r_minus / g.r_minus) * nf.c.cwiseProduct(g.m_minus);
  return grad;
}

AngleGradient conditional_entropy_gradient(const NormalForm& nf, const MeasurementAngles& angles) {
  const Vector3 grad = direction_gradient(nf, measurement_direction(angles));
  return AngleGradient{grad.dot(direction_dtheta(angles)), grad.dot(direction_dphi(angles))};
}

StationarityDeterminants stationarity_determinants(const NormalForm& nf, const MeasurementAngles& angles) {
  const MeasurementGeometry g = measurement_geometry(nf, angles);
  const AngleJacobian j = angle_jacobian(nf, g, angles);
  StationarityDeterminants d;
  d.alpha = j.p_theta * j.rp_phi - j.p_phi * j.rp_theta;
  d.beta = j.p_theta * j.rm_phi - j.p_phi * j.rm_theta;
  d.gamma = j.rp_theta * j.rm_phi - j.rp_phi * j.rm_theta;
  return d;
}

StationarityResiduals stationarity_residuals(const NormalForm& nf, const MeasurementAngles& angles) {
  const MeasurementGeometry g = measurement_geometry(nf, angles);
  const EnsembleAfterMeasurement e = ensemble_after_measurement(g);
  if (e.outcome0_degenerate || e.outcome1_degenerate)
    throw DegenerateOutcome("measurement outcome has vanishing probability");
  if (e.lambda0_minus <= tol::kLogFloor || e.lambda1_minus <= tol::kLogFloor)
    throw DegenerateOutcome("conditional state is pure; eigenvalue ratios undefined");

  StationarityResiduals out;
  out.det = stationarity_determinants(nf, angles);
  const double alpha = out.det.alpha;
  const double beta = out.det.beta;
  const double gamma = out.det.gamma;
  if (std::abs(alpha) < kSingularDeterminant || std::abs(beta) < kSingularDeterminant)
    throw SingularDeterminant("alpha or beta vanishes; use the undivided stationarity system");

  const double log_ratio1 = std::log(e.lambda1_plus / e.lambda1_minus);
  const double log_ratio0 = std::log(e.lambda0_plus / e.lambda0_minus);
  const double q = std::exp((alpha / beta) * log_ratio1);
  out.res1 = e.lambda0_minus * (1.0 + q) - q;
  out.res2 = e.lambda1_minus - std::exp(std::log(e.lambda0_minus) + ((alpha + beta + gamma) / (2.0 * alpha)) * log_ratio0);
  return out;
}

}  // namespace qdiscord
