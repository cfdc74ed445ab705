#include "qdiscord/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace qdiscord {

namespace {

constexpr double kHessianZero = 1e-6;
constexpr double kTieValue = 1e-12;
constexpr double kSameDirection = 1e-6;
constexpr double kMaxStep = 0.25;

struct Chart {
  Vector3 x, u, v;
};

Chart chart_at(const Vector3& x) {
  Vector3 e = Vector3::Zero();
  int axis = 0;
  x.cwiseAbs().minCoeff(&axis);
  e(axis) = 1.0;
  const Vector3 u = (e - e.dot(x) * x).normalized();
  return Chart{x, u, x.cross(u)};
}

Vector3 chart_point(const Chart& c, double s, double t) { return (c.x + s * c.u + t * c.v).normalized(); }

Eigen::Vector2d chart_gradient(const NormalForm& nf, const Chart& c, double s, double t) {
  const Vector3 raw = c.x + s * c.u + t * c.v;
  const double n = raw.norm();
  const Vector3 y = raw / n;
  const Vector3 g = direction_gradient(nf, y);
  const Vector3 js = (c.u - y.dot(c.u) * y) / n;
  const Vector3 jt = (c.v - y.dot(c.v) * y) / n;
  return Eigen::Vector2d(g.dot(js), g.dot(jt));
}

Eigen::Matrix2d chart_hessian(const NormalForm& nf, const Chart& c, double h) {
  Eigen::Matrix2d hess;
  hess.col(0) = (chart_gradient(nf, c, h, 0.0) - chart_gradient(nf, c, -h, 0.0)) / (2.0 * h);
  hess.col(1) = (chart_gradient(nf, c, 0.0, h) - chart_gradient(nf, c, 0.0, -h)) / (2.0 * h);
  return 0.5 * (hess + hess.transpose());
}

bool same_measurement(const Vector3& x, const Vector3& y, double tol) { return (x - y).norm() < tol || (x + y).norm() < tol; }

// Newton iteration on the sphere with a backtracking line search; falls back
// to steepest descent where the Hessian is not positive definite.
Vector3 refine(const NormalForm& nf, const Vector3& start, const SolverConfig& cfg) {
  Vector3 x = start.normalized();
  double f = conditional_entropy(nf, x);
  for (int it = 0; it < cfg.max_refine_iters; ++it) {
    const Chart chart = chart_at(x);
    const Eigen::Vector2d g = chart_gradient(nf, chart, 0.0, 0.0);
    if (!g.allFinite() || g.norm() < 1e-14) break;

    const Eigen::Matrix2d hess = chart_hessian(nf, chart, 1e-5);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(hess);
    Eigen::Vector2d d;
    const bool newton = hess.allFinite() && eig.eigenvalues()(0) > 1e-10;
    if (newton)
      d = -hess.ldlt().solve(g);
    else
      d = -g;
    if (d.norm() > kMaxStep) d *= kMaxStep / d.norm();
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      d = -g;
      if (d.norm() > kMaxStep) d *= kMaxStep / d.norm();
      slope = g.dot(d);
    }

    double step = 1.0;
    bool accepted = false;
    Vector3 y;
    double fy = f;
    while (step > 1e-14) {
      y = chart_point(chart, step * d(0), step * d(1));
      fy = conditional_entropy(nf, y);
      if (fy <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const double move = step * d.norm();
    const double decrease = f - fy;
    x = y;
    f = fy;
    if (move < 1e-9) break;
    if (newton && decrease <= cfg.refine_tol && move < 1e-6) break;
  }
  return x;
}

struct Refined {
  Vector3 x;
  double value;
};

StationaryPoint classify(const NormalForm& nf, const Refined& r) {
  StationaryPoint sp;
  sp.angles = direction_to_angles(r.x);
  sp.value = r.value;

  const Eigen::Matrix2d hess = tangent_hessian(nf, r.x);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(hess);
  const double lo = eig.eigenvalues()(0);
  const double hi = eig.eigenvalues()(1);
  if (!hess.allFinite())
    sp.hessian_signature = HessianSignature::Degenerate;
  else if (lo > kHessianZero)
    sp.hessian_signature = HessianSignature::Minimum;
  else if (hi < -kHessianZero)
    sp.hessian_signature = HessianSignature::Maximum;
  else if (lo < -kHessianZero && hi > kHessianZero)
    sp.hessian_signature = HessianSignature::Saddle;
  else
    sp.hessian_signature = HessianSignature::Degenerate;

  if (sp.hessian_signature == HessianSignature::Minimum) {
    sp.is_minimum = true;
  } else if (sp.hessian_signature == HessianSignature::Degenerate) {
    // delta_i = S(neighbour) - S(point) on two small rings.
    const Chart chart = chart_at(r.x);
    bool lowest = true;
    for (double radius : {1e-4, 1e-2}) {
      for (int k = 0; k < 24 && lowest; ++k) {
        const double a = 2.0 * std::numbers::pi * k / 24.0;
        const double delta = conditional_entropy(nf, chart_point(chart, radius * std::cos(a), radius * std::sin(a))) - r.value;
        if (delta < -kTieValue) lowest = false;
      }
    }
    sp.is_minimum = lowest;
  }

  try {
    const StationarityResiduals res = stationarity_residuals(nf, sp.angles);
    sp.residual1 = res.res1;
    sp.residual2 = res.res2;
    sp.residual_form = ResidualForm::EigenvalueForm;
  } catch (const SingularDeterminant&) {
    const AngleGradient g = conditional_entropy_gradient(nf, sp.angles);
    sp.residual1 = g.d_theta;
    sp.residual2 = g.d_phi;
    sp.residual_form = ResidualForm::Gradient;
  } catch (const DegenerateOutcome&) {
    sp.residual_form = ResidualForm::Undefined;
  }
  return sp;
}

bool angles_less(const MeasurementAngles& a, const MeasurementAngles& b) {
  return std::tie(a.theta, a.phi) < std::tie(b.theta, b.phi);
}

}  // namespace

void validate(const SolverConfig& cfg) {
  if (cfg.grid_theta < 2 || cfg.grid_phi < 2) throw std::invalid_argument("solver grid must be at least 2x2");
  if (!(cfg.refine_tol > 0.0)) throw std::invalid_argument("refine_tol must be positive");
  if (cfg.max_refine_iters < 1) throw std::invalid_argument("max_refine_iters must be positive");
  if (cfg.max_basins < 1) throw std::invalid_argument("max_basins must be positive");
}

const char* to_string(HessianSignature s) {
  switch (s) {
    case HessianSignature::Minimum: return "minimum";
    case HessianSignature::Maximum: return "maximum";
    case HessianSignature::Saddle: return "saddle";
    case HessianSignature::Degenerate: return "degenerate";
  }
  return "unknown";
}

const char* to_string(ResidualForm f) {
  switch (f) {
    case ResidualForm::EigenvalueForm: return "eigenvalue";
    case ResidualForm::Gradient: return "gradient";
    case ResidualForm::Undefined: return "undefined";
  }
  return "unknown";
}

Eigen::Matrix2d tangent_hessian(const NormalForm& nf, const Vector3& direction, double step) {
  return chart_hessian(nf, chart_at(direction.normalized()), step);
}

MinimizationResult minimize_conditional_entropy(const NormalForm& nf, const SolverConfig& cfg) {
  validate(cfg);
  const auto n_theta = static_cast<std::size_t>(cfg.grid_theta);
  const auto n_phi = static_cast<std::size_t>(cfg.grid_phi);
  std::vector<double> theta(n_theta), phi(n_phi), values(n_theta * n_phi);
  for (std::size_t i = 0; i < n_theta; ++i) theta[i] = 0.5 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_theta);
  for (std::size_t j = 0; j < n_phi; ++j) phi[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_phi);
  kernels::conditional_entropy_grid(nf, theta, phi, values, cfg.isa);

  // Grid basins: points no higher than their eight neighbours. theta wraps
  // with period pi/2 (the entropy is invariant there), phi with 2 pi.
  struct Candidate {
    double value;
    MeasurementAngles angles;
    Vector3 x;
  };
  std::vector<Candidate> candidates;
  auto at = [&](std::size_t i, std::size_t j) { return values[i * n_phi + j]; };
  for (std::size_t i = 0; i < n_theta; ++i)
    for (std::size_t j = 0; j < n_phi; ++j) {
      const double v = at(i, j);
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1 && is_min; ++dj) {
          if (di == 0 && dj == 0) continue;
          const std::size_t ii = (i + n_theta + static_cast<std::size_t>(di + 1) - 1) % n_theta;
          const std::size_t jj = (j + n_phi + static_cast<std::size_t>(dj + 1) - 1) % n_phi;
          if (at(ii, jj) < v) is_min = false;
        }
      if (is_min) {
        const MeasurementAngles a{theta[i], phi[j]};
        candidates.push_back({v, a, measurement_direction(a)});
      }
    }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& l, const Candidate& r) {
    if (l.value != r.value) return l.value < r.value;
    return angles_less(l.angles, r.angles);
  });

  std::vector<Candidate> starts;
  for (const auto& c : candidates) {
    if (static_cast<int>(starts.size()) >= cfg.max_basins) break;
    bool duplicate = false;
    for (const auto& s : starts) duplicate = duplicate || same_measurement(s.x, c.x, 1e-9);
    if (!duplicate) starts.push_back(c);
  }

  std::vector<Refined> refined;
  for (const auto& s : starts) {
    const Vector3 x = refine(nf, s.x, cfg);
    const double v = conditional_entropy(nf, x);
    bool merged = false;
    for (auto& r : refined) {
      if (same_measurement(r.x, x, kSameDirection)) {
        if (v < r.value) r = Refined{x, v};
        merged = true;
        break;
      }
    }
    if (!merged) refined.push_back(Refined{x, v});
  }

  MinimizationResult result;
  for (const auto& r : refined) result.diagnostics.push_back(classify(nf, r));

  const StationaryPoint* best = nullptr;
  auto consider = [&](bool require_minimum) {
    for (const auto& sp : result.diagnostics) {
      if (require_minimum && !sp.is_minimum) continue;
      if (best == nullptr || sp.value < best->value - kTieValue ||
          (std::abs(sp.value - best->value) <= kTieValue && angles_less(sp.angles, best->angles)))
        best = &sp;
    }
  };
  consider(true);
  if (best == nullptr) consider(false);
  result.min = best->value;
  result.at = best->angles;
  return result;
}

DiscordResult quantum_discord(const DensityMatrix& rho, const SolverConfig& cfg) {
  const DensityMatrix state = cfg.measured == Subsystem::A ? swap_qubits(rho) : rho;
  const double s_ab = von_neumann_entropy(state);
  const double s_a = von_neumann_entropy(partial_trace(state, Subsystem::A));
  const double s_b = von_neumann_entropy(partial_trace(state, Subsystem::B));

  const NormalForm nf = to_normal_form(state).nf;
  MinimizationResult m = minimize_conditional_entropy(nf, cfg);

  DiscordResult out;
  out.min_conditional_entropy = m.min;
  out.discord = s_b - s_ab + m.min;
  out.classical_correlations = s_a - m.min;
  out.mutual_information = s_a + s_b - s_ab;
  out.minimizer = m.at;
  out.stationary_points = std::move(m.diagnostics);
  return out;
}

}  // namespace qdiscord
