#include "qdiscord/families.hpp"
#include "qdiscord/geometric.hpp"
#include "qdiscord/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qdiscord {

namespace {

constexpr double kRangeSlack = 1e-12;
constexpr double kAtanhLimit = 1.0 - 1e-15;

double clamped_atanh(double x) { return std::atanh(std::clamp(x, -kAtanhLimit, kAtanhLimit)); }

void require_range(double value, double lo, double hi, const char* name) {
  if (!(value >= lo - kRangeSlack && value <= hi + kRangeSlack)) {
    std::ostringstream os;
    os << name << " = " << value << " outside [" << lo << ", " << hi << "]";
    throw FamilyError(FamilyErrorKind::ParameterOutOfRange, os.str());
  }
}

}  // namespace

const char* to_string(Family f) {
  switch (f) {
    case Family::BranchI: return "branch-i";
    case Family::BranchII: return "branch-ii";
    case Family::BranchIII: return "branch-iii";
    case Family::Pure: return "pure";
  }
  return "unknown";
}

std::optional<double> bracketed_root(const std::function<double(double)>& f, double lo, double hi, double tol, int segments) {
  if (hi < lo) return std::nullopt;
  if (hi - lo <= tol) {
    if (f(lo) == 0.0) return lo;
    return std::nullopt;
  }
  double x0 = lo;
  double f0 = f(x0);
  for (int k = 1; k <= segments; ++k) {
    const double x1 = k == segments ? hi : lo + (hi - lo) * k / segments;
    const double f1 = f(x1);
    if (f1 == 0.0 && k < segments) return x1;
    if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
      double a = x0, b = x1, fa = f0;
      while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (fa < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    x0 = x1;
    f0 = f1;
  }
  if (f(lo) == 0.0) return lo;
  if (f(hi) == 0.0) return hi;
  return std::nullopt;
}

FamilyPoint alpha_state(double alpha) {
  require_range(alpha, 0.0, 1.0 / 3.0, "alpha");
  alpha = std::clamp(alpha, 0.0, 1.0 / 3.0);
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = alpha / 2.0;
  m(1, 1) = m(2, 2) = (1.0 - alpha) / 2.0;
  return FamilyPoint{Family::BranchI, alpha, validate_density(m), alpha, alpha * alpha};
}

double branch2_relation(double r, double a) {
  const double n = std::sqrt(a * a + r * r);
  const double first = n > 0.0 ? 2.0 * r * clamped_atanh(n) / n : 2.0 * r;
  return first + std::log(1.0 - a - r) - std::log(1.0 - a + r) + 2.0 * clamped_atanh(r);
}

std::pair<double, double> branch2_bracket(double a) {
  return {std::sqrt(std::max(0.0, 4.0 * a - 3.0 * a * a - 1.0)), (1.0 - a) / 3.0};
}

Matrix4c branch2_matrix(double a, double r) {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = m(3, 3) = (1.0 - a) / 2.0;
  m(0, 3) = m(3, 0) = r / 2.0;
  m(1, 1) = a;
  return m;
}

FamilyPoint branch2_state(double a) {
  require_range(a, 1.0 / 3.0, 5.0 / 14.0, "a");
  a = std::clamp(a, 1.0 / 3.0, 5.0 / 14.0);
  const auto [lo, hi] = branch2_bracket(a);
  const auto relation = [a](double r) { return branch2_relation(r, a); };
  const auto root = bracketed_root(relation, lo, hi);
  if (!root) {
    std::ostringstream os;
    os << "branch (ii) relation has no sign change for a = " << a << " in r in [" << lo << ", " << hi << "] (f = " << relation(lo)
       << " .. " << relation(hi) << ")";
    throw FamilyError(FamilyErrorKind::NoRoot, os.str());
  }
  FamilyPoint fp{Family::BranchII, a, validate_density(branch2_matrix(a, *root)), std::nullopt, a * a};
  fp.solved = *root;
  fp.residual = relation(*root);
  return fp;
}

double branch3_relation(double c, double g) {
  // Both square roots are read as sqrt(8 (c - 1) c - 2 g + 3); see README.
  const double q = std::sqrt(std::max(0.0, 8.0 * (c - 1.0) * c - 2.0 * g + 3.0));
  return 8.0 * (1.0 - 2.0 * c) * c * c * clamped_atanh(q) - 4.0 * c * c * q * clamped_atanh(1.0 - 2.0 * c) +
         2.0 * q * (2.0 * c * c + g - 1.0) * clamped_atanh((3.0 * c - 2.0 * c * c + g - 1.0) / c);
}

std::pair<double, double> branch3_bracket(double g) {
  const double lo = 0.5 * (1.0 - std::sqrt(g));
  const double hi = 0.5 - (g > 0.5 ? 0.5 * std::sqrt(2.0 * g - 1.0) : 0.0);
  return {lo, hi};
}

Matrix4c branch3_matrix(double a, double c) {
  const double s = std::sqrt(std::max(0.0, a - a * a - a * c));
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = a;
  m(0, 3) = m(3, 0) = s;
  m(1, 1) = c;
  m(3, 3) = 1.0 - a - c;
  return m;
}

double branch3_discord(double a, double c) {
  const double u = 4.0 * c * (a + c - 1.0);
  const double w = std::sqrt(std::max(0.0, u + 1.0));
  const double bracket = -std::log(-u) - 2.0 * w * clamped_atanh(w) - 2.0 * std::log(1.0 - a) + 4.0 * a * clamped_atanh(1.0 - 2.0 * a) +
                         2.0 * std::log(2.0 - 2.0 * c) - 4.0 * c * clamped_atanh(1.0 - 2.0 * c);
  return bracket / std::log(4.0);
}

FamilyPoint branch3_state(double g) {
  require_range(g, 0.0, 1.0, "g");
  g = std::clamp(g, 0.0, 1.0);
  const auto [lo, hi] = branch3_bracket(g);

  // The bracket collapses at both ends; the family limits are the product
  // state diag(1/2, 1/2, 0, 0) (g = 0) and the Bell state (g = 1).
  if (hi - lo <= 1e-12) {
    if (g >= 1.0 - 1e-12) {
      Eigen::Vector4cd bell(1.0, 0.0, 0.0, 1.0);
      FamilyPoint fp{Family::BranchIII, g, pure_density(bell), 1.0, 1.0};
      return fp;
    }
    FamilyPoint fp{Family::BranchIII, g, validate_density(branch3_matrix(0.5, 0.5)), 0.0, 0.0};
    fp.solved = 0.5;
    return fp;
  }

  const auto relation = [g](double c) { return branch3_relation(c, g); };
  const auto root = bracketed_root(relation, lo, hi);
  if (!root) {
    std::ostringstream os;
    os << "branch (iii) relation has no sign change for g = " << g << " in c in [" << lo << ", " << hi << "]";
    throw FamilyError(FamilyErrorKind::NoRoot, os.str());
  }
  const double c = *root;
  const double a = (1.0 - 2.0 * c + 2.0 * c * c - g) / (2.0 * c);
  FamilyPoint fp{Family::BranchIII, g, validate_density(branch3_matrix(a, c)), branch3_discord(a, c), g};
  fp.solved = c;
  fp.residual = relation(c);
  return fp;
}

FamilyPoint pure_state(double p) {
  require_range(p, 0.0, 1.0, "p");
  p = std::clamp(p, 0.0, 1.0);
  const Eigen::Vector4cd psi(std::sqrt(p), 0.0, 0.0, std::sqrt(1.0 - p));
  return FamilyPoint{Family::Pure, p, pure_density(psi), binary_entropy(p), 4.0 * p * (1.0 - p)};
}

HierarchyCheck hierarchy_check(double discord, double dg_normalized) {
  HierarchyCheck h;
  h.margin = dg_normalized - discord * discord;
  h.holds = h.margin >= -1e-9;
  return h;
}

LowerBoundary::LowerBoundary(int samples_per_branch) {
  const int n = std::max(samples_per_branch, 8);

  std::vector<std::pair<double, double>> branch_i;
  for (int k = 0; k <= n; ++k) {
    const double alpha = (1.0 / 3.0) * k / n;
    branch_i.emplace_back(alpha, alpha * alpha);
  }
  curves_.push_back(std::move(branch_i));

  std::vector<std::pair<double, double>> branch_ii;
  for (int k = 0; k <= n; ++k) {
    const double a = 1.0 / 3.0 + (5.0 / 14.0 - 1.0 / 3.0) * k / n;
    const auto [lo, hi] = branch2_bracket(a);
    const auto root = bracketed_root([a](double r) { return branch2_relation(r, a); }, lo, hi);
    if (!root) continue;
    // No closed-form discord on this branch; the state's own values are used.
    const FamilyPoint fp = branch2_state(a);
    branch_ii.emplace_back(quantum_discord(fp.state).discord, geometric_discord(fp.state).dg_normalized);
  }
  if (!branch_ii.empty()) curves_.push_back(std::move(branch_ii));

  std::vector<std::pair<double, double>> branch_iii;
  branch_iii.emplace_back(0.0, 0.0);
  for (int k = 1; k < n; ++k) {
    const double g = static_cast<double>(k) / n;
    try {
      const FamilyPoint fp = branch3_state(g);
      branch_iii.emplace_back(*fp.analytic_discord, g);
    } catch (const FamilyError&) {
    }
  }
  branch_iii.emplace_back(1.0, 1.0);
  curves_.push_back(std::move(branch_iii));

  std::vector<std::pair<double, double>> pure;
  for (int k = 0; k <= n; ++k) {
    const double p = 0.5 * k / n;
    pure.emplace_back(binary_entropy(p), 4.0 * p * (1.0 - p));
  }
  curves_.push_back(std::move(pure));
}

std::optional<double> LowerBoundary::at(double d) const {
  std::optional<double> best;
  for (const auto& curve : curves_) {
    for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
      const auto [d0, y0] = curve[k];
      const auto [d1, y1] = curve[k + 1];
      if (d < std::min(d0, d1) || d > std::max(d0, d1)) continue;
      const double y = d1 == d0 ? std::min(y0, y1) : y0 + (y1 - y0) * (d - d0) / (d1 - d0);
      if (!best || y < *best) best = y;
    }
  }
  return best;
}

}  // namespace qdiscord
