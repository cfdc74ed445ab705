#pragma once

// Extremal state families of the (D, 2 D_G) plane and their analytic values.
//
//   (i)   alpha states, 0 <= alpha <= 1/3: D = alpha, 2 D_G = alpha^2.
//   (ii)  X states rho_r with 1/3 <= a <= 5/14, r fixed by a transcendental
//         relation, 2 D_G = a^2.
//   (iii) asymmetric X states rho_g, 0 <= g <= 1, c fixed by a transcendental
//         relation, a = (1 - 2c + 2c^2 - g) / (2c), 2 D_G = g, closed-form D.
//   (iv)  pure states sqrt(p)|00> + sqrt(1-p)|11>: D = H2(p), 2 D_G = 4p(1-p).
//
// Transcendental relations are solved by bisection inside the stated
// parameter brackets; a missing sign change is reported as NoRoot.

#include "qdiscord/density.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qdiscord {

enum class Family { BranchI, BranchII, BranchIII, Pure };

const char* to_string(Family f);

enum class FamilyErrorKind { ParameterOutOfRange, NoRoot };

class FamilyError : public std::runtime_error {
 public:
  FamilyError(FamilyErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  FamilyErrorKind kind() const noexcept { return kind_; }

 private:
  FamilyErrorKind kind_;
};

struct FamilyPoint {
  Family family;
  double parameter;  // alpha, a, g or p
  DensityMatrix state;
  std::optional<double> analytic_discord;
  double analytic_dg_normalized;
  // Solved secondary parameter (r for branch ii, c for branch iii) and the
  // relation residual at it; zero for the explicit families.
  double solved = 0.0;
  double residual = 0.0;
};

FamilyPoint alpha_state(double alpha);
FamilyPoint branch2_state(double a);
FamilyPoint branch3_state(double g);
FamilyPoint pure_state(double p);

/// Relation defining r for branch (ii); zero on the family.
double branch2_relation(double r, double a);
std::pair<double, double> branch2_bracket(double a);
Matrix4c branch2_matrix(double a, double r);

/// Relation defining c for branch (iii); zero on the family.
double branch3_relation(double c, double g);
std::pair<double, double> branch3_bracket(double g);
Matrix4c branch3_matrix(double a, double c);
/// Closed-form discord (bits) of rho_g at (a, c).
double branch3_discord(double a, double c);

/// First root of f inside [lo, hi]: the bracket is scanned in `segments`
/// pieces and the first strict sign change is bisected to `tol`. An exact
/// zero at an endpoint counts when no interior root exists.
std::optional<double> bracketed_root(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-15,
                                     int segments = 256);

struct HierarchyCheck {
  bool holds = true;
  double margin = 0.0;  // dg_normalized - d^2
};

/// 2 D_G >= D^2 - 1e-9.
HierarchyCheck hierarchy_check(double discord, double dg_normalized);

/// Lower envelope of the analytic family curves in the (D, 2 D_G) plane.
/// Branch (ii) contributes only points where its relation has a root.
class LowerBoundary {
 public:
  explicit LowerBoundary(int samples_per_branch = 2000);

  /// Smallest family 2 D_G at discord d (linear interpolation along each
  /// branch); nullopt when no branch spans d.
  std::optional<double> at(double d) const;

  const std::vector<std::vector<std::pair<double, double>>>& curves() const { return curves_; }

 private:
  std::vector<std::vector<std::pair<double, double>>> curves_;
};

}  // namespace qdiscord
