#pragma once

// Reference computations that share no code with the library's entropy path:
// measurements are applied to the density matrix itself (no normal form, no
// compact entropy expression, no SIMD), and qubit entropies use the closed
// form eigenvalues (1 +- |v|) / 2.

#include "qdiscord/density.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace oracle {

using qdiscord::Complex;
using qdiscord::Matrix2c;
using qdiscord::Matrix4c;

inline double h2(double p) {
  auto t = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  return t(p) + t(1.0 - p);
}

// Entropy of an unnormalised qubit operator with trace `tr` and Bloch
// components (tr, vx, vy, vz): eigenvalues (tr +- |v|) / 2.
inline double weighted_qubit_entropy(double tr, double vx, double vy, double vz) {
  if (tr <= 0.0) return 0.0;
  const double n = std::min(std::sqrt(vx * vx + vy * vy + vz * vz) / tr, 1.0);
  return tr * h2(0.5 * (1.0 + n));
}

// Blocks M_k = Tr_B[(I x sigma_k) rho], k = 0..3, stored as Bloch components
// (Tr, Tr sigma_x, Tr sigma_y, Tr sigma_z) of each 2x2 operator on A.
struct Projection {
  std::array<std::array<double, 4>, 4> m{};
};

inline Projection projection_blocks(const Matrix4c& rho) {
  static const Matrix2c s[4] = {
      (Matrix2c() << 1, 0, 0, 1).finished(),
      (Matrix2c() << 0, 1, 1, 0).finished(),
      (Matrix2c() << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (Matrix2c() << 1, 0, 0, -1).finished(),
  };
  Projection p;
  for (int k = 0; k < 4; ++k) {
    // (I x s_k) rho, traced over B: element (a, a') = sum_{b, b'} s_k(b', b) rho(a b, a' b')
    Matrix2c block = Matrix2c::Zero();
    for (int a = 0; a < 2; ++a)
      for (int ap = 0; ap < 2; ++ap)
        for (int b = 0; b < 2; ++b)
          for (int bp = 0; bp < 2; ++bp) block(a, ap) += s[k](bp, b) * rho(2 * a + b, 2 * ap + bp);
    for (int i = 0; i < 4; ++i) p.m[k][i] = (s[i] * block).trace().real();
  }
  return p;
}

// S(A | measurement of B along unit vector n), by direct projection.
inline double conditional_entropy(const Projection& p, double nx, double ny, double nz) {
  double s = 0.0;
  for (int sign : {1, -1}) {
    double v[4];
    for (int i = 0; i < 4; ++i) v[i] = 0.5 * (p.m[0][i] + sign * (nx * p.m[1][i] + ny * p.m[2][i] + nz * p.m[3][i]));
    s += weighted_qubit_entropy(v[0], v[1], v[2], v[3]);
  }
  return s;
}

inline double von_neumann(const Matrix4c& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-15) s -= l * std::log2(l);
  }
  return s;
}

inline double reduced_b_entropy(const Matrix4c& rho) {
  const Projection p = projection_blocks(rho);
  // Tr_A rho has Bloch components M_k's traces.
  const double tr = p.m[0][0];
  return weighted_qubit_entropy(tr, p.m[1][0], p.m[2][0], p.m[3][0]);
}

struct GridMinimum {
  double value = std::numeric_limits<double>::infinity();
  double theta = 0.0;
  double phi = 0.0;
};

// Exhaustive grid over theta in [0, pi/2), phi in [0, 2 pi) with the
// direction (sin 2t cos p, sin 2t sin p, cos 2t).
inline GridMinimum dense_grid_minimum(const Matrix4c& rho, int n_theta = 1000, int n_phi = 2000) {
  const Projection p = projection_blocks(rho);
  GridMinimum best;
  std::vector<double> cp(n_phi), sp(n_phi);
  for (int j = 0; j < n_phi; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / n_phi;
    cp[j] = std::cos(phi);
    sp[j] = std::sin(phi);
  }
  for (int i = 0; i < n_theta; ++i) {
    const double t = 0.5 * std::numbers::pi * i / n_theta;
    const double s2 = std::sin(2.0 * t), c2 = std::cos(2.0 * t);
    for (int j = 0; j < n_phi; ++j) {
      const double v = conditional_entropy(p, s2 * cp[j], s2 * sp[j], c2);
      if (v < best.value) best = {v, t, 2.0 * std::numbers::pi * j / n_phi};
    }
  }
  return best;
}

inline double dense_grid_discord(const Matrix4c& rho, int n_theta = 1000, int n_phi = 2000) {
  return reduced_b_entropy(rho) - von_neumann(rho) + dense_grid_minimum(rho, n_theta, n_phi).value;
}

// ||rho - Pi(rho)||^2 minimised over a grid of projective bases on B, where
// Pi dephases B in the basis; the nearest classical-quantum state in
// Hilbert-Schmidt distance for a fixed basis is Pi(rho).
inline double dephasing_distance(const Matrix4c& rho, double nx, double ny, double nz) {
  Matrix2c proj[2];
  const Matrix2c I = Matrix2c::Identity();
  Matrix2c ns;
  ns << nz, Complex(nx, -ny), Complex(nx, ny), -nz;
  proj[0] = 0.5 * (I + ns);
  proj[1] = 0.5 * (I - ns);
  Matrix4c out = Matrix4c::Zero();
  for (const auto& pr : proj) {
    Matrix4c big = Matrix4c::Zero();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp) big(2 * a + b, 2 * a + bp) = pr(b, bp);
    out += big * rho * big;
  }
  return (rho - out).squaredNorm();
}

inline double dense_grid_geometric_discord(const Matrix4c& rho, int n_theta = 200, int n_phi = 400) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n_theta; ++i) {
    const double t = std::numbers::pi * i / n_theta;
    for (int j = 0; j < n_phi; ++j) {
      const double ph = 2.0 * std::numbers::pi * j / n_phi;
      best = std::min(best, dephasing_distance(rho, std::sin(t) * std::cos(ph), std::sin(t) * std::sin(ph), std::cos(t)));
    }
  }
  return best;
}

}  // namespace oracle
