#pragma once

// Geometric discord: squared Hilbert-Schmidt distance to the nearest
// classical-quantum state (measurement on B unless stated otherwise).

#include "qdiscord/density.hpp"
#include "qdiscord/normal_form.hpp"

#include <cstdint>

namespace qdiscord {

struct GeometricResult {
  double dg = 0.0;             // in [0, 1/2]
  double dg_normalized = 0.0;  // 2 dg, in [0, 1]
  double k_max = 0.0;          // largest eigenvalue of y y^T + T^T T
};

/// D_G = (|y|^2 + ||T||_2^2 - k) / 4 with k the largest eigenvalue of
/// y y^T + T^T T. For measurement on A, y -> x and T^T T -> T T^T.
GeometricResult geometric_discord(const DensityMatrix& rho, Subsystem measured = Subsystem::B);

/// Same quantity for a state in normal form, where T = diag(c):
/// k is the largest eigenvalue of b b^T + diag(c_i^2).
GeometricResult geometric_discord_nf(const NormalForm& nf);

/// ||A - B||_2^2 = Tr[(A - B)(A - B)^dagger].
double hilbert_schmidt_distance_sq(const Matrix4c& a, const Matrix4c& b);

/// Monte Carlo upper bound on min_chi ||rho - chi||_2^2 over classical-quantum
/// states chi = sum_i p_i rho_Ai x |i><i|. Each sample draws a uniformly
/// random basis {|i>} and scores two members of the set: one with p uniform on
/// the simplex and rho_Ai uniform in the Bloch ball, and one built from the
/// conditional states of A after measuring rho in that basis.
double min_distance_bruteforce(const DensityMatrix& rho, std::uint64_t samples, std::uint64_t seed = 0x5eedULL);

}  // namespace qdiscord
