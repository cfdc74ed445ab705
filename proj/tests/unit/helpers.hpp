#pragma once

#include "qdiscord/density.hpp"
#include "qdiscord/sampler.hpp"

#include <cmath>
#include <vector>

namespace testing {

using namespace qdiscord;

inline DensityMatrix bell_state() { return pure_density(Eigen::Vector4cd(1.0, 0.0, 0.0, 1.0)); }

inline DensityMatrix product_state(const Matrix2c& a, const Matrix2c& b) { return validate_density(kron(a, b)); }

inline DensityMatrix maximally_mixed() { return validate_density(Matrix4c::Identity() / 4.0); }

// p |Phi+><Phi+| + (1 - p) I / 4
inline DensityMatrix werner_state(double p) {
  return validate_density(p * bell_state().matrix() + (1.0 - p) * Matrix4c::Identity() / 4.0);
}

inline Matrix2c qubit(double x, double y, double z) {
  return 0.5 * (pauli(0) + x * pauli(1) + y * pauli(2) + z * pauli(3));
}

// The three-digit example state used for the entropy surface figure.
inline Matrix4c random_example_matrix() {
  using C = Complex;
  Matrix4c m;
  m << C(0.437, 0), C(0.126, 0.197), C(0.0271, -0.0258), C(-0.274, 0.0997),
      C(0.126, -0.197), C(0.154, 0), C(-0.0115, -0.0187), C(-0.0315, 0.170),
      C(0.0271, 0.0258), C(-0.0115, 0.0187), C(0.0370, 0), C(0.00219, -0.0367),
      C(-0.274, -0.0997), C(-0.0315, -0.170), C(0.00219, 0.0367), C(0.372, 0);
  return m;
}

// Deterministic mix of ranks 1..4 and X states.
inline std::vector<DensityMatrix> mixed_states(std::size_t n, std::uint64_t seed) {
  return sample(parse_sampler("mixed", seed), n);
}

inline std::vector<DensityMatrix> full_rank_states(std::size_t n, std::uint64_t seed) {
  return sample(parse_sampler("ginibre4", seed), n);
}

}  // namespace testing
