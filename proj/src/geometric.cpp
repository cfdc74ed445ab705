#include "qdiscord/geometric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qdiscord {

namespace {

GeometricResult assemble(double norm_y_sq, double norm_t_sq, const Matrix3& m) {
  Eigen::SelfAdjointEigenSolver<Matrix3> eig(m, Eigen::EigenvaluesOnly);
  GeometricResult g;
  g.k_max = eig.eigenvalues().maxCoeff();
  g.dg = std::max(0.0, 0.25 * (norm_y_sq + norm_t_sq - g.k_max));
  g.dg_normalized = 2.0 * g.dg;
  return g;
}

Matrix2c qubit_from_bloch(const Vector3& r) {
  return 0.5 * (pauli(0) + r(0) * pauli(1) + r(1) * pauli(2) + r(2) * pauli(3));
}

Vector3 uniform_on_sphere(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector3 v;
  do {
    v = Vector3(normal(rng), normal(rng), normal(rng));
  } while (v.norm() < 1e-12);
  return v.normalized();
}

Vector3 uniform_in_ball(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit;
  return uniform_on_sphere(rng) * std::cbrt(unit(rng));
}

}  // namespace

GeometricResult geometric_discord(const DensityMatrix& rho, Subsystem measured) {
  const BlochMatrix r = bloch_decompose(rho);
  const Matrix3 t = r.T();
  const Vector3 v = measured == Subsystem::B ? r.y() : r.x();
  const Matrix3 tt = measured == Subsystem::B ? Matrix3(t.transpose() * t) : Matrix3(t * t.transpose());
  return assemble(v.squaredNorm(), t.squaredNorm(), v * v.transpose() + tt);
}

GeometricResult geometric_discord_nf(const NormalForm& nf) {
  const Vector3 c2 = nf.c.cwiseProduct(nf.c);
  return assemble(nf.b.squaredNorm(), c2.sum(), nf.b * nf.b.transpose() + Matrix3(c2.asDiagonal()));
}

double hilbert_schmidt_distance_sq(const Matrix4c& a, const Matrix4c& b) { return (a - b).squaredNorm(); }

double min_distance_bruteforce(const DensityMatrix& rho, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("min_distance_bruteforce needs at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit;
  const Matrix4c& m = rho.matrix();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < samples; ++s) {
    const Vector3 n = uniform_on_sphere(rng);
    const Matrix2c proj0 = qubit_from_bloch(n);
    const Matrix2c proj1 = qubit_from_bloch(-n);

    const double p = unit(rng);
    const Matrix4c random_cq =
        p * kron(qubit_from_bloch(uniform_in_ball(rng)), proj0) + (1.0 - p) * kron(qubit_from_bloch(uniform_in_ball(rng)), proj1);
    best = std::min(best, hilbert_schmidt_distance_sq(m, random_cq));

    // sigma_i = Tr_B[(I x P_i) rho], i.e. p_i rho_Ai for the measured state.
    Matrix2c sigma0 = Matrix2c::Zero(), sigma1 = Matrix2c::Zero();
    const Matrix4c left0 = kron(pauli(0), proj0) * m;
    const Matrix4c left1 = kron(pauli(0), proj1) * m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          sigma0(i, j) += left0(2 * i + k, 2 * j + k);
          sigma1(i, j) += left1(2 * i + k, 2 * j + k);
        }
    const Matrix4c measured_cq = kron(sigma0, proj0) + kron(sigma1, proj1);
    best = std::min(best, hilbert_schmidt_distance_sq(m, measured_cq));
  }
  return best;
}

}  // namespace qdiscord
