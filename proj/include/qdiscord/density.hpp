#pragma once

// Two-qubit density matrices, Bloch decomposition, marginals and entropies.
//
// Basis convention (used everywhere in the library): the product basis is
// ordered |00>, |01>, |10>, |11> with qubit A as the left tensor factor, so
// the row/column index of |ab> is 2*a + b. Pauli matrices are indexed
// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z. Entropies are in bits.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>

namespace qdiscord {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Matrix3 = Eigen::Matrix3d;
using Matrix4 = Eigen::Matrix4d;
using Vector3 = Eigen::Vector3d;

namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
// Eigenvalues in (-kNegativeEigenvalue, 0) are treated as round-off and clamped.
inline constexpr double kNegativeEigenvalue = 1e-10;
// x * log2(x) is taken as exactly zero at or below this value.
inline constexpr double kLogFloor = 1e-15;
}  // namespace tol

enum class StateErrorKind { NotHermitian, TraceNotOne, NotPositive, BadShape };

const char* to_string(StateErrorKind kind);

/// Raised when a matrix violates one of the density-matrix invariants.
/// magnitude() is the size of the violation (max asymmetry, |Tr - 1|, or the
/// offending eigenvalue).
class StateError : public std::runtime_error {
 public:
  StateError(StateErrorKind kind, double magnitude, const std::string& detail);

  StateErrorKind kind() const noexcept { return kind_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  StateErrorKind kind_;
  double magnitude_;
};

enum class Subsystem { A, B };

/// A validated 4x4 Hermitian, unit-trace, positive semidefinite matrix.
/// Only constructible through validate_density().
class DensityMatrix {
 public:
  const Matrix4c& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

 private:
  explicit DensityMatrix(const Matrix4c& m) : m_(m) {}
  friend DensityMatrix validate_density(const Matrix4c& m);

  Matrix4c m_;
};

/// A validated single-qubit state.
class QubitState {
 public:
  const Matrix2c& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

 private:
  explicit QubitState(const Matrix2c& m) : m_(m) {}
  friend QubitState validate_qubit(const Matrix2c& m);

  Matrix2c m_;
};

/// Checks Hermiticity and unit trace, then positivity. Eigenvalues in
/// (-1e-10, 0) are clamped to zero and the matrix renormalized.
DensityMatrix validate_density(const Matrix4c& m);
QubitState validate_qubit(const Matrix2c& m);

/// The 4x4 real Bloch matrix R_ij = Tr[rho (sigma_i x sigma_j)].
class BlochMatrix {
 public:
  BlochMatrix() : r_(Matrix4::Zero()) { r_(0, 0) = 1.0; }
  explicit BlochMatrix(const Matrix4& r);
  BlochMatrix(const Vector3& x, const Vector3& y, const Matrix3& t);

  const Matrix4& matrix() const noexcept { return r_; }
  Vector3 x() const { return r_.block<3, 1>(1, 0); }
  Vector3 y() const { return r_.block<1, 3>(0, 1).transpose(); }
  Matrix3 T() const { return r_.block<3, 3>(1, 1); }

 private:
  Matrix4 r_;
};

const Matrix2c& pauli(int index);

/// kron(a, b) with a acting on qubit A.
Matrix4c kron(const Matrix2c& a, const Matrix2c& b);

BlochMatrix bloch_decompose(const DensityMatrix& rho);

/// Inverse of bloch_decompose. Throws StateError(NotPositive) when R does not
/// describe a physical state.
DensityMatrix bloch_compose(const BlochMatrix& r);

/// Builds 1/4 sum R_ij sigma_i x sigma_j without validation.
Matrix4c bloch_assemble(const BlochMatrix& r);

QubitState partial_trace(const DensityMatrix& rho, Subsystem keep);

/// Bloch vector of a single-qubit state.
Vector3 bloch_vector(const QubitState& q);

/// -sum lambda log2 lambda with lambda <= 1e-15 contributing zero.
double shannon_bits(std::span<const double> probabilities);

/// x * log2(x), zero at or below the log floor.
double xlog2x(double x);

/// Binary entropy H2(p) in bits.
double binary_entropy(double p);

Eigen::Vector4d eigenvalues(const DensityMatrix& rho);

double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const QubitState& rho);

/// S(A) + S(B) - S(A,B).
double mutual_information(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);

/// Conjugation by the qubit swap; exchanges the roles of A and B.
DensityMatrix swap_qubits(const DensityMatrix& rho);

/// (U_A x U_B) rho (U_A x U_B)^dagger.
DensityMatrix apply_local_unitaries(const DensityMatrix& rho, const Matrix2c& ua, const Matrix2c& ub);

/// Projector |psi><psi| for a pure state vector (normalized internally).
DensityMatrix pure_density(const Eigen::Vector4cd& psi);

}  // namespace qdiscord
