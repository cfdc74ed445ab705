#include "qdiscord/density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qdiscord {

namespace {

template <typename M>
double max_asymmetry(const M& m) {
  double worst = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os.precision(6);
  os << what << " (" << value << ")";
  return os.str();
}

// Shared validation for 2x2 and 4x4 inputs.
template <typename M>
M validated(const M& input) {
  if (!input.allFinite()) throw StateError(StateErrorKind::BadShape, 0.0, "matrix has non-finite entries");
  const double asym = max_asymmetry(input);
  if (asym > tol::kHermitian)
    throw StateError(StateErrorKind::NotHermitian, asym, describe("matrix is not Hermitian: max |m_ij - conj(m_ji)|", asym));
  M m = 0.5 * (input + input.adjoint());
  const double trace_error = std::abs(m.trace().real() - 1.0);
  if (trace_error > tol::kTrace)
    throw StateError(StateErrorKind::TraceNotOne, trace_error, describe("trace differs from one: |Tr - 1|", trace_error));

  Eigen::SelfAdjointEigenSolver<M> eig(m);
  const auto& lambda = eig.eigenvalues();
  const double smallest = lambda.minCoeff();
  if (smallest < -tol::kNegativeEigenvalue)
    throw StateError(StateErrorKind::NotPositive, smallest, describe("matrix is not positive semidefinite: smallest eigenvalue", smallest));
  if (smallest < 0.0) {
    auto clamped = lambda.cwiseMax(0.0).eval();
    clamped /= clamped.sum();
    m = eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
  }
  return m;
}

const std::array<Matrix2c, 4>& pauli_table() {
  static const std::array<Matrix2c, 4> table = [] {
    const Complex i(0.0, 1.0);
    std::array<Matrix2c, 4> p;
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -i, i, 0;
    p[3] << 1, 0, 0, -1;
    return p;
  }();
  return table;
}

}  // namespace

const char* to_string(StateErrorKind kind) {
  switch (kind) {
    case StateErrorKind::NotHermitian: return "NotHermitian";
    case StateErrorKind::TraceNotOne: return "TraceNotOne";
    case StateErrorKind::NotPositive: return "NotPositive";
    case StateErrorKind::BadShape: return "BadShape";
  }
  return "Unknown";
}

StateError::StateError(StateErrorKind kind, double magnitude, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), magnitude_(magnitude) {}

DensityMatrix validate_density(const Matrix4c& m) { return DensityMatrix(validated(m)); }

QubitState validate_qubit(const Matrix2c& m) { return QubitState(validated(m)); }

BlochMatrix::BlochMatrix(const Matrix4& r) : r_(r) {
  if (r_(0, 0) != 1.0) throw std::invalid_argument("Bloch matrix must have R[0][0] = 1");
}

BlochMatrix::BlochMatrix(const Vector3& x, const Vector3& y, const Matrix3& t) : r_(Matrix4::Zero()) {
  r_(0, 0) = 1.0;
  r_.block<3, 1>(1, 0) = x;
  r_.block<1, 3>(0, 1) = y.transpose();
  r_.block<3, 3>(1, 1) = t;
}

const Matrix2c& pauli(int index) { return pauli_table().at(static_cast<std::size_t>(index)); }

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

BlochMatrix bloch_decompose(const DensityMatrix& rho) {
  Matrix4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      // Tr[rho K] for Hermitian K is real; the imaginary part is round-off.
      const Complex value = (rho.matrix() * kron(pauli(i), pauli(j))).trace();
      r(i, j) = value.real();
    }
  r(0, 0) = 1.0;
  return BlochMatrix(r);
}

Matrix4c bloch_assemble(const BlochMatrix& r) {
  Matrix4c m = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (r.matrix()(i, j) != 0.0) m += r.matrix()(i, j) * kron(pauli(i), pauli(j));
  return 0.25 * m;
}

DensityMatrix bloch_compose(const BlochMatrix& r) { return validate_density(bloch_assemble(r)); }

QubitState partial_trace(const DensityMatrix& rho, Subsystem keep) {
  Matrix2c out = Matrix2c::Zero();
  const auto& m = rho.matrix();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        if (keep == Subsystem::A)
          out(i, j) += m(2 * i + k, 2 * j + k);
        else
          out(i, j) += m(2 * k + i, 2 * k + j);
      }
  return validate_qubit(out);
}

Vector3 bloch_vector(const QubitState& q) {
  Vector3 v;
  for (int i = 1; i <= 3; ++i) v(i - 1) = (q.matrix() * pauli(i)).trace().real();
  return v;
}

double xlog2x(double x) { return x <= tol::kLogFloor ? 0.0 : x * std::log2(x); }

double shannon_bits(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) s -= xlog2x(p);
  return s;
}

double binary_entropy(double p) { return -xlog2x(p) - xlog2x(1.0 - p); }

Eigen::Vector4d eigenvalues(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> eig(rho.matrix(), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseMax(0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::Vector4d lambda = eigenvalues(rho);
  return std::max(0.0, shannon_bits(std::span<const double>(lambda.data(), 4)));
}

double von_neumann_entropy(const QubitState& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix2c> eig(rho.matrix(), Eigen::EigenvaluesOnly);
  const Eigen::Vector2d lambda = eig.eigenvalues().cwiseMax(0.0);
  return std::max(0.0, shannon_bits(std::span<const double>(lambda.data(), 2)));
}

double mutual_information(const DensityMatrix& rho) {
  return von_neumann_entropy(partial_trace(rho, Subsystem::A)) + von_neumann_entropy(partial_trace(rho, Subsystem::B)) -
         von_neumann_entropy(rho);
}

double purity(const DensityMatrix& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

DensityMatrix swap_qubits(const DensityMatrix& rho) {
  Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  return validate_density(swap * rho.matrix() * swap);
}

DensityMatrix apply_local_unitaries(const DensityMatrix& rho, const Matrix2c& ua, const Matrix2c& ub) {
  const Matrix4c u = kron(ua, ub);
  return validate_density(u * rho.matrix() * u.adjoint());
}

DensityMatrix pure_density(const Eigen::Vector4cd& psi) {
  const Eigen::Vector4cd v = psi.normalized();
  return validate_density(v * v.adjoint());
}

}  // namespace qdiscord
