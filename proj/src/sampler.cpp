#include "qdiscord/sampler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdiscord {

namespace {

Complex complex_gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

SamplerSpec mixed_member(const SamplerSpec& spec, std::uint64_t index) {
  SamplerSpec s = spec;
  switch (index % 6) {
    case 0: s.kind = SamplerKind::PureHaar; s.rank = 1; break;
    case 5: s.kind = SamplerKind::XStateUniform; s.rank = 4; break;
    default: s.kind = SamplerKind::Ginibre; s.rank = static_cast<int>(index % 6); break;
  }
  return s;
}

}  // namespace

SamplerSpec parse_sampler(std::string_view name, std::uint64_t seed) {
  SamplerSpec s;
  s.seed = seed;
  if (name == "pure") {
    s.kind = SamplerKind::PureHaar;
    s.rank = 1;
  } else if (name == "xstate") {
    s.kind = SamplerKind::XStateUniform;
    s.rank = 4;
  } else if (name == "mixed") {
    s.kind = SamplerKind::Mixed;
    s.rank = 0;
  } else if (name.size() == 8 && name.substr(0, 7) == "ginibre" && name[7] >= '1' && name[7] <= '4') {
    s.kind = SamplerKind::Ginibre;
    s.rank = name[7] - '0';
  } else {
    throw std::invalid_argument("unknown sampler '" + std::string(name) + "' (pure|ginibre1..4|xstate|mixed)");
  }
  return s;
}

std::string sampler_name(const SamplerSpec& spec) {
  switch (spec.kind) {
    case SamplerKind::PureHaar: return "pure";
    case SamplerKind::Ginibre: return "ginibre" + std::to_string(spec.rank);
    case SamplerKind::XStateUniform: return "xstate";
    case SamplerKind::Mixed: return "mixed";
  }
  return "unknown";
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng make_rng(std::uint64_t seed, std::uint64_t index) { return Rng(splitmix64(splitmix64(seed) ^ index)); }

DensityMatrix random_pure_state(Rng& rng) {
  Eigen::Vector4cd psi;
  for (int i = 0; i < 4; ++i) psi(i) = complex_gaussian(rng);
  return pure_density(psi);
}

DensityMatrix random_ginibre_state(Rng& rng, int rank) {
  if (rank < 1 || rank > 4) throw std::invalid_argument("Ginibre rank must be 1..4");
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> g(4, rank);
  for (int j = 0; j < rank; ++j)
    for (int i = 0; i < 4; ++i) g(i, j) = complex_gaussian(rng);
  Matrix4c m = g * g.adjoint();
  m /= m.trace().real();
  return validate_density(m);
}

DensityMatrix random_x_state(Rng& rng) {
  // Bloch parameters (a3, b3, c1, c2, c3) uniform in [-1, 1]^5, rejected
  // until positive. Complex coherence phases are removable by local z
  // rotations, so real X states cover the family up to local unitaries.
  for (;;) {
    double v[5];
    for (double& x : v) x = uniform(rng, -1.0, 1.0);
    const double a3 = v[0], b3 = v[1], c1 = v[2], c2 = v[3], c3 = v[4];
    const double outer = (1.0 + c3) * (1.0 + c3) - (a3 + b3) * (a3 + b3) - (c1 - c2) * (c1 - c2);
    const double inner = (1.0 - c3) * (1.0 - c3) - (a3 - b3) * (a3 - b3) - (c1 + c2) * (c1 + c2);
    if (1.0 + c3 < std::abs(a3 + b3) || 1.0 - c3 < std::abs(a3 - b3) || outer < 0.0 || inner < 0.0) continue;
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = 0.25 * (1.0 + a3 + b3 + c3);
    m(1, 1) = 0.25 * (1.0 + a3 - b3 - c3);
    m(2, 2) = 0.25 * (1.0 - a3 + b3 - c3);
    m(3, 3) = 0.25 * (1.0 - a3 - b3 + c3);
    m(0, 3) = m(3, 0) = 0.25 * (c1 - c2);
    m(1, 2) = m(2, 1) = 0.25 * (c1 + c2);
    return validate_density(m);
  }
}

Matrix2c random_su2(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector4d q;
  for (int i = 0; i < 4; ++i) q(i) = n(rng);
  q.normalize();
  Matrix2c u;
  u << Complex(q(0), q(1)), Complex(q(2), q(3)), Complex(-q(2), q(3)), Complex(q(0), -q(1));
  return u;
}

Matrix2c random_qubit_density(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vector3 v(n(rng), n(rng), n(rng));
  v *= std::cbrt(uniform(rng, 0.0, 1.0)) / v.norm();
  Matrix2c m = 0.5 * pauli(0);
  for (int i = 0; i < 3; ++i) m += 0.5 * v(i) * pauli(i + 1);
  return m;
}

DensityMatrix random_classical_quantum_state(Rng& rng) {
  const Matrix2c u = random_su2(rng);
  const double p = uniform(rng, 0.0, 1.0);
  Matrix4c m = Matrix4c::Zero();
  for (int i = 0; i < 2; ++i) {
    const Eigen::Vector2cd e = u.col(i);
    const Matrix2c proj = e * e.adjoint();
    m += (i == 0 ? p : 1.0 - p) * kron(random_qubit_density(rng), proj);
  }
  return validate_density(m);
}

int numerical_rank(const DensityMatrix& rho, double tol) {
  const Eigen::Vector4d ev = eigenvalues(rho);
  int r = 0;
  for (int i = 0; i < 4; ++i) r += ev(i) > tol ? 1 : 0;
  return r;
}

Sample sample_at(const SamplerSpec& spec, std::uint64_t index) {
  const SamplerSpec s = spec.kind == SamplerKind::Mixed ? mixed_member(spec, index) : spec;
  Rng rng = make_rng(spec.seed, index);
  switch (s.kind) {
    case SamplerKind::PureHaar: return Sample{random_pure_state(rng), s};
    case SamplerKind::Ginibre: return Sample{random_ginibre_state(rng, s.rank), s};
    case SamplerKind::XStateUniform: return Sample{random_x_state(rng), s};
    case SamplerKind::Mixed: break;
  }
  throw std::logic_error("unreachable sampler kind");
}

std::vector<DensityMatrix> sample(const SamplerSpec& spec, std::size_t n) {
  if (n < 1) throw std::invalid_argument("sample count must be at least 1");
  std::vector<DensityMatrix> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_at(spec, i).state);
  return out;
}

}  // namespace qdiscord
