#include "qdiscord/normal_form.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qdiscord {

namespace {

constexpr double kTie = 1e-12;
constexpr double kZero = 1e-12;

struct Candidate {
  Matrix3 u;
  Matrix3 v;
  Vector3 c;
  Vector3 a;
  Vector3 b;
};

// Flip paired columns so that the leading a (or b) components are
// non-negative. Flips happen two at a time to stay inside SO(3); the third
// column absorbs the compensating flip.
void fix_signs(Candidate& k, const Vector3& x, const Vector3& y) {
  auto key = [&](int i) {
    const double ai = k.u.col(i).dot(x);
    if (std::abs(ai) > kZero) return ai;
    return k.v.col(i).dot(y);
  };
  for (int i = 0; i < 2; ++i) {
    if (key(i) < 0.0) {
      k.u.col(i) *= -1.0;
      k.v.col(i) *= -1.0;
      k.u.col(2) *= -1.0;
      k.v.col(2) *= -1.0;
    }
  }
  k.a = k.u.transpose() * x;
  k.b = k.v.transpose() * y;
}

bool lex_greater(const Vector3& lhs, const Vector3& rhs) {
  for (int i = 0; i < 3; ++i) {
    if (lhs(i) > rhs(i) + kZero) return true;
    if (lhs(i) < rhs(i) - kZero) return false;
  }
  return false;
}

}  // namespace

NormalFormResult to_normal_form(const DensityMatrix& rho) { return to_normal_form(bloch_decompose(rho)); }

NormalFormResult to_normal_form(const BlochMatrix& r) {
  const Vector3 x = r.x();
  const Vector3 y = r.y();
  const Matrix3 t = r.T();

  Eigen::JacobiSVD<Matrix3> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix3 u = svd.matrixU();
  Matrix3 v = svd.matrixV();
  Vector3 sigma = svd.singularValues();

  // Make both factors proper rotations; the residual sign lands on c_3.
  const double det_u = u.determinant() < 0.0 ? -1.0 : 1.0;
  const double det_v = v.determinant() < 0.0 ? -1.0 : 1.0;
  u.col(2) *= det_u;
  v.col(2) *= det_v;
  Vector3 c = sigma;
  c(2) *= det_u * det_v;

  // Candidates differ by transpositions of tied singular directions. A
  // transposition reverses orientation, so one column of the pair is negated
  // in both frames.
  std::vector<std::array<int, 2>> swaps;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(sigma(i) - sigma(j)) <= kTie) swaps.push_back({i, j});

  std::vector<Candidate> candidates;
  Candidate base{u, v, c, Vector3::Zero(), Vector3::Zero()};
  candidates.push_back(base);
  for (const auto& [i, j] : swaps) {
    Candidate k = base;
    k.u.col(i).swap(k.u.col(j));
    k.v.col(i).swap(k.v.col(j));
    std::swap(k.c(i), k.c(j));
    k.u.col(j) *= -1.0;
    k.v.col(j) *= -1.0;
    // Keep only c_3 negative if anything is.
    if (k.c(0) < 0.0 || k.c(1) < 0.0) {
      const int neg = k.c(0) < 0.0 ? 0 : 1;
      k.c(neg) *= -1.0;
      k.c(2) *= -1.0;
      k.u.col(neg) *= -1.0;
      k.u.col(2) *= -1.0;
    }
    candidates.push_back(k);
  }

  Candidate* best = nullptr;
  for (auto& k : candidates) {
    fix_signs(k, x, y);
    if (best == nullptr || lex_greater(k.a, best->a)) best = &k;
  }

  NormalFormResult out;
  out.nf.a = best->a;
  out.nf.b = best->b;
  out.nf.c = best->c;
  out.frame.O_A = best->u;
  out.frame.O_B = best->v;
  return out;
}

BlochMatrix to_bloch(const NormalForm& nf) { return BlochMatrix(nf.a, nf.b, nf.c.asDiagonal().toDenseMatrix()); }

DensityMatrix reconstruct(const NormalForm& nf) { return bloch_compose(to_bloch(nf)); }

}  // namespace qdiscord
