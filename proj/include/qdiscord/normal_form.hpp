#pragma once

// Bloch normal form: every two-qubit state is locally-unitarily equivalent to
//   rho = 1/4 (I + sum a_i s_i x I + sum b_i I x s_i + sum c_i s_i x s_i).
//
// Canonical conventions produced by to_normal_form():
//  * |c_1| >= |c_2| >= |c_3| (singular values, descending);
//  * c_1, c_2 >= 0 and only c_3 may be negative (it carries sign(det T));
//  * sign freedom of paired frame columns is fixed so that the first two
//    components of a are >= 0 (falling back to b when a component vanishes);
//  * tied singular values are ordered so that a is lexicographically largest.

#include "qdiscord/density.hpp"

namespace qdiscord {

struct NormalForm {
  Vector3 a = Vector3::Zero();
  Vector3 b = Vector3::Zero();
  Vector3 c = Vector3::Zero();
};

/// Frame change taking the original Bloch matrix to the normal form:
/// x' = O_A^T x, y' = O_B^T y, T' = O_A^T T O_B. Both are in SO(3).
struct LocalFrame {
  Matrix3 O_A = Matrix3::Identity();
  Matrix3 O_B = Matrix3::Identity();
};

struct NormalFormResult {
  NormalForm nf;
  LocalFrame frame;
};

NormalFormResult to_normal_form(const DensityMatrix& rho);
NormalFormResult to_normal_form(const BlochMatrix& r);

/// Throws StateError(NotPositive) for unphysical parameters.
DensityMatrix reconstruct(const NormalForm& nf);

BlochMatrix to_bloch(const NormalForm& nf);

}  // namespace qdiscord
