#pragma once

// Batched conditional-entropy evaluation on (theta, phi) grids.
//
// Every variant writes out[i * phi.size() + j] = S(theta[i], phi[j]) for a
// state in normal form. The scalar variant is the reference; the AVX2
// variant vectorizes along phi (four doubles per lane group) and must agree
// with it to 1e-13. The fastest supported variant is picked at runtime.

#include "qdiscord/normal_form.hpp"

#include <span>
#include <string_view>

namespace qdiscord::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

bool isa_available(Isa isa);

/// Avx2 when compiled in and supported by the running CPU, else Scalar.
Isa best_isa();

void conditional_entropy_grid_scalar(const NormalForm& nf, std::span<const double> theta, std::span<const double> phi,
                                     std::span<double> out);

/// Requires isa_available(Isa::Avx2).
void conditional_entropy_grid_avx2(const NormalForm& nf, std::span<const double> theta, std::span<const double> phi,
                                   std::span<double> out);

void conditional_entropy_grid(const NormalForm& nf, std::span<const double> theta, std::span<const double> phi,
                              std::span<double> out, Isa isa);

inline void conditional_entropy_grid(const NormalForm& nf, std::span<const double> theta, std::span<const double> phi,
                                     std::span<double> out) {
  conditional_entropy_grid(nf, theta, phi, out, best_isa());
}

}  // namespace qdiscord::kernels
