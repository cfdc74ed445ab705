#include "qdiscord/entropy_kernels.hpp"

#include <stdexcept>

namespace qdiscord::kernels {

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(QDISCORD_HAVE_AVX2_KERNEL) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  static const Isa best = isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  return best;
}

void conditional_entropy_grid(const NormalForm& nf, std::span<const double> theta, std::span<const double> phi,
                              std::span<double> out, Isa isa) {
  if (isa == Isa::Avx2) {
    if (!isa_available(Isa::Avx2)) throw std::runtime_error("AVX2 kernel requested but not available");
    conditional_entropy_grid_avx2(nf, theta, phi, out);
    return;
  }
  conditional_entropy_grid_scalar(nf, theta, phi, out);
}

}  // namespace qdiscord::kernels
