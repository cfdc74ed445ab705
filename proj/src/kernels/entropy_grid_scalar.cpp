#include "qdiscord/entropy_kernels.hpp"
#include "qdiscord/measurement.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qdiscord::kernels {

void conditional_entropy_grid_scalar(const NormalForm& nf, std::span<const double> theta, std::span<const double> phi,
                                     std::span<double> out) {
  if (out.size() != theta.size() * phi.size()) throw std::invalid_argument("grid output has the wrong size");
  std::vector<double> cos_phi(phi.size()), sin_phi(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    cos_phi[j] = std::cos(phi[j]);
    sin_phi[j] = std::sin(phi[j]);
  }
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double s2 = std::sin(2.0 * theta[i]);
    const double c2 = std::cos(2.0 * theta[i]);
    double* row = out.data() + i * phi.size();
    for (std::size_t j = 0; j < phi.size(); ++j)
      row[j] = conditional_entropy(nf, Vector3(s2 * cos_phi[j], s2 * sin_phi[j], c2));
  }
}

}  // namespace qdiscord::kernels
