#pragma once

// Reproducible random two-qubit states.
//
// Every state is a pure function of (spec, index): the generator for sample i
// is seeded from splitmix64(seed, i). A stream can therefore be split across
// any number of workers without changing its contents.

#include "qdiscord/density.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace qdiscord {

enum class SamplerKind {
  PureHaar,
  Ginibre,        // induced measure, rank 1..4
  XStateUniform,
  Mixed,          // round robin over pure, ginibre1..4, xstate
};

struct SamplerSpec {
  SamplerKind kind = SamplerKind::Ginibre;
  int rank = 4;  // Ginibre only
  std::uint64_t seed = 0;
};

/// "pure", "ginibre1".."ginibre4", "xstate", "mixed". Throws
/// std::invalid_argument otherwise.
SamplerSpec parse_sampler(std::string_view name, std::uint64_t seed = 0);
std::string sampler_name(const SamplerSpec& spec);

struct Sample {
  DensityMatrix state;
  SamplerSpec drawn_from;  // the concrete sub-sampler for Mixed
};

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
Rng make_rng(std::uint64_t seed, std::uint64_t index);

Sample sample_at(const SamplerSpec& spec, std::uint64_t index);
std::vector<DensityMatrix> sample(const SamplerSpec& spec, std::size_t n);

/// Sequential view over sample_at.
class StateSampler {
 public:
  explicit StateSampler(SamplerSpec spec, std::uint64_t first_index = 0) : spec_(spec), next_(first_index) {}
  Sample next() { return sample_at(spec_, next_++); }
  std::uint64_t position() const { return next_; }

 private:
  SamplerSpec spec_;
  std::uint64_t next_;
};

DensityMatrix random_pure_state(Rng& rng);
DensityMatrix random_ginibre_state(Rng& rng, int rank);
DensityMatrix random_x_state(Rng& rng);

/// Haar-random element of SU(2).
Matrix2c random_su2(Rng& rng);

/// Qubit state with Bloch vector uniform in the unit ball.
Matrix2c random_qubit_density(Rng& rng);

/// sum_i p_i rho_Ai (x) |e_i><e_i| with {|e_i>} a Haar-random basis of B,
/// p uniform on [0, 1] and rho_Ai random qubit states.
DensityMatrix random_classical_quantum_state(Rng& rng);

/// Number of eigenvalues above `tol`.
int numerical_rank(const DensityMatrix& rho, double tol = 1e-12);

}  // namespace qdiscord
