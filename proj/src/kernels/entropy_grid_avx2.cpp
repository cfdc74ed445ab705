#include "qdiscord/entropy_kernels.hpp"
#include "qdiscord/measurement.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#if defined(QDISCORD_HAVE_AVX2_KERNEL) && defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace qdiscord::kernels {

namespace {

// log2 for positive, normal doubles. x = m 2^e with m in [sqrt(1/2), sqrt(2)),
// ln m = 2 atanh(f), f = (m - 1) / (m + 1), |f| < 0.172, series to f^23.
inline __m256d log2_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_bits = _mm256_srli_epi64(bits, 52);
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(exp_bits, magic)), _mm256_set1_pd(4503599627370496.0 + 1023.0));

  const __m256i mant_mask = _mm256_set1_epi64x(0x000fffffffffffffLL);
  const __m256i one_exp = _mm256_set1_epi64x(0x3ff0000000000000LL);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_exp));

  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d f = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d s = _mm256_mul_pd(f, f);

  __m256d poly = _mm256_set1_pd(1.0 / 23.0);
  poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 21.0));
  poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 19.0));
  poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 17.0));
  poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 15.0));
  poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 13.0));
  poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 11.0));
  poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 9.0));
  poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 7.0));
  poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 5.0));
  poly = _mm256_fmadd_pd(poly, s, _mm256_set1_pd(1.0 / 3.0));
  poly = _mm256_fmadd_pd(poly, s, one);

  // ln m / ln 2 = 2 f poly / ln 2
  const __m256d ln_m_over_ln2 = _mm256_mul_pd(_mm256_mul_pd(f, poly), _mm256_set1_pd(2.0 / 0.6931471805599453));
  return _mm256_add_pd(e, ln_m_over_ln2);
}

inline __m256d xlog2x_pd(__m256d x) {
  const __m256d floor = _mm256_set1_pd(tol::kLogFloor);
  const __m256d live = _mm256_cmp_pd(x, floor, _CMP_GT_OQ);
  const __m256d safe = _mm256_max_pd(x, floor);
  return _mm256_and_pd(live, _mm256_mul_pd(safe, log2_pd(safe)));
}

}  // namespace

void conditional_entropy_grid_avx2(const NormalForm& nf, std::span<const double> theta, std::span<const double> phi,
                                   std::span<double> out) {
  if (out.size() != theta.size() * phi.size()) throw std::invalid_argument("grid output has the wrong size");
  const std::size_t n_phi = phi.size();
  std::vector<double> cos_phi(n_phi), sin_phi(n_phi);
  for (std::size_t j = 0; j < n_phi; ++j) {
    cos_phi[j] = std::cos(phi[j]);
    sin_phi[j] = std::sin(phi[j]);
  }

  const __m256d a0 = _mm256_set1_pd(nf.a(0)), a1 = _mm256_set1_pd(nf.a(1)), a2 = _mm256_set1_pd(nf.a(2));
  const __m256d b0 = _mm256_set1_pd(nf.b(0)), b1 = _mm256_set1_pd(nf.b(1)), b2 = _mm256_set1_pd(nf.b(2));
  const __m256d c0 = _mm256_set1_pd(nf.c(0)), c1 = _mm256_set1_pd(nf.c(1)), c2v = _mm256_set1_pd(nf.c(2));
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d minus_quarter = _mm256_set1_pd(-0.25);

  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double s2 = std::sin(2.0 * theta[i]);
    const double c2 = std::cos(2.0 * theta[i]);
    const __m256d vs2 = _mm256_set1_pd(s2);
    const __m256d z = _mm256_set1_pd(c2);
    double* row = out.data() + i * n_phi;

    std::size_t j = 0;
    for (; j + 4 <= n_phi; j += 4) {
      const __m256d x = _mm256_mul_pd(vs2, _mm256_loadu_pd(cos_phi.data() + j));
      const __m256d y = _mm256_mul_pd(vs2, _mm256_loadu_pd(sin_phi.data() + j));

      const __m256d p = _mm256_fmadd_pd(b2, z, _mm256_fmadd_pd(b1, y, _mm256_mul_pd(b0, x)));
      const __m256d cx = _mm256_mul_pd(c0, x);
      const __m256d cy = _mm256_mul_pd(c1, y);
      const __m256d cz = _mm256_mul_pd(c2v, z);
      const __m256d px = _mm256_add_pd(a0, cx), py = _mm256_add_pd(a1, cy), pz = _mm256_add_pd(a2, cz);
      const __m256d mx = _mm256_sub_pd(a0, cx), my = _mm256_sub_pd(a1, cy), mz = _mm256_sub_pd(a2, cz);
      const __m256d r_plus = _mm256_sqrt_pd(_mm256_fmadd_pd(pz, pz, _mm256_fmadd_pd(py, py, _mm256_mul_pd(px, px))));
      const __m256d r_minus = _mm256_sqrt_pd(_mm256_fmadd_pd(mz, mz, _mm256_fmadd_pd(my, my, _mm256_mul_pd(mx, mx))));

      const __m256d lo = _mm256_max_pd(zero, _mm256_sub_pd(one, p));
      const __m256d hi = _mm256_max_pd(zero, _mm256_add_pd(one, p));

      __m256d sum = xlog2x_pd(_mm256_max_pd(zero, _mm256_sub_pd(lo, r_minus)));
      sum = _mm256_add_pd(sum, xlog2x_pd(_mm256_add_pd(lo, r_minus)));
      sum = _mm256_add_pd(sum, xlog2x_pd(_mm256_add_pd(hi, r_plus)));
      sum = _mm256_add_pd(sum, xlog2x_pd(_mm256_max_pd(zero, _mm256_sub_pd(hi, r_plus))));
      sum = _mm256_sub_pd(sum, four);
      sum = _mm256_sub_pd(sum, _mm256_mul_pd(two, _mm256_add_pd(xlog2x_pd(lo), xlog2x_pd(hi))));
      _mm256_storeu_pd(row + j, _mm256_mul_pd(minus_quarter, sum));
    }
    for (; j < n_phi; ++j) row[j] = conditional_entropy(nf, Vector3(s2 * cos_phi[j], s2 * sin_phi[j], c2));
  }
}

}  // namespace qdiscord::kernels

#else

namespace qdiscord::kernels {

void conditional_entropy_grid_avx2(const NormalForm&, std::span<const double>, std::span<const double>, std::span<double>) {
  throw std::runtime_error("AVX2 kernel not compiled in");
}

}  // namespace qdiscord::kernels

#endif
