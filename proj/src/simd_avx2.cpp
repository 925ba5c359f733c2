#include "cama/simd.hpp"

#ifdef CAMA_HAVE_AVX2

#include <immintrin.h>

namespace cama {

double dot_avx2(const float* a, const float* b, std::size_t n) {
  // Vector lane j holds exactly the stripe-j partial sums of the scalar
  // kernel, added in the same order; mul and add stay separate so no FMA
  // can change the rounding.
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n & ~static_cast<std::size_t>(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d da = _mm256_cvtps_pd(_mm_loadu_ps(a + i));
    const __m256d db = _mm256_cvtps_pd(_mm_loadu_ps(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(da, db));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  for (std::size_t i = n4; i < n; ++i) {
    lanes[i & 3] += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

}  // namespace cama

#endif  // CAMA_HAVE_AVX2
