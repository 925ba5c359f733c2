#include "cama/simd.hpp"

#ifdef CAMA_HAVE_NEON

#include <arm_neon.h>

namespace cama {

double dot_neon(const float* a, const float* b, std::size_t n) {
  // acc01 holds stripes 0 and 1, acc23 stripes 2 and 3, each accumulated
  // in the same order as the scalar kernel; vmul + vadd stay separate so
  // no fused multiply-add can change the rounding.
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  const std::size_t n4 = n & ~static_cast<std::size_t>(3);
  for (std::size_t i = 0; i < n4; i += 4) {
    const float32x4_t fa = vld1q_f32(a + i);
    const float32x4_t fb = vld1q_f32(b + i);
    const float64x2_t lo =
        vmulq_f64(vcvt_f64_f32(vget_low_f32(fa)), vcvt_f64_f32(vget_low_f32(fb)));
    const float64x2_t hi =
        vmulq_f64(vcvt_high_f64_f32(fa), vcvt_high_f64_f32(fb));
    acc01 = vaddq_f64(acc01, lo);
    acc23 = vaddq_f64(acc23, hi);
  }
  double lanes[4] = {vgetq_lane_f64(acc01, 0), vgetq_lane_f64(acc01, 1),
                     vgetq_lane_f64(acc23, 0), vgetq_lane_f64(acc23, 1)};
  for (std::size_t i = n4; i < n; ++i) {
    lanes[i & 3] += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

}  // namespace cama

#endif  // CAMA_HAVE_NEON
