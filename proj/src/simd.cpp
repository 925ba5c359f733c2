#include "cama/simd.hpp"

#include <cstdlib>
#include <string>

#include "cama/errors.hpp"
#include "cama/text_util.hpp"

namespace cama {

double dot_scalar(const float* a, const float* b, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    acc[i & 3] += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

namespace {

bool cpu_has_avx2() {
#ifdef CAMA_HAVE_AVX2
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

}  // namespace

DotFn active_dot() {
  const char* env = std::getenv("CAMA_SIMD");
  std::string req = env ? to_lower(trim(env)) : "auto";
  if (req.empty()) req = "auto";

  if (req == "scalar") return dot_scalar;
  if (req == "avx2") {
#ifdef CAMA_HAVE_AVX2
    if (cpu_has_avx2()) return dot_avx2;
#endif
    throw InvalidConfig("CAMA_SIMD=avx2 requested but AVX2 is unavailable");
  }
  if (req == "neon") {
#ifdef CAMA_HAVE_NEON
    return dot_neon;
#else
    throw InvalidConfig("CAMA_SIMD=neon requested but NEON is unavailable");
#endif
  }
  if (req != "auto") {
    throw InvalidConfig("CAMA_SIMD must be scalar, avx2, neon or auto; got \"" +
                        req + "\"");
  }
#ifdef CAMA_HAVE_AVX2
  if (cpu_has_avx2()) return dot_avx2;
#endif
#ifdef CAMA_HAVE_NEON
  return dot_neon;
#else
  return dot_scalar;
#endif
}

const char* active_kernel_name() {
  const DotFn fn = active_dot();
#ifdef CAMA_HAVE_AVX2
  if (fn == dot_avx2) return "avx2";
#endif
#ifdef CAMA_HAVE_NEON
  if (fn == dot_neon) return "neon";
#endif
  (void)fn;
  return "scalar";
}

double dot(const float* a, const float* b, std::size_t n) {
  return active_dot()(a, b, n);
}

}  // namespace cama
