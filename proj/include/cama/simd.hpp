#pragma once

#include <cstddef>

namespace cama {

// Dot product of two float vectors, accumulated in double.
//
// Every kernel uses the same 4-lane-striped accumulation: lane (i mod 4)
// accumulates double(a[i]) * double(b[i]) in increasing i order, and the
// lanes reduce as (l0 + l2) + (l1 + l3). Because IEEE double addition and
// multiplication are deterministic and no kernel reassociates or fuses
// (no FMA), all kernels return bit-identical results for identical
// inputs, on every platform.
using DotFn = double (*)(const float*, const float*, std::size_t);

double dot_scalar(const float* a, const float* b, std::size_t n);
#ifdef CAMA_HAVE_AVX2
double dot_avx2(const float* a, const float* b, std::size_t n);
#endif
#ifdef CAMA_HAVE_NEON
double dot_neon(const float* a, const float* b, std::size_t n);
#endif

// Resolves the active kernel. The CAMA_SIMD environment variable selects
// "scalar", "avx2", "neon" or "auto" (default). Requesting a kernel that
// was not compiled in or that the CPU does not support raises
// InvalidConfig; "auto" picks the best available.
DotFn active_dot();
const char* active_kernel_name();

// Convenience: active_dot()(a, b, n).
double dot(const float* a, const float* b, std::size_t n);

}  // namespace cama
