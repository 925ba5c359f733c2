#include <cstdlib>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "cama/errors.hpp"
#include "cama/simd.hpp"
#include "test_util.hpp"

using namespace cama;

namespace {

// Restores the previous CAMA_SIMD value when leaving scope so the env
// knob never leaks into other tests.
class SimdEnvGuard {
 public:
  SimdEnvGuard() {
    const char* prev = std::getenv("CAMA_SIMD");
    had_ = prev != nullptr;
    if (had_) saved_ = prev;
  }
  ~SimdEnvGuard() {
    if (had_) {
      setenv("CAMA_SIMD", saved_.c_str(), 1);
    } else {
      unsetenv("CAMA_SIMD");
    }
  }

 private:
  bool had_ = false;
  std::string saved_;
};

std::vector<float> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::vector<float> v(n);
  for (float& x : v) {
    // Uniform in roughly [-1, 1], deterministic across platforms.
    const std::uint64_t bits = rng();
    x = static_cast<float>(static_cast<double>(bits >> 11) /
                               static_cast<double>(1ull << 53) * 2.0 -
                           1.0);
  }
  return v;
}

bool avx2_usable() {
#ifdef CAMA_HAVE_AVX2
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace

TEST_CASE("scalar dot matches a high-precision reference") {
  std::mt19937_64 rng(101u);
  for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{3},
                        std::size_t{4}, std::size_t{7}, std::size_t{512},
                        std::size_t{513}}) {
    const std::vector<float> a = random_vector(rng, n);
    const std::vector<float> b = random_vector(rng, n);
    long double ref = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      ref += static_cast<long double>(a[i]) * static_cast<long double>(b[i]);
    }
    const double got = dot_scalar(a.data(), b.data(), n);
    CHECK(got == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
  }
}

TEST_CASE("every compiled kernel is bit-identical to the scalar one") {
  if (!avx2_usable()) {
    MESSAGE("AVX2 not available; scalar-only equivalence is vacuous here");
  }
  std::mt19937_64 rng(202u);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 520);
    const std::vector<float> a = random_vector(rng, n);
    const std::vector<float> b = random_vector(rng, n);
    const double scalar = dot_scalar(a.data(), b.data(), n);
#ifdef CAMA_HAVE_AVX2
    if (avx2_usable()) {
      const double vec = dot_avx2(a.data(), b.data(), n);
      CHECK(std::memcmp(&scalar, &vec, sizeof(double)) == 0);
    }
#endif
#ifdef CAMA_HAVE_NEON
    {
      const double vec = dot_neon(a.data(), b.data(), n);
      CHECK(std::memcmp(&scalar, &vec, sizeof(double)) == 0);
    }
#endif
  }
}

TEST_CASE("kernel selection honors the CAMA_SIMD override") {
  SimdEnvGuard guard;

  setenv("CAMA_SIMD", "scalar", 1);
  CHECK(std::string(active_kernel_name()) == "scalar");
  CHECK(active_dot() == &dot_scalar);

  setenv("CAMA_SIMD", "bogus", 1);
  CHECK_THROWS_AS(active_dot(), InvalidConfig);

  setenv("CAMA_SIMD", "avx2", 1);
  if (avx2_usable()) {
    CHECK(std::string(active_kernel_name()) == "avx2");
  } else {
    CHECK_THROWS_AS(active_dot(), InvalidConfig);
  }

  unsetenv("CAMA_SIMD");
  const std::string auto_name = active_kernel_name();
  if (avx2_usable()) {
    CHECK(auto_name == "avx2");
  } else {
    CHECK((auto_name == "scalar" || auto_name == "neon"));
  }
}

TEST_CASE("dot convenience wrapper uses the active kernel") {
  SimdEnvGuard guard;
  setenv("CAMA_SIMD", "scalar", 1);
  const std::vector<float> a = {1.0f, 2.0f, 3.0f};
  const std::vector<float> b = {4.0f, 5.0f, 6.0f};
  CHECK(dot(a.data(), b.data(), 3) == 32.0);
}
