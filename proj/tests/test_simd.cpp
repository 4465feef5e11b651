#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "isodoublet/simd/kernels.hpp"

namespace simd = isodoublet::simd;

namespace {

struct Arrays {
  std::vector<double> w, ar, ai, br, bi;
};

Arrays random_arrays(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Arrays a;
  for (auto* v : {&a.w, &a.ar, &a.ai, &a.br, &a.bi}) {
    v->resize(n);
    for (auto& x : *v) x = u(rng);
  }
  for (auto& x : a.w) x = std::abs(x);
  return a;
}

// Plain loop in long double: the reference the kernels are compared against.
std::complex<long double> oracle_cdot(const Arrays& a) {
  std::complex<long double> s = 0;
  for (std::size_t i = 0; i < a.w.size(); ++i)
    s += (long double)a.w[i] * std::conj(std::complex<long double>(a.ar[i], a.ai[i])) *
         std::complex<long double>(a.br[i], a.bi[i]);
  return s;
}

}  // namespace

TEST_CASE("scalar kernels agree with a long-double loop") {
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 17u, 1000u, 4099u}) {
    const Arrays a = random_arrays(n, 11 + n);
    const auto got = simd::scalar::weighted_cdot(a.w.data(), a.ar.data(), a.ai.data(), a.br.data(), a.bi.data(), n);
    const auto ref = oracle_cdot(a);
    CHECK(std::abs(got.real() - (double)ref.real()) <= 1e-12 * (1.0 + n));
    CHECK(std::abs(got.imag() - (double)ref.imag()) <= 1e-12 * (1.0 + n));
  }
}

#if defined(ISODOUBLET_BUILD_AVX2)
TEST_CASE("AVX2 kernels match the scalar reference, including tails") {
  if (simd::detected_isa() != simd::Isa::Avx2) {
    MESSAGE("CPU lacks AVX2; equivalence not exercised");
    return;
  }
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 33u, 1000u, 4099u}) {
    const Arrays a = random_arrays(n, 101 + n);
    const auto s = simd::scalar::weighted_cdot(a.w.data(), a.ar.data(), a.ai.data(), a.br.data(), a.bi.data(), n);
    const auto v = simd::avx2::weighted_cdot(a.w.data(), a.ar.data(), a.ai.data(), a.br.data(), a.bi.data(), n);
    CHECK(std::abs(s - v) <= 1e-13 * (1.0 + n));
    const double sn = simd::scalar::weighted_norm2(a.w.data(), a.ar.data(), a.ai.data(), n);
    const double vn = simd::avx2::weighted_norm2(a.w.data(), a.ar.data(), a.ai.data(), n);
    CHECK(std::abs(sn - vn) <= 1e-13 * (1.0 + n));
    const double sm = simd::scalar::max_abs_diff(a.ar.data(), a.ai.data(), a.br.data(), a.bi.data(), n);
    const double vm = simd::avx2::max_abs_diff(a.ar.data(), a.ai.data(), a.br.data(), a.bi.data(), n);
    CHECK(sm == vm);
  }
}
#endif

TEST_CASE("dispatch honours the requested variant") {
  const auto before = simd::active_isa();
  simd::set_active_isa(simd::Isa::Scalar);
  CHECK(simd::active_isa() == simd::Isa::Scalar);
  const Arrays a = random_arrays(37, 5);
  const auto via_dispatch = simd::weighted_cdot(a.w, {a.ar, a.ai}, {a.br, a.bi});
  const auto direct = simd::scalar::weighted_cdot(a.w.data(), a.ar.data(), a.ai.data(), a.br.data(), a.bi.data(), 37);
  CHECK(via_dispatch == direct);
  if (simd::detected_isa() == simd::Isa::Scalar) CHECK_THROWS(simd::set_active_isa(simd::Isa::Avx2));
  simd::set_active_isa(before);
}

TEST_CASE("reductions are reproducible run to run") {
  const Arrays a = random_arrays(2051, 9);
  const auto first = simd::weighted_cdot(a.w, {a.ar, a.ai}, {a.br, a.bi});
  for (int k = 0; k < 5; ++k) CHECK(simd::weighted_cdot(a.w, {a.ar, a.ai}, {a.br, a.bi}) == first);
}
