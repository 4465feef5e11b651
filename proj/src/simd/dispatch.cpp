#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "isodoublet/simd/kernels.hpp"

namespace isodoublet::simd {

namespace {

bool cpu_has_avx2() {
#if defined(ISODOUBLET_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  const char* env = std::getenv("ISODOUBLET_SIMD");
  if (env != nullptr && std::string(env) == "scalar") return Isa::Scalar;
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("simd: array length mismatch");
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

Isa detected_isa() {
  static const Isa isa = cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2)
    throw std::runtime_error("simd: AVX2 variant not available on this build/CPU");
  active().store(isa, std::memory_order_relaxed);
}

std::complex<double> weighted_cdot(std::span<const double> w, ComplexArrays a, ComplexArrays b) {
  const std::size_t n = w.size();
  check_sizes(n, a.re.size());
  check_sizes(n, a.im.size());
  check_sizes(n, b.re.size());
  check_sizes(n, b.im.size());
#if defined(ISODOUBLET_BUILD_AVX2)
  if (active_isa() == Isa::Avx2)
    return avx2::weighted_cdot(w.data(), a.re.data(), a.im.data(), b.re.data(), b.im.data(), n);
#endif
  return scalar::weighted_cdot(w.data(), a.re.data(), a.im.data(), b.re.data(), b.im.data(), n);
}

double weighted_norm2(std::span<const double> w, ComplexArrays a) {
  const std::size_t n = w.size();
  check_sizes(n, a.re.size());
  check_sizes(n, a.im.size());
#if defined(ISODOUBLET_BUILD_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::weighted_norm2(w.data(), a.re.data(), a.im.data(), n);
#endif
  return scalar::weighted_norm2(w.data(), a.re.data(), a.im.data(), n);
}

double max_abs_diff(ComplexArrays a, ComplexArrays b) {
  const std::size_t n = a.re.size();
  check_sizes(n, a.im.size());
  check_sizes(n, b.re.size());
  check_sizes(n, b.im.size());
#if defined(ISODOUBLET_BUILD_AVX2)
  if (active_isa() == Isa::Avx2)
    return avx2::max_abs_diff(a.re.data(), a.im.data(), b.re.data(), b.im.data(), n);
#endif
  return scalar::max_abs_diff(a.re.data(), a.im.data(), b.re.data(), b.im.data(), n);
}

}  // namespace isodoublet::simd
