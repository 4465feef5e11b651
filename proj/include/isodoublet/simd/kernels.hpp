#pragma once

// Reductions used by every quadrature in the library. Inputs are split
// real/imaginary arrays (structure of arrays) of equal length.
//
// Two implementations exist: a scalar reference and an AVX2/FMA variant
// compiled with target flags in a separate translation unit. The variant is
// chosen once at runtime from CPUID; ISODOUBLET_SIMD=scalar forces the
// reference path. Each variant sums in a fixed order, so results are
// reproducible run to run on the same machine and variant.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace isodoublet::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// Best variant supported by this build and CPU.
Isa detected_isa();
/// Variant used by the dispatching entry points below.
Isa active_isa();
/// Override the active variant (tests and the CLI `--simd` flag).
/// Requesting an unsupported variant throws std::runtime_error.
void set_active_isa(Isa isa);

struct ComplexArrays {
  std::span<const double> re;
  std::span<const double> im;
};

/// sum_i w_i * conj(a_i) * b_i
std::complex<double> weighted_cdot(std::span<const double> w, ComplexArrays a, ComplexArrays b);
/// sum_i w_i * |a_i|^2
double weighted_norm2(std::span<const double> w, ComplexArrays a);
/// max_i |a_i - b_i|
double max_abs_diff(ComplexArrays a, ComplexArrays b);

namespace scalar {
std::complex<double> weighted_cdot(const double* w, const double* ar, const double* ai,
                                   const double* br, const double* bi, std::size_t n);
double weighted_norm2(const double* w, const double* ar, const double* ai, std::size_t n);
double max_abs_diff(const double* ar, const double* ai, const double* br, const double* bi,
                    std::size_t n);
}  // namespace scalar

#if defined(ISODOUBLET_BUILD_AVX2)
namespace avx2 {
std::complex<double> weighted_cdot(const double* w, const double* ar, const double* ai,
                                   const double* br, const double* bi, std::size_t n);
double weighted_norm2(const double* w, const double* ar, const double* ai, std::size_t n);
double max_abs_diff(const double* ar, const double* ai, const double* br, const double* bi,
                    std::size_t n);
}  // namespace avx2
#endif

}  // namespace isodoublet::simd
