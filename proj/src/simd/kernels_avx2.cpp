// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher
// after CPUID confirms support.

#include <immintrin.h>

#include <cmath>

#include "isodoublet/simd/kernels.hpp"

namespace isodoublet::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

}  // namespace

std::complex<double> weighted_cdot(const double* w, const double* ar, const double* ai,
                                   const double* br, const double* bi, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vw = _mm256_loadu_pd(w + i);
    const __m256d var = _mm256_loadu_pd(ar + i);
    const __m256d vai = _mm256_loadu_pd(ai + i);
    const __m256d vbr = _mm256_loadu_pd(br + i);
    const __m256d vbi = _mm256_loadu_pd(bi + i);
    const __m256d re = _mm256_fmadd_pd(var, vbr, _mm256_mul_pd(vai, vbi));
    const __m256d im = _mm256_fmsub_pd(var, vbi, _mm256_mul_pd(vai, vbr));
    acc_re = _mm256_fmadd_pd(vw, re, acc_re);
    acc_im = _mm256_fmadd_pd(vw, im, acc_im);
  }
  double re = hsum(acc_re);
  double im = hsum(acc_im);
  for (; i < n; ++i) {
    re += w[i] * (ar[i] * br[i] + ai[i] * bi[i]);
    im += w[i] * (ar[i] * bi[i] - ai[i] * br[i]);
  }
  return {re, im};
}

double weighted_norm2(const double* w, const double* ar, const double* ai, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d var = _mm256_loadu_pd(ar + i);
    const __m256d vai = _mm256_loadu_pd(ai + i);
    const __m256d mag = _mm256_fmadd_pd(var, var, _mm256_mul_pd(vai, vai));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), mag, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * (ar[i] * ar[i] + ai[i] * ai[i]);
  return s;
}

double max_abs_diff(const double* ar, const double* ai, const double* br, const double* bi,
                    std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dr = _mm256_sub_pd(_mm256_loadu_pd(ar + i), _mm256_loadu_pd(br + i));
    const __m256d di = _mm256_sub_pd(_mm256_loadu_pd(ai + i), _mm256_loadu_pd(bi + i));
    // No fusing here: the result must match the scalar kernel bit for bit.
    acc = _mm256_max_pd(acc, _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di))));
  }
  double m = hmax(acc);
  for (; i < n; ++i) {
    const double d = std::sqrt((ar[i] - br[i]) * (ar[i] - br[i]) + (ai[i] - bi[i]) * (ai[i] - bi[i]));
    if (d > m) m = d;
  }
  return m;
}

}  // namespace isodoublet::simd::avx2
