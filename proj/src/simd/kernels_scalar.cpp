#include "isodoublet/simd/kernels.hpp"

#include <cmath>

namespace isodoublet::simd::scalar {

std::complex<double> weighted_cdot(const double* w, const double* ar, const double* ai,
                                   const double* br, const double* bi, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // conj(a) * b = (ar br + ai bi) + i (ar bi - ai br)
    re += w[i] * (ar[i] * br[i] + ai[i] * bi[i]);
    im += w[i] * (ar[i] * bi[i] - ai[i] * br[i]);
  }
  return {re, im};
}

double weighted_norm2(const double* w, const double* ar, const double* ai, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * (ar[i] * ar[i] + ai[i] * ai[i]);
  return s;
}

double max_abs_diff(const double* ar, const double* ai, const double* br, const double* bi,
                    std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = ar[i] - br[i], di = ai[i] - bi[i];
    const double d = std::sqrt(dr * dr + di * di);
    if (d > m) m = d;
  }
  return m;
}

}  // namespace isodoublet::simd::scalar
