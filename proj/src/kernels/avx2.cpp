#include <immintrin.h>

#include "eitqhe/kernels.hpp"

namespace eitqhe::kernels::avx2 {

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void matvec(const double* a, const double* x, double* y, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = a + i * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j < n4; j += 4)
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(x + j), acc);
    double tail = 0.0;
    for (; j < n; ++j) tail += row[j] * x[j];
    y[i] = hsum(acc) + tail;
  }
}

void rk4_linear(const double* kappa, const double* source, const double* h, std::size_t lanes,
                std::size_t steps, double* out) {
  const std::size_t l4 = lanes & ~std::size_t{3};
  for (std::size_t i = 0; i < lanes; ++i) out[i] = 0.0;

  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d sixth = _mm256_set1_pd(1.0 / 6.0);

  for (std::size_t k = 0; k < steps; ++k) {
    const double* prev = out + k * lanes;
    double* next = out + (k + 1) * lanes;
    std::size_t i = 0;
    for (; i < l4; i += 4) {
      const __m256d b = _mm256_loadu_pd(prev + i);
      const __m256d kap = _mm256_loadu_pd(kappa + i);
      const __m256d s = _mm256_loadu_pd(source + i);
      const __m256d dz = _mm256_loadu_pd(h + i);
      const __m256d hdz = _mm256_mul_pd(half, dz);
      const __m256d k1 = _mm256_fnmadd_pd(kap, b, s);
      const __m256d k2 = _mm256_fnmadd_pd(kap, _mm256_fmadd_pd(hdz, k1, b), s);
      const __m256d k3 = _mm256_fnmadd_pd(kap, _mm256_fmadd_pd(hdz, k2, b), s);
      const __m256d k4 = _mm256_fnmadd_pd(kap, _mm256_fmadd_pd(dz, k3, b), s);
      const __m256d sum =
          _mm256_add_pd(_mm256_add_pd(k1, k4), _mm256_mul_pd(two, _mm256_add_pd(k2, k3)));
      _mm256_storeu_pd(next + i, _mm256_fmadd_pd(_mm256_mul_pd(dz, sixth), sum, b));
    }
    for (; i < lanes; ++i) {
      const double b = prev[i], kap = kappa[i], s = source[i], dz = h[i];
      const double k1 = s - kap * b;
      const double k2 = s - kap * (b + 0.5 * dz * k1);
      const double k3 = s - kap * (b + 0.5 * dz * k2);
      const double k4 = s - kap * (b + dz * k3);
      next[i] = b + dz / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
}

}  // namespace eitqhe::kernels::avx2
