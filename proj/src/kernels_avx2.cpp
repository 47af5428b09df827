// AVX2 variants of the dense primitives. Compiled with -mavx2 -mfma; only
// reached after a runtime CPU check, so the unguarded intrinsics are safe.

#include "oal/kernels.hpp"

#if defined(OAL_HAVE_AVX2)

#include <immintrin.h>

namespace oal::kernels {

namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i] * y[i];
  return hsum(acc) + tail;
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i];
  return hsum(acc) + tail;
}

double pos_sum_avx2(const double* x, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_max_pd(_mm256_loadu_pd(x + i), zero));
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i] > 0.0 ? x[i] : 0.0;
  return hsum(acc) + tail;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double a, const double* x, double* out, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) out[i] = a * x[i];
}

void acc_diff_avx2(double* g, const double* p, const double* q, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i), _mm256_loadu_pd(q + i));
    _mm256_storeu_pd(g + i, _mm256_add_pd(_mm256_loadu_pd(g + i), d));
  }
  for (; i < n; ++i) g[i] += p[i] - q[i];
}

void clip_step_avx2(const double* c, const double* p, const double* q, double t,
                    double* out, std::size_t n) {
  const __m256d tv = _mm256_set1_pd(t);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i), _mm256_loadu_pd(q + i));
    __m256d v = _mm256_fmadd_pd(tv, d, _mm256_loadu_pd(c + i));
    v = _mm256_min_pd(_mm256_max_pd(v, zero), one);
    _mm256_storeu_pd(out + i, v);
  }
  for (; i < n; ++i) {
    double v = c[i] + t * (p[i] - q[i]);
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    out[i] = v;
  }
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops table{dot_avx2,   sum_avx2,      pos_sum_avx2,   axpy_avx2,
                         scale_avx2, acc_diff_avx2, clip_step_avx2, "avx2"};
  return table;
}

}  // namespace oal::kernels

#endif  // OAL_HAVE_AVX2
