#include <immintrin.h>

#include "variants.hpp"

namespace dsfa::kernels::detail {
namespace {

// Four independent accumulators of four lanes each; combined in a fixed
// order so the result is reproducible for a given n.
inline double hsum(__m256d a, __m256d b, __m256d c, __m256d d) {
  const __m256d ab = _mm256_add_pd(a, b);
  const __m256d cd = _mm256_add_pd(c, d);
  const __m256d v = _mm256_add_pd(ab, cd);
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = a0, a2 = a0, a3 = a0;
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
    a1 = _mm256_add_pd(a1, _mm256_loadu_pd(x + i + 4));
    a2 = _mm256_add_pd(a2, _mm256_loadu_pd(x + i + 8));
    a3 = _mm256_add_pd(a3, _mm256_loadu_pd(x + i + 12));
  }
  for (; i + 4 <= n; i += 4) a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
  double s = hsum(a0, a1, a2, a3);
  for (; i < n; ++i) s += x[i];
  return s;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = a0, a2 = a0, a3 = a0;
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), a1);
    a2 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 8), _mm256_loadu_pd(y + i + 8), a2);
    a3 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 12), _mm256_loadu_pd(y + i + 12), a3);
  }
  for (; i + 4 <= n; i += 4) a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
  double s = hsum(a0, a1, a2, a3);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_sq_diff_avx2(const double* x, std::size_t n) {
  if (n < 2) return 0.0;
  const std::size_t m = n - 1;  // number of differences
  __m256d a0 = _mm256_setzero_pd(), a1 = a0;
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 1), _mm256_loadu_pd(x + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 5), _mm256_loadu_pd(x + i + 4));
    a0 = _mm256_fmadd_pd(d0, d0, a0);
    a1 = _mm256_fmadd_pd(d1, d1, a1);
  }
  for (; i + 4 <= m; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i + 1), _mm256_loadu_pd(x + i));
    a0 = _mm256_fmadd_pd(d, d, a0);
  }
  const __m256d z = _mm256_setzero_pd();
  double s = hsum(a0, a1, z, z);
  for (; i < m; ++i) {
    const double d = x[i + 1] - x[i];
    s += d * d;
  }
  return s;
}

double sum_sq_dev_avx2(const double* x, std::size_t n, double c) {
  const __m256d vc = _mm256_set1_pd(c);
  __m256d a0 = _mm256_setzero_pd(), a1 = a0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), vc);
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), vc);
    a0 = _mm256_fmadd_pd(d0, d0, a0);
    a1 = _mm256_fmadd_pd(d1, d1, a1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), vc);
    a0 = _mm256_fmadd_pd(d, d, a0);
  }
  const __m256d z = _mm256_setzero_pd();
  double s = hsum(a0, a1, z, z);
  for (; i < n; ++i) {
    const double d = x[i] - c;
    s += d * d;
  }
  return s;
}

double cross_dev_avx2(const double* x, const double* y, std::size_t n, double cx, double cy) {
  const __m256d vx = _mm256_set1_pd(cx);
  const __m256d vy = _mm256_set1_pd(cy);
  __m256d a0 = _mm256_setzero_pd(), a1 = a0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), vx),
                         _mm256_sub_pd(_mm256_loadu_pd(y + i), vy), a0);
    a1 = _mm256_fmadd_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i + 4), vx),
                         _mm256_sub_pd(_mm256_loadu_pd(y + i + 4), vy), a1);
  }
  for (; i + 4 <= n; i += 4) {
    a0 = _mm256_fmadd_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), vx),
                         _mm256_sub_pd(_mm256_loadu_pd(y + i), vy), a0);
  }
  const __m256d z = _mm256_setzero_pd();
  double s = hsum(a0, a1, z, z);
  for (; i < n; ++i) s += (x[i] - cx) * (y[i] - cy);
  return s;
}

void multiply_avx2(double* dst, const double* x, const double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) dst[i] = x[i] * y[i];
}

// No FMA here: a*x+b must round like the scalar reference.
void affine_avx2(double* dst, const double* x, std::size_t n, double a, double b) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(x + i)), vb));
  for (; i < n; ++i) dst[i] = a * x[i] + b;
}

void add_scalar_avx2(double* dst, std::size_t n, double c) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), vc));
  for (; i < n; ++i) dst[i] += c;
}

constexpr KernelTable kAvx2{
    sum_avx2,      dot_avx2,      sum_sq_diff_avx2, sum_sq_dev_avx2,
    cross_dev_avx2, multiply_avx2, affine_avx2,      add_scalar_avx2,
};

}  // namespace

const KernelTable& avx2_table() noexcept { return kAvx2; }

}  // namespace dsfa::kernels::detail
