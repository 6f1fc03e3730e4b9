#include <arm_neon.h>

#include "variants.hpp"

namespace dsfa::kernels::detail {
namespace {

double sum_neon(const double* x, std::size_t n) {
  float64x2_t a0 = vdupq_n_f64(0.0), a1 = a0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 = vaddq_f64(a0, vld1q_f64(x + i));
    a1 = vaddq_f64(a1, vld1q_f64(x + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(a0, a1));
  for (; i < n; ++i) s += x[i];
  return s;
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t a0 = vdupq_n_f64(0.0), a1 = a0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 = vfmaq_f64(a0, vld1q_f64(x + i), vld1q_f64(y + i));
    a1 = vfmaq_f64(a1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(a0, a1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_sq_diff_neon(const double* x, std::size_t n) {
  if (n < 2) return 0.0;
  const std::size_t m = n - 1;
  float64x2_t a0 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= m; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(x + i + 1), vld1q_f64(x + i));
    a0 = vfmaq_f64(a0, d, d);
  }
  double s = vaddvq_f64(a0);
  for (; i < m; ++i) {
    const double d = x[i + 1] - x[i];
    s += d * d;
  }
  return s;
}

double sum_sq_dev_neon(const double* x, std::size_t n, double c) {
  const float64x2_t vc = vdupq_n_f64(c);
  float64x2_t a0 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(x + i), vc);
    a0 = vfmaq_f64(a0, d, d);
  }
  double s = vaddvq_f64(a0);
  for (; i < n; ++i) {
    const double d = x[i] - c;
    s += d * d;
  }
  return s;
}

double cross_dev_neon(const double* x, const double* y, std::size_t n, double cx, double cy) {
  const float64x2_t vx = vdupq_n_f64(cx);
  const float64x2_t vy = vdupq_n_f64(cy);
  float64x2_t a0 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    a0 = vfmaq_f64(a0, vsubq_f64(vld1q_f64(x + i), vx), vsubq_f64(vld1q_f64(y + i), vy));
  double s = vaddvq_f64(a0);
  for (; i < n; ++i) s += (x[i] - cx) * (y[i] - cy);
  return s;
}

void multiply_neon(double* dst, const double* x, const double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
  for (; i < n; ++i) dst[i] = x[i] * y[i];
}

void affine_neon(double* dst, const double* x, std::size_t n, double a, double b) {
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t vb = vdupq_n_f64(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vaddq_f64(vmulq_f64(va, vld1q_f64(x + i)), vb));
  for (; i < n; ++i) dst[i] = a * x[i] + b;
}

void add_scalar_neon(double* dst, std::size_t n, double c) {
  const float64x2_t vc = vdupq_n_f64(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vaddq_f64(vld1q_f64(dst + i), vc));
  for (; i < n; ++i) dst[i] += c;
}

constexpr KernelTable kNeon{
    sum_neon,      dot_neon,      sum_sq_diff_neon, sum_sq_dev_neon,
    cross_dev_neon, multiply_neon, affine_neon,      add_scalar_neon,
};

}  // namespace

const KernelTable& neon_table() noexcept { return kNeon; }

}  // namespace dsfa::kernels::detail
