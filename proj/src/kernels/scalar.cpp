#include "dsfa/kernels.hpp"

namespace dsfa::kernels {
namespace {

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_sq_diff_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = x[i] - x[i - 1];
    s += d * d;
  }
  return s;
}

double sum_sq_dev_scalar(const double* x, std::size_t n, double c) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - c;
    s += d * d;
  }
  return s;
}

double cross_dev_scalar(const double* x, const double* y, std::size_t n, double cx, double cy) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (x[i] - cx) * (y[i] - cy);
  return s;
}

void multiply_scalar(double* dst, const double* x, const double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = x[i] * y[i];
}

void affine_scalar(double* dst, const double* x, std::size_t n, double a, double b) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a * x[i] + b;
}

void add_scalar_scalar(double* dst, std::size_t n, double c) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += c;
}

constexpr KernelTable kScalar{
    sum_scalar,      dot_scalar,      sum_sq_diff_scalar, sum_sq_dev_scalar,
    cross_dev_scalar, multiply_scalar, affine_scalar,      add_scalar_scalar,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace dsfa::kernels
