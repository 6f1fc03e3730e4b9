#pragma once

// Independent reference for the slow-feature problem on tiny inputs:
//   minimize w' Cdot w  subject to  w' C w = 1
// with C the sample covariance and Cdot the raw second moment of successive
// differences. Solved by Cholesky reduction and a cyclic Jacobi eigensolver.
// Plain std::vector code; shares nothing with the library pipeline.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix zeros(std::size_t n) { return Matrix(n, std::vector<double>(n, 0.0)); }

// Eigen-decomposition of a symmetric matrix; eigenvalues ascending, vectors
// as columns of the returned matrix.
inline std::pair<std::vector<double>, Matrix> jacobi_eigen(Matrix a) {
  const std::size_t n = a.size();
  Matrix v = zeros(n);
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = a[i][i];
  // selection sort, ascending
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = i;
    for (std::size_t j = i + 1; j < n; ++j)
      if (w[j] < w[best]) best = j;
    if (best != i) {
      std::swap(w[i], w[best]);
      for (std::size_t k = 0; k < n; ++k) std::swap(v[k][i], v[k][best]);
    }
  }
  return {w, v};
}

inline Matrix cholesky(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix l = zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (s <= 0) throw std::runtime_error("covariance not positive definite");
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  return l;
}

// Inverse of a lower-triangular matrix.
inline Matrix lower_inverse(const Matrix& l) {
  const std::size_t n = l.size();
  Matrix inv = zeros(n);
  for (std::size_t j = 0; j < n; ++j) {
    inv[j][j] = 1.0 / l[j][j];
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = j; k < i; ++k) s -= l[i][k] * inv[k][j];
      inv[i][j] = s / l[i][i];
    }
  }
  return inv;
}

/// Slowest output signal of a (samples x channels) input, row-major rows.
inline std::vector<double> slowest_signal(const Matrix& rows) {
  const std::size_t n = rows.size();
  const std::size_t d = rows.front().size();
  std::vector<double> mean(d, 0.0);
  for (const auto& r : rows)
    for (std::size_t j = 0; j < d; ++j) mean[j] += r[j];
  for (auto& m : mean) m /= static_cast<double>(n);

  Matrix cov = zeros(d), dcov = zeros(d);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) cov[i][j] += (r[i] - mean[i]) * (r[j] - mean[j]);
  for (std::size_t t = 0; t + 1 < n; ++t)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        dcov[i][j] += (rows[t + 1][i] - rows[t][i]) * (rows[t + 1][j] - rows[t][j]);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      cov[i][j] /= static_cast<double>(n);
      dcov[i][j] /= static_cast<double>(n - 1);
    }

  const Matrix linv = lower_inverse(cholesky(cov));
  // reduced = L^-1 dcov L^-T
  Matrix tmp = zeros(d), reduced = zeros(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) tmp[i][j] += linv[i][k] * dcov[k][j];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) reduced[i][j] += tmp[i][k] * linv[j][k];

  const auto [values, vectors] = jacobi_eigen(reduced);
  std::vector<double> w(d, 0.0);  // w = L^-T v
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) w[i] += linv[k][i] * vectors[k][0];

  std::vector<double> y(n, 0.0);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t j = 0; j < d; ++j) y[t] += (rows[t][j] - mean[j]) * w[j];
  return y;
}

}  // namespace oracle
