#pragma once

// Data-parallel building blocks shared by metrics, delta and the monomial
// expansion. Each kernel has a portable scalar reference and, where the target
// supports it, an AVX2 or NEON variant. The active variant is chosen once at
// first use from the CPU's capabilities and may be overridden with select().
//
// Elementwise kernels (multiply, affine, add_scalar) are bit-identical across
// variants. Reductions use a different summation order in the SIMD variants
// and agree with the scalar reference to rounding.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace dsfa::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_{i} (x[i+1] - x[i])^2 over n samples (n-1 differences); 0 for n < 2
  double (*sum_sq_diff)(const double* x, std::size_t n);
  // sum_{i} (x[i] - c)^2
  double (*sum_sq_dev)(const double* x, std::size_t n, double c);
  // sum_{i} (x[i] - cx) * (y[i] - cy)
  double (*cross_dev)(const double* x, const double* y, std::size_t n, double cx, double cy);
  void (*multiply)(double* dst, const double* x, const double* y, std::size_t n);
  void (*affine)(double* dst, const double* x, std::size_t n, double a, double b);
  void (*add_scalar)(double* dst, std::size_t n, double c);
};

/// Table of the portable reference implementation.
const KernelTable& scalar_table() noexcept;

/// Table for `isa`, or nullptr when the variant is not compiled in or the
/// running CPU lacks the instructions.
const KernelTable* table_for(Isa isa) noexcept;

/// ISAs usable on this machine, scalar first.
std::vector<Isa> available_isas();

/// Currently dispatched variant.
Isa active_isa() noexcept;
const KernelTable& active() noexcept;

/// Force a variant. Returns false (and leaves the selection unchanged) when
/// it is unavailable.
bool select(Isa isa) noexcept;

// Span-level wrappers over the active table.
double sum(std::span<const double> x);
double mean(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double sum_sq_diff(std::span<const double> x);
double sum_sq_dev(std::span<const double> x, double c);
double cross_dev(std::span<const double> x, std::span<const double> y, double cx, double cy);
void multiply(std::span<double> dst, std::span<const double> x, std::span<const double> y);
void affine(std::span<double> dst, std::span<const double> x, double a, double b);
void add_scalar(std::span<double> dst, double c);

}  // namespace dsfa::kernels
