#include <atomic>
#include <cassert>

#include "variants.hpp"

namespace dsfa::kernels {
namespace {

bool cpu_has(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(DSFA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(DSFA_HAVE_NEON)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() noexcept {
  if (cpu_has(Isa::Avx2)) return Isa::Avx2;
  if (cpu_has(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

struct Selection {
  std::atomic<const KernelTable*> table;
  std::atomic<Isa> isa;
  Selection() : table(table_for(best_isa())), isa(best_isa()) {}
};

Selection& selection() noexcept {
  static Selection s;
  return s;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

const KernelTable* table_for(Isa isa) noexcept {
  if (!cpu_has(isa)) return nullptr;
  switch (isa) {
    case Isa::Scalar:
      return &scalar_table();
#if defined(DSFA_HAVE_AVX2)
    case Isa::Avx2:
      return &detail::avx2_table();
#endif
#if defined(DSFA_HAVE_NEON)
    case Isa::Neon:
      return &detail::neon_table();
#endif
    default:
      return nullptr;
  }
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
    if (table_for(isa) != nullptr) out.push_back(isa);
  return out;
}

Isa active_isa() noexcept { return selection().isa.load(std::memory_order_relaxed); }

const KernelTable& active() noexcept { return *selection().table.load(std::memory_order_relaxed); }

bool select(Isa isa) noexcept {
  const KernelTable* t = table_for(isa);
  if (t == nullptr) return false;
  selection().table.store(t, std::memory_order_relaxed);
  selection().isa.store(isa, std::memory_order_relaxed);
  return true;
}

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

double mean(std::span<const double> x) {
  return x.empty() ? 0.0 : sum(x) / static_cast<double>(x.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return active().dot(x.data(), y.data(), x.size());
}

double sum_sq_diff(std::span<const double> x) { return active().sum_sq_diff(x.data(), x.size()); }

double sum_sq_dev(std::span<const double> x, double c) {
  return active().sum_sq_dev(x.data(), x.size(), c);
}

double cross_dev(std::span<const double> x, std::span<const double> y, double cx, double cy) {
  assert(x.size() == y.size());
  return active().cross_dev(x.data(), y.data(), x.size(), cx, cy);
}

void multiply(std::span<double> dst, std::span<const double> x, std::span<const double> y) {
  assert(dst.size() == x.size() && x.size() == y.size());
  active().multiply(dst.data(), x.data(), y.data(), dst.size());
}

void affine(std::span<double> dst, std::span<const double> x, double a, double b) {
  assert(dst.size() == x.size());
  active().affine(dst.data(), x.data(), dst.size(), a, b);
}

void add_scalar(std::span<double> dst, double c) { active().add_scalar(dst.data(), dst.size(), c); }

}  // namespace dsfa::kernels
