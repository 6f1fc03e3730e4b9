#include "dsfa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dsfa/error.hpp"
#include "dsfa/kernels.hpp"
#include "dsfa/sfa.hpp"

namespace dsfa {
namespace {

void require_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw InvalidParameter("length mismatch: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  if (x.size() < 2) throw InsufficientData("need at least 2 samples");
}

}  // namespace

double eta(std::span<const double> signal) {
  if (signal.size() < 2) throw InsufficientData("eta needs at least 2 samples");
  const auto n = static_cast<double>(signal.size());
  const double var = kernels::sum_sq_dev(signal, kernels::mean(signal)) / n;
  if (!(var > 0.0)) throw DegenerateSignal("eta of a constant signal is undefined");
  return n / (2.0 * std::numbers::pi) * std::sqrt(delta(signal)) / std::sqrt(var);
}

double correlation(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y);
  const double mx = kernels::mean(x);
  const double my = kernels::mean(y);
  const double sxx = kernels::sum_sq_dev(x, mx);
  const double syy = kernels::sum_sq_dev(y, my);
  if (!(sxx > 0.0) || !(syy > 0.0)) throw DegenerateSignal("correlation with a constant signal is undefined");
  const double c = kernels::cross_dev(x, y, mx, my) / std::sqrt(sxx * syy);
  return std::clamp(c, -1.0, 1.0);
}

double alignment_mse(std::span<const double> y, std::span<const double> target, double scale, double offset) {
  require_pair(y, target);
  std::vector<double> fitted(y.size());
  kernels::affine(fitted, y, scale, offset);
  double s = 0.0;
  for (std::size_t i = 0; i < fitted.size(); ++i) {
    const double r = fitted[i] - target[i];
    s += r * r;
  }
  return s / static_cast<double>(y.size());
}

AlignedSignal align(std::span<const double> y, std::span<const double> target) {
  require_pair(y, target);
  const double my = kernels::mean(y);
  const double mt = kernels::mean(target);
  const double syy = kernels::sum_sq_dev(y, my);
  if (!(syy > 0.0)) throw DegenerateSignal("cannot align a constant signal");

  AlignedSignal out;
  out.fit.scale = kernels::cross_dev(y, target, my, mt) / syy;
  out.fit.offset = mt - out.fit.scale * my;
  out.values.resize(y.size());
  kernels::affine(out.values, y, out.fit.scale, out.fit.offset);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = out.values[i] - target[i];
    s += r * r;
  }
  out.fit.mse = s / static_cast<double>(y.size());
  return out;
}

}  // namespace dsfa
