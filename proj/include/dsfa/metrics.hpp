#pragma once

#include <span>
#include <vector>

namespace dsfa {

/// Slowness indicator: (T / 2 pi) * sqrt(delta(y)) / std(y), T = sample count.
/// A pure sine with n periods over the window scores approximately n.
double eta(std::span<const double> signal);

/// Pearson correlation coefficient.
double correlation(std::span<const double> x, std::span<const double> y);

/// Least-squares affine map a*y + b onto a target.
struct Alignment {
  double scale = 0.0;
  double offset = 0.0;
  double mse = 0.0;
};

struct AlignedSignal {
  Alignment fit;
  std::vector<double> values;
};

AlignedSignal align(std::span<const double> y, std::span<const double> target);

/// Mean of (a*y + b - target)^2.
double alignment_mse(std::span<const double> y, std::span<const double> target, double scale, double offset);

}  // namespace dsfa
