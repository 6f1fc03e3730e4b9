#include "dsfa/dynamics.hpp"

#include <cmath>
#include <random>
#include <string>

#include "dsfa/error.hpp"
#include "dsfa/kernels.hpp"

namespace dsfa {

DrivingForce make_driving_force(double base_frequency, std::size_t length) {
  if (!(base_frequency > 0.0) || !std::isfinite(base_frequency))
    throw InvalidParameter("base frequency must be positive, got " + std::to_string(base_frequency));
  if (length < 2) throw InvalidParameter("driving force needs at least 2 samples");

  DrivingForce f;
  f.base_frequency = base_frequency;
  f.values.resize(length);
  f.slow.resize(length);
  f.fast.resize(length);
  const double ws = kSlowRate * base_frequency;
  const double wf = kFastRate * base_frequency;
  for (std::size_t i = 0; i < length; ++i) {
    const double t = static_cast<double>(i + DrivingForce::kFirstTime);
    f.slow[i] = std::sin(ws * t);
    f.fast[i] = std::sin(wf * t);
    f.values[i] = (f.slow[i] + f.fast[i]) / 2.0;
  }
  return f;
}

TimeSeries logistic_series(const DrivingForce& force, const LogisticParams& params) {
  if (!(params.q >= 0.1 && params.q <= 3.9))
    throw InvalidParameter("q must lie in [0.1, 3.9], got " + std::to_string(params.q));
  if (!(params.initial_value > 0.0 && params.initial_value < 1.0))
    throw InvalidParameter("initial value must lie in (0, 1)");
  if (force.length() < params.burn_in + 2)
    throw InsufficientData("force length " + std::to_string(force.length()) +
                           " too short for burn-in " + std::to_string(params.burn_in));

  const std::size_t n = force.length();
  TimeSeries out;
  out.start = static_cast<long>(params.burn_in) + 1;
  out.values.reserve(n - params.burn_in);

  double u = params.initial_value;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(u >= 0.0 && u <= 1.0))
      throw NumericalDomain("logistic state left [0,1] at t=" + std::to_string(i + 1));
    if (i >= params.burn_in) out.values.push_back(u);
    u = logistic_rate(params.q, force.values[i]) * u * (1.0 - u);
  }
  return out;
}

TimeSeries add_noise(const TimeSeries& series, double percent, std::uint64_t seed, NoiseScale scale) {
  if (!(percent >= 0.0) || !std::isfinite(percent))
    throw InvalidParameter("noise percent must be nonnegative");
  TimeSeries out = series;
  if (percent == 0.0 || series.values.empty()) return out;

  double sigma = percent / 100.0;
  if (scale == NoiseScale::SeriesStd) {
    const auto n = static_cast<double>(series.size());
    const double mu = kernels::mean(series.values);
    sigma *= std::sqrt(kernels::sum_sq_dev(series.values, mu) / n);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  for (double& v : out.values) v += normal(rng);
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t coordinate) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (coordinate + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace dsfa
