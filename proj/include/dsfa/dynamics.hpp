#pragma once

#include <cstdint>
#include <vector>

namespace dsfa {

/// Angular frequencies of the two force components per unit of base
/// frequency. Their ratio (9.4) puts the slow part roughly an order of
/// magnitude below the fast one.
inline constexpr double kSlowRate = 0.0005;
inline constexpr double kFastRate = 0.0047;

/// Composite driving force gamma(t) = (slow(t) + fast(t)) / 2 sampled at
/// t = 1..length.
struct DrivingForce {
  double base_frequency = 0.0;
  std::vector<double> values;
  std::vector<double> slow;
  std::vector<double> fast;

  std::size_t length() const noexcept { return values.size(); }
  /// Time index of values[0].
  static constexpr long kFirstTime = 1;
};

DrivingForce make_driving_force(double base_frequency, std::size_t length);

struct LogisticParams {
  double q = 0.1;
  double initial_value = 0.3;
  std::size_t burn_in = 0;
};

/// Uniformly sampled scalar series, dt = 1. `start` is the absolute time index
/// of values[0].
struct TimeSeries {
  std::vector<double> values;
  long start = 1;

  std::size_t size() const noexcept { return values.size(); }
  long last_time() const noexcept { return start + static_cast<long>(values.size()) - 1; }
};

/// Control parameter of the driven map at force value `gamma`.
inline double logistic_rate(double q, double gamma) noexcept { return 4.0 - q + 0.1 * gamma; }

/// u(t+1) = (4 - q + 0.1 gamma(t)) u(t) (1 - u(t)) with u(1) = initial_value.
/// The first burn_in samples are dropped; the result keeps absolute time
/// indices (start = burn_in + 1).
TimeSeries logistic_series(const DrivingForce& force, const LogisticParams& params);

enum class NoiseScale {
  UnitInterval,  // sigma = percent / 100
  SeriesStd,     // sigma = percent / 100 * std(u)
};

/// Adds i.i.d. Gaussian noise. The stream is mt19937_64 seeded from `seed`;
/// percent == 0 returns an exact copy.
TimeSeries add_noise(const TimeSeries& series, double percent, std::uint64_t seed,
                     NoiseScale scale = NoiseScale::UnitInterval);

/// Name of the pseudo-random algorithm behind add_noise, for provenance columns.
inline constexpr const char* kRngName = "mt19937_64";

/// SplitMix64 finalizer; used to derive independent per-cell seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t coordinate) noexcept;

}  // namespace dsfa
