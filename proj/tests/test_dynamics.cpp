#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dsfa/dynamics.hpp"
#include "dsfa/error.hpp"
#include "dsfa/metrics.hpp"

using namespace dsfa;

namespace {

DrivingForce constant_force(double value, std::size_t n) {
  DrivingForce f;
  f.base_frequency = 1.0;
  f.values.assign(n, value);
  f.slow.assign(n, value);
  f.fast.assign(n, value);
  return f;
}

double sample_std(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

TEST_CASE("driving force components and identity") {
  const DrivingForce f = make_driving_force(40.0, 6000);
  REQUIRE(f.length() == 6000);
  for (std::size_t i = 0; i < f.length(); ++i) {
    const double t = static_cast<double>(i + 1);
    REQUIRE(f.slow[i] == std::sin(0.0005 * 40.0 * t));
    REQUIRE(f.fast[i] == std::sin(0.0047 * 40.0 * t));
    REQUIRE(f.values[i] == (f.slow[i] + f.fast[i]) / 2.0);
  }
  CHECK(kFastRate / kSlowRate == doctest::Approx(9.4).epsilon(1e-12));

  // exhaustive scan: the two peaks never coincide within 6000 samples
  double peak = 0.0;
  for (double v : f.values) peak = std::max(peak, std::abs(v));
  CHECK(peak < 1.0);
  CHECK(peak > 0.99);
}

TEST_CASE("driving force vanishes where both phases are multiples of pi") {
  // 0.0005 * nu * 1000 = 5 pi  and  0.0047 * nu * 1000 = 47 pi
  const DrivingForce f = make_driving_force(10.0 * std::numbers::pi, 1000);
  CHECK(std::abs(f.values.back()) < 1e-12);
}

TEST_CASE("slowness of the reference force at nu_f = 40") {
  const DrivingForce f = make_driving_force(40.0, 6000);
  const double eta_full = eta(f.values);
  const double eta_slow = eta(f.slow);
  CHECK(eta_full >= 125.0);
  CHECK(eta_full <= 129.0);
  CHECK(eta_slow >= 18.9);
  CHECK(eta_slow <= 19.3);
}

TEST_CASE("driving force rejects bad parameters") {
  CHECK_THROWS_AS(make_driving_force(0.0, 100), InvalidParameter);
  CHECK_THROWS_AS(make_driving_force(-1.0, 100), InvalidParameter);
  CHECK_THROWS_AS(make_driving_force(1.0, 1), InvalidParameter);
}

TEST_CASE("logistic map first steps at r = 4") {
  const TimeSeries s = logistic_series(constant_force(1.0, 5), {0.1, 0.3, 0});
  REQUIRE(s.size() == 5);
  CHECK(s.start == 1);
  CHECK(s.values[0] == 0.3);
  CHECK(s.values[1] == doctest::Approx(0.84).epsilon(1e-14));
  CHECK(s.values[2] == doctest::Approx(0.5376).epsilon(1e-14));
}

TEST_CASE("logistic map with r = 1 decays monotonically to zero") {
  const TimeSeries s = logistic_series(constant_force(0.0, 500), {3.0, 0.3, 0});
  for (std::size_t i = 1; i < s.size(); ++i) REQUIRE(s.values[i] < s.values[i - 1]);
  CHECK(s.values.back() < 0.01);
}

TEST_CASE("chaotic driven series stays in the unit interval with real spread") {
  const TimeSeries s = logistic_series(make_driving_force(20.0, 6000), {0.1, 0.3, 0});
  REQUIRE(s.size() == 6000);
  for (double u : s.values) REQUIRE((u >= 0.0 && u <= 1.0));
  const double sd = sample_std(s.values);
  CHECK(sd * sd > 0.01);
}

TEST_CASE("burn-in drops leading samples and keeps absolute time") {
  const DrivingForce f = make_driving_force(20.0, 100);
  const TimeSeries full = logistic_series(f, {0.4, 0.3, 0});
  const TimeSeries cut = logistic_series(f, {0.4, 0.3, 30});
  REQUIRE(cut.size() == 70);
  CHECK(cut.start == 31);
  CHECK(cut.last_time() == 100);
  CHECK(std::equal(cut.values.begin(), cut.values.end(), full.values.begin() + 30));
  CHECK_THROWS_AS(logistic_series(f, {0.4, 0.3, 99}), InsufficientData);
}

TEST_CASE("logistic parameters are validated") {
  const DrivingForce f = make_driving_force(20.0, 10);
  CHECK_THROWS_AS(logistic_series(f, {0.05, 0.3, 0}), InvalidParameter);
  CHECK_THROWS_AS(logistic_series(f, {4.0, 0.3, 0}), InvalidParameter);
  CHECK_THROWS_AS(logistic_series(f, {0.1, 0.0, 0}), InvalidParameter);
  CHECK_THROWS_AS(logistic_series(f, {0.1, 1.0, 0}), InvalidParameter);
}

TEST_CASE("property: the driven map keeps [0,1] invariant") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> q(0.1, 3.9), g(-1.0, 1.0), u(0.0, 1.0);
  for (int i = 0; i < 200000; ++i) {
    const double x = u(rng);
    const double r = logistic_rate(q(rng), g(rng));
    REQUIRE(r > 0.0);
    REQUIRE(r <= 4.0);
    const double next = r * x * (1.0 - x);
    REQUIRE((next >= 0.0 && next <= 1.0));
  }
  // endpoints and the apex
  for (double x : {0.0, 0.5, 1.0}) {
    const double next = logistic_rate(0.1, 1.0) * x * (1.0 - x);
    CHECK((next >= 0.0 && next <= 1.0));
  }
}

TEST_CASE("zero noise returns an exact copy") {
  const TimeSeries s = logistic_series(make_driving_force(20.0, 500), {0.1, 0.3, 0});
  const TimeSeries n = add_noise(s, 0.0, 123);
  CHECK(n.values == s.values);
  CHECK(n.start == s.start);
}

TEST_CASE("noise is deterministic per seed") {
  const TimeSeries s = logistic_series(make_driving_force(20.0, 500), {0.1, 0.3, 0});
  const TimeSeries a = add_noise(s, 5.0, 42);
  const TimeSeries b = add_noise(s, 5.0, 42);
  const TimeSeries c = add_noise(s, 5.0, 43);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  CHECK(a.values != s.values);
}

TEST_CASE("noise amplitude on a unit-variance series") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> d(0.0, 1.0);
  TimeSeries s;
  s.values.resize(100000);
  for (auto& v : s.values) v = d(rng);
  // rescale to exactly unit population variance
  double m = 0, q = 0;
  for (double v : s.values) m += v;
  m /= 1e5;
  for (double v : s.values) q += (v - m) * (v - m);
  const double sd = std::sqrt(q / 1e5);
  for (auto& v : s.values) v = (v - m) / sd;

  for (NoiseScale scale : {NoiseScale::UnitInterval, NoiseScale::SeriesStd}) {
    const TimeSeries n = add_noise(s, 1.0, 99, scale);
    std::vector<double> diff(s.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = n.values[i] - s.values[i];
    const double got = sample_std(diff);
    CHECK(got >= 0.0095);
    CHECK(got <= 0.0105);
  }
}

TEST_CASE("noise scales differ on a series with small spread") {
  const TimeSeries s = logistic_series(make_driving_force(20.0, 20000), {0.1, 0.3, 0});
  const double sd_u = sample_std(s.values);
  std::vector<double> diff(s.size());
  const TimeSeries rel = add_noise(s, 2.0, 1, NoiseScale::SeriesStd);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = rel.values[i] - s.values[i];
  CHECK(sample_std(diff) == doctest::Approx(0.02 * sd_u).epsilon(0.03));
}

TEST_CASE("negative noise is rejected") {
  TimeSeries s;
  s.values = {0.1, 0.2};
  CHECK_THROWS_AS(add_noise(s, -1.0, 0), InvalidParameter);
}

TEST_CASE("seed mixing separates coordinates") {
  CHECK(mix_seed(0, 0) != mix_seed(0, 1));
  CHECK(mix_seed(0, 1) != mix_seed(1, 1));
  CHECK(mix_seed(3, 2) == mix_seed(3, 2));
}
