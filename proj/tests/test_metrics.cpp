#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dsfa/dynamics.hpp"
#include "dsfa/error.hpp"
#include "dsfa/metrics.hpp"

using namespace dsfa;

namespace {

std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

std::vector<double> affine_copy(const std::vector<double>& x, double a, double b) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = a * x[i] + b;
  return y;
}

double variance(const std::vector<double>& x) {
  double m = 0;
  for (double v : x) m += v;
  m /= static_cast<double>(x.size());
  double s = 0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size());
}

}  // namespace

TEST_CASE("eta counts oscillations of a pure sine") {
  const int n = 6000;
  std::vector<double> y(n);
  for (int t = 0; t < n; ++t) y[t] = std::sin(5.0 * 2.0 * std::numbers::pi * (t + 1) / n);
  const double e = eta(y);
  CHECK(e >= 4.95);
  CHECK(e <= 5.05);
}

TEST_CASE("eta is invariant under affine maps") {
  const DrivingForce f = make_driving_force(40.0, 6000);
  const double base = eta(f.values);
  CHECK(eta(affine_copy(f.values, -3.0, 7.0)) == doctest::Approx(base).epsilon(1e-12));

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> scale(-50.0, 50.0), shift(-100.0, 100.0);
  const auto noise = gaussian(500, 4);
  const double base_noise = eta(noise);
  for (int i = 0; i < 200; ++i) {
    double a = scale(rng);
    if (std::abs(a) < 1e-3) a = 1.0;
    CHECK(eta(affine_copy(noise, a, shift(rng))) == doctest::Approx(base_noise).epsilon(1e-10));
  }
}

TEST_CASE("eta of the reference force") {
  const DrivingForce f = make_driving_force(40.0, 6000);
  CHECK(eta(f.values) == doctest::Approx(127.0).epsilon(2.0 / 127.0));
  CHECK(eta(f.slow) == doctest::Approx(19.1).epsilon(0.2 / 19.1));
}

TEST_CASE("eta rejects constant and short signals") {
  CHECK_THROWS_AS(eta(std::vector<double>(10, 1.0)), DegenerateSignal);
  CHECK_THROWS_AS(eta(std::vector<double>{1.0}), InsufficientData);
}

TEST_CASE("correlation basics") {
  const auto x = gaussian(1000, 2);
  CHECK(correlation(x, x) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(correlation(x, affine_copy(x, -2.0, 5.0)) == doctest::Approx(-1.0).epsilon(1e-14));
  const auto a = gaussian(100000, 10);
  const auto b = gaussian(100000, 11);
  CHECK(std::abs(correlation(a, b)) < 0.02);
}

TEST_CASE("correlation symmetry and sign under scaling") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> scale(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const auto x = gaussian(200, 100 + i);
    auto y = gaussian(200, 1000 + i);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += 0.5 * x[j];
    const double c = correlation(x, y);
    CHECK(correlation(y, x) == doctest::Approx(c).epsilon(1e-14));
    const double a = scale(rng);
    CHECK(correlation(affine_copy(x, a, 3.0), y) == doctest::Approx((a > 0 ? 1 : -1) * c).epsilon(1e-12));
  }
}

TEST_CASE("correlation errors") {
  CHECK_THROWS_AS(correlation(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}), InvalidParameter);
  CHECK_THROWS_AS(correlation(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), DegenerateSignal);
}

TEST_CASE("alignment recovers affine maps") {
  const DrivingForce f = make_driving_force(40.0, 2000);
  const AlignedSignal self = align(f.values, f.values);
  CHECK(self.fit.scale == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(self.fit.offset) < 1e-15);
  CHECK(self.fit.mse < 1e-28);

  const AlignedSignal inv = align(affine_copy(f.values, -1.0, 0.5), f.values);
  CHECK(inv.fit.scale == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(inv.fit.offset == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(inv.fit.mse < 1e-26);
}

TEST_CASE("alignment is a local minimum of the squared error") {
  const auto y = gaussian(3000, 5);
  auto target = gaussian(3000, 6);
  for (std::size_t i = 0; i < y.size(); ++i) target[i] += 0.7 * y[i] + 0.2;
  const AlignedSignal best = align(y, target);
  const double mse = best.fit.mse;
  CHECK(alignment_mse(y, target, best.fit.scale, best.fit.offset) == doctest::Approx(mse).epsilon(1e-12));
  for (double d : {-1e-3, 1e-3}) {
    CHECK(alignment_mse(y, target, best.fit.scale + d, best.fit.offset) > mse);
    CHECK(alignment_mse(y, target, best.fit.scale, best.fit.offset + d) > mse);
  }
}

TEST_CASE("property: closed-form alignment beats random perturbations and satisfies the LS identity") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> step(0.0, 0.05);
  for (int trial = 0; trial < 50; ++trial) {
    const auto y = gaussian(400, 200 + trial);
    auto target = gaussian(400, 300 + trial);
    for (std::size_t i = 0; i < y.size(); ++i) target[i] = 0.3 * target[i] + std::sin(y[i]) - 0.4;
    const AlignedSignal best = align(y, target);
    for (int k = 0; k < 100; ++k)
      CHECK(best.fit.mse <= alignment_mse(y, target, best.fit.scale + step(rng), best.fit.offset + step(rng)));
    const double c = correlation(y, target);
    CHECK(std::abs(c * c - (1.0 - best.fit.mse / variance(target))) <= 1e-10);
  }
}

TEST_CASE("alignment of a constant signal is degenerate") {
  CHECK_THROWS_AS(align(std::vector<double>(5, 2.0), std::vector<double>{1, 2, 3, 4, 5}), DegenerateSignal);
}
