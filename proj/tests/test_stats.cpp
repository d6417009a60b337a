#include <cmath>

#include "doctest.h"
#include "scaledyn/rng.hpp"
#include "scaledyn/stats.hpp"

using namespace scaledyn;

TEST_CASE("mean/variance/stderr on iid gaussians") {
  Rng rng(101);
  std::vector<double> xs(20000);
  for (double& x : xs) x = 2.0 + 3.0 * rng.normal();
  Estimate m = mean_estimate(xs);
  CHECK(std::abs(m.value - 2.0) < 4.0 * m.stderr_);
  CHECK(variance(xs) == doctest::Approx(9.0).epsilon(0.05));
  CHECK(autocorrelation_time(xs) < 2.0);
}

TEST_CASE("autocorrelation time of an AR(1) chain") {
  // x_{t+1} = a x_t + noise has integrated time (1+a)/(2(1-a))
  double a = 0.9;
  Rng rng(202);
  std::vector<double> xs(200000);
  double x = 0.0;
  for (double& v : xs) {
    x = a * x + rng.normal();
    v = x;
  }
  double tau = autocorrelation_time(xs);
  double expect = (1 + a) / (2 * (1 - a));  // 9.5
  CHECK(tau == doctest::Approx(expect).epsilon(0.25));
}

TEST_CASE("block bootstrap widens errors for correlated data") {
  double a = 0.9;
  Rng rng(303);
  std::vector<double> xs(40000);
  double x = 0.0;
  for (double& v : xs) {
    x = a * x + rng.normal();
    v = x;
  }
  Estimate naive = mean_estimate(xs);
  Estimate blocked = correlated_mean_estimate(xs, 99);
  CHECK(blocked.stderr_ > 2.0 * naive.stderr_);
  CHECK(blocked.value == naive.value);
}

TEST_CASE("line fit recovers slope and intercept") {
  std::vector<double> xs, ys;
  Rng rng(404);
  for (int i = 0; i < 200; ++i) {
    double x = i / 40.0;
    xs.push_back(x);
    ys.push_back(1.5 - 2.0 * x + 0.01 * rng.normal());
  }
  LineFit f = fit_line(xs, ys);
  CHECK(f.slope == doctest::Approx(-2.0).epsilon(0.01));
  CHECK(f.intercept == doctest::Approx(1.5).epsilon(0.01));
  CHECK(f.slope_err < 0.01);
}

TEST_CASE("rng normals have the right first moments") {
  Rng rng(505);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double x = rng.normal();
    s += x;
    s2 += x * x;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.02));
}
