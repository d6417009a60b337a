#include <cmath>

#include "doctest.h"
#include "scaledyn/quadrature.hpp"

using namespace scaledyn;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  std::vector<double> nodes, weights;
  gauss_legendre_on(8, 0.0, 2.0, nodes, weights);
  double s1 = 0.0, s7 = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    s1 += weights[i];
    s7 += weights[i] * std::pow(nodes[i], 7);
  }
  CHECK(s1 == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(s7 == doctest::Approx(std::pow(2.0, 8) / 8.0).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature hits smooth and kinked integrands") {
  auto g = [](double x) { return std::exp(-x) * std::sin(3.0 * x); };
  double exact = (3.0 - std::exp(-2.0) * (std::sin(6.0) * 1.0 + 3.0 * std::cos(6.0))) / 10.0;
  // \int_0^2 e^{-x} sin 3x dx = [e^{-x}(-sin3x - 3cos3x)/10]_0^2
  double got = integrate_adaptive(g, 0.0, 2.0, 1e-10).value;
  CHECK(got == doctest::Approx(exact).epsilon(1e-9));

  auto kink = [](double x) { return std::abs(x - 0.7); };
  double kexact = 0.5 * (0.7 * 0.7 + 0.3 * 0.3);
  CHECK(integrate_adaptive(kink, 0.0, 1.0, 1e-10).value ==
        doctest::Approx(kexact).epsilon(1e-8));
}

TEST_CASE("trapezoid agrees with adaptive on a smooth integrand") {
  auto g = [](double x) { return 1.0 / (1.0 + x * x); };
  double a = integrate_adaptive(g, 0.0, 1.0, 1e-10).value;
  double t = integrate_trapezoid(g, 0.0, 1.0, 20001);
  CHECK(std::abs(a - t) < 1e-8);
  CHECK(a == doctest::Approx(M_PI / 4.0).epsilon(1e-9));
}

TEST_CASE("sphere surface constants") {
  CHECK(sphere_surface(1) == 2.0);
  CHECK(sphere_surface(2) == doctest::Approx(2.0 * M_PI));
  CHECK(sphere_surface(3) == doctest::Approx(4.0 * M_PI));
}
