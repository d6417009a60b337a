#include <cmath>

#include "doctest.h"
#include "scaledyn/hermite.hpp"
#include "scaledyn/quadrature.hpp"

using namespace scaledyn;

TEST_CASE("ground state value and large-argument stability") {
  CHECK(hermite_eval(0, 0.0) == doctest::Approx(std::pow(M_PI, -0.25)).epsilon(1e-14));
  // the normalized recurrence keeps everything bounded: no overflow at large
  // n and |x|, and the Gaussian tail wins far out
  CHECK(std::isfinite(hermite_eval(80, 10.0)));
  CHECK(std::abs(hermite_eval(40, 14.0)) < 1e-8);
  CHECK(std::abs(hermite_eval(10, 3.0)) < 1.0);
}

TEST_CASE("orthonormality under quadrature") {
  std::vector<double> nodes, weights;
  gauss_legendre_on(400, -14.0, 14.0, nodes, weights);
  for (int i = 0; i <= 10; ++i)
    for (int j = i; j <= 10; ++j) {
      double s = 0.0;
      for (size_t q = 0; q < nodes.size(); ++q)
        s += weights[q] * hermite_eval(i, nodes[q]) * hermite_eval(j, nodes[q]);
      CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-8);
    }
}

TEST_CASE("eigen relation <e_i, A e_i> = 2i+1 with a finite-difference A") {
  std::vector<double> nodes, weights;
  gauss_legendre_on(600, -12.0, 12.0, nodes, weights);
  double h = 1e-4;
  for (int n : {0, 1, 3, 7}) {
    double s = 0.0;
    for (size_t q = 0; q < nodes.size(); ++q) {
      double x = nodes[q];
      double f = hermite_eval(n, x);
      double fpp = (hermite_eval(n, x + h) - 2.0 * f + hermite_eval(n, x - h)) / (h * h);
      s += weights[q] * f * (-fpp + x * x * f);
    }
    CHECK(s == doctest::Approx(2.0 * n + 1.0).epsilon(1e-6));
  }
}

TEST_CASE("derivative matches finite differences") {
  double h = 1e-6;
  for (int n : {0, 2, 5}) {
    for (double x : {-1.3, 0.2, 2.4}) {
      double fd = (hermite_eval(n, x + h) - hermite_eval(n, x - h)) / (2 * h);
      CHECK(hermite_deriv(n, x) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("basis enumeration sorted by eigenvalue 2|n| + d") {
  HermiteBasis basis(2, 6);
  CHECK(basis.eigenvalues.front() == 2.0);  // ground state eigenvalue = d
  for (size_t i = 1; i < basis.size(); ++i)
    CHECK(basis.eigenvalues[i] >= basis.eigenvalues[i - 1]);
  // degeneracy of level a = 2m + d in d=2 is m+1
  size_t level1 = 0;
  for (double a : basis.eigenvalues)
    if (a == 4.0) ++level1;
  CHECK(level1 == 2);
  CHECK(basis.size() == 28);  // C(6+2, 2) multi-indices with |n| <= 6
}

TEST_CASE("truncated negative Sobolev norm") {
  HermiteBasis basis(2, 4);
  std::vector<double> v(basis.size(), 0.0);
  CHECK(sobolev_norm_neg(v, basis.eigenvalues, 3.0) == 0.0);

  v[0] = 1.0;  // single ground-state pairing: d^{-m}
  CHECK(sobolev_norm_neg(v, basis.eigenvalues, 3.0) ==
        doctest::Approx(std::pow(2.0, -3.0)).epsilon(1e-14));

  // monotone in the truncation M, decreasing in m (eigenvalues >= d = 2 > 1)
  std::vector<double> w(basis.size(), 0.5);
  std::vector<double> w_short(w.begin(), w.begin() + 5);
  CHECK(sobolev_norm_neg(w_short, basis.eigenvalues, 3.0) <
        sobolev_norm_neg(w, basis.eigenvalues, 3.0));
  CHECK(sobolev_norm_neg(w, basis.eigenvalues, 5.0) <
        sobolev_norm_neg(w, basis.eigenvalues, 3.0));
}
