#include <cmath>

#include "doctest.h"
#include "scaledyn/potential.hpp"
#include "scaledyn/quadrature.hpp"
#include "scaledyn/rng.hpp"

using namespace scaledyn;

namespace {

double raw_lj(double eps, double sigma, double r) {
  double s6 = std::pow(sigma / r, 6);
  return 4.0 * eps * (s6 * s6 - s6);
}

Vec make_vec(double x, double y = 0.0, double z = 0.0) {
  Vec v;
  v[0] = x;
  v[1] = y;
  v[2] = z;
  return v;
}

}  // namespace

TEST_CASE("zero potential evaluates to nothing") {
  PairPotential p = PairPotential::zero(2);
  CHECK(p.evaluate(make_vec(1.0, 0.0)) == 0.0);
  Vec g;
  Mat h;
  p.derivatives(make_vec(0.3, -0.4), g, h);
  for (int a = 0; a < 2; ++a) {
    CHECK(g[a] == 0.0);
    for (int b = 0; b < 2; ++b) CHECK(h(a, b) == 0.0);
  }
  PotentialMoments m = p.moments(0.3);
  CHECK(m.int_phi == 0.0);
  CHECK(m.int_x1d1_sq == 0.0);
  CHECK(m.mayer_c == 0.0);
}

TEST_CASE("pair symmetry phi(x) = phi(-x) at machine precision") {
  Rng rng(7);
  for (auto p : {PairPotential::smooth_compact(2, 0.4, 0.8),
                 PairPotential::lennard_jones(2, 1.0, 1.0, 2.5)}) {
    for (int k = 0; k < 1000; ++k) {
      Vec x = make_vec(3.0 * (rng.uniform() - 0.5), 3.0 * (rng.uniform() - 0.5));
      double a = p.evaluate(x);
      double b = p.evaluate(-1.0 * x);
      if (std::isinf(a)) {
        CHECK(std::isinf(b));
      } else {
        CHECK(a == b);
      }
    }
  }
}

TEST_CASE("lennard-jones smooth cutoff") {
  double eps = 1.0, sigma = 1.0, rc = 2.5;
  PairPotential p = PairPotential::lennard_jones(2, eps, sigma, rc);
  double rs = 0.9 * rc;

  SUBCASE("below the switch the tail is a constant shift; value at sigma is that shift") {
    double shift = p.value(1.2) - raw_lj(eps, sigma, 1.2);
    for (double r : {0.8, 1.0, 1.5, 2.0, rs - 1e-6})
      CHECK(p.value(r) - raw_lj(eps, sigma, r) == doctest::Approx(shift).epsilon(1e-12));
    CHECK(p.value(sigma) == doctest::Approx(shift).epsilon(1e-12));
  }

  SUBCASE("C2 at the cutoff: one-sided finite differences vanish") {
    CHECK(p.value(rc) == 0.0);
    double h = 1e-6;
    CHECK(p.value(rc - h) == doctest::Approx(0.0).epsilon(1.0));
    CHECK(std::abs(p.value(rc - h)) < 1e-9);               // value -> 0
    CHECK(std::abs(p.value(rc - h) / h) < 1e-3);           // slope -> 0
    double d2 = p.value(rc - 2 * h) - 2 * p.value(rc - h);  // curvature -> 0
    CHECK(std::abs(d2 / (h * h)) < 1e-2);
  }

  SUBCASE("C2 at the switch point: jumps across rs shrink like h") {
    double h = 1e-6;
    CHECK(std::abs(p.value(rs - h) - p.value(rs + h)) <=
          3.0 * std::abs(p.dvalue(rs)) * h);
    CHECK(std::abs(p.dvalue(rs - h) - p.dvalue(rs + h)) <=
          3.0 * std::abs(p.d2value(rs)) * h);
    CHECK(std::abs(p.d2value(rs - h) - p.d2value(rs + h)) < 1e-4);
  }

  SUBCASE("hard floor and singular origin") {
    CHECK(std::isinf(p.value(0.3)));
    CHECK_THROWS_AS(p.evaluate(make_vec(0.0, 0.0)), SingularOriginError);
  }
}

TEST_CASE("derivatives match central finite differences") {
  for (auto p : {PairPotential::smooth_compact(2, 0.5, 0.9),
                 PairPotential::lennard_jones(2, 1.0, 1.0, 2.5)}) {
    Vec x = make_vec(0.9, 0.79);  // |x| about 1.2
    Vec g;
    Mat hess;
    p.derivatives(x, g, hess);
    double h = 1e-5;
    for (int a = 0; a < 2; ++a) {
      Vec xp = x, xm = x;
      xp[a] += h;
      xm[a] -= h;
      double fd = (p.evaluate(xp) - p.evaluate(xm)) / (2 * h);
      CHECK(g[a] == doctest::Approx(fd).epsilon(1e-6));
      for (int b = 0; b < 2; ++b) {
        Vec gp, gm;
        Mat dummy;
        p.derivatives(xp, gp, dummy);
        p.derivatives(xm, gm, dummy);
        double fd2 = (gp[b] - gm[b]) / (2 * h);
        CHECK(hess(a, b) == doctest::Approx(fd2).epsilon(1e-5));
      }
    }
    // antisymmetry of the gradient
    Vec gneg;
    Mat dummy;
    p.derivatives(-1.0 * x, gneg, dummy);
    for (int a = 0; a < 2; ++a) CHECK(gneg[a] == doctest::Approx(-g[a]).epsilon(1e-12));
  }
}

TEST_CASE("isotropy: gradient on axis 1 is parallel to axis 1") {
  PairPotential p = PairPotential::smooth_compact(3, 0.5, 1.0);
  Vec g;
  Mat h;
  p.derivatives(make_vec(0.4, 0.0, 0.0), g, h);
  CHECK(g[1] == 0.0);
  CHECK(g[2] == 0.0);
  CHECK(g[0] != 0.0);
}

TEST_CASE("pointwise lower bound phi >= -B by grid scan") {
  auto scan_min = [](const PairPotential& p) {
    double lo = kInf;
    for (int k = 1; k <= 4000; ++k) {
      double r = p.r_cut() * k / 4000.0;
      lo = std::min(lo, p.value(r));
    }
    return lo;
  };
  PairPotential bump = PairPotential::smooth_compact(2, -0.3, 0.7);
  CHECK(scan_min(bump) >= -bump.stability_b() - 1e-12);
  PairPotential lj = PairPotential::lennard_jones(2, 1.0, 1.0, 2.5);
  CHECK(scan_min(lj) >= -lj.stability_b() - 1e-12);
}

TEST_CASE("regime check") {
  SUBCASE("zero potential and beta = 0") {
    PairPotential z = PairPotential::zero(1);
    RegimeReport r = z.regime_check(0.4, 2.0);
    CHECK(r.c_value == 0.0);
    CHECK(r.in_laht);
    PairPotential b = PairPotential::smooth_compact(1, 0.5, 0.6);
    CHECK(b.regime_check(0.0, 1.0).c_value == 0.0);
    CHECK(b.regime_check(0.0, 1.0).in_laht);
  }

  SUBCASE("adaptive vs trapezoid for LJ in d=1") {
    PairPotential p = PairPotential::lennard_jones(1, 1.0, 1.0, 2.5);
    double beta = 0.05, z = 1.0;
    RegimeReport r = p.regime_check(beta, z);
    // independent composite-trapezoid evaluation of the same integral
    auto integrand = [&](double rr) {
      double v = p.value(rr);
      double e = std::isinf(v) ? 0.0 : std::exp(-beta * v);
      return std::abs(e - 1.0);
    };
    double core = p.r_min();  // below the floor the integrand is exactly 1
    double trap = 2.0 * (core + integrate_trapezoid(integrand, core, p.r_cut(), 200001));
    double expected = z * std::exp(2.0 * beta * p.stability_b()) * trap;
    CHECK(r.c_value == doctest::Approx(expected).epsilon(1e-4));
  }

  SUBCASE("monotone in beta") {
    PairPotential p = PairPotential::smooth_compact(2, 0.5, 0.8);
    double prev = 0.0;
    for (double beta : {0.0, 0.05, 0.1, 0.2, 0.4}) {
      double c = p.regime_check(beta, 1.0).c_value;
      CHECK(c >= prev - 1e-12);
      prev = c;
    }
  }
}

namespace {

// \int_0^1 u^p (1-u^2)^k du expanded through the binomial theorem (exact).
double beta_moment(int p, int k) {
  double s = 0.0, binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    double term = binom / static_cast<double>(2 * j + p + 1);
    s += (j % 2 == 0) ? term : -term;
    binom = binom * (k - j) / (j + 1.0);
  }
  return s;
}

}  // namespace

TEST_CASE("moment functionals of the compact bump against closed forms") {
  double c = 0.4, w = 0.7;
  // profile (1-u^2)^6: V' = -12 c u (1-u^2)^5 / w

  SUBCASE("d = 1") {
    PairPotential p = PairPotential::smooth_compact(1, c, w);
    PotentialMoments m = p.moments(0.1);
    CHECK(m.int_phi == doctest::Approx(2.0 * c * w * beta_moment(0, 6)).epsilon(1e-10));
    CHECK(m.int_x1d1_sq ==
          doctest::Approx(2.0 * 144.0 * c * c * w * beta_moment(4, 10)).epsilon(1e-9));
    // integration by parts: \int x^1 x^1 d1 d1 phi = 2 \int phi
    CHECK(m.tensor_at(0, 0, 0, 0) == doctest::Approx(2.0 * m.int_phi).epsilon(1e-9));
    CHECK(m.mayer_c >= 0.0);
  }

  SUBCASE("d = 2") {
    PairPotential p = PairPotential::smooth_compact(2, c, w);
    PotentialMoments m = p.moments(0.1);
    CHECK(m.int_phi ==
          doctest::Approx(2.0 * M_PI * c * w * w * beta_moment(1, 6)).epsilon(1e-10));
    CHECK(m.int_x1d1_sq ==
          doctest::Approx(2.0 * M_PI * (3.0 / 8.0) * 144.0 * c * c * w * w *
                          beta_moment(5, 10)).epsilon(1e-9));
    CHECK(m.tensor_at(0, 0, 0, 0) == doctest::Approx(2.0 * m.int_phi).epsilon(1e-8));
    // isotropy: entries with an index appearing once vanish
    CHECK(m.tensor_at(0, 1, 0, 0) == 0.0);
    CHECK(m.tensor_at(0, 0, 0, 1) == 0.0);
    CHECK(m.tensor_at(0, 1, 1, 1) == 0.0);
    // symmetries (i<->j), (k<->l)
    CHECK(m.tensor_at(0, 1, 0, 1) == m.tensor_at(1, 0, 0, 1));
    CHECK(m.tensor_at(0, 1, 0, 1) == m.tensor_at(0, 1, 1, 0));
    CHECK(m.mayer_c >= 0.0);
  }
}
