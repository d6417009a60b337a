#include <cmath>

#include "doctest.h"
#include "scaledyn/hermite.hpp"
#include "scaledyn/langevin.hpp"
#include "scaledyn/scaling.hpp"

using namespace scaledyn;

TEST_CASE("position scaling") {
  Torus t(8.0, 2);
  Rng rng(12);
  Configuration c = poisson_configuration(t, 1.0, rng);

  SUBCASE("eps = 1 is the identity") {
    Configuration s = s_in(c, 1.0);
    REQUIRE(s.size() == c.size());
    for (size_t i = 0; i < c.size(); ++i)
      for (int a = 0; a < 2; ++a) CHECK(s.pos[i][a] == doctest::Approx(c.pos[i][a]));
  }

  SUBCASE("pair distances scale by eps exactly") {
    double eps = 0.25;
    Configuration s = s_in(c, eps);
    CHECK(s.size() == c.size());
    CHECK(s.torus.box == doctest::Approx(2.0));
    for (size_t i = 0; i + 1 < c.size(); i += 3) {
      double d_micro = c.torus.distance(c.pos[i], c.pos[i + 1]);
      double d_scaled = s.torus.distance(s.pos[i], s.pos[i + 1]);
      CHECK(d_scaled == doctest::Approx(eps * d_micro).epsilon(1e-12));
    }
  }
}

TEST_CASE("fluctuation field basics") {
  Torus macro(4.0, 2);
  TestFunction mode = TestFunction::fourier_mode(macro, {1, 0});

  SUBCASE("empty configuration pairs to zero with a mean-zero mode") {
    Configuration empty(Torus(8.0, 2));
    Configuration scaled = s_in(empty, 0.5);
    ScaledField sf{&scaled, 0.5, 1.0};
    CHECK(fluctuation_field(sf, mode) == 0.0);
  }

  SUBCASE("constant test function with the empirical density centers exactly") {
    Rng rng(77);
    Configuration c = poisson_configuration(Torus(4.0, 2), 1.0, rng);
    Configuration scaled = s_in(c, 1.0);
    double v = macro.volume();
    ScaledField sf{&scaled, 1.0, static_cast<double>(c.size()) / v};
    double pairing = fluctuation_pairing(sf, [](const Vec&) { return 1.0; }, v);
    CHECK(pairing == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("field of a disjoint union = sum of fields minus one centering") {
    Rng rng(78);
    Configuration c1 = poisson_configuration(Torus(8.0, 2), 0.7, rng);
    Configuration c2 = poisson_configuration(Torus(8.0, 2), 0.5, rng);
    Configuration both(Torus(8.0, 2));
    both.pos = c1.pos;
    both.pos.insert(both.pos.end(), c2.pos.begin(), c2.pos.end());
    double eps = 0.5;
    Configuration s1 = s_in(c1, eps), s2 = s_in(c2, eps), sb = s_in(both, eps);
    ScaledField f1{&s1, eps, 1.2}, f2{&s2, eps, 0.0}, fb{&sb, eps, 1.2};
    double lhs = fluctuation_field(fb, mode);
    double rhs = fluctuation_field(f1, mode) + fluctuation_field(f2, mode);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }

  SUBCASE("scaling covariance: the pairing is the scaled sum of f(eps x)") {
    Rng rng(79);
    double eps = 0.25;
    Configuration c = poisson_configuration(Torus(16.0, 2), 1.0, rng);
    Configuration scaled = s_in(c, eps);
    ScaledField sf{&scaled, eps, 0.0};  // no centering: pure sum identity
    double direct = 0.0;
    for (const Vec& x : c.pos) direct += mode.eval(eps * x);
    CHECK(fluctuation_field(sf, mode) ==
          doctest::Approx(std::pow(eps, 1.0) * direct).epsilon(1e-9));
  }
}

TEST_CASE("poisson field variance is ||f||^2 independently of eps") {
  Torus macro(4.0, 2);
  TestFunction mode = TestFunction::fourier_mode(macro, {1, 0});
  Rng rng(2025);
  for (double eps : {1.0, 0.5, 0.25}) {
    Torus micro(macro.box / eps, 2);
    std::vector<double> vals;
    const int samples = 4000;
    for (int s = 0; s < samples; ++s) {
      Configuration c = poisson_configuration(micro, 1.0, rng);
      Configuration sc = s_in(c, eps);
      ScaledField sf{&sc, eps, 1.0};
      vals.push_back(fluctuation_field(sf, mode));
    }
    double var = variance(vals);
    double target = mode.norm0_sq();
    // Var(sample variance) of a Gaussian-ish sample: ~ 2 var^2 / n
    double err = std::sqrt(2.0 / samples) * target;
    CHECK(std::abs(var - target) <= 4.0 * err);
    CHECK(std::abs(mean(vals)) <= 4.0 * std::sqrt(target / samples));
  }
}

TEST_CASE("test function norms agree with quadrature of the evaluators") {
  Torus macro(5.0, 2);
  std::vector<TestFunction> fs{
      TestFunction::fourier_mode(macro, {1, 0}),
      TestFunction::fourier_mode(macro, {1, 2}, true),
      TestFunction::compact_bump(macro, Vec{{2.5, 2.5, 0.0}}, 1.2, 0.8)};
  std::vector<std::vector<double>> g0, gg;
  test_function_gram(fs, g0, gg, 128);
  for (size_t i = 0; i < fs.size(); ++i) {
    CHECK(g0[i][i] == doctest::Approx(fs[i].norm0_sq()).epsilon(1e-8));
    CHECK(gg[i][i] == doctest::Approx(fs[i].grad_norm_sq()).epsilon(1e-7));
  }
  // distinct Fourier modes are orthogonal
  CHECK(std::abs(g0[0][1]) < 1e-10);

  // laplacian evaluators against finite differences, and ||lap f||
  for (const auto& f : fs) {
    Vec x{{2.1, 2.9, 0.0}};
    double h = 1e-5;
    double lap_fd = 0.0;
    for (int a = 0; a < 2; ++a) {
      Vec xp = x, xm = x;
      xp[a] += h;
      xm[a] -= h;
      lap_fd += (f.eval(xp) - 2.0 * f.eval(x) + f.eval(xm)) / (h * h);
    }
    CHECK(f.laplacian(x) == doctest::Approx(lap_fd).epsilon(1e-4));
  }
}

TEST_CASE("sobolev norms of poisson fields stay bounded along the eps ladder") {
  // pairings with hermite-proxy test functions centered in the box
  Torus macro(12.0, 1);
  HermiteBasis basis(1, 12);
  std::vector<TestFunction> proxies;
  for (size_t i = 0; i < basis.size(); ++i)
    proxies.push_back(TestFunction::hermite_proxy(macro, basis.indices[i]));

  Rng rng(664);
  std::vector<double> means;
  for (double eps : {1.0, 0.5, 0.25}) {
    Torus micro(macro.box / eps, 1);
    std::vector<double> norms;
    for (int s = 0; s < 200; ++s) {
      Configuration c = poisson_configuration(micro, 1.0, rng);
      Configuration sc = s_in(c, eps);
      ScaledField sf{&sc, eps, 1.0};
      std::vector<double> pairings;
      pairings.reserve(proxies.size());
      for (const auto& p : proxies)
        pairings.push_back(fluctuation_pairing(
            sf, [&](const Vec& x) { return p.eval(x); }, p.integral()));
      norms.push_back(sobolev_norm_neg(pairings, basis.eigenvalues, 2.0));  // m = d+1
    }
    means.push_back(mean(norms));
  }
  // uniform boundedness across the ladder (constant recorded, not pinned):
  // the means should stay within a factor-2 band of the unscaled value
  for (double m : means) {
    CHECK(m > 0.0);
    CHECK(m < 2.0 * means.front() + 1e-9);
    CHECK(m > 0.5 * means.front() - 1e-9);
  }
}
