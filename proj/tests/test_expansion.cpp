#include <cmath>

#include "doctest.h"
#include "scaledyn/expansion.hpp"

using namespace scaledyn;

TEST_CASE("coefficients for the free case and beta = 0") {
  PairPotential zero = PairPotential::zero(2);
  ExpansionCoefficients c = coefficients_low_beta(zero, 0.3);
  CHECK(c.rho1 == 1.0);
  CHECK(c.chi == 1.0);
  CHECK(c.bulk_diffusion == 1.0);
  CHECK(c.d_phi == 1.0);
  CHECK(c.r_phi == 0.0);

  PairPotential bump = PairPotential::smooth_compact(2, 0.5, 0.8);
  ExpansionCoefficients b0 = coefficients(bump, 0.0, rho2_boltzmann(bump, 0.0), 1.0,
                                          CoefficientSource::McBacked);
  CHECK(b0.rho1 == 1.0);
  CHECK(b0.chi == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(b0.d_phi == 1.0);
  CHECK(b0.r_phi == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("r_phi identity holds by construction and by recomputation") {
  PairPotential bump = PairPotential::smooth_compact(1, 0.4, 0.6);
  double beta = 0.08;
  ExpansionCoefficients c = coefficients(bump, beta, rho2_boltzmann(bump, beta),
                                         rho1_low_beta(bump, beta),
                                         CoefficientSource::McBacked);
  CHECK(c.r_phi == doctest::Approx(c.d_phi - c.rho1 * c.rho1 / c.chi).epsilon(1e-14));
  double r_re = c.d_phi - c.rho1 * c.rho1 / c.chi;
  CHECK(std::abs(r_re - c.r_phi) < 1e-10);
  CHECK(c.bulk_diffusion == doctest::Approx(c.rho1 / c.chi).epsilon(1e-14));
}

TEST_CASE("curvatures at beta = 0") {
  SUBCASE("zero potential gives all zeros") {
    Curvatures cv = curvature_at_zero(PairPotential::zero(1));
    CHECK(cv.d2_d == 0.0);
    CHECK(cv.d2_compress == 0.0);
    CHECK(cv.d2_r == 0.0);
  }

  SUBCASE("any nonzero isotropic potential has d2_r > 0") {
    Curvatures cv = curvature_at_zero(PairPotential::smooth_compact(2, 0.3, 0.7));
    CHECK(cv.d2_r > 0.0);
    PotentialMoments m = PairPotential::smooth_compact(2, 0.3, 0.7).moments(0.0);
    CHECK(cv.d2_r == doctest::Approx(2.0 * m.int_x1d1_sq).epsilon(1e-12));
    CHECK(cv.d2_d == doctest::Approx(-m.int_phi * m.int_phi + m.int_x1d1_sq).epsilon(1e-12));
    CHECK(cv.d2_compress == doctest::Approx(-m.int_phi * m.int_phi).epsilon(1e-12));
  }
}

TEST_CASE("low-beta series agrees with the oracle-backed coefficients at small beta") {
  // periodic ring: the temperature-expansion coefficients of the torus system
  // coincide with the whole-space formulas while the support fits
  PairPotential bump = PairPotential::smooth_compact(1, 0.5, 0.5);
  FiniteVolumeSpec spec;
  spec.length = 1.6;
  spec.dim = 1;
  spec.n_max = 7;
  spec.quad_points = 20;
  spec.boundary = FiniteVolumeSpec::Boundary::Periodic;
  Oracle oracle(spec, bump);
  for (double beta : std::vector<double>{0.02, 0.05}) {
    Vec c0;
    c0[0] = 0.8;
    double rho1_o = oracle.correlation(beta, 1.0, {c0});
    CHECK(rho1_o == doctest::Approx(rho1_low_beta(bump, beta)).epsilon(5e-5));
    ExpansionCoefficients eo = coefficients(bump, beta, rho2_from_oracle(oracle, beta, 1.0),
                                            rho1_o, CoefficientSource::OracleBacked);
    ExpansionCoefficients el = coefficients_low_beta(bump, beta);
    CHECK(eo.chi == doctest::Approx(el.chi).epsilon(2e-4));
    CHECK(eo.d_phi == doctest::Approx(el.d_phi).epsilon(2e-4));
  }
}

TEST_CASE("finite-difference curvature of oracle-backed coefficients") {
  // d2 D / d beta^2 (0) = -(int phi)^2 + int (x d phi)^2 and
  // d2 (rho1^2/chi) / d beta^2 (0) = -(int phi)^2, within 5%.
  // The particle-number truncation must run deep (its tail bias carries
  // beta-curvature); grid bias is beta-smooth and drops out of the stencil.
  PairPotential bump = PairPotential::smooth_compact(1, 0.5, 0.5);
  FiniteVolumeSpec spec;
  spec.length = 1.5;
  spec.dim = 1;
  spec.n_max = 8;
  spec.quad_points = 16;
  spec.boundary = FiniteVolumeSpec::Boundary::Periodic;
  Oracle oracle(spec, bump);

  // one-sided O(h^2) stencil on beta ∈ {0, h, 2h, 3h}:
  // f'' ~ (2 f0 - 5 f_h + 4 f_{2h} - f_{3h}) / h^2
  double h = 0.02;
  std::vector<double> d_vals, comp_vals;
  for (double beta : {0.0, h, 2.0 * h, 3.0 * h}) {
    Vec c0;
    c0[0] = 0.8;
    double rho1_o = oracle.correlation(beta, 1.0, {c0});
    ExpansionCoefficients e = coefficients(bump, beta, rho2_from_oracle(oracle, beta, 1.0),
                                           rho1_o, CoefficientSource::OracleBacked);
    d_vals.push_back(e.d_phi);
    comp_vals.push_back(e.rho1 * e.rho1 / e.chi);
  }
  auto second = [&](const std::vector<double>& v) {
    return (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / (h * h);
  };
  double fd_d = second(d_vals);
  double fd_comp = second(comp_vals);
  Curvatures cv = curvature_at_zero(bump);
  CHECK(std::abs(fd_d - cv.d2_d) <= 0.05 * std::abs(cv.d2_d));
  CHECK(std::abs(fd_comp - cv.d2_compress) <= 0.05 * std::abs(cv.d2_compress));
}

TEST_CASE("coercivity identity over ensembles") {
  SUBCASE("poisson control equals the closed form on a single mode") {
    Torus t(6.0, 2);
    GibbsParams p(0.0, 1.0, t, PairPotential::zero(2));
    auto ens = sample_ensemble(p, 4000, 60, 20000, 99);
    TestFunction f = TestFunction::fourier_mode(t, {1, 0});
    CoercivitySides cs = coercivity_sides(f, ens, p.phi, p.beta);
    double target = 1.0 * f.lap_norm_sq();  // z ||lap f||^2; \int lap f = 0
    CHECK(std::abs(cs.lhs.value - target) <= 3.0 * cs.lhs.stderr_);
    CHECK(std::abs(cs.rhs.value - target) <= 3.0 * cs.rhs.stderr_);
    double comb = std::hypot(cs.lhs.stderr_, cs.rhs.stderr_);
    CHECK(std::abs(cs.lhs.value - cs.rhs.value) <= 3.0 * comb);
  }

  SUBCASE("interacting bump in d = 2") {
    Torus t(6.0, 2);
    PairPotential bump = PairPotential::smooth_compact(2, 0.5, 0.8);
    GibbsParams p(0.15, 1.0, t, bump);
    auto ens = sample_ensemble(p, 4000, 60, 20000, 100);
    TestFunction f = TestFunction::fourier_mode(t, {1, 1});
    CoercivitySides cs = coercivity_sides(f, ens, p.phi, p.beta);
    double comb = std::hypot(cs.lhs.stderr_, cs.rhs.stderr_);
    CHECK(std::abs(cs.lhs.value - cs.rhs.value) <= 3.0 * comb);
    CHECK(cs.lhs.value > 0.0);
  }
}
