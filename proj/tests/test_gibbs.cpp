#include <cmath>

#include "doctest.h"
#include "scaledyn/gibbs.hpp"
#include "scaledyn/oracle.hpp"
#include "scaledyn/rng.hpp"

using namespace scaledyn;

TEST_CASE("metropolis flow balance for all three move kinds") {
  // f(u) q(u->v) min(1, R(u->v)) == f(v) q(v->u) min(1, R(v->u)) with the
  // raw ratios from gcmc_acceptance_ratio; checked analytically on random
  // (n, V, z, beta, dE) tuples.
  Rng rng(42);
  for (int k = 0; k < 500; ++k) {
    size_t n = rng.uniform_index(20);
    double volume = 0.5 + 10.0 * rng.uniform();
    double z = 0.2 + 2.0 * rng.uniform();
    double beta = rng.uniform();
    double de = 4.0 * (rng.uniform() - 0.5);

    // insert u (n particles) -> v = u + {y}. In unlabeled configuration
    // charts the Gibbs weight ratio is f(v)/f(u) = z e^{-beta dE}; insertion
    // proposes y with density 1/V and deletion picks the particle with
    // probability 1/(n+1).
    double r_ins = gcmc_acceptance_ratio(MoveKind::Insert, n, volume, z, beta, de);
    double r_del = gcmc_acceptance_ratio(MoveKind::Delete, n + 1, volume, z, beta, -de);
    CHECK(r_ins * r_del == doctest::Approx(1.0).epsilon(1e-12));
    double weight_ratio = z * std::exp(-beta * de);
    double q_fwd = 1.0 / volume;
    double q_back = 1.0 / static_cast<double>(n + 1);
    CHECK(r_ins == doctest::Approx(weight_ratio * q_back / q_fwd).epsilon(1e-12));
    double flow_fwd = q_fwd * std::min(1.0, r_ins);
    double flow_back = weight_ratio * q_back * std::min(1.0, r_del);
    CHECK(flow_fwd == doctest::Approx(flow_back).epsilon(1e-12));

    // translation: symmetric proposal, ratio e^{-b dE}
    double r_tr = gcmc_acceptance_ratio(MoveKind::Translate, n, volume, z, beta, de);
    double r_tr_back = gcmc_acceptance_ratio(MoveKind::Translate, n, volume, z, beta, -de);
    CHECK(std::min(1.0, r_tr) ==
          doctest::Approx(std::exp(-beta * de) * std::min(1.0, r_tr_back)).epsilon(1e-12));
  }
}

TEST_CASE("free chain is stationary at Poisson(z L^d)") {
  Torus t(5.0, 2);
  GibbsParams p(0.0, 1.0, t, PairPotential::zero(2));
  MoveStats stats;
  auto ens = sample_ensemble(p, 20000, 50, 20000, 777, &stats);
  std::vector<double> ns;
  ns.reserve(ens.size());
  for (const auto& c : ens) ns.push_back(static_cast<double>(c.size()));
  Estimate m = correlated_mean_estimate(ns, 3);
  double lambda = 25.0;
  CHECK(std::abs(m.value - lambda) <= 3.0 * m.stderr_);
  // Poisson variance equals the mean
  CHECK(variance(ns) == doctest::Approx(lambda).epsilon(0.1));
  // with E = 0 every translation is accepted
  CHECK(stats.acceptance(MoveKind::Translate) == doctest::Approx(1.0));
}

TEST_CASE("beta = 0 with an interacting potential matches the free chain") {
  Torus t(4.0, 1);
  GibbsParams pz(0.0, 1.0, t, PairPotential::zero(1));
  GibbsParams pb(0.0, 1.0, t, PairPotential::smooth_compact(1, 0.5, 0.6));
  auto ez = sample_ensemble(pz, 4000, 20, 4000, 5150);
  auto eb = sample_ensemble(pb, 4000, 20, 4000, 5150);
  // identical move decisions: beta = 0 makes every Boltzmann factor 1
  REQUIRE(ez.size() == eb.size());
  for (size_t i = 0; i < ez.size(); i += 500) CHECK(ez[i].size() == eb[i].size());
}

TEST_CASE("same seed reproduces the ensemble bit-exactly") {
  Torus t(4.0, 2);
  GibbsParams p(0.15, 1.0, t, PairPotential::smooth_compact(2, 0.4, 0.7));
  auto a = sample_ensemble(p, 50, 40, 2000, 909);
  auto b = sample_ensemble(p, 50, 40, 2000, 909);
  REQUIRE(a.size() == b.size());
  for (size_t s = 0; s < a.size(); ++s) {
    REQUIRE(a[s].size() == b[s].size());
    for (size_t i = 0; i < a[s].size(); ++i)
      for (int q = 0; q < 2; ++q) CHECK(a[s].pos[i][q] == b[s].pos[i][q]);
  }
}

TEST_CASE("cells stay consistent along a long mixed-move chain") {
  Torus t(6.0, 2);
  GibbsParams p(0.2, 1.0, t, PairPotential::smooth_compact(2, 0.5, 0.8));
  GcmcChain chain(p, 31337);
  chain.burn_in(20000);
  CHECK(chain.cells_consistent());
  chain.run(30000);
  CHECK(chain.cells_consistent());
}

TEST_CASE("poisson estimators: density z, flat u2, chi = z") {
  Torus t(6.0, 2);
  double z = 1.0;
  GibbsParams p(0.0, z, t, PairPotential::zero(2));
  auto ens = sample_ensemble(p, 12000, 80, 30000, 2024);
  EnsembleStats st = estimate_correlations(ens, p, 10);
  CHECK(std::abs(st.rho1.value - z) <= 3.0 * st.rho1.stderr_);
  CHECK(std::abs(st.chi.value - z) <= 3.0 * st.chi.stderr_);
  CHECK(std::abs(st.chi_fluct.value - z) <= 3.0 * st.chi_fluct.stderr_);
  // chi integral and fluctuation forms agree
  double comb = std::hypot(st.chi.stderr_, st.chi_fluct.stderr_);
  CHECK(std::abs(st.chi.value - st.chi_fluct.value) <= 3.0 * comb);
  int flat = 0;
  for (const auto& u : st.u2)
    if (std::abs(u.value) <= 3.0 * u.stderr_) ++flat;
  CHECK(flat >= 8);  // 10 bins at 3 sigma, allow the odd excursion
  CHECK(st.rho1.value > 0.0);

  SUBCASE("ruelle bound report") {
    RuelleReport ok = ruelle_check(st, 2.0);
    CHECK(ok.pass);
    CHECK(ok.max_ratio <= 1.0);
    RuelleReport bad = ruelle_check(st, 0.5);
    CHECK_FALSE(bad.pass);
  }
}

TEST_CASE("doubling the thinning leaves estimator means within errors") {
  Torus t(5.0, 1);
  GibbsParams p(0.2, 1.0, t, PairPotential::smooth_compact(1, 0.4, 0.6));
  auto e1 = sample_ensemble(p, 6000, 10, 5000, 7001);
  auto e2 = sample_ensemble(p, 6000, 20, 5000, 7002);
  EnsembleStats s1 = estimate_correlations(e1, p, 8);
  EnsembleStats s2 = estimate_correlations(e2, p, 8);
  double comb = std::hypot(s1.rho1.stderr_, s2.rho1.stderr_);
  CHECK(std::abs(s1.rho1.value - s2.rho1.value) <= 3.0 * comb);
}

TEST_CASE("interacting chain against the quadrature oracle (small ring)") {
  // d=1 ring small enough that the oracle truncation tail is negligible
  double length = 2.0, beta = 0.2, z = 1.0;
  PairPotential bump = PairPotential::smooth_compact(1, 0.3, 0.6);
  Torus t(length, 1);
  GibbsParams p(beta, z, t, bump);

  FiniteVolumeSpec spec;
  spec.length = length;
  spec.dim = 1;
  spec.n_max = 7;
  spec.quad_points = 24;
  spec.boundary = FiniteVolumeSpec::Boundary::Periodic;
  Oracle oracle(spec, bump);

  auto ens = sample_ensemble(p, 30000, 12, 6000, 31415);
  std::vector<double> ns;
  ns.reserve(ens.size());
  for (const auto& c : ens) ns.push_back(static_cast<double>(c.size()));
  Estimate m = correlated_mean_estimate(ns, 5);
  double n_oracle = oracle.mean_particle_number(beta, z);
  CHECK(std::abs(m.value - n_oracle) <= 3.0 * m.stderr_);

  // binned two-point function vs the bin-averaged oracle
  EnsembleStats st = estimate_correlations(ens, p, 8);
  int within = 0;
  for (size_t k = 0; k < st.rho2.size(); ++k) {
    double lo = st.bin_edges[k], hi = st.bin_edges[k + 1];
    double target = 0.0;
    const int grid = 4;
    for (int q = 0; q < grid; ++q) {
      double rr = lo + (hi - lo) * (q + 0.5) / grid;
      Vec a, b;
      a[0] = 1.0 - 0.5 * rr;
      b[0] = 1.0 + 0.5 * rr;
      target += oracle.correlation(beta, z, {a, b});
    }
    target /= grid;
    if (std::abs(st.rho2[k].value - target) <=
        3.0 * st.rho2[k].stderr_ + 0.01 * std::abs(target))
      ++within;
  }
  CHECK(within >= 7);
}
