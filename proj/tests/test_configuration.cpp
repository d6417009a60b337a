#include <cmath>

#include "doctest.h"
#include "scaledyn/kernels.hpp"
#include "scaledyn/langevin.hpp"
#include "scaledyn/rng.hpp"
#include "scaledyn/snapshot.hpp"

using namespace scaledyn;

namespace {

Configuration random_config(const Torus& t, size_t n, uint64_t seed) {
  Rng rng(seed);
  Configuration c(t);
  c.pos.resize(n);
  for (size_t i = 0; i < n; ++i)
    for (int a = 0; a < t.dim; ++a) c.pos[i][a] = rng.uniform() * t.box;
  return c;
}

}  // namespace

TEST_CASE("minimum-image displacement") {
  Torus t(10.0, 2);
  Vec x, y;
  x[0] = 9.5;
  y[0] = 0.5;
  Vec d = t.displacement(x, y);
  CHECK(d[0] == doctest::Approx(-1.0));
  CHECK(d[1] == 0.0);
  CHECK(t.displacement(x, x)[0] == 0.0);
  CHECK(t.displacement(x, x)[1] == 0.0);

  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    Vec a, b;
    for (int q = 0; q < 2; ++q) {
      a[q] = rng.uniform() * 10.0;
      b[q] = rng.uniform() * 10.0;
    }
    Vec dd = t.displacement(a, b);
    CHECK(norm(dd, 2) <= std::sqrt(2.0) * 5.0 + 1e-12);
    for (int q = 0; q < 2; ++q) {
      CHECK(dd[q] >= -5.0);
      CHECK(dd[q] < 5.0);
    }
  }
}

TEST_CASE("energies: empty sums, two particles, pair partition identity") {
  Torus t(8.0, 2);
  PairPotential phi = PairPotential::smooth_compact(2, 0.5, 1.0);

  Configuration empty(t);
  CHECK(total_energy_naive(empty, phi) == 0.0);
  Configuration one(t);
  one.pos.push_back(Vec{});
  CHECK(total_energy_naive(one, phi) == 0.0);

  Configuration two(t);
  Vec a, b;
  a[0] = 1.0;
  b[0] = 1.6;
  two.pos = {a, b};
  CHECK(total_energy_naive(two, phi) == doctest::Approx(phi.value(0.6)).epsilon(1e-14));

  // E(eta u gamma) = E(eta) + E(gamma) + W(eta|gamma)
  Configuration eta = random_config(t, 9, 11), gamma = random_config(t, 13, 12);
  Configuration both(t);
  both.pos = eta.pos;
  both.pos.insert(both.pos.end(), gamma.pos.begin(), gamma.pos.end());
  double lhs = total_energy_naive(both, phi);
  double rhs = total_energy_naive(eta, phi) + total_energy_naive(gamma, phi) +
               interaction_energy_naive(eta, gamma, phi);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

  // empty eta and singleton interaction energies
  CHECK(interaction_energy_naive(empty, gamma, phi) == 0.0);
  Configuration sx(t), sy(t);
  sx.pos = {a};
  sy.pos = {b};
  CHECK(interaction_energy_naive(sx, sy, phi) == doctest::Approx(phi.value(0.6)));
}

TEST_CASE("cell-list kernels match the serial reference") {
  Torus t(12.0, 2);
  PairPotential phi = PairPotential::lennard_jones(2, 1.0, 1.0, 2.5, 1e-7);
  Configuration c = random_config(t, 220, 5);
  CellIndex cells(c, phi.r_cut());
  CHECK_FALSE(cells.all_pairs());
  CHECK(cells.consistent_with(c));

  double e1 = total_energy_naive(c, phi);
  double e2 = total_energy(c, cells, phi);
  CHECK(e2 == doctest::Approx(e1).epsilon(1e-12));

  auto b1 = drift_naive(c, phi, 0.2);
  auto b2 = drift(c, cells, phi, 0.2);
  double scale = 0.0;
  for (size_t i = 0; i < c.size(); ++i) scale = std::max(scale, norm(b1[i], 2));
  for (size_t i = 0; i < c.size(); ++i)
    for (int a = 0; a < 2; ++a)
      CHECK(std::abs(b1[i][a] - b2[i][a]) <= 1e-12 * scale);

  Configuration eta = random_config(t, 20, 6);
  CHECK(interaction_energy(eta, c, cells, phi) ==
        doctest::Approx(interaction_energy_naive(eta, c, phi)).epsilon(1e-12));

  // small box falls back to all-pairs and still agrees
  Torus small(4.9 * 1.05, 2);
  Configuration cs = random_config(small, 40, 7);
  CellIndex cells_s(cs, phi.r_cut());
  CHECK(cells_s.all_pairs());
  CHECK(total_energy(cs, cells_s, phi) ==
        doctest::Approx(total_energy_naive(cs, phi)).epsilon(1e-12));
}

TEST_CASE("drift properties") {
  Torus t(9.0, 2);
  PairPotential phi = PairPotential::smooth_compact(2, 0.6, 1.1);

  SUBCASE("beta = 0 gives the zero field") {
    Configuration c = random_config(t, 30, 8);
    for (const Vec& v : drift_naive(c, phi, 0.0)) {
      CHECK(v[0] == 0.0);
      CHECK(v[1] == 0.0);
    }
  }

  SUBCASE("two particles feel equal and opposite forces") {
    Configuration c(t);
    Vec a, b;
    a[0] = 4.0;
    a[1] = 4.0;
    b[0] = 4.7;
    b[1] = 4.3;
    c.pos = {a, b};
    auto f = drift_naive(c, phi, 0.5);
    CHECK(f[0][0] == doctest::Approx(-f[1][0]).epsilon(1e-14));
    CHECK(f[0][1] == doctest::Approx(-f[1][1]).epsilon(1e-14));
  }

  SUBCASE("total momentum vanishes and naive matches cells at 5 particles") {
    Configuration c = random_config(t, 5, 9);
    auto f = drift_naive(c, phi, 0.7);
    CellIndex cells(c, phi.r_cut());
    auto g = drift(c, cells, phi, 0.7);
    double sx = 0.0, sy = 0.0, scale = 1e-30;
    for (size_t i = 0; i < 5; ++i) {
      sx += f[i][0];
      sy += f[i][1];
      scale = std::max(scale, norm(f[i], 2));
      for (int a = 0; a < 2; ++a) CHECK(std::abs(f[i][a] - g[i][a]) <= 1e-12 * scale);
    }
    CHECK(std::abs(sx) <= 1e-10 * scale);
    CHECK(std::abs(sy) <= 1e-10 * scale);
  }

  SUBCASE("close pair below the hard floor signals with indices") {
    PairPotential lj = PairPotential::lennard_jones(2, 1.0, 1.0, 2.5);
    Configuration c(t);
    Vec a, b;
    a[0] = 1.0;
    b[0] = 1.0 + 0.25;  // below r_min = 0.5
    c.pos = {a, b};
    CHECK_THROWS_AS((void)drift_naive(c, lj, 0.1), ClosePairError);
    CellIndex cells(c, lj.r_cut());
    CHECK_THROWS_AS((void)drift(c, cells, lj, 0.1), ClosePairError);
  }
}

TEST_CASE("energy invariance under translation and relabeling") {
  Torus t(7.0, 2);
  PairPotential phi = PairPotential::smooth_compact(2, 0.4, 0.9);
  Configuration c = random_config(t, 25, 10);
  double e0 = total_energy_naive(c, phi);

  Configuration shifted(t);
  for (Vec x : c.pos) {
    x[0] += 2.345;
    x[1] += 6.1;
    shifted.pos.push_back(t.wrap(x));
  }
  CHECK(total_energy_naive(shifted, phi) == doctest::Approx(e0).epsilon(1e-12));

  Configuration relabeled(t);
  for (size_t i = c.size(); i-- > 0;) relabeled.pos.push_back(c.pos[i]);
  CHECK(total_energy_naive(relabeled, phi) == doctest::Approx(e0).epsilon(1e-12));
}

TEST_CASE("singular-origin pair gives +inf energy sentinel") {
  Torus t(6.0, 2);
  PairPotential lj = PairPotential::lennard_jones(2, 1.0, 1.0, 2.5);
  Configuration c(t);
  Vec a;
  a[0] = 1.0;
  c.pos = {a, a};
  c.pos[1][0] += 0.2;  // below the hard floor: value is +inf
  CHECK(std::isinf(total_energy_naive(c, lj)));
}

TEST_CASE("snapshot round-trip is bit exact") {
  Torus t(5.5, 3);
  Configuration c = random_config(t, 17, 13);
  c.pos[3][1] = 0.1 + 0.2;  // a value with a non-terminating binary expansion
  std::string path = "snapshot_roundtrip_test.txt";
  write_snapshot(path, c, 42, 7);
  Snapshot s = read_snapshot(path);
  REQUIRE(s.config.size() == c.size());
  CHECK(s.seed == 42);
  CHECK(s.step == 7);
  CHECK(s.config.torus.box == c.torus.box);
  CHECK(s.config.torus.dim == c.torus.dim);
  for (size_t i = 0; i < c.size(); ++i)
    for (int a = 0; a < 3; ++a) CHECK(s.config.pos[i][a] == c.pos[i][a]);
  std::remove(path.c_str());
}
