// Serial reference vs cell-list (OpenMP) kernels on random dense
// configurations: correctness deltas and timings.

#include <chrono>
#include <cstdio>

#include "scaledyn/kernels.hpp"
#include "scaledyn/langevin.hpp"
#include "scaledyn/rng.hpp"

using namespace scaledyn;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void bench_case(int dim, double box, double density) {
  Torus t(box, dim);
  Rng rng(20240501);
  Configuration c = poisson_configuration(t, density, rng);
  // tiny hard floor: uncorrelated test positions may fall below the default
  PairPotential lj = PairPotential::lennard_jones(dim, 1.0, 1.0, 2.5, 1e-6);
  CellIndex cells(c, lj.r_cut());

  auto t0 = std::chrono::steady_clock::now();
  double e_naive = total_energy_naive(c, lj);
  double ms_naive = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  double e_cells = total_energy(c, cells, lj);
  double ms_cells = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  auto b_naive = drift_naive(c, lj, 0.1);
  double ms_dn = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  auto b_cells = drift(c, cells, lj, 0.1);
  double ms_dc = ms_since(t0);

  double max_dev = 0.0, scale = 0.0;
  for (size_t i = 0; i < c.size(); ++i) {
    scale = std::max(scale, norm(b_naive[i], dim));
    for (int a = 0; a < dim; ++a)
      max_dev = std::max(max_dev, std::abs(b_naive[i][a] - b_cells[i][a]));
  }

  std::printf("d=%d L=%g n=%zu cells=%s\n", dim, box, c.size(),
              cells.all_pairs() ? "all-pairs" : "grid");
  std::printf("  energy: naive %.2f ms, cells %.2f ms (x%.1f), rel diff %.2e\n", ms_naive,
              ms_cells, ms_naive / std::max(ms_cells, 1e-9),
              std::abs(e_naive - e_cells) / std::max(1.0, std::abs(e_naive)));
  std::printf("  drift : naive %.2f ms, cells %.2f ms (x%.1f), rel dev %.2e\n",
              ms_dn, ms_dc, ms_dn / std::max(ms_dc, 1e-9), max_dev / scale);
}

}  // namespace

int main() {
  bench_case(2, 24.0, 0.8);
  bench_case(2, 48.0, 0.8);
  bench_case(3, 12.0, 0.6);
  return 0;
}
