#include "scaledyn/kernels.hpp"

#include <atomic>
#include <cmath>

namespace scaledyn {

double total_energy_naive(const Configuration& c, const PairPotential& phi) {
  if (phi.is_zero()) return 0.0;
  const size_t n = c.size();
  KahanSum e;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      Vec d = c.torus.displacement(c.pos[i], c.pos[j]);
      double r = norm(d, c.torus.dim);
      if (r >= phi.r_cut()) continue;
      e.add(phi.value(r));
    }
  return e.value();
}

double total_energy(const Configuration& c, const CellIndex& cells, const PairPotential& phi) {
  if (phi.is_zero()) return 0.0;
  const size_t n = c.size();
  std::vector<double> partial(n, 0.0);
  const double rc = phi.r_cut();
#pragma omp parallel for schedule(static)
  for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
    size_t i = static_cast<size_t>(ii);
    KahanSum e;
    cells.for_candidates(c, c.pos[i], [&](size_t j) {
      if (j <= i) return;
      Vec d = c.torus.displacement(c.pos[i], c.pos[j]);
      double r = norm(d, c.torus.dim);
      if (r >= rc) return;
      e.add(phi.value(r));
    });
    partial[i] = e.value();
  }
  return kahan_total(partial);
}

double interaction_energy_naive(const Configuration& eta, const Configuration& gamma,
                                const PairPotential& phi) {
  if (phi.is_zero()) return 0.0;
  KahanSum e;
  for (const Vec& x : eta.pos)
    for (const Vec& y : gamma.pos) {
      double r = eta.torus.distance(x, y);
      if (r >= phi.r_cut()) continue;
      e.add(phi.value(r));
    }
  return e.value();
}

double interaction_energy(const Configuration& eta, const Configuration& gamma,
                          const CellIndex& gamma_cells, const PairPotential& phi) {
  if (phi.is_zero()) return 0.0;
  const size_t n = eta.size();
  std::vector<double> partial(n, 0.0);
  const double rc = phi.r_cut();
#pragma omp parallel for schedule(static)
  for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
    size_t i = static_cast<size_t>(ii);
    KahanSum e;
    gamma_cells.for_candidates(gamma, eta.pos[i], [&](size_t j) {
      double r = eta.torus.distance(eta.pos[i], gamma.pos[j]);
      if (r >= rc) return;
      e.add(phi.value(r));
    });
    partial[i] = e.value();
  }
  return kahan_total(partial);
}

std::vector<Vec> drift_naive(const Configuration& c, const PairPotential& phi, double beta) {
  const size_t n = c.size();
  std::vector<Vec> field(n);
  if (phi.is_zero() || beta == 0.0) return field;
  const int dim = c.torus.dim;
  for (size_t i = 0; i < n; ++i) {
    KahanSum acc[kMaxDim];
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Vec d = c.torus.displacement(c.pos[i], c.pos[j]);
      double r = norm(d, dim);
      if (r < phi.r_min()) throw ClosePairError(i, j, r);
      if (r >= phi.r_cut()) continue;
      double v1 = phi.dvalue(r);
      for (int a = 0; a < dim; ++a) acc[a].add(v1 * d[a] / r);
    }
    for (int a = 0; a < dim; ++a) field[i][a] = -beta * acc[a].value();
  }
  return field;
}

std::vector<Vec> drift(const Configuration& c, const CellIndex& cells,
                       const PairPotential& phi, double beta) {
  const size_t n = c.size();
  std::vector<Vec> field(n);
  if (phi.is_zero() || beta == 0.0) return field;
  const int dim = c.torus.dim;
  const double rc = phi.r_cut();
  const double rmin = phi.r_min();
  std::atomic<bool> bad{false};
  size_t bad_i = 0, bad_j = 0;
  double bad_r = 0.0;
#pragma omp parallel for schedule(static)
  for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
    size_t i = static_cast<size_t>(ii);
    KahanSum acc[kMaxDim];
    cells.for_candidates(c, c.pos[i], [&](size_t j) {
      if (j == i) return;
      Vec d = c.torus.displacement(c.pos[i], c.pos[j]);
      double r = norm(d, dim);
      if (r < rmin && !bad.exchange(true)) {
        bad_i = i;
        bad_j = j;
        bad_r = r;
      }
      if (r >= rc || r <= 0.0) return;
      double v1 = phi.dvalue(r);
      for (int a = 0; a < dim; ++a) acc[a].add(v1 * d[a] / r);
    });
    for (int a = 0; a < dim; ++a) field[i][a] = -beta * acc[a].value();
  }
  if (bad.load()) throw ClosePairError(bad_i, bad_j, bad_r);
  return field;
}

double insertion_energy(const Configuration& c, const CellIndex& cells,
                        const PairPotential& phi, const Vec& x) {
  if (phi.is_zero()) return 0.0;
  KahanSum e;
  const double rc = phi.r_cut();
  cells.for_candidates(c, x, [&](size_t j) {
    double r = c.torus.distance(x, c.pos[j]);
    if (r >= rc) return;
    e.add(phi.value(r));
  });
  return e.value();
}

double removal_energy(const Configuration& c, const CellIndex& cells,
                      const PairPotential& phi, size_t i) {
  if (phi.is_zero()) return 0.0;
  KahanSum e;
  const double rc = phi.r_cut();
  cells.for_candidates(c, c.pos[i], [&](size_t j) {
    if (j == i) return;
    double r = c.torus.distance(c.pos[i], c.pos[j]);
    if (r >= rc) return;
    e.add(phi.value(r));
  });
  return e.value();
}

double move_energy_delta(const Configuration& c, const CellIndex& cells,
                         const PairPotential& phi, size_t i, const Vec& x) {
  if (phi.is_zero()) return 0.0;
  KahanSum e_new;
  const double rc = phi.r_cut();
  cells.for_candidates(c, x, [&](size_t j) {
    if (j == i) return;
    double r = c.torus.distance(x, c.pos[j]);
    if (r >= rc) return;
    e_new.add(phi.value(r));
  });
  return e_new.value() - removal_energy(c, cells, phi, i);
}

std::vector<uint64_t> pair_distance_histogram(const Configuration& c, double r_max, int nbins) {
  if (r_max > 0.5 * c.torus.box + 1e-12)
    throw Error("pair_distance_histogram: r_max beyond L/2");
  std::vector<uint64_t> bins(static_cast<size_t>(nbins), 0);
  const size_t n = c.size();
  const double inv_dr = nbins / r_max;
  const int dim = c.torus.dim;
#pragma omp parallel
  {
    std::vector<uint64_t> local(static_cast<size_t>(nbins), 0);
#pragma omp for schedule(static) nowait
    for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
      size_t i = static_cast<size_t>(ii);
      for (size_t j = i + 1; j < n; ++j) {
        double r = norm(c.torus.displacement(c.pos[i], c.pos[j]), dim);
        if (r >= r_max) continue;
        int k = static_cast<int>(r * inv_dr);
        if (k >= nbins) k = nbins - 1;
        ++local[static_cast<size_t>(k)];
      }
    }
#pragma omp critical
    for (int k = 0; k < nbins; ++k) bins[static_cast<size_t>(k)] += local[static_cast<size_t>(k)];
  }
  return bins;
}

double min_pair_distance_below(const Configuration& c, const CellIndex& cells, double threshold) {
  if (threshold <= 0.0) return kInf;
  const size_t n = c.size();
  double best = kInf;
#pragma omp parallel for schedule(static) reduction(min : best)
  for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
    size_t i = static_cast<size_t>(ii);
    cells.for_candidates(c, c.pos[i], [&](size_t j) {
      if (j <= i) return;
      double r = c.torus.distance(c.pos[i], c.pos[j]);
      if (r <= threshold && r < best) best = r;
    });
  }
  return best;
}

}  // namespace scaledyn
