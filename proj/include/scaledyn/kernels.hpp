#pragma once

#include <vector>

#include "scaledyn/configuration.hpp"
#include "scaledyn/potential.hpp"

namespace scaledyn {

// Pair sums over a configuration. Each kernel comes in two flavours:
//   *_naive  -- serial O(n^2) double loop, the reference used in tests;
//   cell-list versions parallelized over particles (OpenMP), with
//   per-particle partials reduced in index order so results are
//   independent of the thread count.

double total_energy_naive(const Configuration& c, const PairPotential& phi);
double total_energy(const Configuration& c, const CellIndex& cells, const PairPotential& phi);

// W(eta | gamma) = sum_{x in eta, y in gamma} phi(x - y); both on one torus.
double interaction_energy_naive(const Configuration& eta, const Configuration& gamma,
                                const PairPotential& phi);
double interaction_energy(const Configuration& eta, const Configuration& gamma,
                          const CellIndex& gamma_cells, const PairPotential& phi);

// Logarithmic-derivative field B(gamma, x) = -beta sum_{y != x} grad phi(x-y).
// Throws ClosePairError when a pair sits below the potential's hard floor.
std::vector<Vec> drift_naive(const Configuration& c, const PairPotential& phi, double beta);
std::vector<Vec> drift(const Configuration& c, const CellIndex& cells,
                       const PairPotential& phi, double beta);

// Energy of inserting a test particle at x / removing particle i.
double insertion_energy(const Configuration& c, const CellIndex& cells,
                        const PairPotential& phi, const Vec& x);
double removal_energy(const Configuration& c, const CellIndex& cells,
                      const PairPotential& phi, size_t i);
// Energy change of moving particle i to x.
double move_energy_delta(const Configuration& c, const CellIndex& cells,
                         const PairPotential& phi, size_t i, const Vec& x);

// Counts of unordered pairs with minimum-image distance in [k*dr, (k+1)*dr),
// dr = r_max / nbins. Pairs at or beyond r_max are not counted.
std::vector<uint64_t> pair_distance_histogram(const Configuration& c, double r_max, int nbins);

// Smallest minimum-image pair distance at or below `threshold`; +inf if none.
// `cells` must have cutoff >= threshold.
double min_pair_distance_below(const Configuration& c, const CellIndex& cells, double threshold);

}  // namespace scaledyn
