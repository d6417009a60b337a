#pragma once

#include <cstdint>
#include <vector>

#include "scaledyn/configuration.hpp"
#include "scaledyn/kernels.hpp"
#include "scaledyn/potential.hpp"
#include "scaledyn/rng.hpp"
#include "scaledyn/stats.hpp"

namespace scaledyn {

// Parameters of the finite-volume Gibbs measure exp(-beta E) d pi_z.
struct GibbsParams {
  double beta = 0.0;
  double z = 1.0;
  Torus torus;
  PairPotential phi = PairPotential::zero(1);

  // GCMC move mix (remainder of the unit mass goes to translation) and the
  // Gaussian translation step; step < 0 requests the documented default with
  // burn-in auto-tuning towards ~40% acceptance.
  double p_insert = 0.25;
  double p_delete = 0.25;
  double translate_step = -1.0;

  GibbsParams() = default;
  GibbsParams(double beta_, double z_, Torus t, PairPotential p)
      : beta(beta_), z(z_), torus(t), phi(std::move(p)) {
    if (z <= 0.0) throw Error("gibbs: activity must be positive");
    if (beta < 0.0) throw Error("gibbs: beta must be >= 0");
    if (!phi.is_zero() && torus.box <= 2.0 * phi.r_cut())
      throw Error("gibbs: torus side must exceed 2 * r_cut");
  }
};

enum class MoveKind { Insert = 0, Delete = 1, Translate = 2 };

struct MoveStats {
  uint64_t attempted[3] = {0, 0, 0};
  uint64_t accepted[3] = {0, 0, 0};
  double translate_step = 0.0;

  double acceptance(MoveKind k) const {
    int i = static_cast<int>(k);
    return attempted[i] ? static_cast<double>(accepted[i]) / attempted[i] : 0.0;
  }
};

// Raw Metropolis-Hastings acceptance ratio (before min(1, .)) for each move.
// delta_e is E(new) - E(old); n the particle count before the move.
double gcmc_acceptance_ratio(MoveKind kind, size_t n, double volume, double z,
                             double beta, double delta_e);

// One grand-canonical chain. The cell index is maintained incrementally.
class GcmcChain {
 public:
  GcmcChain(const GibbsParams& p, uint64_t seed);

  void step();
  void run(uint64_t n_moves);
  // Burn-in with translation-step tuning towards ~40% acceptance.
  void burn_in(uint64_t n_moves);

  const Configuration& state() const { return state_; }
  const MoveStats& stats() const { return stats_; }
  const GibbsParams& params() const { return params_; }
  bool cells_consistent() const { return cells_.consistent_with(state_); }

 private:
  void try_insert();
  void try_delete();
  void try_translate();

  GibbsParams params_;
  Configuration state_;
  CellIndex cells_;
  Rng rng_;
  MoveStats stats_;
  double step_size_;
  bool tuning_ = false;
  uint64_t tune_window_att_ = 0, tune_window_acc_ = 0;
};

// Burn in, then record a snapshot every `thinning` moves. Deterministic given
// (seed, parameters).
std::vector<Configuration> sample_ensemble(const GibbsParams& p, size_t n_samples,
                                           uint64_t thinning, uint64_t burn_in,
                                           uint64_t seed, MoveStats* stats_out = nullptr);

struct EnsembleStats {
  Estimate rho1;                    // <n> / V
  std::vector<double> bin_edges;    // nbins + 1 radial edges, last = r_max
  std::vector<double> shell_vol;    // per-bin shell volume
  std::vector<Estimate> rho2;       // binned two-point correlation
  std::vector<Estimate> u2;         // rho2 - rho1^2, bin-wise
  Estimate chi;                     // rho1 + sum_k u2_k vol_k (truncated at L/2)
  Estimate chi_fluct;               // Var(n) / V
  double chi_tail = 0.0;            // |u2(last bin)| * V, truncation proxy
  size_t n_samples = 0;
  double autocorr_time = 0.0;
};

// Histogram estimators over an ensemble; error bars by block bootstrap with
// block length 5x the autocorrelation time of the particle-number series.
EnsembleStats estimate_correlations(const std::vector<Configuration>& ensemble,
                                    const GibbsParams& p, int nbins,
                                    uint64_t bootstrap_seed = 0x626f6f74ULL);

struct RuelleReport {
  bool rho1_ok = true;
  std::vector<bool> rho2_ok;
  double max_ratio = 0.0;  // max of rho1/xi and rho2_k / xi^2
  bool pass = true;
};

RuelleReport ruelle_check(const EnsembleStats& stats, double xi);

}  // namespace scaledyn
