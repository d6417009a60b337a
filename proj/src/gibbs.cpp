#include "scaledyn/gibbs.hpp"

#include <algorithm>
#include <cmath>

namespace scaledyn {

double gcmc_acceptance_ratio(MoveKind kind, size_t n, double volume, double z,
                             double beta, double delta_e) {
  double boltz = std::exp(-beta * delta_e);
  switch (kind) {
    case MoveKind::Insert:
      return z * volume / (static_cast<double>(n) + 1.0) * boltz;
    case MoveKind::Delete:
      return static_cast<double>(n) / (z * volume) * boltz;
    case MoveKind::Translate:
      return boltz;
  }
  return 0.0;
}

GcmcChain::GcmcChain(const GibbsParams& p, uint64_t seed)
    : params_(p), state_(p.torus), rng_(seed) {
  cells_.build(state_, params_.phi.r_cut());
  step_size_ = params_.translate_step;
  if (step_size_ <= 0.0) {
    step_size_ = std::min(0.25 * p.torus.box, std::max(0.25, 0.5 * params_.phi.r_cut()));
    tuning_ = true;  // only during burn_in()
  }
  stats_.translate_step = step_size_;
}

void GcmcChain::try_insert() {
  ++stats_.attempted[0];
  Vec x;
  for (int a = 0; a < params_.torus.dim; ++a) x[a] = rng_.uniform() * params_.torus.box;
  double de = insertion_energy(state_, cells_, params_.phi, x);
  double ratio = gcmc_acceptance_ratio(MoveKind::Insert, state_.size(), params_.torus.volume(),
                                       params_.z, params_.beta, de);
  if (rng_.uniform() < std::min(1.0, ratio)) {
    state_.pos.push_back(x);
    cells_.on_insert(state_, state_.size() - 1);
    ++stats_.accepted[0];
  }
}

void GcmcChain::try_delete() {
  ++stats_.attempted[1];
  size_t n = state_.size();
  if (n == 0) return;
  size_t i = rng_.uniform_index(n);
  double de = -removal_energy(state_, cells_, params_.phi, i);
  double ratio = gcmc_acceptance_ratio(MoveKind::Delete, n, params_.torus.volume(), params_.z,
                                       params_.beta, de);
  if (rng_.uniform() < std::min(1.0, ratio)) {
    size_t last = n - 1;
    if (i != last) state_.pos[i] = state_.pos[last];
    state_.pos.pop_back();
    cells_.on_swap_remove(state_, i, last);
    ++stats_.accepted[1];
  }
}

void GcmcChain::try_translate() {
  ++stats_.attempted[2];
  ++tune_window_att_;
  size_t n = state_.size();
  if (n == 0) return;
  size_t i = rng_.uniform_index(n);
  Vec x = state_.pos[i];
  for (int a = 0; a < params_.torus.dim; ++a) x[a] += step_size_ * rng_.normal();
  x = params_.torus.wrap(x);
  double de = move_energy_delta(state_, cells_, params_.phi, i, x);
  if (rng_.uniform() < std::min(1.0, std::exp(-params_.beta * de))) {
    state_.pos[i] = x;
    cells_.on_move(state_, i);
    ++stats_.accepted[2];
    ++tune_window_acc_;
  }
}

void GcmcChain::step() {
  double u = rng_.uniform();
  if (u < params_.p_insert)
    try_insert();
  else if (u < params_.p_insert + params_.p_delete)
    try_delete();
  else
    try_translate();
}

void GcmcChain::run(uint64_t n_moves) {
  for (uint64_t k = 0; k < n_moves; ++k) step();
}

void GcmcChain::burn_in(uint64_t n_moves) {
  for (uint64_t k = 0; k < n_moves; ++k) {
    step();
    if (tuning_ && tune_window_att_ >= 500) {
      double acc = static_cast<double>(tune_window_acc_) / static_cast<double>(tune_window_att_);
      if (acc > 0.45)
        step_size_ = std::min(step_size_ * 1.25, 0.25 * params_.torus.box);
      else if (acc < 0.35)
        step_size_ = std::max(step_size_ * 0.8, 1e-4 * params_.torus.box);
      tune_window_att_ = tune_window_acc_ = 0;
    }
  }
  stats_.translate_step = step_size_;
}

std::vector<Configuration> sample_ensemble(const GibbsParams& p, size_t n_samples,
                                           uint64_t thinning, uint64_t burn_in,
                                           uint64_t seed, MoveStats* stats_out) {
  if (n_samples < 1) throw Error("sample_ensemble: need n_samples >= 1");
  GcmcChain chain(p, seed);
  chain.burn_in(burn_in);
  std::vector<Configuration> out;
  out.reserve(n_samples);
  for (size_t s = 0; s < n_samples; ++s) {
    chain.run(std::max<uint64_t>(1, thinning));
    out.push_back(chain.state());
  }
  if (stats_out) *stats_out = chain.stats();
  return out;
}

namespace {

double shell_volume(int dim, double r_lo, double r_hi) {
  switch (dim) {
    case 1: return 2.0 * (r_hi - r_lo);
    case 2: return M_PI * (r_hi * r_hi - r_lo * r_lo);
    case 3: return 4.0 * M_PI / 3.0 * (r_hi * r_hi * r_hi - r_lo * r_lo * r_lo);
    default: throw Error("unsupported dimension");
  }
}

// Non-overlapping block means of a series.
std::vector<double> block_means(const std::vector<double>& xs, size_t block_len) {
  std::vector<double> out;
  size_t n = xs.size() / block_len;
  out.reserve(n);
  for (size_t b = 0; b < n; ++b) {
    double s = 0.0;
    for (size_t k = 0; k < block_len; ++k) s += xs[b * block_len + k];
    out.push_back(s / static_cast<double>(block_len));
  }
  if (out.size() < 2) {  // degenerate: fall back to per-sample "blocks"
    out = xs;
  }
  return out;
}

}  // namespace

EnsembleStats estimate_correlations(const std::vector<Configuration>& ensemble,
                                    const GibbsParams& p, int nbins,
                                    uint64_t bootstrap_seed) {
  if (ensemble.empty()) throw Error("estimate_correlations: empty ensemble");
  if (nbins < 1) throw Error("estimate_correlations: need >= 1 bin");
  const double volume = p.torus.volume();
  const double r_max = 0.5 * p.torus.box;
  const int dim = p.torus.dim;
  const size_t m = ensemble.size();

  std::vector<double> n_series(m), n2_series(m);
  std::vector<std::vector<double>> c_series(static_cast<size_t>(nbins),
                                            std::vector<double>(m, 0.0));
  for (size_t s = 0; s < m; ++s) {
    double n = static_cast<double>(ensemble[s].size());
    n_series[s] = n;
    n2_series[s] = n * n;
    auto counts = pair_distance_histogram(ensemble[s], r_max, nbins);
    for (int k = 0; k < nbins; ++k) c_series[static_cast<size_t>(k)][s] =
        static_cast<double>(counts[static_cast<size_t>(k)]);
  }

  EnsembleStats st;
  st.n_samples = m;
  st.autocorr_time = autocorrelation_time(n_series);
  size_t block_len = std::max<size_t>(1, static_cast<size_t>(std::ceil(5.0 * st.autocorr_time)));

  st.bin_edges.resize(static_cast<size_t>(nbins) + 1);
  st.shell_vol.resize(static_cast<size_t>(nbins));
  for (int k = 0; k <= nbins; ++k)
    st.bin_edges[static_cast<size_t>(k)] = r_max * k / nbins;
  for (int k = 0; k < nbins; ++k)
    st.shell_vol[static_cast<size_t>(k)] =
        shell_volume(dim, st.bin_edges[static_cast<size_t>(k)], st.bin_edges[static_cast<size_t>(k) + 1]);

  // Reduce every series to aligned block means; bootstrap over blocks.
  std::vector<std::vector<double>> blocks;
  blocks.push_back(block_means(n_series, block_len));
  blocks.push_back(block_means(n2_series, block_len));
  for (auto& cs : c_series) blocks.push_back(block_means(cs, block_len));
  const size_t nb = blocks[0].size();

  auto stat_over = [&](const std::vector<size_t>& pick, auto&& f) {
    std::vector<double> means(blocks.size(), 0.0);
    for (size_t s = 0; s < blocks.size(); ++s) {
      double acc = 0.0;
      for (size_t b : pick) acc += blocks[s][b];
      means[s] = acc / static_cast<double>(pick.size());
    }
    return f(means);
  };

  auto rho1_of = [&](const std::vector<double>& means) { return means[0] / volume; };
  auto chi_fluct_of = [&](const std::vector<double>& means) {
    return (means[1] - means[0] * means[0]) / volume;
  };
  auto rho2_of = [&](int k) {
    return [&, k](const std::vector<double>& means) {
      return 2.0 * means[static_cast<size_t>(k) + 2] /
             (volume * st.shell_vol[static_cast<size_t>(k)]);
    };
  };
  auto chi_of = [&](const std::vector<double>& means) {
    double rho1 = means[0] / volume;
    double acc = rho1;
    for (int k = 0; k < nbins; ++k) {
      double rho2 = 2.0 * means[static_cast<size_t>(k) + 2] /
                    (volume * st.shell_vol[static_cast<size_t>(k)]);
      acc += (rho2 - rho1 * rho1) * st.shell_vol[static_cast<size_t>(k)];
    }
    return acc;
  };

  std::vector<size_t> all(nb);
  for (size_t b = 0; b < nb; ++b) all[b] = b;

  const int n_resamples = 400;
  Rng brng(bootstrap_seed);
  std::vector<std::vector<size_t>> picks(static_cast<size_t>(n_resamples),
                                         std::vector<size_t>(nb));
  for (auto& pk : picks)
    for (size_t b = 0; b < nb; ++b) pk[b] = brng.uniform_index(nb);

  auto estimate = [&](auto&& f) {
    Estimate e;
    e.value = stat_over(all, f);
    std::vector<double> reps;
    reps.reserve(static_cast<size_t>(n_resamples));
    for (const auto& pk : picks) reps.push_back(stat_over(pk, f));
    e.stderr_ = std::sqrt(variance(reps));
    return e;
  };

  st.rho1 = estimate(rho1_of);
  st.chi_fluct = estimate(chi_fluct_of);
  st.chi = estimate(chi_of);
  st.rho2.resize(static_cast<size_t>(nbins));
  st.u2.resize(static_cast<size_t>(nbins));
  double rho1_sq = st.rho1.value * st.rho1.value;
  for (int k = 0; k < nbins; ++k) {
    st.rho2[static_cast<size_t>(k)] = estimate(rho2_of(k));
    // u2 = rho2 - rho1^2 bin-wise; errors from the rho2 channel dominate
    st.u2[static_cast<size_t>(k)].value = st.rho2[static_cast<size_t>(k)].value - rho1_sq;
    st.u2[static_cast<size_t>(k)].stderr_ = st.rho2[static_cast<size_t>(k)].stderr_;
  }
  st.chi_tail = std::abs(st.u2.back().value) * volume;
  return st;
}

RuelleReport ruelle_check(const EnsembleStats& stats, double xi) {
  if (xi <= 0.0) throw Error("ruelle_check: xi must be positive");
  RuelleReport rep;
  rep.rho1_ok = stats.rho1.value <= xi;
  rep.max_ratio = stats.rho1.value / xi;
  rep.rho2_ok.reserve(stats.rho2.size());
  for (const auto& r2 : stats.rho2) {
    rep.rho2_ok.push_back(r2.value <= xi * xi);
    rep.max_ratio = std::max(rep.max_ratio, r2.value / (xi * xi));
  }
  rep.pass = rep.rho1_ok &&
             std::all_of(rep.rho2_ok.begin(), rep.rho2_ok.end(), [](bool b) { return b; });
  return rep;
}

}  // namespace scaledyn
