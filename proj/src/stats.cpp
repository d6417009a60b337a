#include "scaledyn/stats.hpp"

#include <algorithm>
#include <cmath>

#include "scaledyn/common.hpp"
#include "scaledyn/rng.hpp"

namespace scaledyn {

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  KahanSum s;
  for (double x : xs) s.add(x);
  return s.value() / static_cast<double>(xs.size());
}

double variance(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean(xs);
  KahanSum s;
  for (double x : xs) s.add((x - m) * (x - m));
  return s.value() / static_cast<double>(xs.size() - 1);
}

Estimate mean_estimate(const std::vector<double>& xs) {
  Estimate e;
  e.value = mean(xs);
  if (xs.size() > 1) e.stderr_ = std::sqrt(variance(xs) / static_cast<double>(xs.size()));
  return e;
}

double autocorrelation_time(const std::vector<double>& xs) {
  const size_t n = xs.size();
  if (n < 8) return 0.5;
  double m = mean(xs);
  double c0 = 0.0;
  for (double x : xs) c0 += (x - m) * (x - m);
  c0 /= static_cast<double>(n);
  if (c0 <= 0.0) return 0.5;
  double tau = 0.5;
  size_t w = 1;
  for (; w < n / 2; ++w) {
    double c = 0.0;
    for (size_t t = 0; t + w < n; ++t) c += (xs[t] - m) * (xs[t + w] - m);
    c /= static_cast<double>(n - w);
    tau += c / c0;
    if (static_cast<double>(w) >= 5.0 * tau) break;
  }
  return std::max(0.5, tau);
}

double block_bootstrap_stderr(
    const std::vector<std::vector<double>>& series, size_t block_len,
    const std::function<double(const std::vector<std::vector<double>>&)>& statistic,
    int n_resamples, uint64_t seed) {
  if (series.empty() || series[0].size() < 2) return 0.0;
  const size_t n = series[0].size();
  block_len = std::max<size_t>(1, std::min(block_len, n));
  const size_t n_blocks = (n + block_len - 1) / block_len;
  Rng rng(seed);
  std::vector<double> replicates;
  replicates.reserve(static_cast<size_t>(n_resamples));
  std::vector<std::vector<double>> resampled(series.size());
  for (auto& v : resampled) v.resize(n);
  for (int b = 0; b < n_resamples; ++b) {
    size_t filled = 0;
    while (filled < n) {
      size_t start = rng.uniform_index(n);
      for (size_t k = 0; k < block_len && filled < n; ++k, ++filled) {
        size_t src = (start + k) % n;
        for (size_t s = 0; s < series.size(); ++s) resampled[s][filled] = series[s][src];
      }
    }
    (void)n_blocks;
    replicates.push_back(statistic(resampled));
  }
  return std::sqrt(variance(replicates));
}

Estimate correlated_mean_estimate(const std::vector<double>& xs, uint64_t seed) {
  Estimate e;
  e.value = mean(xs);
  if (xs.size() < 4) return e;
  double tau = autocorrelation_time(xs);
  size_t block_len = std::max<size_t>(1, static_cast<size_t>(std::ceil(5.0 * tau)));
  size_t nb = xs.size() / block_len;
  std::vector<double> blocks;
  if (nb >= 2) {
    blocks.reserve(nb);
    for (size_t b = 0; b < nb; ++b) {
      double s = 0.0;
      for (size_t k = 0; k < block_len; ++k) s += xs[b * block_len + k];
      blocks.push_back(s / static_cast<double>(block_len));
    }
  } else {
    blocks = xs;
  }
  Rng rng(seed);
  const int resamples = 400;
  std::vector<double> reps;
  reps.reserve(resamples);
  for (int r = 0; r < resamples; ++r) {
    double s = 0.0;
    for (size_t b = 0; b < blocks.size(); ++b) s += blocks[rng.uniform_index(blocks.size())];
    reps.push_back(s / static_cast<double>(blocks.size()));
  }
  e.stderr_ = std::sqrt(variance(reps));
  return e;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit f;
  const size_t n = x.size();
  if (n < 2 || y.size() != n) throw Error("fit_line: need >= 2 aligned points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double nn = static_cast<double>(n);
  double denom = nn * sxx - sx * sx;
  f.slope = (nn * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / nn;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double r = y[i] - f.intercept - f.slope * x[i];
    ss += r * r;
  }
  double s2 = (n > 2) ? ss / static_cast<double>(n - 2) : 0.0;
  f.slope_err = std::sqrt(s2 * nn / denom);
  f.intercept_err = std::sqrt(s2 * sxx / denom);
  return f;
}

}  // namespace scaledyn
