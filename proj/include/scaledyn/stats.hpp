#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace scaledyn {

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

double mean(const std::vector<double>& xs);
double variance(const std::vector<double>& xs);  // unbiased

// Mean with naive iid standard error.
Estimate mean_estimate(const std::vector<double>& xs);

// Integrated autocorrelation time by Sokal windowing (window W grows until
// W >= 5 * tau_int). Returns >= 0.5; 0.5 means uncorrelated.
double autocorrelation_time(const std::vector<double>& xs);

// Circular block bootstrap standard error of a statistic computed from one or
// more aligned series. Block length should be ~5x the autocorrelation time.
// Deterministic given `seed`.
double block_bootstrap_stderr(
    const std::vector<std::vector<double>>& series, size_t block_len,
    const std::function<double(const std::vector<std::vector<double>>&)>& statistic,
    int n_resamples, uint64_t seed);

// Mean of a correlated series with a bootstrap standard error: the series is
// reduced to non-overlapping block means (block length 5x the estimated
// autocorrelation time) which are then resampled. Deterministic given seed.
Estimate correlated_mean_estimate(const std::vector<double>& xs, uint64_t seed);

// Least-squares line fit y = a + b x with standard errors from residuals.
struct LineFit {
  double intercept = 0.0, slope = 0.0;
  double intercept_err = 0.0, slope_err = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace scaledyn
