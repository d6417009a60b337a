#pragma once

#include <functional>
#include <vector>

#include "scaledyn/fieldseries.hpp"
#include "scaledyn/testfunction.hpp"

namespace scaledyn {

// Coefficients of the limiting density-fluctuation process: stationary
// variance chi per unit-norm mode, drift (rho1/chi) Laplacian, noise
// sqrt(2 rho1) against a Brownian motion with covariance operator -Laplacian
// (realized spectrally: independent mode noises with variance |kappa|^2 dt).
struct OUParams {
  double rho1 = 1.0;
  double chi = 1.0;

  double diffusion() const { return rho1 / chi; }
  double noise_strength() const { return std::sqrt(2.0 * rho1); }
};

// Var <f, omega> under the white-noise measure: chi ||f||_0^2.
double white_noise_variance(const TestFunction& f, double chi);

// Stationary autocovariance Cov(<f,X(t)>, <f,X(0)>) for a Fourier mode:
// chi ||f||_0^2 exp(-(rho1/chi) |kappa|^2 t).
double ou_autocov(const TestFunction& f, double t, const OUParams& p);

// Exact per-mode OU transitions (stationary start):
// a <- a e^{-theta dt} + sqrt(chi (1 - e^{-2 theta dt})) xi, theta = (rho1/chi)|kappa|^2.
// The recorded series are <f, X(t)> for each supplied mode.
FieldSeries simulate_ou(const OUParams& p, const std::vector<TestFunction>& modes,
                        double horizon, double dt, uint64_t seed);

// Smooth cylinder functional F = g(<f_1,.>, ..., <f_N,.>) with derivative
// evaluators for the Dirichlet-form machinery.
struct CylinderFunction {
  std::vector<TestFunction> fs;
  std::function<double(const std::vector<double>&)> g;
  std::function<std::vector<double>(const std::vector<double>&)> grad_g;

  static CylinderFunction linear(const TestFunction& f);
  static CylinderFunction sine(const TestFunction& f);
};

// Limit Dirichlet form E(F,G) = rho1 E_nu[ sum_ij di gF dj gG <grad f_i, grad f_j> ]
// estimated over white-noise samples (Gaussian pairings with covariance
// chi <f_i, f_j>_0). Deterministic given the seed.
double dirichlet_limit_form(const CylinderFunction& f_fn, const CylinderFunction& g_fn,
                            const OUParams& p, size_t n_samples, uint64_t seed);

}  // namespace scaledyn
