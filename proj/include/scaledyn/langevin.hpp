#pragma once

#include <cstdint>
#include <vector>

#include "scaledyn/configuration.hpp"
#include "scaledyn/fieldseries.hpp"
#include "scaledyn/gibbs.hpp"
#include "scaledyn/oulimit.hpp"
#include "scaledyn/rng.hpp"
#include "scaledyn/scaling.hpp"
#include "scaledyn/testfunction.hpp"

namespace scaledyn {

// Scaled-run bookkeeping: the process observed at scale eps runs the
// microscopic dynamics to time horizon / eps^2 and records the fluctuation
// field on the macroscopic clock.
struct DynamicsParams {
  double dt = 1e-3;          // microscopic step
  double horizon = 1.0;      // macroscopic time T
  double eps = 1.0;          // scaling parameter in (0, 1]
  uint64_t record_stride = 1;  // record every this many steps
  uint64_t seed = 1;

  double micro_horizon() const { return horizon / (eps * eps); }
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Configuration> snaps;
};

// Single Euler-Maruyama proposal x + B dt + sqrt(2 dt) xi with one Gaussian
// vector per particle, assigned by particle index. Pure function of
// (state, noises); the hard-floor guard and step halving live in the
// integrator.
Configuration langevin_step_given_noise(const Configuration& c, const CellIndex& cells,
                                        const PairPotential& phi, double beta, double dt,
                                        const std::vector<Vec>& noises);

class LangevinIntegrator {
 public:
  LangevinIntegrator(Configuration initial, const PairPotential& phi, double beta,
                     uint64_t seed);

  // Advance by dt. If the proposal creates a pair below the hard floor the
  // step is retried as two half steps (fresh noise), recursively up to 8
  // halvings; past that a StiffStepError carries the failing time.
  void step(double dt);
  void run(double total_time, double dt);

  const Configuration& state() const { return state_; }
  double time() const { return time_; }

 private:
  void advance(double dt, int depth);

  Configuration state_;
  CellIndex cells_;
  PairPotential phi_;
  double beta_;
  Rng rng_;
  double time_ = 0.0;
  std::vector<Vec> noise_buf_;
};

// Equilibrium scaled run: integrates the microscopic dynamics started from
// `initial` (sampled from the Gibbs measure by the caller) and records
// <f_i, X_eps(t)> at macroscopic times t_j = j * record_stride * dt * eps^2.
// rho1 is the unscaled first correlation function used for centering.
FieldSeries run_scaled(const Configuration& initial, const DynamicsParams& dp,
                       const GibbsParams& gp, const std::vector<TestFunction>& fs,
                       double rho1);

// (H - H_eps) <f, .> evaluated at omega = S_out(S_in(gamma)):
//   (1 - rho1/chi) <lap f, omega>
//   - eps^{d/2} beta sum_pairs (grad phi_eps(x-y), grad f(x) - grad f(y))
// with the pair sum over scaled positions (phi_eps = phi(./eps)).
double generator_gap_linear(const Configuration& micro, double eps, const GibbsParams& gp,
                            const TestFunction& f, const OUParams& ou);

// Poisson(z dx) sample on the torus -- the free-case equilibrium.
Configuration poisson_configuration(const Torus& t, double z, Rng& rng);

// Simple trajectory recorder for equilibrium-preservation tests.
Trajectory run_trajectory(const Configuration& initial, const PairPotential& phi, double beta,
                          double dt, uint64_t n_steps, uint64_t record_every, uint64_t seed);

}  // namespace scaledyn
