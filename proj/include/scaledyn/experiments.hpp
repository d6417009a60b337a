#pragma once

#include <string>
#include <vector>

#include "scaledyn/gibbs.hpp"
#include "scaledyn/keyvalue.hpp"
#include "scaledyn/potential.hpp"
#include "scaledyn/records.hpp"
#include "scaledyn/testfunction.hpp"

namespace scaledyn {

// Experiment registry. Each experiment reads its parameters from the config,
// runs deterministically given the seeds it finds there, writes results.csv,
// manifest.txt and any data files under outdir, and returns its records.
// Wall-clock goes to a separate timing.txt so result files are byte-stable
// across reruns.
std::vector<std::string> experiment_ids();
bool is_experiment(const std::string& id);
std::vector<ResultRecord> run_experiment(const std::string& id, const Config& cfg,
                                         const std::string& outdir);

// Config-driven builders shared by the CLI subcommands.
PairPotential potential_from_config(const Config& cfg, int dim);
std::vector<TestFunction> test_functions_from_config(const Config& cfg, const Torus& box);

struct SystemSetup {
  int dim = 2;
  double beta = 0.0;
  double z = 1.0;
  double box_macro = 6.0;
  std::vector<double> epsilons{1.0, 0.5, 0.25, 0.125};
  uint64_t seed = 1;
  PairPotential phi = PairPotential::zero(2);
};
SystemSetup system_from_config(const Config& cfg);

// Gibbs parameters of the microscopic box at scale eps (side box_macro/eps).
GibbsParams micro_params(const SystemSetup& s, double eps);

// GCMC ensemble with sweep-scaled thinning/burn-in (one sweep ~ z * volume
// moves, so budgets stay comparable across the eps ladder).
std::vector<Configuration> sample_micro_ensemble(const SystemSetup& s, double eps,
                                                 size_t n_samples, double thin_sweeps,
                                                 double burn_sweeps, uint64_t seed);

}  // namespace scaledyn
