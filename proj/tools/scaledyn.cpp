// Command-line front end: GCMC sampling, scaled Langevin runs, expansion
// coefficient tables, small-volume oracle checks, and the experiment
// registry. Exit codes: 0 pass, 1 fail, 2 usage/config error, 3 all checks
// inconclusive.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "scaledyn/expansion.hpp"
#include "scaledyn/experiments.hpp"
#include "scaledyn/fieldseries.hpp"
#include "scaledyn/langevin.hpp"
#include "scaledyn/oracle.hpp"
#include "scaledyn/records.hpp"
#include "scaledyn/snapshot.hpp"
#include "scaledyn/textio.hpp"

using namespace scaledyn;

namespace {

std::string output_root() {
  const char* env = std::getenv("SCALEDYN_OUT");
  return env ? std::string(env) : std::string("out");
}

void write_manifest(const Config& cfg, const std::string& dir) {
  std::ofstream mf(dir + "/manifest.txt");
  mf << "[resolved]\n" << cfg.manifest();
}

int cmd_sample(const Config& cfg, const std::string& outdir) {
  SystemSetup s = system_from_config(cfg);
  double eps = cfg.get_double_or("sample", "eps", 1.0);
  size_t n = static_cast<size_t>(cfg.get_int_or("mc", "samples", 200));
  double thin = cfg.get_double_or("mc", "thinning_sweeps", 2.0);
  double burn = cfg.get_double_or("mc", "burn_in_sweeps", 30.0);
  int nbins = static_cast<int>(cfg.get_int_or("mc", "bins", 24));
  bool write_snaps = cfg.get_bool_or("output", "write_snapshots", false);

  auto ens = sample_micro_ensemble(s, eps, n, thin, burn, derive_seed(s.seed, 1));
  GibbsParams gp = micro_params(s, eps);
  EnsembleStats st = estimate_correlations(ens, gp, nbins, derive_seed(s.seed, 2));

  std::filesystem::create_directories(outdir);
  if (write_snaps)
    for (size_t i = 0; i < ens.size(); ++i)
      write_snapshot(outdir + "/snap_" + std::to_string(i) + ".txt", ens[i], s.seed, i);

  std::ofstream out(outdir + "/correlations.csv");
  out << "quantity,r,value,stderr\n";
  out << "rho1,," << format_double(st.rho1.value) << "," << format_double(st.rho1.stderr_) << "\n";
  out << "chi,," << format_double(st.chi.value) << "," << format_double(st.chi.stderr_) << "\n";
  out << "chi_fluct,," << format_double(st.chi_fluct.value) << ","
      << format_double(st.chi_fluct.stderr_) << "\n";
  for (size_t k = 0; k < st.rho2.size(); ++k) {
    double rc = 0.5 * (st.bin_edges[k] + st.bin_edges[k + 1]);
    out << "rho2," << format_double(rc) << "," << format_double(st.rho2[k].value) << ","
        << format_double(st.rho2[k].stderr_) << "\n";
  }
  write_manifest(cfg, outdir);
  std::cout << "rho1 = " << st.rho1.value << " +- " << st.rho1.stderr_ << "\n"
            << "chi  = " << st.chi.value << " +- " << st.chi.stderr_
            << " (fluct " << st.chi_fluct.value << ")\n";
  if (cfg.has("mc", "ruelle_xi")) {
    RuelleReport rr = ruelle_check(st, cfg.get_double("mc", "ruelle_xi"));
    std::cout << "ruelle: " << (rr.pass ? "within" : "exceeds") << " bound, max ratio "
              << rr.max_ratio << "\n";
  }
  return 0;
}

int cmd_evolve(const Config& cfg, const std::string& outdir) {
  SystemSetup s = system_from_config(cfg);
  Torus macro(s.box_macro, s.dim);
  std::vector<TestFunction> fs = test_functions_from_config(cfg, macro);
  double eps = cfg.get_double_or("sample", "eps", 1.0);
  ExpansionCoefficients tc = coefficients_low_beta(s.phi, s.beta);
  GibbsParams gp = micro_params(s, eps);
  double sweep = std::max(1.0, s.z * gp.torus.volume());
  GcmcChain chain(gp, derive_seed(s.seed, 11));
  chain.burn_in(static_cast<uint64_t>(cfg.get_double_or("mc", "burn_in_sweeps", 30.0) * sweep));

  DynamicsParams dp;
  dp.dt = cfg.get_double_or("dynamics", "dt", 2e-3);
  dp.horizon = cfg.get_double_or("dynamics", "horizon", 0.4);
  dp.eps = eps;
  double record_step = cfg.get_double_or("dynamics", "record_step", 5e-3);
  dp.record_stride = std::max<uint64_t>(
      1, static_cast<uint64_t>(std::llround(record_step / (dp.dt * eps * eps))));
  dp.seed = derive_seed(s.seed, 12);
  FieldSeries fss = run_scaled(chain.state(), dp, gp, fs, s.phi.is_zero() ? s.z : tc.rho1);
  std::filesystem::create_directories(outdir);
  fss.write(outdir + "/fieldseries.txt");
  write_manifest(cfg, outdir);
  std::cout << "recorded " << fss.times.size() << " field samples to " << outdir << "\n";
  return 0;
}

int cmd_expand(const Config& cfg, const std::string& outdir) {
  SystemSetup s = system_from_config(cfg);
  std::vector<double> betas = cfg.get_doubles_or("expand", "betas", {s.beta});
  std::filesystem::create_directories(outdir);
  std::ofstream out(outdir + "/coefficients.csv");
  out << "potential,beta,source,rho1,chi,bulk_diffusion,d_phi,r_phi\n";
  for (double b : betas) {
    ExpansionCoefficients lb = coefficients_low_beta(s.phi, b);
    out << s.phi.id() << "," << format_double(b) << ",low_beta," << format_double(lb.rho1)
        << "," << format_double(lb.chi) << "," << format_double(lb.bulk_diffusion) << ","
        << format_double(lb.d_phi) << "," << format_double(lb.r_phi) << "\n";
    if (!s.phi.is_zero()) {
      ExpansionCoefficients bz = coefficients(s.phi, b, rho2_boltzmann(s.phi, b),
                                              rho1_low_beta(s.phi, b),
                                              CoefficientSource::McBacked);
      out << s.phi.id() << "," << format_double(b) << ",boltzmann,"
          << format_double(bz.rho1) << "," << format_double(bz.chi) << ","
          << format_double(bz.bulk_diffusion) << "," << format_double(bz.d_phi) << ","
          << format_double(bz.r_phi) << "\n";
    }
  }
  Curvatures cv = curvature_at_zero(s.phi);
  std::ofstream out2(outdir + "/curvatures.csv");
  out2 << "potential,d2_d,d2_compress,d2_r\n"
       << s.phi.id() << "," << format_double(cv.d2_d) << "," << format_double(cv.d2_compress)
       << "," << format_double(cv.d2_r) << "\n";
  write_manifest(cfg, outdir);
  std::cout << "wrote coefficient tables to " << outdir << "\n";
  return 0;
}

int cmd_oracle(const Config& cfg, const std::string& outdir) {
  SystemSetup s = system_from_config(cfg);
  FiniteVolumeSpec spec;
  spec.length = cfg.get_double("oracle", "length");
  spec.dim = static_cast<int>(cfg.get_int_or("oracle", "dimension", 1));
  spec.n_max = static_cast<int>(cfg.get_int_or("oracle", "n_max", 6));
  spec.quad_points = static_cast<int>(cfg.get_int_or("oracle", "quad_points", 20));
  spec.boundary = cfg.get_string_or("oracle", "boundary", "periodic") == "free"
                      ? FiniteVolumeSpec::Boundary::Free
                      : FiniteVolumeSpec::Boundary::Periodic;
  PairPotential phi = potential_from_config(cfg, spec.dim);
  Oracle oracle(spec, phi);

  std::filesystem::create_directories(outdir);
  std::ofstream out(outdir + "/oracle.csv");
  out << "quantity,arg,value,extra\n";
  PartitionResult zr = oracle.partition_function(s.beta, s.z);
  out << "partition_function,," << format_double(zr.value) << ","
      << format_double(zr.remainder_bound) << "\n";
  out << "mean_n,," << format_double(oracle.mean_particle_number(s.beta, s.z)) << ",\n";
  int nr = static_cast<int>(cfg.get_int_or("oracle", "r_points", 12));
  for (int k = 1; k <= nr; ++k) {
    double r = 0.5 * spec.length * k / (nr + 1);
    Vec a, b;
    for (int q = 0; q < spec.dim; ++q) a[q] = b[q] = 0.5 * spec.length;
    a[0] -= 0.5 * r;
    b[0] += 0.5 * r;
    out << "rho2," << format_double(r) << ","
        << format_double(oracle.correlation(s.beta, s.z, {a, b})) << ",\n";
  }
  if (cfg.get_bool_or("oracle", "beta_derivative", false)) {
    Vec c;
    for (int q = 0; q < spec.dim; ++q) c[q] = 0.5 * spec.length;
    BetaDerivativePair bd = oracle.beta_derivative_check(s.beta, s.z, {c});
    out << "beta_derivative_lhs,|eta|=1," << format_double(bd.lhs) << ",\n";
    out << "beta_derivative_rhs,|eta|=1," << format_double(bd.rhs) << ",\n";
  }
  write_manifest(cfg, outdir);
  std::cout << "wrote oracle table to " << outdir << " (Z remainder bound "
            << zr.remainder_bound << (zr.flagged ? ", flagged)" : ")") << "\n";
  return 0;
}

int cmd_report(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().filename() == "results.csv")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "no results.csv under " << dir << "\n";
    return 2;
  }
  std::vector<ResultRecord> all;
  for (const auto& f : files) {
    auto recs = read_records_csv(f);
    all.insert(all.end(), recs.begin(), recs.end());
  }
  std::printf("%-24s %-40s %-30s %12s %12s %12s  %s\n", "experiment", "point", "quantity",
              "estimate", "stderr", "target", "status");
  for (const auto& r : all)
    std::printf("%-24s %-40s %-30s %12.5g %12.5g %12.5g  %s\n", r.experiment.c_str(),
                r.point.c_str(), r.quantity.c_str(), r.estimate, r.stderr_, r.target,
                status_name(r.status).c_str());
  write_records_csv(dir + "/summary.csv", all);
  return exit_code_for(all);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interacting-Brownian-particle scaling toolkit"};
  app.require_subcommand(1);

  std::string config_path, outdir, experiment_id, report_dir;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key-value config file")->required();
    cmd->add_option("--out", outdir, "output directory (default under $SCALEDYN_OUT)");
  };

  CLI::App* c_sample = app.add_subcommand("sample", "grand-canonical sampling + estimators");
  add_config(c_sample);
  CLI::App* c_evolve = app.add_subcommand("evolve", "scaled Langevin run, field series out");
  add_config(c_evolve);
  CLI::App* c_expand = app.add_subcommand("expand", "coefficient tables");
  add_config(c_expand);
  CLI::App* c_oracle = app.add_subcommand("oracle", "small-volume brute-force checks");
  add_config(c_oracle);
  CLI::App* c_exp = app.add_subcommand("experiment", "run a registered experiment");
  c_exp->add_option("id", experiment_id, "experiment id")->required();
  add_config(c_exp);
  CLI::App* c_report = app.add_subcommand("report", "summarize result records");
  c_report->add_option("dir", report_dir, "directory holding results.csv files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_report->parsed()) return cmd_report(report_dir);

    Config cfg = Config::from_file(config_path);
    if (outdir.empty()) {
      std::string sub = c_sample->parsed()   ? "sample"
                        : c_evolve->parsed() ? "evolve"
                        : c_expand->parsed() ? "expand"
                        : c_oracle->parsed() ? "oracle"
                                             : experiment_id;
      outdir = output_root() + "/" + sub;
    }
    if (c_sample->parsed()) return cmd_sample(cfg, outdir);
    if (c_evolve->parsed()) return cmd_evolve(cfg, outdir);
    if (c_expand->parsed()) return cmd_expand(cfg, outdir);
    if (c_oracle->parsed()) return cmd_oracle(cfg, outdir);
    if (c_exp->parsed()) {
      if (!is_experiment(experiment_id)) {
        std::cerr << "unknown experiment id: " << experiment_id << "\n";
        return 2;
      }
      auto recs = run_experiment(experiment_id, cfg, outdir);
      for (const auto& r : recs)
        std::printf("[%s] %s %s %s: %.6g (target %.6g, rule: %s)\n",
                    status_name(r.status).c_str(), r.experiment.c_str(), r.point.c_str(),
                    r.quantity.c_str(), r.estimate, r.target, r.rule.c_str());
      return exit_code_for(recs);
    }
  } catch (const ConfigKeyError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
