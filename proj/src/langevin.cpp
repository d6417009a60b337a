#include "scaledyn/langevin.hpp"

#include <cmath>

#include "scaledyn/kernels.hpp"

namespace scaledyn {

Configuration langevin_step_given_noise(const Configuration& c, const CellIndex& cells,
                                        const PairPotential& phi, double beta, double dt,
                                        const std::vector<Vec>& noises) {
  const int dim = c.torus.dim;
  const double amp = std::sqrt(2.0 * dt);
  std::vector<Vec> field;
  if (!phi.is_zero() && beta != 0.0) field = drift(c, cells, phi, beta);
  Configuration out(c.torus);
  out.pos.resize(c.size());
#pragma omp parallel for schedule(static)
  for (long long ii = 0; ii < static_cast<long long>(c.size()); ++ii) {
    size_t i = static_cast<size_t>(ii);
    Vec x = c.pos[i];
    if (!field.empty())
      for (int a = 0; a < dim; ++a) x[a] += field[i][a] * dt;
    for (int a = 0; a < dim; ++a) x[a] += amp * noises[i][a];
    out.pos[i] = c.torus.wrap(x);
  }
  return out;
}

LangevinIntegrator::LangevinIntegrator(Configuration initial, const PairPotential& phi,
                                       double beta, uint64_t seed)
    : state_(std::move(initial)), phi_(phi), beta_(beta), rng_(seed) {
  cells_.build(state_, phi_.r_cut());
}

void LangevinIntegrator::advance(double dt, int depth) {
  const int dim = state_.torus.dim;
  noise_buf_.resize(state_.size());
  for (size_t i = 0; i < state_.size(); ++i)
    for (int a = 0; a < dim; ++a) noise_buf_[i][a] = rng_.normal();
  Configuration proposal =
      langevin_step_given_noise(state_, cells_, phi_, beta_, dt, noise_buf_);
  if (phi_.r_min() > 0.0) {
    CellIndex pcells(proposal, phi_.r_cut());
    double dmin = min_pair_distance_below(proposal, pcells, phi_.r_min());
    if (dmin < phi_.r_min()) {
      if (depth >= 8)
        throw StiffStepError(time_, "close pair at distance " + std::to_string(dmin));
      advance(0.5 * dt, depth + 1);
      advance(0.5 * dt, depth + 1);
      return;
    }
    state_ = std::move(proposal);
    cells_ = std::move(pcells);
  } else {
    state_ = std::move(proposal);
    cells_.build(state_, phi_.r_cut());
  }
  time_ += dt;
}

void LangevinIntegrator::step(double dt) { advance(dt, 0); }

void LangevinIntegrator::run(double total_time, double dt) {
  uint64_t steps = static_cast<uint64_t>(std::llround(total_time / dt));
  for (uint64_t s = 0; s < steps; ++s) step(dt);
}

FieldSeries run_scaled(const Configuration& initial, const DynamicsParams& dp,
                       const GibbsParams& gp, const std::vector<TestFunction>& fs,
                       double rho1) {
  if (dp.eps <= 0.0 || dp.eps > 1.0) throw Error("run_scaled: eps must lie in (0,1]");
  if (dp.dt <= 0.0) throw Error("run_scaled: dt must be positive");
  FieldSeries out;
  out.source = "langevin";
  out.eps = dp.eps;
  out.beta = gp.beta;
  out.z = gp.z;
  out.box = initial.torus.box * dp.eps;
  out.dt = dp.dt;
  out.seed = dp.seed;
  for (const auto& f : fs) out.fn_ids.push_back(f.id());

  LangevinIntegrator integ(initial, gp.phi, gp.beta, dp.seed);
  uint64_t total_steps =
      static_cast<uint64_t>(std::llround(dp.micro_horizon() / dp.dt));
  const double macro_per_step = dp.dt * dp.eps * dp.eps;

  auto record = [&](uint64_t steps_done) {
    Configuration scaled = s_in(integ.state(), dp.eps);
    ScaledField sf{&scaled, dp.eps, rho1};
    std::vector<double> row(fs.size());
    for (size_t i = 0; i < fs.size(); ++i) row[i] = fluctuation_field(sf, fs[i]);
    out.times.push_back(static_cast<double>(steps_done) * macro_per_step);
    out.values.push_back(std::move(row));
  };

  record(0);
  uint64_t done = 0;
  while (done < total_steps) {
    uint64_t chunk = std::min<uint64_t>(dp.record_stride, total_steps - done);
    for (uint64_t s = 0; s < chunk; ++s) integ.step(dp.dt);
    done += chunk;
    record(done);
  }
  return out;
}

double generator_gap_linear(const Configuration& micro, double eps, const GibbsParams& gp,
                            const TestFunction& f, const OUParams& ou) {
  const int dim = micro.torus.dim;
  Configuration scaled = s_in(micro, eps);
  if (std::abs(f.box().box - scaled.torus.box) > 1e-9 * scaled.torus.box)
    throw Error("generator_gap_linear: test function torus mismatch");

  // <lap f, omega>: the torus integral of lap f vanishes identically
  ScaledField sf{&scaled, eps, ou.rho1};
  double lap_pairing =
      fluctuation_pairing(sf, [&](const Vec& x) { return f.laplacian(x); }, 0.0);

  double pair_sum = 0.0;
  if (!gp.phi.is_zero() && gp.beta != 0.0) {
    CellIndex cells(micro, gp.phi.r_cut());
    const size_t n = micro.size();
    const double rc = gp.phi.r_cut();
    const double rmin = gp.phi.r_min();
    std::vector<double> partial(n, 0.0);
    bool bad = false;
    size_t bad_i = 0, bad_j = 0;
    double bad_r = 0.0;
#pragma omp parallel for schedule(static)
    for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
      size_t i = static_cast<size_t>(ii);
      KahanSum acc;
      cells.for_candidates(micro, micro.pos[i], [&](size_t j) {
        if (j <= i) return;
        Vec d = micro.torus.displacement(micro.pos[i], micro.pos[j]);
        double r = norm(d, dim);
        if (r >= rc || r <= 0.0) return;
        if (r < rmin) {
#pragma omp critical
          {
            bad = true;
            bad_i = i;
            bad_j = j;
            bad_r = r;
          }
          return;
        }
        // grad phi_eps at the scaled displacement = (1/eps) grad phi at the
        // microscopic displacement
        double v1 = gp.phi.dvalue(r) / eps;
        Vec df = f.grad(scaled.pos[i]) - f.grad(scaled.pos[j]);
        double proj = 0.0;
        for (int a = 0; a < dim; ++a) proj += (d[a] / r) * df[a];
        acc.add(v1 * proj);
      });
      partial[i] = acc.value();
    }
    if (bad) throw ClosePairError(bad_i, bad_j, bad_r);
    pair_sum = kahan_total(partial);
  }
  double coeff = 1.0 - ou.rho1 / ou.chi;
  return coeff * lap_pairing - std::pow(eps, 0.5 * dim) * gp.beta * pair_sum;
}

Configuration poisson_configuration(const Torus& t, double z, Rng& rng) {
  Configuration c(t);
  // split large intensities so exp(-lambda) stays representable
  auto poisson_small = [&](double lambda) {
    double l = std::exp(-lambda);
    size_t n = 0;
    double p = 1.0;
    while (true) {
      p *= rng.uniform();
      if (p <= l) break;
      ++n;
    }
    return n;
  };
  double remaining = z * t.volume();
  size_t n = 0;
  while (remaining > 0.0) {
    double chunk = std::min(remaining, 500.0);
    n += poisson_small(chunk);
    remaining -= chunk;
  }
  c.pos.resize(n);
  for (size_t i = 0; i < n; ++i)
    for (int a = 0; a < t.dim; ++a) c.pos[i][a] = rng.uniform() * t.box;
  return c;
}

Trajectory run_trajectory(const Configuration& initial, const PairPotential& phi, double beta,
                          double dt, uint64_t n_steps, uint64_t record_every, uint64_t seed) {
  Trajectory tr;
  LangevinIntegrator integ(initial, phi, beta, seed);
  tr.times.push_back(0.0);
  tr.snaps.push_back(integ.state());
  for (uint64_t s = 1; s <= n_steps; ++s) {
    integ.step(dt);
    if (s % record_every == 0 || s == n_steps) {
      tr.times.push_back(integ.time());
      tr.snaps.push_back(integ.state());
    }
  }
  return tr;
}

}  // namespace scaledyn
