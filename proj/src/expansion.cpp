#include "scaledyn/expansion.hpp"

#include <cmath>
#include <map>
#include <memory>

#include "scaledyn/quadrature.hpp"

namespace scaledyn {

Rho2Approximant rho2_boltzmann(const PairPotential& phi, double beta) {
  Rho2Approximant r;
  r.order = Rho2Approximant::Order::Boltzmann;
  r.asymptote = 1.0;
  r.r_valid = phi.r_cut();
  r.note = "e^{-beta phi}; error scale O(C(beta phi, 1))";
  r.eval = [phi, beta](double rr) {
    double v = phi.value(rr);
    return (v >= kInf) ? 0.0 : std::exp(-beta * v);
  };
  return r;
}

Rho2Approximant rho2_from_stats(const EnsembleStats& stats) {
  Rho2Approximant r;
  r.order = Rho2Approximant::Order::McInterpolated;
  double rho1 = stats.rho1.value;
  r.asymptote = rho1 * rho1;
  r.r_valid = stats.bin_edges.back();
  r.note = "piecewise-linear interpolation of binned rho2";
  std::vector<double> centers, vals;
  for (size_t k = 0; k + 1 < stats.bin_edges.size(); ++k) {
    centers.push_back(0.5 * (stats.bin_edges[k] + stats.bin_edges[k + 1]));
    vals.push_back(stats.rho2[k].value);
  }
  double asympt = r.asymptote;
  r.eval = [centers, vals, asympt](double rr) {
    if (centers.empty()) return asympt;
    if (rr <= centers.front()) return vals.front();
    if (rr >= centers.back()) return asympt;
    size_t hi = 1;
    while (hi < centers.size() && centers[hi] < rr) ++hi;
    double t = (rr - centers[hi - 1]) / (centers[hi] - centers[hi - 1]);
    return (1.0 - t) * vals[hi - 1] + t * vals[hi];
  };
  return r;
}

Rho2Approximant rho2_from_oracle(const Oracle& oracle, double beta, double z) {
  Rho2Approximant r;
  r.order = Rho2Approximant::Order::OracleInterpolated;
  const double len = oracle.spec().length;
  const int dim = oracle.spec().dim;
  Vec c;
  for (int a = 0; a < dim; ++a) c[a] = 0.5 * len;
  double rho1 = oracle.correlation(beta, z, {c});
  r.asymptote = rho1 * rho1;
  r.r_valid = 0.5 * len;
  r.note = "finite-volume quadrature two-point function";
  auto cache = std::make_shared<std::map<double, double>>();
  const Oracle* op = &oracle;
  r.eval = [op, cache, beta, z, len, dim](double rr) {
    auto it = cache->find(rr);
    if (it != cache->end()) return it->second;
    Vec a, b;
    for (int q = 0; q < dim; ++q) a[q] = b[q] = 0.5 * len;
    a[0] -= 0.5 * rr;
    b[0] += 0.5 * rr;
    double v = op->correlation(beta, z, {a, b});
    cache->emplace(rr, v);
    return v;
  };
  return r;
}

ExpansionCoefficients coefficients(const PairPotential& phi, double beta,
                                   const Rho2Approximant& rho2, double rho1,
                                   CoefficientSource source) {
  // All supplied kinds are isotropic by construction; anisotropic potentials
  // are not representable here, which is what the theory requires.
  ExpansionCoefficients c;
  c.source = source;
  c.rho1 = rho1;
  const int d = phi.dim();
  const double s = sphere_surface(d);
  // fixed-panel rules keep the radial nodes identical across beta, so the
  // quadrature bias is smooth in beta and drops out of finite differences
  const int panels = 48;
  if (phi.is_zero() || beta == 0.0) {
    // chi still carries the approximant's deviation from rho1^2 if any
    c.chi = rho1;
    if (!phi.is_zero() && rho2.r_valid > 0.0) {
      auto u = [&](double rr) { return (rho2.eval(rr) - rho1 * rho1) * std::pow(rr, d - 1); };
      c.chi += s * integrate_panels(u, 0.0, rho2.r_valid, panels);
    }
    c.d_phi = rho1;
    c.bulk_diffusion = rho1 / c.chi;
    c.r_phi = c.d_phi - rho1 * rho1 / c.chi;
    return c;
  }

  auto u2 = [&](double rr) { return (rho2.eval(rr) - rho1 * rho1) * std::pow(rr, d - 1); };
  c.chi = rho1 + s * integrate_panels(u2, 0.0, rho2.r_valid, panels);

  const double lo = (phi.kind() == PotentialKind::LennardJonesSmoothCutoff) ? phi.r_min() : 0.0;
  auto g_term = [&](double rr) {
    return (phi.d2value(rr) - phi.dvalue(rr) / rr) * rho2.eval(rr) * std::pow(rr, d + 1);
  };
  auto h_term = [&](double rr) { return phi.dvalue(rr) * rho2.eval(rr) * std::pow(rr, d); };
  double big_g = s / (d * (d + 2.0)) * integrate_panels(g_term, lo, phi.r_cut(), panels);
  double big_h = s / d * integrate_panels(h_term, lo, phi.r_cut(), panels);
  c.d_phi = rho1 + 0.5 * beta * (3.0 * big_g + big_h);
  c.bulk_diffusion = rho1 / c.chi;
  c.r_phi = c.d_phi - rho1 * rho1 / c.chi;
  return c;
}

double rho1_low_beta(const PairPotential& phi, double beta) {
  if (phi.is_zero()) return 1.0;
  double i1 = phi.moments(0.0).int_phi;
  double j = phi.int_phi_sq();
  return 1.0 - beta * i1 + 0.5 * beta * beta * (j + 3.0 * i1 * i1);
}

double chi_low_beta(const PairPotential& phi, double beta) {
  if (phi.is_zero()) return 1.0;
  double i1 = phi.moments(0.0).int_phi;
  double j = phi.int_phi_sq();
  return 1.0 - 2.0 * beta * i1 + beta * beta * (j + 4.5 * i1 * i1);
}

ExpansionCoefficients coefficients_low_beta(const PairPotential& phi, double beta) {
  ExpansionCoefficients c;
  c.source = CoefficientSource::LowBetaAnalytic;
  if (phi.is_zero()) return c;
  PotentialMoments m = phi.moments(0.0);
  double i1 = m.int_phi;
  double j = phi.int_phi_sq();
  double msq = m.int_x1d1_sq;
  c.rho1 = 1.0 - beta * i1 + 0.5 * beta * beta * (j + 3.0 * i1 * i1);
  c.chi = 1.0 - 2.0 * beta * i1 + beta * beta * (j + 4.5 * i1 * i1);
  c.d_phi = 1.0 + 0.5 * beta * beta * (msq - i1 * i1);
  c.bulk_diffusion = c.rho1 / c.chi;
  c.r_phi = c.d_phi - c.rho1 * c.rho1 / c.chi;
  return c;
}

Curvatures curvature_at_zero(const PairPotential& phi) {
  Curvatures cv;
  if (phi.is_zero()) return cv;
  PotentialMoments m = phi.moments(0.0);
  cv.d2_d = -m.int_phi * m.int_phi + m.int_x1d1_sq;
  cv.d2_compress = -m.int_phi * m.int_phi;
  cv.d2_r = 2.0 * m.int_x1d1_sq;
  return cv;
}

CoercivitySides coercivity_sides(const TestFunction& f,
                                 const std::vector<Configuration>& ensemble,
                                 const PairPotential& phi, double beta,
                                 uint64_t bootstrap_seed) {
  if (ensemble.empty()) throw Error("coercivity_sides: empty ensemble");
  const int dim = ensemble[0].torus.dim;
  std::vector<double> lhs_series(ensemble.size()), rhs_series(ensemble.size());
  for (size_t s = 0; s < ensemble.size(); ++s) {
    const Configuration& c = ensemble[s];
    CellIndex cells(c, phi.r_cut());
    std::vector<Vec> b = drift(c, cells, phi, beta);
    KahanSum hmu, hess_tr;
    for (size_t i = 0; i < c.size(); ++i) {
      hmu.add(f.laplacian(c.pos[i]));
      hmu.add(dot(b[i], f.grad(c.pos[i]), dim));
      hess_tr.add(f.hessian_frob_sq(c.pos[i]));
    }
    lhs_series[s] = hmu.value() * hmu.value();

    double pair_term = 0.0;
    if (!phi.is_zero() && beta != 0.0) {
      const size_t n = c.size();
      std::vector<double> partial(n, 0.0);
#pragma omp parallel for schedule(static)
      for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
        size_t i = static_cast<size_t>(ii);
        KahanSum acc;
        cells.for_candidates(c, c.pos[i], [&](size_t j) {
          if (j <= i) return;
          Vec d = c.torus.displacement(c.pos[i], c.pos[j]);
          double r = norm(d, dim);
          if (r >= phi.r_cut() || r <= 0.0) return;
          Vec g;
          Mat h;
          phi.derivatives(d, g, h);
          Vec df = f.grad(c.pos[i]) - f.grad(c.pos[j]);
          acc.add(dot(df, mat_vec(h, df, dim), dim));
        });
        partial[i] = acc.value();
      }
      pair_term = kahan_total(partial);
    }
    rhs_series[s] = hess_tr.value() + beta * pair_term;
  }
  CoercivitySides out;
  out.lhs = correlated_mean_estimate(lhs_series, derive_seed(bootstrap_seed, 1));
  out.rhs = correlated_mean_estimate(rhs_series, derive_seed(bootstrap_seed, 2));
  return out;
}

}  // namespace scaledyn
