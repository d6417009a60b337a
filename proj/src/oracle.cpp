#include "scaledyn/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "scaledyn/quadrature.hpp"

namespace scaledyn {

double k_transform(const FiniteConfigurationFunction& g, const std::vector<Vec>& gamma) {
  std::vector<Vec> eligible;
  if (g.bounded && g.in_region) {
    for (const Vec& x : gamma)
      if (g.in_region(x)) eligible.push_back(x);
  } else {
    eligible = gamma;
  }
  size_t cap = g.bounded ? static_cast<size_t>(g.max_cardinality) : eligible.size();
  if (!g.bounded && gamma.size() > 12)
    throw Error("k_transform: unbounded support needs |gamma| <= 12");
  if (g.bounded && cap > 16 && eligible.size() > 20)
    throw Error("k_transform: support cardinality too large for enumeration");

  KahanSum total;
  std::vector<Vec> subset;
  std::function<void(size_t)> rec = [&](size_t start) {
    total.add(g.eval(subset));
    if (subset.size() >= cap) return;
    for (size_t i = start; i < eligible.size(); ++i) {
      subset.push_back(eligible[i]);
      rec(i + 1);
      subset.pop_back();
    }
  };
  rec(0);
  return total.value();
}

Oracle::Oracle(const FiniteVolumeSpec& spec, const PairPotential& phi)
    : spec_(spec), phi_(phi), torus_(spec.length, spec.dim) {
  if (spec.dim < 1 || spec.dim > 2) throw Error("oracle: dim must be 1 or 2");
  if (spec.n_max < 2) throw Error("oracle: n_max must be >= 2");
  if (spec.dim * spec.n_max > 8)
    throw Error("oracle: quadrature dimension d * n_max must be <= 8");
  if (spec.quad_points < 4) throw Error("oracle: need >= 4 quadrature points");

  std::vector<double> nodes, weights;
  gauss_legendre_on(spec.quad_points, 0.0, spec.length, nodes, weights);

  size_t p = 1;
  for (int a = 0; a < spec.dim; ++a) p *= static_cast<size_t>(spec.quad_points);
  if (p > 65535) throw Error("oracle: grid too large for 16-bit node ids");
  points_.resize(p);
  point_w_.resize(p);
  for (size_t idx = 0; idx < p; ++idx) {
    size_t rest = idx;
    double w = 1.0;
    Vec x;
    for (int a = spec.dim - 1; a >= 0; --a) {
      size_t q = rest % static_cast<size_t>(spec.quad_points);
      rest /= static_cast<size_t>(spec.quad_points);
      x[a] = nodes[q];
      w *= weights[q];
    }
    points_[idx] = x;
    point_w_[idx] = w;
  }

  // enumerate node multisets per particle number; the coefficient carries
  // prod(weights) / prod(multiplicity!) so the symmetric-integrand tensor
  // quadrature is exact
  sectors_.resize(static_cast<size_t>(spec.n_max));
  std::vector<uint16_t> stack;
  std::function<void(size_t, double, double)> rec = [&](size_t start, double coeff,
                                                        double mult_run) {
    size_t n = stack.size();
    if (n > 0) {
      Sector& sec = sectors_[n - 1];
      KahanSum e;
      for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
          e.add(pair_phi(points_[stack[i]], points_[stack[j]]));
      sec.coeff.push_back(coeff);
      sec.energy.push_back(e.value());
      for (uint16_t id : stack) sec.ids.push_back(id);
    }
    if (n == static_cast<size_t>(spec.n_max)) return;
    for (size_t i = start; i < points_.size(); ++i) {
      double run = (n > 0 && stack.back() == i) ? mult_run + 1.0 : 1.0;
      stack.push_back(static_cast<uint16_t>(i));
      rec(i, coeff * point_w_[i] / run, run);
      stack.pop_back();
    }
  };
  rec(0, 1.0, 1.0);
}

Vec Oracle::displacement(const Vec& a, const Vec& b) const {
  if (spec_.boundary == FiniteVolumeSpec::Boundary::Periodic) return torus_.displacement(a, b);
  Vec d;
  for (int i = 0; i < spec_.dim; ++i) d[i] = a[i] - b[i];
  return d;
}

double Oracle::pair_phi(const Vec& a, const Vec& b) const {
  return phi_.value(norm(displacement(a, b), spec_.dim));
}

double Oracle::eta_energy(const std::vector<Vec>& eta) const {
  KahanSum e;
  for (size_t i = 0; i < eta.size(); ++i)
    for (size_t j = i + 1; j < eta.size(); ++j) e.add(pair_phi(eta[i], eta[j]));
  return e.value();
}

const std::vector<double>& Oracle::exp_energies(double beta, int n) const {
  auto it = exp_cache_.find(beta);
  if (it == exp_cache_.end()) {
    std::vector<std::vector<double>> all(sectors_.size());
    for (size_t s = 0; s < sectors_.size(); ++s) {
      const Sector& sec = sectors_[s];
      all[s].resize(sec.coeff.size());
#pragma omp parallel for schedule(static)
      for (long long e = 0; e < static_cast<long long>(sec.coeff.size()); ++e)
        all[s][static_cast<size_t>(e)] =
            sec.coeff[static_cast<size_t>(e)] *
            std::exp(-beta * sec.energy[static_cast<size_t>(e)]);
    }
    it = exp_cache_.emplace(beta, std::move(all)).first;
  }
  return it->second[static_cast<size_t>(n)];
}

double Oracle::weighted_sum(double beta, double z, const std::vector<double>& gw,
                            int n_used) const {
  KahanSum total;
  total.add(1.0);  // n = 0 sector
  double zn = 1.0;
  constexpr size_t kBlock = 8192;
  for (int n = 1; n <= n_used; ++n) {
    zn *= z;
    const Sector& sec = sectors_[static_cast<size_t>(n - 1)];
    const auto& ew = exp_energies(beta, n - 1);
    const size_t count = sec.coeff.size();
    const size_t nblocks = (count + kBlock - 1) / kBlock;
    std::vector<double> block_sum(nblocks, 0.0);
#pragma omp parallel for schedule(static)
    for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
      size_t lo = static_cast<size_t>(b) * kBlock;
      size_t hi = std::min(count, lo + kBlock);
      double acc = 0.0;
      if (gw.empty()) {
        for (size_t e = lo; e < hi; ++e) acc += ew[e];
      } else {
        for (size_t e = lo; e < hi; ++e) {
          const uint16_t* ids = sec.ids.data() + e * static_cast<size_t>(n);
          double v = ew[e];
          for (int k = 0; k < n; ++k) v *= gw[ids[k]];
          acc += v;
        }
      }
      block_sum[static_cast<size_t>(b)] = acc;
    }
    KahanSum sector;
    for (double s : block_sum) sector.add(s);
    total.add(zn * sector.value());
  }
  return total.value();
}

PartitionResult Oracle::partition_function(double beta, double z, double tol) const {
  PartitionResult r;
  auto key = std::make_pair(beta, z);
  auto it = z_cache_.find(key);
  if (it == z_cache_.end())
    it = z_cache_.emplace(key, weighted_sum(beta, z, {}, spec_.n_max)).first;
  r.value = it->second;
  int n = spec_.n_max;
  double log_rem = (n + 1) * std::log(z * spec_.volume()) +
                   beta * phi_.stability_b() * (n + 1.0) * n;
  for (int k = 2; k <= n + 1; ++k) log_rem -= std::log(static_cast<double>(k));
  r.remainder_bound = std::exp(log_rem);
  r.flagged = r.remainder_bound > tol * std::max(1.0, std::abs(r.value));
  return r;
}

double Oracle::partition_sum(double beta, double z, int n_used) const {
  if (n_used > spec_.n_max) throw Error("partition_sum: beyond built n_max");
  return weighted_sum(beta, z, {}, n_used);
}

std::vector<double> Oracle::eta_node_weights(double beta, const std::vector<Vec>& eta) const {
  std::vector<double> gw(points_.size(), 1.0);
  if (eta.empty()) return gw;
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(points_.size()); ++i) {
    size_t idx = static_cast<size_t>(i);
    KahanSum w;
    for (const Vec& p : eta) w.add(pair_phi(p, points_[idx]));
    gw[idx] = std::exp(-beta * w.value());
  }
  return gw;
}

double Oracle::correlation(double beta, double z, const std::vector<Vec>& eta,
                           int n_used) const {
  double zz = partition_function(beta, z).value;
  if (eta.empty()) return 1.0;
  std::vector<double> gw = eta_node_weights(beta, eta);
  double num = weighted_sum(beta, z, gw, n_used < 0 ? spec_.n_max : n_used);
  double e_eta = eta_energy(eta);
  return std::pow(z, static_cast<double>(eta.size())) * std::exp(-beta * e_eta) * num / zz;
}

double Oracle::mean_particle_number(double beta, double z) const {
  if (spec_.boundary == FiniteVolumeSpec::Boundary::Periodic) {
    Vec x;
    for (int a = 0; a < spec_.dim; ++a) x[a] = 0.5 * spec_.length;
    return spec_.volume() * correlation(beta, z, {x});
  }
  KahanSum s;
  for (size_t i = 0; i < points_.size(); ++i)
    s.add(point_w_[i] * correlation(beta, z, {points_[i]}));
  return s.value();
}

double Oracle::expectation_k_transform(const FiniteConfigurationFunction& g, double beta,
                                       double z) const {
  double zz = partition_function(beta, z).value;
  std::vector<Vec> pts;
  auto kg = [&](const uint16_t* ids, int n) {
    pts.clear();
    for (int k = 0; k < n; ++k) pts.push_back(points_[ids[k]]);
    return k_transform(g, pts);
  };
  KahanSum total;
  total.add(kg(nullptr, 0));
  double zn = 1.0;
  for (int n = 1; n <= spec_.n_max; ++n) {
    zn *= z;
    const Sector& sec = sectors_[static_cast<size_t>(n - 1)];
    const auto& ew = exp_energies(beta, n - 1);
    KahanSum sector;
    for (size_t e = 0; e < sec.coeff.size(); ++e)
      sector.add(ew[e] * kg(sec.ids.data() + e * static_cast<size_t>(n), n));
    total.add(zn * sector.value());
  }
  return total.value() / zz;
}

double Oracle::correlation_measure(const FiniteConfigurationFunction& g, double beta,
                                   double z) const {
  if (!g.bounded) throw Error("correlation_measure: needs bounded support");
  KahanSum total;
  total.add(g.eval({}));
  std::vector<Vec> pts;
  // sector-matched truncation: the k-point correlation of the truncated
  // measure carries a numerator sum over n_max - k remaining particles
  std::function<void(int, double)> rec = [&](int depth, double w) {
    if (depth > 0) {
      double gval = g.eval(pts);
      if (gval != 0.0)
        total.add(w * gval * correlation(beta, z, pts, spec_.n_max - depth) /
                  std::tgamma(depth + 1.0));
    }
    if (depth == g.max_cardinality) return;
    for (size_t i = 0; i < points_.size(); ++i) {
      if (g.in_region && !g.in_region(points_[i])) continue;
      pts.push_back(points_[i]);
      rec(depth + 1, w * point_w_[i]);
      pts.pop_back();
    }
  };
  rec(0, 1.0);
  return total.value();
}

BetaDerivativePair Oracle::beta_derivative_check(double beta, double z,
                                                 const std::vector<Vec>& eta, double h) const {
  BetaDerivativePair out;
  auto rho = [&](double b) { return correlation(b, z, eta); };
  double d_h = (rho(beta + h) - rho(beta - h)) / (2.0 * h);
  double d_h2 = (rho(beta + 0.5 * h) - rho(beta - 0.5 * h)) / h;
  out.lhs = (4.0 * d_h2 - d_h) / 3.0;

  double rho_eta = rho(beta);
  KahanSum rhs;
  rhs.add(-eta_energy(eta) * rho_eta);

  // The inserted-particle correlations carry sector-matched truncations
  // (n_max - 1 and n_max - 2): with those the identity is exact for the
  // truncated measure, not just up to its particle-number tail.

  // single-insertion term: - \int W(eta|x) rho(eta + x) dx
  {
    std::vector<Vec> eta1 = eta;
    eta1.push_back(Vec{});
    KahanSum term;
    for (size_t i = 0; i < points_.size(); ++i) {
      KahanSum w;
      for (const Vec& p : eta) w.add(pair_phi(p, points_[i]));
      if (w.value() == 0.0) continue;
      eta1.back() = points_[i];
      term.add(point_w_[i] * w.value() * correlation(beta, z, eta1, spec_.n_max - 1));
    }
    rhs.add(-term.value());
  }

  // pair-insertion term: -1/2 \int\int phi(x-y) (rho(eta+x+y) - rho(eta) rho2(x,y))
  {
    std::vector<Vec> eta2 = eta;
    eta2.push_back(Vec{});
    eta2.push_back(Vec{});
    KahanSum term;
    for (size_t i = 0; i < points_.size(); ++i) {
      for (size_t j = 0; j < points_.size(); ++j) {
        double pf = pair_phi(points_[i], points_[j]);
        if (pf == 0.0) continue;
        eta2[eta.size()] = points_[i];
        eta2[eta.size() + 1] = points_[j];
        double rho_xy = correlation(beta, z, eta2, spec_.n_max - 2);
        double rho2 = correlation(beta, z, {points_[i], points_[j]}, spec_.n_max - 2);
        term.add(point_w_[i] * point_w_[j] * pf * (rho_xy - rho_eta * rho2));
      }
    }
    rhs.add(-0.5 * term.value());
  }
  out.rhs = rhs.value();
  return out;
}

}  // namespace scaledyn
