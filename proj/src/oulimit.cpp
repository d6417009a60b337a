#include "scaledyn/oulimit.hpp"

#include <cmath>

#include "scaledyn/rng.hpp"
#include "scaledyn/textio.hpp"

namespace scaledyn {

double white_noise_variance(const TestFunction& f, double chi) {
  return chi * f.norm0_sq();
}

double ou_autocov(const TestFunction& f, double t, const OUParams& p) {
  double theta = p.diffusion() * f.kappa_sq();  // errors for non-modes
  return p.chi * f.norm0_sq() * std::exp(-theta * t);
}

FieldSeries simulate_ou(const OUParams& p, const std::vector<TestFunction>& modes,
                        double horizon, double dt, uint64_t seed) {
  if (dt <= 0.0) throw Error("simulate_ou: dt must be positive");
  FieldSeries fs;
  fs.source = "ou";
  fs.dt = dt;
  fs.seed = seed;
  fs.box = modes.empty() ? 0.0 : modes[0].box().box;
  for (const auto& m : modes) fs.fn_ids.push_back(m.id());

  Rng rng(seed);
  const size_t nm = modes.size();
  std::vector<double> theta(nm), decay(nm), noise(nm), amp(nm), scale(nm);
  for (size_t i = 0; i < nm; ++i) {
    theta[i] = p.diffusion() * modes[i].kappa_sq();
    decay[i] = std::exp(-theta[i] * dt);
    noise[i] = std::sqrt(p.chi * (1.0 - decay[i] * decay[i]));
    amp[i] = std::sqrt(p.chi) * rng.normal();  // stationary start (unit-norm pairing)
    scale[i] = std::sqrt(modes[i].norm0_sq());
  }
  size_t steps = static_cast<size_t>(std::ceil(horizon / dt));
  fs.times.reserve(steps + 1);
  fs.values.reserve(steps + 1);
  for (size_t s = 0; s <= steps; ++s) {
    std::vector<double> row(nm);
    for (size_t i = 0; i < nm; ++i) row[i] = amp[i] * scale[i];
    fs.times.push_back(s * dt);
    fs.values.push_back(std::move(row));
    for (size_t i = 0; i < nm; ++i) amp[i] = amp[i] * decay[i] + noise[i] * rng.normal();
  }
  return fs;
}

CylinderFunction CylinderFunction::linear(const TestFunction& f) {
  CylinderFunction c;
  c.fs = {f};
  c.g = [](const std::vector<double>& s) { return s[0]; };
  c.grad_g = [](const std::vector<double>&) { return std::vector<double>{1.0}; };
  return c;
}

CylinderFunction CylinderFunction::sine(const TestFunction& f) {
  CylinderFunction c;
  c.fs = {f};
  c.g = [](const std::vector<double>& s) { return std::sin(s[0]); };
  c.grad_g = [](const std::vector<double>& s) { return std::vector<double>{std::cos(s[0])}; };
  return c;
}

namespace {

// Cholesky factor of a small SPD matrix (lower triangular).
std::vector<std::vector<double>> cholesky(const std::vector<std::vector<double>>& a) {
  const size_t n = a.size();
  std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      double s = a[i][j];
      for (size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (s <= 0.0) throw Error("cholesky: matrix not positive definite");
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  return l;
}

}  // namespace

double dirichlet_limit_form(const CylinderFunction& f_fn, const CylinderFunction& g_fn,
                            const OUParams& p, size_t n_samples, uint64_t seed) {
  // joint Gaussian over the union of test functions
  std::vector<TestFunction> all = f_fn.fs;
  for (const auto& f : g_fn.fs) all.push_back(f);
  std::vector<std::vector<double>> gram0, gram_grad;
  test_function_gram(all, gram0, gram_grad);
  const size_t nf = f_fn.fs.size(), ng = g_fn.fs.size();

  std::vector<std::vector<double>> cov(all.size(), std::vector<double>(all.size()));
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = 0; j < all.size(); ++j) cov[i][j] = p.chi * gram0[i][j];
  // regularize duplicated entries (e.g. F == G uses the same f twice)
  for (size_t i = 0; i < all.size(); ++i) cov[i][i] += 1e-12 * (1.0 + std::abs(cov[i][i]));
  auto l = cholesky(cov);

  Rng rng(seed);
  KahanSum acc;
  std::vector<double> xi(all.size()), pair(all.size());
  std::vector<double> sf(nf), sg(ng);
  for (size_t s = 0; s < n_samples; ++s) {
    for (size_t i = 0; i < all.size(); ++i) xi[i] = rng.normal();
    for (size_t i = 0; i < all.size(); ++i) {
      double v = 0.0;
      for (size_t k = 0; k <= i; ++k) v += l[i][k] * xi[k];
      pair[i] = v;
    }
    for (size_t i = 0; i < nf; ++i) sf[i] = pair[i];
    for (size_t j = 0; j < ng; ++j) sg[j] = pair[nf + j];
    std::vector<double> df = f_fn.grad_g(sf);
    std::vector<double> dg = g_fn.grad_g(sg);
    double v = 0.0;
    for (size_t i = 0; i < nf; ++i)
      for (size_t j = 0; j < ng; ++j) v += df[i] * dg[j] * gram_grad[i][nf + j];
    acc.add(v);
  }
  return p.rho1 * acc.value() / static_cast<double>(n_samples);
}

}  // namespace scaledyn
