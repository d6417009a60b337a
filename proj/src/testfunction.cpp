#include "scaledyn/testfunction.hpp"

#include <cmath>
#include <sstream>

#include "scaledyn/hermite.hpp"
#include "scaledyn/quadrature.hpp"

namespace scaledyn {

TestFunction TestFunction::fourier_mode(const Torus& box, const std::array<int, 3>& k,
                                        bool sine, double amplitude) {
  bool nonzero = false;
  for (int a = 0; a < box.dim; ++a) nonzero = nonzero || (k[static_cast<size_t>(a)] != 0);
  if (!nonzero) throw Error("fourier_mode: k must be nonzero (mean-zero basis only)");
  TestFunction f;
  f.kind_ = Kind::FourierMode;
  f.box_ = box;
  f.k_ = k;
  f.sine_ = sine;
  f.amp_ = amplitude;
  double ks = 0.0;
  for (int a = 0; a < box.dim; ++a) {
    f.kappa_[a] = 2.0 * M_PI * k[static_cast<size_t>(a)] / box.box;
    ks += f.kappa_[a] * f.kappa_[a];
  }
  double v = box.volume();
  f.norm0_sq_ = 0.5 * amplitude * amplitude * v;
  f.grad_norm_sq_ = ks * f.norm0_sq_;
  f.lap_norm_sq_ = ks * ks * f.norm0_sq_;
  f.integral_ = 0.0;
  return f;
}

TestFunction TestFunction::compact_bump(const Torus& box, const Vec& center, double radius,
                                        double amplitude) {
  if (radius <= 0.0 || radius > 0.5 * box.box)
    throw Error("compact_bump: radius must lie in (0, L/2]");
  TestFunction f;
  f.kind_ = Kind::CompactBump;
  f.box_ = box;
  f.center_ = center;
  f.radius_ = radius;
  f.amp_ = amplitude;
  f.compute_bump_norms();
  return f;
}

TestFunction TestFunction::hermite_proxy(const Torus& box, const std::array<int, 3>& index) {
  TestFunction f;
  f.kind_ = Kind::HermiteProxy;
  f.box_ = box;
  f.hindex_ = index;
  for (int a = 0; a < box.dim; ++a) f.center_[a] = 0.5 * box.box;
  // 1-d quadratures on the effective support
  auto moment = [&](int n, int which) {
    // which: 0 -> h^2, 1 -> h'^2, 2 -> integral of h
    auto g = [&](double x) {
      if (which == 0) {
        double h = hermite_eval(n, x);
        return h * h;
      }
      if (which == 1) {
        double hp = hermite_deriv(n, x);
        return hp * hp;
      }
      return hermite_eval(n, x);
    };
    return integrate_panels(g, -14.0, 14.0, 120);
  };
  double n0 = 1.0, gsum = 0.0, isum = 1.0;
  std::array<double, 3> n2{}, g2{}, in{};
  for (int a = 0; a < box.dim; ++a) {
    int n = index[static_cast<size_t>(a)];
    n2[static_cast<size_t>(a)] = moment(n, 0);
    g2[static_cast<size_t>(a)] = moment(n, 1);
    in[static_cast<size_t>(a)] = moment(n, 2);
    n0 *= n2[static_cast<size_t>(a)];
    isum *= in[static_cast<size_t>(a)];
  }
  for (int a = 0; a < box.dim; ++a) {
    double prod = g2[static_cast<size_t>(a)];
    for (int b = 0; b < box.dim; ++b)
      if (b != a) prod *= n2[static_cast<size_t>(b)];
    gsum += prod;
  }
  f.norm0_sq_ = n0;
  f.grad_norm_sq_ = gsum;
  f.integral_ = isum;
  // ||lap f||^2 via the eigen-relation d2 h_n = (x^2 - (2n+1)) h_n
  {
    auto lap_sq = [&](double) { return 0.0; };
    (void)lap_sq;
    // 1-d reductions: lap f = (|x|^2 - a) f with a = 2|n| + d
    double a_eig = 2.0 * (index[0] + index[1] + index[2]) + box.dim;
    // E[(sum x_a^2 - a)^2 f^2] via per-axis 2nd/4th moments of h_n^2
    std::array<double, 3> m2{}, m4{};
    for (int a = 0; a < box.dim; ++a) {
      int n = index[static_cast<size_t>(a)];
      auto g2f = [&](double x) {
        double h = hermite_eval(n, x);
        return x * x * h * h;
      };
      auto g4f = [&](double x) {
        double h = hermite_eval(n, x);
        return x * x * x * x * h * h;
      };
      m2[static_cast<size_t>(a)] = integrate_panels(g2f, -14.0, 14.0, 120);
      m4[static_cast<size_t>(a)] = integrate_panels(g4f, -14.0, 14.0, 120);
    }
    double e_r2 = 0.0, e_r4 = 0.0;
    for (int a = 0; a < box.dim; ++a) e_r2 += m2[static_cast<size_t>(a)];
    for (int a = 0; a < box.dim; ++a)
      for (int b = 0; b < box.dim; ++b)
        e_r4 += (a == b) ? m4[static_cast<size_t>(a)]
                         : m2[static_cast<size_t>(a)] * m2[static_cast<size_t>(b)];
    f.lap_norm_sq_ = e_r4 - 2.0 * a_eig * e_r2 + a_eig * a_eig;
  }
  return f;
}

void TestFunction::compute_bump_norms() {
  int d = box_.dim;
  double s = sphere_surface(d);
  double r = radius_, a = amp_;
  auto q = [&](double rho) { return 1.0 - (rho / r) * (rho / r); };
  auto fval = [&](double rho) {
    double qq = q(rho);
    return a * qq * qq * qq;
  };
  auto fprime = [&](double rho) {
    double qq = q(rho);
    return -6.0 * a * (rho / (r * r)) * qq * qq;
  };
  auto flap = [&](double rho) {
    double qq = q(rho);
    double u2 = (rho / r) * (rho / r);
    return -6.0 * a / (r * r) * qq * (d * qq - 4.0 * u2);
  };
  norm0_sq_ = s * integrate_adaptive([&](double x) { return fval(x) * fval(x) * std::pow(x, d - 1); },
                                     0.0, r, 1e-12).value;
  grad_norm_sq_ = s * integrate_adaptive([&](double x) { return fprime(x) * fprime(x) * std::pow(x, d - 1); },
                                         0.0, r, 1e-12).value;
  lap_norm_sq_ = s * integrate_adaptive([&](double x) { return flap(x) * flap(x) * std::pow(x, d - 1); },
                                        0.0, r, 1e-12).value;
  integral_ = s * integrate_adaptive([&](double x) { return fval(x) * std::pow(x, d - 1); },
                                     0.0, r, 1e-12).value;
}

std::string TestFunction::id() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::FourierMode:
      os << "mode:" << k_[0];
      for (int a = 1; a < box_.dim; ++a) os << "_" << k_[static_cast<size_t>(a)];
      os << (sine_ ? ":sin" : ":cos");
      break;
    case Kind::CompactBump:
      os << "bump:r=" << radius_ << ":a=" << amp_;
      break;
    case Kind::HermiteProxy:
      os << "hermite:" << hindex_[0];
      for (int a = 1; a < box_.dim; ++a) os << "_" << hindex_[static_cast<size_t>(a)];
      break;
  }
  return os.str();
}

double TestFunction::eval(const Vec& x) const {
  switch (kind_) {
    case Kind::FourierMode: {
      double phase = dot(kappa_, x, box_.dim);
      return amp_ * (sine_ ? std::sin(phase) : std::cos(phase));
    }
    case Kind::CompactBump: {
      double rho = norm(box_.displacement(x, center_), box_.dim);
      if (rho >= radius_) return 0.0;
      double q = 1.0 - (rho / radius_) * (rho / radius_);
      return amp_ * q * q * q;
    }
    case Kind::HermiteProxy: {
      Vec y = box_.displacement(x, center_);
      double v = 1.0;
      for (int a = 0; a < box_.dim; ++a)
        v *= hermite_eval(hindex_[static_cast<size_t>(a)], y[a]);
      return v;
    }
  }
  return 0.0;
}

Vec TestFunction::grad(const Vec& x) const {
  Vec g;
  switch (kind_) {
    case Kind::FourierMode: {
      double phase = dot(kappa_, x, box_.dim);
      double dv = amp_ * (sine_ ? std::cos(phase) : -std::sin(phase));
      for (int a = 0; a < box_.dim; ++a) g[a] = dv * kappa_[a];
      return g;
    }
    case Kind::CompactBump: {
      Vec y = box_.displacement(x, center_);
      double rho = norm(y, box_.dim);
      if (rho >= radius_) return g;
      double q = 1.0 - (rho / radius_) * (rho / radius_);
      double scale = -6.0 * amp_ * q * q / (radius_ * radius_);
      for (int a = 0; a < box_.dim; ++a) g[a] = scale * y[a];
      return g;
    }
    case Kind::HermiteProxy: {
      Vec y = box_.displacement(x, center_);
      for (int a = 0; a < box_.dim; ++a) {
        double v = 1.0;
        for (int b = 0; b < box_.dim; ++b) {
          int n = hindex_[static_cast<size_t>(b)];
          v *= (b == a) ? hermite_deriv(n, y[b]) : hermite_eval(n, y[b]);
        }
        g[a] = v;
      }
      return g;
    }
  }
  return g;
}

double TestFunction::laplacian(const Vec& x) const {
  switch (kind_) {
    case Kind::FourierMode:
      return -norm2(kappa_, box_.dim) * eval(x);
    case Kind::CompactBump: {
      Vec y = box_.displacement(x, center_);
      double rho = norm(y, box_.dim);
      if (rho >= radius_) return 0.0;
      double u2 = (rho / radius_) * (rho / radius_);
      double q = 1.0 - u2;
      return -6.0 * amp_ / (radius_ * radius_) * q * (box_.dim * q - 4.0 * u2);
    }
    case Kind::HermiteProxy: {
      Vec y = box_.displacement(x, center_);
      double a_eig = 2.0 * (hindex_[0] + hindex_[1] + hindex_[2]) + box_.dim;
      return (norm2(y, box_.dim) - a_eig) * eval(x);
    }
  }
  return 0.0;
}

Mat TestFunction::hessian(const Vec& x) const {
  Mat h;
  switch (kind_) {
    case Kind::FourierMode: {
      double f = eval(x);
      for (int i = 0; i < box_.dim; ++i)
        for (int j = 0; j < box_.dim; ++j) h(i, j) = -kappa_[i] * kappa_[j] * f;
      return h;
    }
    case Kind::CompactBump: {
      Vec y = box_.displacement(x, center_);
      double rho = norm(y, box_.dim);
      if (rho >= radius_) return h;
      double r2 = radius_ * radius_;
      double q = 1.0 - rho * rho / r2;
      // radial f' / rho and (f'' - f'/rho)/rho^2 assembled directly
      double fp_over_rho = -6.0 * amp_ * q * q / r2;
      double fpp = -6.0 * amp_ / r2 * q * (q - 4.0 * rho * rho / r2);
      double radial = (rho > 0.0) ? (fpp - fp_over_rho) / (rho * rho) : 0.0;
      for (int i = 0; i < box_.dim; ++i) {
        for (int j = 0; j < box_.dim; ++j) h(i, j) = radial * y[i] * y[j];
        h(i, i) += fp_over_rho;
      }
      return h;
    }
    case Kind::HermiteProxy: {
      Vec y = box_.displacement(x, center_);
      std::array<double, 3> hv{}, hd{};
      for (int a = 0; a < box_.dim; ++a) {
        int n = hindex_[static_cast<size_t>(a)];
        hv[static_cast<size_t>(a)] = hermite_eval(n, y[a]);
        hd[static_cast<size_t>(a)] = hermite_deriv(n, y[a]);
      }
      for (int i = 0; i < box_.dim; ++i)
        for (int j = 0; j < box_.dim; ++j) {
          double v = 1.0;
          for (int b = 0; b < box_.dim; ++b) {
            int n = hindex_[static_cast<size_t>(b)];
            if (b == i && b == j) {
              v *= (y[b] * y[b] - (2.0 * n + 1.0)) * hv[static_cast<size_t>(b)];
            } else if (b == i || b == j) {
              v *= hd[static_cast<size_t>(b)];
            } else {
              v *= hv[static_cast<size_t>(b)];
            }
          }
          h(i, j) = v;
        }
      return h;
    }
  }
  return h;
}

double TestFunction::hessian_frob_sq(const Vec& x) const {
  Mat h = hessian(x);
  double s = 0.0;
  for (int i = 0; i < box_.dim; ++i)
    for (int j = 0; j < box_.dim; ++j) s += h(i, j) * h(i, j);
  return s;
}

double TestFunction::kappa_sq() const {
  if (kind_ != Kind::FourierMode) throw Error("kappa_sq: not a Fourier mode");
  return norm2(kappa_, box_.dim);
}

std::array<int, 3> TestFunction::mode_index() const {
  if (kind_ != Kind::FourierMode) throw Error("mode_index: not a Fourier mode");
  return k_;
}

void test_function_gram(const std::vector<TestFunction>& fs,
                        std::vector<std::vector<double>>& gram0,
                        std::vector<std::vector<double>>& gram_grad, int points_per_dim) {
  const size_t n = fs.size();
  gram0.assign(n, std::vector<double>(n, 0.0));
  gram_grad.assign(n, std::vector<double>(n, 0.0));
  if (n == 0) return;
  const Torus& box = fs[0].box();
  std::vector<double> nodes, weights;
  gauss_legendre_on(points_per_dim, 0.0, box.box, nodes, weights);
  size_t total = 1;
  for (int a = 0; a < box.dim; ++a) total *= static_cast<size_t>(points_per_dim);
  for (size_t idx = 0; idx < total; ++idx) {
    size_t rest = idx;
    Vec x;
    double w = 1.0;
    for (int a = box.dim - 1; a >= 0; --a) {
      size_t q = rest % static_cast<size_t>(points_per_dim);
      rest /= static_cast<size_t>(points_per_dim);
      x[a] = nodes[q];
      w *= weights[q];
    }
    std::vector<double> vals(n);
    std::vector<Vec> grads(n);
    for (size_t i = 0; i < n; ++i) {
      vals[i] = fs[i].eval(x);
      grads[i] = fs[i].grad(x);
    }
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i; j < n; ++j) {
        gram0[i][j] += w * vals[i] * vals[j];
        gram_grad[i][j] += w * dot(grads[i], grads[j], box.dim);
      }
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < i; ++j) {
      gram0[i][j] = gram0[j][i];
      gram_grad[i][j] = gram_grad[j][i];
    }
}

}  // namespace scaledyn
