#include "scaledyn/potential.hpp"

#include <cmath>
#include <sstream>

#include "scaledyn/quadrature.hpp"

namespace scaledyn {

PairPotential PairPotential::zero(int dim) {
  PairPotential p;
  p.kind_ = PotentialKind::Zero;
  p.dim_ = dim;
  p.r_cut_ = 0.0;
  p.r_min_ = 0.0;
  p.stability_b_ = 0.0;
  return p;
}

// V(r) = height (1 - (r/width)^2)^6: compactly supported, C^5 at the edge
// (quadrature-friendly), with elementary moment integrals.
PairPotential PairPotential::smooth_compact(int dim, double height, double width) {
  if (width <= 0.0) throw Error("smooth_compact: width must be positive");
  PairPotential p;
  p.kind_ = PotentialKind::SmoothCompact;
  p.dim_ = dim;
  p.height_ = height;
  p.width_ = width;
  p.r_cut_ = width;
  p.r_min_ = 0.0;
  p.stability_b_ = std::max(0.0, -height);
  return p;
}

static double lj_u(double eps, double sigma, double r) {
  double s6 = std::pow(sigma / r, 6);
  return 4.0 * eps * (s6 * s6 - s6);
}
static double lj_du(double eps, double sigma, double r) {
  double s6 = std::pow(sigma / r, 6);
  return 4.0 * eps * (-12.0 * s6 * s6 + 6.0 * s6) / r;
}
static double lj_d2u(double eps, double sigma, double r) {
  double s6 = std::pow(sigma / r, 6);
  return 4.0 * eps * (156.0 * s6 * s6 - 42.0 * s6) / (r * r);
}

PairPotential PairPotential::lennard_jones(int dim, double well_depth, double sigma,
                                           double r_cut, double r_min, double r_switch) {
  if (well_depth <= 0.0 || sigma <= 0.0) throw Error("lennard_jones: bad parameters");
  if (r_cut <= sigma) throw Error("lennard_jones: r_cut must exceed sigma");
  PairPotential p;
  p.kind_ = PotentialKind::LennardJonesSmoothCutoff;
  p.dim_ = dim;
  p.eps_ = well_depth;
  p.sigma_ = sigma;
  p.r_cut_ = r_cut;
  p.r_min_ = (r_min > 0.0) ? r_min : 0.5 * sigma;
  p.r_switch_ = (r_switch > 0.0) ? r_switch : 0.9 * r_cut;
  if (p.r_switch_ <= sigma || p.r_switch_ >= r_cut)
    throw Error("lennard_jones: r_switch must lie in (sigma, r_cut)");

  // Cubic force switch p(t) = a0 + a1 t + a2 t^2 + a3 t^3, t = r - r_switch,
  // matching the raw LJ derivative/curvature at r_switch and vanishing with
  // zero slope at r_cut.
  double rs = p.r_switch_, rc = r_cut, h = rc - rs;
  double g0 = lj_du(well_depth, sigma, rs);
  double g1 = lj_d2u(well_depth, sigma, rs);
  double big_a = -(g0 + g1 * h);
  double big_b = -g1;
  p.fs_a_[0] = g0;
  p.fs_a_[1] = g1;
  p.fs_a_[2] = (3.0 * big_a - big_b * h) / (h * h);
  p.fs_a_[3] = (big_b * h - 2.0 * big_a) / (h * h * h);
  // V(r) = P(t) - P(h) on the switch window, with P the antiderivative of p.
  auto antider = [&](double t) {
    return p.fs_a_[0] * t + p.fs_a_[1] * t * t / 2.0 + p.fs_a_[2] * t * t * t / 3.0 +
           p.fs_a_[3] * t * t * t * t / 4.0;
  };
  p.shift_ = -antider(h) - lj_u(well_depth, sigma, rs);
  p.stability_b_ = 1.05 * well_depth;
  return p;
}

double PairPotential::lj_shift() const { return shift_; }

std::string PairPotential::id() const {
  std::ostringstream os;
  switch (kind_) {
    case PotentialKind::Zero:
      os << "zero";
      break;
    case PotentialKind::SmoothCompact:
      os << "bump(c=" << height_ << ",w=" << width_ << ")";
      break;
    case PotentialKind::LennardJonesSmoothCutoff:
      os << "lj(eps=" << eps_ << ",sigma=" << sigma_ << ",rc=" << r_cut_ << ")";
      break;
  }
  return os.str();
}

double PairPotential::value(double r) const {
  switch (kind_) {
    case PotentialKind::Zero:
      return 0.0;
    case PotentialKind::SmoothCompact: {
      if (r >= width_) return 0.0;
      double u = r / width_;
      double q = 1.0 - u * u;
      double q3 = q * q * q;
      return height_ * q3 * q3;
    }
    case PotentialKind::LennardJonesSmoothCutoff: {
      if (r >= r_cut_) return 0.0;
      if (r < r_min_) return kInf;
      if (r <= r_switch_) return lj_u(eps_, sigma_, r) + shift_;
      double t = r - r_switch_, h = r_cut_ - r_switch_;
      auto antider = [&](double s) {
        return fs_a_[0] * s + fs_a_[1] * s * s / 2.0 + fs_a_[2] * s * s * s / 3.0 +
               fs_a_[3] * s * s * s * s / 4.0;
      };
      return antider(t) - antider(h);
    }
  }
  return 0.0;
}

double PairPotential::dvalue(double r) const {
  switch (kind_) {
    case PotentialKind::Zero:
      return 0.0;
    case PotentialKind::SmoothCompact: {
      if (r >= width_) return 0.0;
      double u = r / width_;
      double q = 1.0 - u * u;
      double q5 = q * q * q * q * q;
      return -12.0 * height_ * u * q5 / width_;
    }
    case PotentialKind::LennardJonesSmoothCutoff: {
      if (r >= r_cut_) return 0.0;
      if (r <= r_switch_) return lj_du(eps_, sigma_, r);
      double t = r - r_switch_;
      return fs_a_[0] + fs_a_[1] * t + fs_a_[2] * t * t + fs_a_[3] * t * t * t;
    }
  }
  return 0.0;
}

double PairPotential::d2value(double r) const {
  switch (kind_) {
    case PotentialKind::Zero:
      return 0.0;
    case PotentialKind::SmoothCompact: {
      if (r >= width_) return 0.0;
      double u = r / width_;
      double q = 1.0 - u * u;
      double q4 = q * q * q * q;
      return -12.0 * height_ * q4 * (q - 10.0 * u * u) / (width_ * width_);
    }
    case PotentialKind::LennardJonesSmoothCutoff: {
      if (r >= r_cut_) return 0.0;
      if (r <= r_switch_) return lj_d2u(eps_, sigma_, r);
      double t = r - r_switch_;
      return fs_a_[1] + 2.0 * fs_a_[2] * t + 3.0 * fs_a_[3] * t * t;
    }
  }
  return 0.0;
}

double PairPotential::evaluate(const Vec& x) const {
  if (kind_ == PotentialKind::Zero) return 0.0;
  double r = norm(x, dim_);
  if (r == 0.0) {
    if (kind_ == PotentialKind::LennardJonesSmoothCutoff) throw SingularOriginError();
    return value(0.0);
  }
  return value(r);
}

void PairPotential::derivatives(const Vec& x, Vec& grad, Mat& hess) const {
  grad = Vec{};
  hess = Mat{};
  if (kind_ == PotentialKind::Zero) return;
  double r = norm(x, dim_);
  if (r == 0.0) {
    if (kind_ == PotentialKind::LennardJonesSmoothCutoff) throw SingularOriginError();
    double v2 = d2value(0.0);
    for (int i = 0; i < dim_; ++i) hess(i, i) = v2;
    return;
  }
  if (r >= r_cut_) return;
  double v1 = dvalue(r), v2 = d2value(r);
  double inv_r = 1.0 / r;
  for (int i = 0; i < dim_; ++i) grad[i] = v1 * x[i] * inv_r;
  double radial = (v2 - v1 * inv_r) * inv_r * inv_r;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) hess(i, j) = radial * x[i] * x[j];
    hess(i, i) += v1 * inv_r;
  }
}

Vec PairPotential::gradient(const Vec& x) const {
  Vec g;
  Mat h;
  derivatives(x, g, h);
  return g;
}

namespace {

// Integrate f over [a,b] with tolerance scaled to the integrand size, so that
// widely different moment magnitudes get comparable relative accuracy.
QuadResult scaled_integral(const std::function<double(double)>& f, double a, double b,
                           double tol) {
  if (b <= a) return {};
  double coarse = 0.0;
  {
    const QuadRule& r = gauss_legendre(15);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (size_t i = 0; i < r.nodes.size(); ++i)
      coarse += half * r.weights[i] * std::abs(f(mid + half * r.nodes[i]));
  }
  return integrate_adaptive(f, a, b, tol * std::max(1.0, coarse));
}

}  // namespace

RegimeReport PairPotential::regime_check(double beta, double z, double abs_tol) const {
  if (beta < 0.0) throw Error("regime_check: beta must be >= 0");
  if (z <= 0.0) throw Error("regime_check: z must be > 0");
  RegimeReport rep;
  if (kind_ == PotentialKind::Zero || beta == 0.0) {
    rep.c_value = 0.0;
    rep.in_laht = true;
    return rep;
  }
  double s = sphere_surface(dim_);
  auto integrand = [&](double r) {
    double v = value(r);
    double e = (v >= kInf) ? 0.0 : std::exp(-beta * v);
    return std::abs(e - 1.0) * std::pow(r, dim_ - 1);
  };
  double total = 0.0, err = 0.0;
  double lo = 0.0;
  if (kind_ == PotentialKind::LennardJonesSmoothCutoff) {
    // hard-floor core contributes |0 - 1| exactly
    total += std::pow(r_min_, dim_) / dim_;
    lo = r_min_;
  }
  // split at sign changes of V so the |.| kink does not slow the quadrature
  std::vector<double> cuts{lo};
  const int scan = 128;
  double prev = value(lo + 1e-12);
  for (int i = 1; i <= scan; ++i) {
    double r = lo + (r_cut_ - lo) * i / scan;
    double v = value(r);
    if ((prev > 0) != (v > 0) && prev != 0.0) {
      double a = lo + (r_cut_ - lo) * (i - 1) / scan, b = r;
      for (int it = 0; it < 80; ++it) {
        double m = 0.5 * (a + b);
        if ((value(m) > 0) == (prev > 0)) a = m; else b = m;
      }
      cuts.push_back(0.5 * (a + b));
    }
    prev = v;
  }
  cuts.push_back(r_cut_);
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    QuadResult q = integrate_adaptive(integrand, cuts[i], cuts[i + 1], abs_tol);
    total += q.value;
    err += q.error;
  }
  rep.c_value = z * std::exp(2.0 * beta * stability_b_) * s * total;
  rep.quad_error = z * std::exp(2.0 * beta * stability_b_) * s * err;
  rep.in_laht = rep.c_value < std::exp(-1.0);
  return rep;
}

PotentialMoments PairPotential::moments(double beta, double abs_tol) const {
  PotentialMoments m;
  if (kind_ == PotentialKind::Zero) return m;
  double s = sphere_surface(dim_);
  double lo = (kind_ == PotentialKind::LennardJonesSmoothCutoff) ? r_min_ : 0.0;
  double hi = r_cut_;
  int d = dim_;

  auto f_phi = [&](double r) { return value(r) * std::pow(r, d - 1); };
  auto f_x1d1 = [&](double r) {
    double v1 = dvalue(r);
    return v1 * v1 * std::pow(r, d + 1);
  };
  auto f_g = [&](double r) {
    return (d2value(r) - dvalue(r) / r) * std::pow(r, d + 1);
  };
  auto f_h = [&](double r) { return dvalue(r) * std::pow(r, d); };

  QuadResult q_phi = scaled_integral(f_phi, lo, hi, abs_tol);
  QuadResult q_x = scaled_integral(f_x1d1, lo, hi, abs_tol);
  QuadResult q_g = scaled_integral(f_g, lo, hi, abs_tol);
  QuadResult q_h = scaled_integral(f_h, lo, hi, abs_tol);

  m.int_phi = s * q_phi.value;
  m.int_x1d1_sq = s * 3.0 / (d * (d + 2.0)) * q_x.value;
  double big_g = s / (d * (d + 2.0)) * q_g.value;
  double big_h = s / d * q_h.value;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double t = 0.0;
          if (i == j && k == l) t += big_g + big_h;
          if (i == k && j == l) t += big_g;
          if (i == l && j == k) t += big_g;
          m.tensor[i][j][k][l] = t;
        }
  m.mayer_c = (beta > 0.0) ? regime_check(beta, 1.0, abs_tol).c_value : 0.0;
  m.quad_error = std::max(std::max(q_phi.error, q_x.error), std::max(q_g.error, q_h.error));
  return m;
}

double PairPotential::int_phi_sq(double abs_tol) const {
  if (kind_ == PotentialKind::Zero) return 0.0;
  double lo = (kind_ == PotentialKind::LennardJonesSmoothCutoff) ? r_min_ : 0.0;
  auto f = [&](double r) {
    double v = value(r);
    return v * v * std::pow(r, dim_ - 1);
  };
  return sphere_surface(dim_) * scaled_integral(f, lo, r_cut_, abs_tol).value;
}

}  // namespace scaledyn
