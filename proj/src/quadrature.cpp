#include "scaledyn/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "scaledyn/common.hpp"

namespace scaledyn {

static QuadRule make_gauss_legendre(int n) {
  QuadRule r;
  r.nodes.resize(static_cast<size_t>(n));
  r.weights.resize(static_cast<size_t>(n));
  const double eps = 3.0e-15;
  int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
    double z1, pp;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    } while (std::abs(z - z1) > eps);
    r.nodes[static_cast<size_t>(i - 1)] = -z;
    r.nodes[static_cast<size_t>(n - i)] = z;
    double w = 2.0 / ((1.0 - z * z) * pp * pp);
    r.weights[static_cast<size_t>(i - 1)] = w;
    r.weights[static_cast<size_t>(n - i)] = w;
  }
  return r;
}

const QuadRule& gauss_legendre(int n) {
  static std::map<int, QuadRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
  return it->second;
}

void gauss_legendre_on(int n, double a, double b,
                       std::vector<double>& nodes, std::vector<double>& weights) {
  const QuadRule& r = gauss_legendre(n);
  nodes.resize(static_cast<size_t>(n));
  weights.resize(static_cast<size_t>(n));
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    nodes[static_cast<size_t>(i)] = mid + half * r.nodes[static_cast<size_t>(i)];
    weights[static_cast<size_t>(i)] = half * r.weights[static_cast<size_t>(i)];
  }
}

static double apply_rule(const QuadRule& r, const std::function<double(double)>& f,
                         double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  KahanSum s;
  for (size_t i = 0; i < r.nodes.size(); ++i)
    s.add(half * r.weights[i] * f(mid + half * r.nodes[i]));
  return s.value();
}

namespace {
constexpr int kAdaptiveBudget = 400000;  // function evaluations
}

static void adapt(const std::function<double(double)>& f, double a, double b,
                  double tol, int depth, int max_depth, QuadResult& out) {
  const QuadRule& lo = gauss_legendre(7);
  const QuadRule& hi = gauss_legendre(15);
  double v_lo = apply_rule(lo, f, a, b);
  double v_hi = apply_rule(hi, f, a, b);
  out.evaluations += 22;
  double err = std::abs(v_hi - v_lo);
  // stop at the requested tolerance, once the estimate reaches the rounding
  // noise of the rule values, or when the evaluation budget is spent;
  // splitting below the noise level never converges
  double noise = 1e-14 * (std::abs(v_hi) + std::abs(v_lo) + 1e-3 * (b - a));
  if (err <= std::max(tol, noise) || depth >= max_depth ||
      out.evaluations > kAdaptiveBudget) {
    out.value += v_hi;
    out.error += err;
    return;
  }
  double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * tol, depth + 1, max_depth, out);
  adapt(f, m, b, 0.5 * tol, depth + 1, max_depth, out);
}

QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b, double abs_tol, int max_depth) {
  QuadResult out;
  if (b <= a) return out;
  adapt(f, a, b, abs_tol, 0, max_depth, out);
  if (out.error > 10.0 * abs_tol + 1e-300)
    throw QuadratureError(out.error, "adaptive quadrature did not converge");
  return out;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels) {
  const QuadRule& rule = gauss_legendre(15);
  KahanSum s;
  for (int p = 0; p < panels; ++p) {
    double lo = a + (b - a) * p / panels;
    double hi = a + (b - a) * (p + 1) / panels;
    s.add(apply_rule(rule, f, lo, hi));
  }
  return s.value();
}

double integrate_trapezoid(const std::function<double(double)>& f,
                           double a, double b, int n) {
  if (n < 2) throw Error("trapezoid rule needs at least 2 points");
  double h = (b - a) / (n - 1);
  KahanSum s;
  s.add(0.5 * f(a));
  for (int i = 1; i < n - 1; ++i) s.add(f(a + i * h));
  s.add(0.5 * f(b));
  return s.value() * h;
}

double sphere_surface(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * M_PI;
    case 3: return 4.0 * M_PI;
    default: throw Error("unsupported dimension " + std::to_string(dim));
  }
}

}  // namespace scaledyn
