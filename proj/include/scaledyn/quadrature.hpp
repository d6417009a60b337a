#pragma once

#include <functional>
#include <vector>

namespace scaledyn {

struct QuadRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre rule of order n (Newton iteration on Legendre polynomials).
const QuadRule& gauss_legendre(int n);

// Nodes/weights mapped to [a, b].
void gauss_legendre_on(int n, double a, double b,
                       std::vector<double>& nodes, std::vector<double>& weights);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;   // estimated absolute error
  int evaluations = 0;
};

// Adaptive Gauss-Legendre on [a,b]: compares GL15 against GL7 per interval,
// bisects until the summed estimate is below abs_tol.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b, double abs_tol = 1e-8,
                              int max_depth = 40);

// Fixed composite GL15 over equal panels: deterministic cost, the right tool
// for oscillatory but entire integrands (Hermite-function moments).
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels);

// Fixed-order composite trapezoid, used as the independent cross-check rule.
double integrate_trapezoid(const std::function<double(double)>& f,
                           double a, double b, int n);

// Surface area of the unit sphere in R^d (2, 2*pi, 4*pi for d = 1,2,3).
double sphere_surface(int dim);

}  // namespace scaledyn
