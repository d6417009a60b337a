#pragma once

#include <functional>
#include <string>
#include <vector>

#include "scaledyn/gibbs.hpp"
#include "scaledyn/oracle.hpp"
#include "scaledyn/potential.hpp"
#include "scaledyn/testfunction.hpp"

namespace scaledyn {

enum class CoefficientSource { LowBetaAnalytic, McBacked, OracleBacked };

// The coefficient functions of the fluctuation-field limit:
//   chi           = rho1 + \int (rho2(x) - rho1^2) dx     (compressibility)
//   bulk_diffusion = rho1 / chi
//   d_phi         = rho1 + (beta/2) \int x^1 x^1 d1 d1 phi(x) rho2(x) dx
//   r_phi         = d_phi - rho1^2 / chi                   (generator-gap residual)
struct ExpansionCoefficients {
  double rho1 = 1.0;
  double chi = 1.0;
  double bulk_diffusion = 1.0;
  double d_phi = 1.0;
  double r_phi = 0.0;
  CoefficientSource source = CoefficientSource::LowBetaAnalytic;
};

// Radial evaluator for rho^(2)(beta, 1, x, 0) with a declared large-distance
// asymptote (the square of the matching rho1) and validity range. The
// Boltzmann order carries an O(C(beta phi, 1)) error scale.
struct Rho2Approximant {
  enum class Order { Boltzmann, McInterpolated, OracleInterpolated };
  std::function<double(double)> eval;
  double asymptote = 1.0;
  double r_valid = 0.0;
  Order order = Order::Boltzmann;
  std::string note;
};

Rho2Approximant rho2_boltzmann(const PairPotential& phi, double beta);
Rho2Approximant rho2_from_stats(const EnsembleStats& stats);
// Evaluates the oracle two-point function at distance r (points embedded
// symmetrically around the box center along the first axis), cached per r.
Rho2Approximant rho2_from_oracle(const Oracle& oracle, double beta, double z);

ExpansionCoefficients coefficients(const PairPotential& phi, double beta,
                                   const Rho2Approximant& rho2, double rho1,
                                   CoefficientSource source);

// Second-order temperature expansion around beta = 0 at z = 1, derived from
// the temperature derivative of the correlation functions:
//   rho1(beta) = 1 - beta I + beta^2 (J + 3 I^2)/2 + O(beta^3)
//   chi(beta)  = 1 - 2 beta I + beta^2 (J + 9 I^2 / 2) + O(beta^3)
//   d_phi(beta) = 1 + beta^2 (M - I^2)/2 + O(beta^3)
// with I = \int phi, J = \int phi^2, M = \int (x^1 d_1 phi)^2.
double rho1_low_beta(const PairPotential& phi, double beta);
double chi_low_beta(const PairPotential& phi, double beta);
ExpansionCoefficients coefficients_low_beta(const PairPotential& phi, double beta);

// Curvatures of the coefficient functions at beta = 0:
//   d2_d        = d^2 D_phi / d beta^2 (0)            = -I^2 + M
//   d2_compress = d^2 (rho1^2/chi) / d beta^2 (0)     = -I^2
//   d2_r        = 2 M, the quadratic-coefficient convention under which the
//                 reported leading term reads R_phi ~ beta^2 M.
struct Curvatures {
  double d2_d = 0.0;
  double d2_compress = 0.0;
  double d2_r = 0.0;
};
Curvatures curvature_at_zero(const PairPotential& phi);

// Both sides of the coercivity identity for the linear functional built on f,
// estimated over a Gibbs ensemble:
//   lhs: mean of ( sum_x lap f(x) + sum_x (B(gamma,x), grad f(x)) )^2
//   rhs: mean of   sum_x ||hess f(x)||_HS^2
//        + beta sum_pairs (grad f(x)-grad f(y), hess phi(x-y)(grad f(x)-grad f(y)))
struct CoercivitySides {
  Estimate lhs, rhs;
};
CoercivitySides coercivity_sides(const TestFunction& f,
                                 const std::vector<Configuration>& ensemble,
                                 const PairPotential& phi, double beta,
                                 uint64_t bootstrap_seed = 0x636f6572ULL);

}  // namespace scaledyn
