#pragma once

#include <functional>

#include "scaledyn/configuration.hpp"
#include "scaledyn/testfunction.hpp"

namespace scaledyn {

// Position scaling: multiply every coordinate by eps. A configuration on a
// torus of side L lands on the torus of side eps * L; particle count is
// preserved.
Configuration s_in(const Configuration& gamma, double eps);

// A scaled configuration with the data needed for centered pairings:
// the configuration after s_in, the scale, and the first correlation
// function of the unscaled measure (rho^(1)(beta, 1); the scaled intensity
// is rho1 * eps^{-d}).
struct ScaledField {
  const Configuration* scaled = nullptr;
  double eps = 1.0;
  double rho1 = 1.0;
};

// <f, omega> = eps^{d/2} ( sum_x f(x) - rho1 eps^{-d} \int f ).
// Errors if the test function lives on a different torus than the field.
double fluctuation_field(const ScaledField& sf, const TestFunction& f);

// Same pairing for an arbitrary pointwise function h with known torus
// integral (used for |grad f|^2 pairings and Hermite pairings).
double fluctuation_pairing(const ScaledField& sf,
                           const std::function<double(const Vec&)>& h,
                           double integral_h);

}  // namespace scaledyn
