#include "scaledyn/scaling.hpp"

#include <cmath>

namespace scaledyn {

Configuration s_in(const Configuration& gamma, double eps) {
  if (eps <= 0.0 || eps > 1.0) throw Error("s_in: eps must lie in (0, 1]");
  Configuration out(Torus(gamma.torus.box * eps, gamma.torus.dim));
  out.pos.reserve(gamma.pos.size());
  for (const Vec& x : gamma.pos) out.pos.push_back(out.torus.wrap(eps * x));
  return out;
}

double fluctuation_field(const ScaledField& sf, const TestFunction& f) {
  const Configuration& c = *sf.scaled;
  if (std::abs(f.box().box - c.torus.box) > 1e-9 * c.torus.box || f.box().dim != c.torus.dim)
    throw Error("fluctuation_field: test function lives on a different torus");
  return fluctuation_pairing(sf, [&](const Vec& x) { return f.eval(x); }, f.integral());
}

double fluctuation_pairing(const ScaledField& sf,
                           const std::function<double(const Vec&)>& h, double integral_h) {
  const Configuration& c = *sf.scaled;
  const int d = c.torus.dim;
  KahanSum sum;
  for (const Vec& x : c.pos) sum.add(h(x));
  double centering = sf.rho1 * std::pow(sf.eps, -d) * integral_h;
  return std::pow(sf.eps, 0.5 * d) * (sum.value() - centering);
}

}  // namespace scaledyn
