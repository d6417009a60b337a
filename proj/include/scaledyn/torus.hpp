#pragma once

#include <cmath>

#include "scaledyn/common.hpp"

namespace scaledyn {

// Periodic box [0, L)^d with the minimum-image convention. Valid pair cutoffs
// must satisfy L > 2 * r_cut.
struct Torus {
  double box = 1.0;
  int dim = 1;

  Torus() = default;
  Torus(double box_, int dim_) : box(box_), dim(dim_) {
    if (box <= 0.0) throw Error("torus: side must be positive");
    if (dim < 1 || dim > kMaxDim) throw Error("torus: dimension must be 1, 2 or 3");
  }

  double volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= box;
    return v;
  }

  double wrap_coord(double x) const {
    double y = x - box * std::floor(x / box);
    if (y >= box) y -= box;  // guard the x == -tiny rounding case
    if (y < 0.0) y = 0.0;
    return y;
  }

  Vec wrap(Vec x) const {
    for (int i = 0; i < dim; ++i) x[i] = wrap_coord(x[i]);
    return x;
  }

  // Minimum-image representative of x - y, each coordinate in [-L/2, L/2).
  Vec displacement(const Vec& x, const Vec& y) const {
    Vec d;
    for (int i = 0; i < dim; ++i) {
      double u = x[i] - y[i];
      d[i] = u - box * std::floor(u / box + 0.5);
    }
    return d;
  }

  double distance(const Vec& x, const Vec& y) const {
    return norm(displacement(x, y), dim);
  }
};

}  // namespace scaledyn
