#pragma once

#include <string>

#include "scaledyn/common.hpp"

namespace scaledyn {

enum class PotentialKind { Zero, SmoothCompact, LennardJonesSmoothCutoff };

// Moment functionals of an isotropic pair potential. The rank-4 array
// int_xkxl_didj_phi is stored dense over (i,j,k,l); for isotropic kinds it is
// assembled from two radial integrals, so its index symmetries hold exactly.
struct PotentialMoments {
  double int_phi = 0.0;        // \int phi dx
  double int_x1d1_sq = 0.0;    // \int (x^1 d_1 phi)^2 dx
  double tensor[kMaxDim][kMaxDim][kMaxDim][kMaxDim] = {};  // \int x^k x^l d_i d_j phi dx
  double mayer_c = 0.0;        // C(beta*phi, 1)
  double quad_error = 0.0;     // max absolute error estimate across entries

  double tensor_at(int i, int j, int k, int l) const { return tensor[i][j][k][l]; }
};

struct RegimeReport {
  double c_value = 0.0;   // C(beta*phi, z)
  bool in_laht = false;   // C < exp(-1)
  double quad_error = 0.0;
};

// Symmetric isotropic pair interaction phi(x) = V(|x|).
//
// Kinds:
//   Zero           -- free case, identically 0.
//   SmoothCompact  -- V(r) = height * (1 - (r/width)^2)^6 on [0, width), 0 beyond.
//                     C^5 on R^d with closed-form moment integrals.
//   LennardJonesSmoothCutoff -- 4 eps ((s/r)^12 - (s/r)^6) with a cubic
//                     force-switch on [r_switch, r_cut]: the radial derivative
//                     follows the raw LJ force up to r_switch, then a cubic that
//                     reaches 0 with zero slope at r_cut. Energies below
//                     r_switch pick up the constant shift that makes V
//                     continuous, so V is C^2 on (0, infinity).
//
// stability_b is user metadata: a pointwise lower-bound constant, phi >= -B.
// Documented defaults: Zero -> 0, SmoothCompact -> max(0, -height),
// LJ -> 1.05 * well_depth (covers the cutoff shift).
class PairPotential {
 public:
  static PairPotential zero(int dim);
  static PairPotential smooth_compact(int dim, double height, double width);
  static PairPotential lennard_jones(int dim, double well_depth, double sigma,
                                     double r_cut, double r_min = -1.0,
                                     double r_switch = -1.0);

  PotentialKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double r_cut() const { return r_cut_; }
  double r_min() const { return r_min_; }
  double stability_b() const { return stability_b_; }
  void set_stability_b(double b) { stability_b_ = b; }
  std::string id() const;

  // Radial profile V(r), V'(r), V''(r). V returns +inf below the hard floor.
  double value(double r) const;
  double dvalue(double r) const;
  double d2value(double r) const;

  // phi(x). Throws SingularOriginError at x = 0 for the LJ kind.
  double evaluate(const Vec& x) const;

  // gradient and Hessian of phi at x (isotropic assembly).
  void derivatives(const Vec& x, Vec& grad, Mat& hess) const;
  Vec gradient(const Vec& x) const;

  // C(beta*phi, z) = z * exp(2 beta B) * \int |e^{-beta phi} - 1| dx and the
  // LA-HT indicator C < e^{-1}, by adaptive radial quadrature.
  RegimeReport regime_check(double beta, double z, double abs_tol = 1e-8) const;

  // Moment functionals at inverse temperature beta (mayer_c uses z = 1).
  // For the LJ kind the radial integrals start at the hard floor r_min.
  PotentialMoments moments(double beta, double abs_tol = 1e-8) const;

  // \int phi(x)^2 dx, needed by the second-order temperature expansion.
  double int_phi_sq(double abs_tol = 1e-10) const;

  bool is_zero() const { return kind_ == PotentialKind::Zero; }

 private:
  PairPotential() = default;

  double lj_shift() const;  // constant energy offset below r_switch

  PotentialKind kind_ = PotentialKind::Zero;
  int dim_ = 1;
  double stability_b_ = 0.0;
  double r_cut_ = 0.0;
  double r_min_ = 0.0;

  // SmoothCompact parameters
  double height_ = 0.0;
  double width_ = 1.0;

  // LJ parameters
  double eps_ = 1.0;
  double sigma_ = 1.0;
  double r_switch_ = 0.0;
  // cubic force-switch p(r) = sum a_k (r - r_switch)^k and its integral
  double fs_a_[4] = {0, 0, 0, 0};
  double shift_ = 0.0;
};

}  // namespace scaledyn
