#pragma once

#include <array>
#include <string>
#include <vector>

#include "scaledyn/common.hpp"
#include "scaledyn/torus.hpp"

namespace scaledyn {

// Smooth test function on the fixed macroscopic torus. Three kinds:
//   FourierMode  -- amplitude * cos/sin(kappa . x), kappa = 2 pi k / L, k != 0;
//   CompactBump  -- amplitude * (1 - (|x-c|/R)^2)^3 inside radius R (C^2);
//   HermiteProxy -- product of harmonic-oscillator eigenfunctions centered at
//                   the box center (effectively supported inside the box).
// Norms are precomputed at construction; eval/grad/laplacian are exact.
class TestFunction {
 public:
  enum class Kind { FourierMode, CompactBump, HermiteProxy };

  static TestFunction fourier_mode(const Torus& box, const std::array<int, 3>& k,
                                   bool sine = false, double amplitude = 1.0);
  static TestFunction compact_bump(const Torus& box, const Vec& center, double radius,
                                   double amplitude = 1.0);
  static TestFunction hermite_proxy(const Torus& box, const std::array<int, 3>& index);

  Kind kind() const { return kind_; }
  const Torus& box() const { return box_; }
  int dim() const { return box_.dim; }
  std::string id() const;

  double eval(const Vec& x) const;
  Vec grad(const Vec& x) const;
  double laplacian(const Vec& x) const;
  Mat hessian(const Vec& x) const;
  double hessian_frob_sq(const Vec& x) const;

  double norm0_sq() const { return norm0_sq_; }       // ||f||_0^2
  double grad_norm_sq() const { return grad_norm_sq_; }  // ||grad f||_0^2
  double lap_norm_sq() const { return lap_norm_sq_; }    // ||lap f||_0^2
  double integral() const { return integral_; }          // \int f over the torus

  // |kappa|^2 for Fourier modes (the -Laplacian eigenvalue). Errors otherwise.
  double kappa_sq() const;
  std::array<int, 3> mode_index() const;

 private:
  TestFunction() = default;
  void compute_bump_norms();

  Kind kind_ = Kind::FourierMode;
  Torus box_{1.0, 1};
  // mode
  std::array<int, 3> k_{0, 0, 0};
  Vec kappa_;
  bool sine_ = false;
  double amp_ = 1.0;
  // bump
  Vec center_;
  double radius_ = 1.0;
  // hermite
  std::array<int, 3> hindex_{0, 0, 0};

  double norm0_sq_ = 0.0, grad_norm_sq_ = 0.0, lap_norm_sq_ = 0.0, integral_ = 0.0;
};

// L2 inner products over the torus by tensor-grid quadrature:
// returns (<f_i, f_j>, <grad f_i, grad f_j>).
void test_function_gram(const std::vector<TestFunction>& fs,
                        std::vector<std::vector<double>>& gram0,
                        std::vector<std::vector<double>>& gram_grad,
                        int points_per_dim = 96);

}  // namespace scaledyn
