#pragma once

#include <array>
#include <vector>

#include "scaledyn/common.hpp"

namespace scaledyn {

// Normalized harmonic-oscillator eigenfunctions h_n (Hermite functions).
// The three-term recurrence runs on the normalized functions themselves --
// the Gaussian factor is inside, which keeps every intermediate bounded and
// is the overflow guard for large |x| and n.
double hermite_eval(int n, double x);

// h_0..h_nmax at x in one pass.
void hermite_eval_all(int nmax, double x, std::vector<double>& out);

// derivative h_n'(x) = (sqrt(n) h_{n-1} - sqrt(n+1) h_{n+1}) / sqrt(2)
double hermite_deriv(int n, double x);

// Tensor-product eigenbasis of A = -Laplacian + |x|^2 up to total degree
// max_degree, sorted by eigenvalue a = 2|n| + d.
struct HermiteBasis {
  int dim = 1;
  int max_degree = 40;
  std::vector<std::array<int, 3>> indices;
  std::vector<double> eigenvalues;

  HermiteBasis(int dim_, int max_degree_);
  size_t size() const { return indices.size(); }
  // h_{n}(x) for multi-index i at a (centered) point
  double eval(size_t i, const Vec& x) const;
};

// Truncated negative Sobolev norm: ||omega||_{-m,M}^2 = sum_i a_i^{-m} v_i^2
// over the supplied pairings v_i = <e_i, omega>.
double sobolev_norm_neg(const std::vector<double>& pairings,
                        const std::vector<double>& eigenvalues, double m);

}  // namespace scaledyn
