#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "scaledyn/common.hpp"
#include "scaledyn/potential.hpp"
#include "scaledyn/torus.hpp"

namespace scaledyn {

// Small finite-volume system whose grand-canonical sums are evaluated by
// brute force: the particle-number sum is truncated at n_max and each
// n-particle integral is done by tensor-product Gauss-Legendre quadrature
// (reduced over node multisets, which is exact because the integrands are
// symmetric).
struct FiniteVolumeSpec {
  double length = 1.0;   // box side
  int dim = 1;           // 1 or 2
  enum class Boundary { Free, Periodic } boundary = Boundary::Periodic;
  int n_max = 4;         // particle-number truncation
  int quad_points = 24;  // per dimension

  double volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= length;
    return v;
  }
};

struct PartitionResult {
  double value = 0.0;
  double remainder_bound = 0.0;  // bound on the first dropped term
  bool flagged = false;          // remainder above the requested tolerance
};

struct BetaDerivativePair {
  double lhs = 0.0;  // finite-difference derivative of the correlation
  double rhs = 0.0;  // energy/interaction integral formula
};

// Function on finite configurations with declared bounded support.
struct FiniteConfigurationFunction {
  int max_cardinality = 0;
  std::function<bool(const Vec&)> in_region;  // null: everywhere
  std::function<double(const std::vector<Vec>&)> eval;
  bool bounded = true;
};

// Subset-sum lift (KG)(gamma) = sum over finite eta subset gamma of G(eta).
// Enumeration is restricted by the declared support; without one, gamma must
// hold at most 12 points.
double k_transform(const FiniteConfigurationFunction& g, const std::vector<Vec>& gamma);

class Oracle {
 public:
  Oracle(const FiniteVolumeSpec& spec, const PairPotential& phi);

  const FiniteVolumeSpec& spec() const { return spec_; }

  // Z = sum_{n <= n_max} z^n/n! \int_{Lambda^n} e^{-beta E} dx. The remainder
  // bound is z^{n+1} |L|^{n+1} e^{beta B (n+1) n} / (n+1)! at n = n_max.
  PartitionResult partition_function(double beta, double z, double tol = 1e-6) const;
  // Same sum truncated at n_used <= n_max (for monotonicity checks).
  double partition_sum(double beta, double z, int n_used) const;

  // Correlation function of the truncated finite-volume Gibbs measure, in the
  // number-density normalization: rho(emptyset) = 1 and rho(eta) = z^{|eta|}
  // exactly at beta = 0. n_used < 0 means the full n_max; identity checks
  // against the truncated measure pass sector-matched truncations here
  // (inserting k points consumes k sectors).
  double correlation(double beta, double z, const std::vector<Vec>& eta,
                     int n_used = -1) const;

  // <n> via the inserted-particle ratio z d/dz log Z (evaluated through the
  // one-point correlation, which is robust against the n_max truncation).
  double mean_particle_number(double beta, double z) const;

  // E_mu[ KG ] under the truncated Gibbs measure.
  double expectation_k_transform(const FiniteConfigurationFunction& g, double beta,
                                 double z) const;
  // \int G d rho_mu  =  sum_n 1/n! \int G({x_1..x_n}) rho^(n) dx, n <= max_cardinality.
  double correlation_measure(const FiniteConfigurationFunction& g, double beta,
                             double z) const;

  // Temperature derivative of the correlation function: central finite
  // difference with Richardson extrapolation against the explicit
  // energy/interaction formula. Requires |eta| + 2 within tractable reach.
  BetaDerivativePair beta_derivative_check(double beta, double z,
                                           const std::vector<Vec>& eta,
                                           double h = 1e-3) const;

  // One evaluation point per grid node (for building interpolants).
  const std::vector<Vec>& grid_points() const { return points_; }
  const std::vector<double>& grid_weights() const { return point_w_; }

  double pair_phi(const Vec& a, const Vec& b) const;  // boundary-aware phi(a-b)

 private:
  struct Sector {
    std::vector<double> coeff;    // prod weights / prod multiplicity!
    std::vector<double> energy;   // E(nodes)
    std::vector<uint16_t> ids;    // n node indices per entry
  };

  Vec displacement(const Vec& a, const Vec& b) const;
  double eta_energy(const std::vector<Vec>& eta) const;
  // sum over sectors of z^n * sum_entries coeff e^{-beta(E + W)} with
  // per-node weight factors gw[i] = e^{-beta w(node_i)}; gw empty means 1.
  double weighted_sum(double beta, double z, const std::vector<double>& gw, int n_used) const;
  const std::vector<double>& exp_energies(double beta, int n) const;
  std::vector<double> eta_node_weights(double beta, const std::vector<Vec>& eta) const;

  FiniteVolumeSpec spec_;
  PairPotential phi_;
  Torus torus_;
  std::vector<Vec> points_;
  std::vector<double> point_w_;
  std::vector<Sector> sectors_;  // sectors_[n-1] holds the n-particle entries
  mutable std::map<double, std::vector<std::vector<double>>> exp_cache_;
  mutable std::map<std::pair<double, double>, double> z_cache_;
};

}  // namespace scaledyn
