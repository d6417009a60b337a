#include "scaledyn/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scaledyn {

void hermite_eval_all(int nmax, double x, std::vector<double>& out) {
  out.resize(static_cast<size_t>(nmax) + 1);
  double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  out[0] = h0;
  if (nmax == 0) return;
  out[1] = std::sqrt(2.0) * x * h0;
  for (int n = 1; n < nmax; ++n)
    out[static_cast<size_t>(n) + 1] =
        std::sqrt(2.0 / (n + 1.0)) * x * out[static_cast<size_t>(n)] -
        std::sqrt(n / (n + 1.0)) * out[static_cast<size_t>(n) - 1];
}

double hermite_eval(int n, double x) {
  std::vector<double> buf;
  hermite_eval_all(n, x, buf);
  return buf[static_cast<size_t>(n)];
}

double hermite_deriv(int n, double x) {
  std::vector<double> buf;
  hermite_eval_all(n + 1, x, buf);
  double lower = (n > 0) ? std::sqrt(static_cast<double>(n)) * buf[static_cast<size_t>(n) - 1] : 0.0;
  return (lower - std::sqrt(n + 1.0) * buf[static_cast<size_t>(n) + 1]) / std::sqrt(2.0);
}

HermiteBasis::HermiteBasis(int dim_in, int max_degree_in)
    : dim(dim_in), max_degree(max_degree_in) {
  if (dim < 1 || dim > kMaxDim) throw Error("hermite basis: bad dimension");
  std::array<int, 3> idx{0, 0, 0};
  // enumerate all multi-indices with |n| <= max_degree
  std::vector<std::array<int, 3>> all;
  if (dim == 1) {
    for (int a = 0; a <= max_degree; ++a) all.push_back({a, 0, 0});
  } else if (dim == 2) {
    for (int a = 0; a <= max_degree; ++a)
      for (int b = 0; a + b <= max_degree; ++b) all.push_back({a, b, 0});
  } else {
    for (int a = 0; a <= max_degree; ++a)
      for (int b = 0; a + b <= max_degree; ++b)
        for (int c = 0; a + b + c <= max_degree; ++c) all.push_back({a, b, c});
  }
  (void)idx;
  std::stable_sort(all.begin(), all.end(), [](const auto& p, const auto& q) {
    return p[0] + p[1] + p[2] < q[0] + q[1] + q[2];
  });
  indices = std::move(all);
  eigenvalues.reserve(indices.size());
  for (const auto& n : indices)
    eigenvalues.push_back(2.0 * (n[0] + n[1] + n[2]) + dim);
}

double HermiteBasis::eval(size_t i, const Vec& x) const {
  const auto& n = indices[i];
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= hermite_eval(n[static_cast<size_t>(a)], x[a]);
  return v;
}

double sobolev_norm_neg(const std::vector<double>& pairings,
                        const std::vector<double>& eigenvalues, double m) {
  if (pairings.size() > eigenvalues.size())
    throw Error("sobolev_norm_neg: more pairings than eigenvalues");
  KahanSum s;
  for (size_t i = 0; i < pairings.size(); ++i)
    s.add(std::pow(eigenvalues[i], -m) * pairings[i] * pairings[i]);
  return s.value();
}

}  // namespace scaledyn
