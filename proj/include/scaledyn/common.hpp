#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace scaledyn {

constexpr int kMaxDim = 3;

// Fixed-capacity point/vector for d <= 3. The active dimension is carried by
// the surrounding Torus / system objects; unused components stay zero.
struct Vec {
  std::array<double, kMaxDim> c{0.0, 0.0, 0.0};

  double& operator[](int i) { return c[static_cast<size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<size_t>(i)]; }
};

inline Vec operator+(Vec a, const Vec& b) {
  for (int i = 0; i < kMaxDim; ++i) a.c[i] += b.c[i];
  return a;
}
inline Vec operator-(Vec a, const Vec& b) {
  for (int i = 0; i < kMaxDim; ++i) a.c[i] -= b.c[i];
  return a;
}
inline Vec operator*(double s, Vec a) {
  for (int i = 0; i < kMaxDim; ++i) a.c[i] *= s;
  return a;
}
inline double dot(const Vec& a, const Vec& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += a.c[i] * b.c[i];
  return s;
}
inline double norm2(const Vec& a, int dim) { return dot(a, a, dim); }
inline double norm(const Vec& a, int dim) { return std::sqrt(norm2(a, dim)); }

// d x d symmetric matrix (stored dense over the fixed capacity).
struct Mat {
  std::array<std::array<double, kMaxDim>, kMaxDim> m{};

  double& operator()(int i, int j) { return m[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
  double operator()(int i, int j) const { return m[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
};

inline Vec mat_vec(const Mat& a, const Vec& v, int dim) {
  Vec r;
  for (int i = 0; i < dim; ++i) {
    double s = 0.0;
    for (int j = 0; j < dim; ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

// Compensated (Kahan) accumulator. Energy sums and MC averages go through
// this so acceptance decisions reproduce across platforms.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    if (!std::isfinite(x) || !std::isfinite(sum)) {  // keep the +inf sentinel intact
      sum += x;
      carry = 0.0;
      return;
    }
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

inline double kahan_total(const std::vector<double>& xs) {
  KahanSum k;
  for (double x : xs) k.add(x);
  return k.value();
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Error taxonomy: contract violations surface as exceptions carrying enough
// context for the caller to reject, retry or abort.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct SingularOriginError : Error {
  SingularOriginError() : Error("pair potential evaluated at the origin") {}
};

struct ClosePairError : Error {
  size_t i, j;
  double r;
  ClosePairError(size_t i_, size_t j_, double r_)
      : Error("pair (" + std::to_string(i_) + "," + std::to_string(j_) +
              ") below hard floor, r=" + std::to_string(r_)),
        i(i_), j(j_), r(r_) {}
};

struct StiffStepError : Error {
  double time;
  StiffStepError(double t, const std::string& detail)
      : Error("integrator step failed after 8 halvings at t=" + std::to_string(t) + ": " + detail),
        time(t) {}
};

struct QuadratureError : Error {
  double achieved;
  QuadratureError(double err, const std::string& what)
      : Error(what + " (achieved error " + std::to_string(err) + ")"), achieved(err) {}
};

}  // namespace scaledyn
