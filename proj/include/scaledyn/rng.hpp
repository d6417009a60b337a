#pragma once

#include <cstdint>
#include <random>

namespace scaledyn {

// Seeded RNG wrapper. Uniforms come from the top 53 bits of mt19937_64 and
// normals from an explicit polar Box-Muller, so that streams are portable
// across standard-library versions (std::normal_distribution is
// implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n)
  size_t uniform_index(size_t n) {
    return static_cast<size_t>(uniform() * static_cast<double>(n)) % n;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Stable derivation of per-replica / per-purpose streams from a base seed.
inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
  uint64_t x = base ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace scaledyn
