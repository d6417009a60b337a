#pragma once

#include <cstdint>
#include <vector>

#include "scaledyn/common.hpp"
#include "scaledyn/torus.hpp"

namespace scaledyn {

// Finite particle configuration on a periodic torus. Plain value type; the
// spatial hash lives in CellIndex and is kept consistent by the owner.
struct Configuration {
  Torus torus;
  std::vector<Vec> pos;

  Configuration() = default;
  explicit Configuration(Torus t) : torus(t) {}

  size_t size() const { return pos.size(); }
};

// Spatial hash with cell size >= cutoff. Falls back to all-pairs iteration
// when the box holds fewer than 3 cells per dimension (or the cutoff is 0),
// where the minimum-image convention already covers every candidate pair.
class CellIndex {
 public:
  CellIndex() = default;
  CellIndex(const Configuration& c, double cutoff) { build(c, cutoff); }

  void build(const Configuration& c, double cutoff);

  bool all_pairs() const { return all_pairs_; }
  double cutoff() const { return cutoff_; }

  // incremental maintenance for single-particle moves
  void on_insert(const Configuration& c, size_t i);       // particle i appended
  void on_move(const Configuration& c, size_t i);         // particle i repositioned
  void on_swap_remove(const Configuration& c, size_t i, size_t old_last);

  // consistency check: every particle findable via its cell
  bool consistent_with(const Configuration& c) const;

  template <class F>
  void for_candidates(const Configuration& c, const Vec& x, F&& f) const {
    if (all_pairs_) {
      for (size_t j = 0; j < c.pos.size(); ++j) f(j);
      return;
    }
    int base[kMaxDim] = {0, 0, 0};
    cell_coords(x, base);
    int off[kMaxDim] = {0, 0, 0};
    iterate_offsets(0, base, off, f);
  }

 private:
  template <class F>
  void iterate_offsets(int axis, const int* base, int* off, F&& f) const {
    if (axis == dim_) {
      int cc[kMaxDim] = {0, 0, 0};
      for (int a = 0; a < dim_; ++a) {
        int v = (base[a] + off[a]) % m_[a];
        if (v < 0) v += m_[a];
        cc[a] = v;
      }
      for (uint32_t j : cells_[flat_index(cc)]) f(static_cast<size_t>(j));
      return;
    }
    for (int o = -1; o <= 1; ++o) {
      off[axis] = o;
      iterate_offsets(axis + 1, base, off, f);
    }
  }

  void cell_coords(const Vec& x, int* out) const;
  size_t flat_index(const int* cc) const;
  size_t cell_of_position(const Vec& x) const;

  int dim_ = 1;
  double box_ = 1.0;
  double cutoff_ = 0.0;
  bool all_pairs_ = true;
  int m_[kMaxDim] = {1, 1, 1};
  std::vector<std::vector<uint32_t>> cells_;
  std::vector<uint32_t> cell_of_;  // per particle
};

}  // namespace scaledyn
