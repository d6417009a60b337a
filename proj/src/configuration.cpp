#include "scaledyn/configuration.hpp"

#include <algorithm>
#include <cmath>

namespace scaledyn {

void CellIndex::build(const Configuration& c, double cutoff) {
  dim_ = c.torus.dim;
  box_ = c.torus.box;
  cutoff_ = cutoff;
  all_pairs_ = true;
  size_t ncells = 1;
  if (cutoff > 0.0) {
    all_pairs_ = false;
    for (int a = 0; a < dim_; ++a) {
      m_[a] = static_cast<int>(std::floor(box_ / cutoff));
      if (m_[a] < 3) all_pairs_ = true;
    }
  }
  if (all_pairs_) {
    for (int a = 0; a < kMaxDim; ++a) m_[a] = 1;
    cells_.clear();
    cell_of_.clear();
    return;
  }
  for (int a = 0; a < dim_; ++a) ncells *= static_cast<size_t>(m_[a]);
  cells_.assign(ncells, {});
  cell_of_.assign(c.pos.size(), 0);
  for (size_t i = 0; i < c.pos.size(); ++i) {
    size_t ci = cell_of_position(c.pos[i]);
    cell_of_[i] = static_cast<uint32_t>(ci);
    cells_[ci].push_back(static_cast<uint32_t>(i));
  }
}

void CellIndex::cell_coords(const Vec& x, int* out) const {
  for (int a = 0; a < dim_; ++a) {
    double w = box_ / m_[a];
    int v = static_cast<int>(std::floor(x[a] / w));
    if (v >= m_[a]) v = m_[a] - 1;
    if (v < 0) v = 0;
    out[a] = v;
  }
}

size_t CellIndex::flat_index(const int* cc) const {
  size_t idx = 0;
  for (int a = 0; a < dim_; ++a) idx = idx * static_cast<size_t>(m_[a]) + static_cast<size_t>(cc[a]);
  return idx;
}

size_t CellIndex::cell_of_position(const Vec& x) const {
  int cc[kMaxDim] = {0, 0, 0};
  cell_coords(x, cc);
  return flat_index(cc);
}

void CellIndex::on_insert(const Configuration& c, size_t i) {
  if (all_pairs_) return;
  size_t ci = cell_of_position(c.pos[i]);
  if (cell_of_.size() < c.pos.size()) cell_of_.resize(c.pos.size(), 0);
  cell_of_[i] = static_cast<uint32_t>(ci);
  cells_[ci].push_back(static_cast<uint32_t>(i));
}

void CellIndex::on_move(const Configuration& c, size_t i) {
  if (all_pairs_) return;
  size_t old_cell = cell_of_[i];
  size_t new_cell = cell_of_position(c.pos[i]);
  if (old_cell == new_cell) return;
  auto& v = cells_[old_cell];
  v.erase(std::find(v.begin(), v.end(), static_cast<uint32_t>(i)));
  cells_[new_cell].push_back(static_cast<uint32_t>(i));
  cell_of_[i] = static_cast<uint32_t>(new_cell);
}

void CellIndex::on_swap_remove(const Configuration& c, size_t i, size_t old_last) {
  if (all_pairs_) return;
  // particle i was removed and the former last particle (old_last) now sits at slot i
  auto& vi = cells_[cell_of_[i]];
  vi.erase(std::find(vi.begin(), vi.end(), static_cast<uint32_t>(i)));
  if (i != old_last) {
    auto& vl = cells_[cell_of_[old_last]];
    auto it = std::find(vl.begin(), vl.end(), static_cast<uint32_t>(old_last));
    *it = static_cast<uint32_t>(i);
    cell_of_[i] = cell_of_[old_last];
  }
  cell_of_.resize(c.pos.size());
}

bool CellIndex::consistent_with(const Configuration& c) const {
  if (all_pairs_) return true;
  if (cell_of_.size() != c.pos.size()) return false;
  size_t counted = 0;
  for (const auto& cell : cells_) counted += cell.size();
  if (counted != c.pos.size()) return false;
  for (size_t i = 0; i < c.pos.size(); ++i) {
    size_t ci = cell_of_position(c.pos[i]);
    if (ci != cell_of_[i]) return false;
    const auto& cell = cells_[ci];
    if (std::find(cell.begin(), cell.end(), static_cast<uint32_t>(i)) == cell.end()) return false;
  }
  return true;
}

}  // namespace scaledyn
