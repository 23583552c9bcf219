// Copyright 2026 The hexembed Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "hexembed/grid.hpp"
#include "hexembed/types.hpp"

namespace hexembed {

enum class Sign : std::int8_t { kUnset = 0, kPositive = 1, kNegative = -1, kConflict = 2 };

/// Sign of two merged vertices: unset is neutral, disagreement conflicts.
inline Sign combine(Sign a, Sign b) {
  if (a == Sign::kUnset) return b;
  if (b == Sign::kUnset || a == b) return a;
  return Sign::kConflict;
}

/// One vertex of the shared vertex array. Its position is always the
/// position of `node`, so two entries are geometrically coincident exactly
/// when their nodes are equal.
template <int D>
struct PoolEntry {
  Index<D> node{};
  Sign sign = Sign::kUnset;
  /// Set on region-copy vertices that descend from a node-precursor center.
  bool interior = false;
};

/// The growing vertex array every precursor and region mesh indexes into.
template <int D>
class VertexPool {
 public:
  VertexPool() = default;
  explicit VertexPool(GridSpec<D> grid) : grid_(grid) {}

  const GridSpec<D>& grid() const { return grid_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  VertexId add(const Index<D>& node, Sign sign = Sign::kUnset,
               bool interior = false) {
    entries_.push_back({node, sign, interior});
    return static_cast<VertexId>(entries_.size() - 1);
  }

  void append(const VertexPool& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  }

  void reserve(std::size_t n) { entries_.reserve(n); }

  PoolEntry<D>& operator[](VertexId v) { return entries_[v]; }
  const PoolEntry<D>& operator[](VertexId v) const { return entries_[v]; }

  Point<D> position(VertexId v) const {
    return grid_.node_position(entries_[v].node);
  }

  bool coincident(VertexId a, VertexId b) const {
    return entries_[a].node == entries_[b].node;
  }

  std::vector<PoolEntry<D>>& entries() { return entries_; }
  const std::vector<PoolEntry<D>>& entries() const { return entries_; }

 private:
  GridSpec<D> grid_;
  std::vector<PoolEntry<D>> entries_;
};

/// Grid-aligned hexahedron (3D) or quadrilateral (2D) mesh. Corner k of an
/// element sits on grid node cell + Dim<D>::corner_offset(k).
template <int D>
class HexMesh {
 public:
  static constexpr int kCorners = Dim<D>::kCorners;
  using Tuple = std::array<VertexId, kCorners>;

  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  void add(const Tuple& corners, const Index<D>& cell) {
    ids_.insert(ids_.end(), corners.begin(), corners.end());
    cells_.push_back(cell);
  }

  void append(const HexMesh& other) {
    ids_.insert(ids_.end(), other.ids_.begin(), other.ids_.end());
    cells_.insert(cells_.end(), other.cells_.begin(), other.cells_.end());
  }

  Tuple corners(std::size_t h) const {
    Tuple t;
    for (int k = 0; k < kCorners; ++k) t[k] = ids_[kCorners * h + k];
    return t;
  }

  VertexId corner(std::size_t h, int k) const { return ids_[kCorners * h + k]; }
  VertexId& corner(std::size_t h, int k) { return ids_[kCorners * h + k]; }
  const Index<D>& cell(std::size_t h) const { return cells_[h]; }

  std::span<const VertexId> ids() const { return ids_; }
  std::span<VertexId> ids() { return ids_; }
  const std::vector<Index<D>>& cells() const { return cells_; }

  /// Keeps hexes for which keep(h) is true, preserving order.
  template <typename Pred>
  void filter(Pred&& keep) {
    std::size_t out = 0;
    for (std::size_t h = 0; h < size(); ++h) {
      if (!keep(h)) continue;
      if (out != h) {
        for (int k = 0; k < kCorners; ++k) ids_[kCorners * out + k] = ids_[kCorners * h + k];
        cells_[out] = cells_[h];
      }
      ++out;
    }
    ids_.resize(kCorners * out);
    cells_.resize(out);
  }

  /// Removes hexes whose vertex tuple already appeared; the first one stays.
  /// Returns the number removed.
  std::size_t remove_duplicates() {
    std::unordered_set<Tuple, ArrayHash> seen;
    seen.reserve(size());
    const std::size_t before = size();
    filter([&](std::size_t h) { return seen.insert(corners(h)).second; });
    return before - size();
  }

  void clear() {
    ids_.clear();
    cells_.clear();
  }

  bool operator==(const HexMesh&) const = default;

 private:
  std::vector<VertexId> ids_;
  std::vector<Index<D>> cells_;
};

}  // namespace hexembed
