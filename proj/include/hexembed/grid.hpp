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

#include <cmath>
#include <cstdint>
#include <string>

#include "hexembed/types.hpp"

namespace hexembed {

/// Uniform background grid. Cell `c` spans [node(c), node(c + 1)].
///
/// Node coordinates are always computed by node_coord(), so every predicate
/// in the library sees bit-identical node positions.
template <int D>
struct GridSpec {
  Point<D> origin{};
  double dx = 1.0;
  Index<D> dims{};  // cell counts

  void validate() const {
    if (!(dx > 0.0) || !std::isfinite(dx))
      throw Error("grid spacing must be positive and finite");
    for (int a = 0; a < D; ++a)
      if (dims[a] < 1) throw Error("grid needs at least one cell per axis");
  }

  Index<D> node_dims() const {
    Index<D> n = dims;
    for (int& v : n) ++v;
    return n;
  }

  double node_coord(int axis, int i) const { return origin[axis] + i * dx; }

  Point<D> node_position(const Index<D>& i) const {
    Point<D> p;
    for (int a = 0; a < D; ++a) p[a] = node_coord(a, i[a]);
    return p;
  }

  Point<D> cell_center(const Index<D>& c) const {
    Point<D> p;
    for (int a = 0; a < D; ++a) p[a] = origin[a] + (c[a] + 0.5) * dx;
    return p;
  }

  std::int64_t node_count() const {
    std::int64_t n = 1;
    for (int a = 0; a < D; ++a) n *= dims[a] + 1;
    return n;
  }

  std::int64_t cell_count() const {
    std::int64_t n = 1;
    for (int a = 0; a < D; ++a) n *= dims[a];
    return n;
  }

  bool has_node(const Index<D>& i) const {
    for (int a = 0; a < D; ++a)
      if (i[a] < 0 || i[a] > dims[a]) return false;
    return true;
  }

  bool has_cell(const Index<D>& c) const {
    for (int a = 0; a < D; ++a)
      if (c[a] < 0 || c[a] >= dims[a]) return false;
    return true;
  }

  bool is_boundary_node(const Index<D>& i) const {
    for (int a = 0; a < D; ++a)
      if (i[a] == 0 || i[a] == dims[a]) return true;
    return false;
  }

  std::int64_t node_linear(const Index<D>& i) const {
    std::int64_t l = 0;
    for (int a = D - 1; a >= 0; --a) l = l * (dims[a] + 1) + i[a];
    return l;
  }

  Index<D> node_from_linear(std::int64_t l) const {
    Index<D> i;
    for (int a = 0; a < D; ++a) {
      i[a] = static_cast<int>(l % (dims[a] + 1));
      l /= dims[a] + 1;
    }
    return i;
  }

  std::int64_t cell_linear(const Index<D>& c) const {
    std::int64_t l = 0;
    for (int a = D - 1; a >= 0; --a) l = l * dims[a] + c[a];
    return l;
  }

  Index<D> cell_from_linear(std::int64_t l) const {
    Index<D> c;
    for (int a = 0; a < D; ++a) {
      c[a] = static_cast<int>(l % dims[a]);
      l /= dims[a];
    }
    return c;
  }

  /// Grid node at corner `k` of cell `c`.
  Index<D> cell_corner(const Index<D>& c, int k) const {
    return c + Dim<D>::corner_offset(k);
  }

  bool operator==(const GridSpec&) const = default;
};

/// Closed range of cell multi-indices, inclusive on both ends.
template <int D>
struct CellRange {
  Index<D> lo{};
  Index<D> hi{};

  std::int64_t size() const {
    std::int64_t n = 1;
    for (int a = 0; a < D; ++a) n *= hi[a] - lo[a] + 1;
    return n;
  }

  bool contains(const Index<D>& c) const {
    for (int a = 0; a < D; ++a)
      if (c[a] < lo[a] || c[a] > hi[a]) return false;
    return true;
  }

  /// Calls f(Index) for every cell in the range, x fastest.
  template <typename F>
  void for_each(F&& f) const {
    Index<D> c = lo;
    while (true) {
      f(static_cast<const Index<D>&>(c));
      int a = 0;
      for (; a < D; ++a) {
        if (++c[a] <= hi[a]) break;
        c[a] = lo[a];
      }
      if (a == D) return;
    }
  }
};

}  // namespace hexembed
