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
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace hexembed {

template <int D>
using Point = std::array<double, D>;

/// Integer multi-index of a grid node or grid cell.
template <int D>
using Index = std::array<int, D>;

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = ~VertexId{0};

/// Dimension-dependent constants. Everything in the library is written
/// against these so that the 2D analog (segments -> quads) and the 3D case
/// (triangles -> hexahedra) share one implementation.
template <int D>
struct Dim {
  static_assert(D == 2 || D == 3, "only 2D and 3D meshes are supported");

  /// Corners of a grid cell (hexahedron or quad).
  static constexpr int kCorners = 1 << D;
  /// Sides of a grid cell.
  static constexpr int kSides = 2 * D;
  /// Corners on one side of a grid cell.
  static constexpr int kSideCorners = 1 << (D - 1);
  /// Vertices of a surface element (triangle or segment).
  static constexpr int kElementVertices = D;
  /// Nodes in the 3^D stencil around a grid node, center included.
  static constexpr int kStencil = D == 2 ? 9 : 27;
  static constexpr int kStencilCenter = kStencil / 2;

  /// Offset of corner `k` from the cell's minimum corner. Bit `a` of `k`
  /// is the offset along axis `a`, so corner order is lexicographic with x
  /// varying fastest.
  static constexpr Index<D> corner_offset(int k) {
    Index<D> o{};
    for (int a = 0; a < D; ++a) o[a] = (k >> a) & 1;
    return o;
  }

  /// Corners of side `s`: axis `s / 2`, minimum side when `s` is even.
  static constexpr std::array<int, kSideCorners> side_corners(int s) {
    std::array<int, kSideCorners> out{};
    const int axis = s / 2;
    const int bit = s % 2;
    int n = 0;
    for (int k = 0; k < kCorners; ++k)
      if (((k >> axis) & 1) == bit) out[n++] = k;
    return out;
  }

  static constexpr int opposite_side(int s) { return s ^ 1; }

  /// Stencil slot of an offset in {-1, 0, 1}^D.
  static constexpr int stencil_slot(const Index<D>& o) {
    int s = 0;
    int stride = 1;
    for (int a = 0; a < D; ++a) {
      s += (o[a] + 1) * stride;
      stride *= 3;
    }
    return s;
  }

  static constexpr Index<D> stencil_offset(int slot) {
    Index<D> o{};
    for (int a = 0; a < D; ++a) {
      o[a] = slot % 3 - 1;
      slot /= 3;
    }
    return o;
  }
};

template <std::size_t N>
constexpr std::array<int, N> operator+(std::array<int, N> a, const std::array<int, N>& b) {
  for (std::size_t i = 0; i < N; ++i) a[i] += b[i];
  return a;
}

template <std::size_t N>
constexpr std::array<int, N> operator-(std::array<int, N> a, const std::array<int, N>& b) {
  for (std::size_t i = 0; i < N; ++i) a[i] -= b[i];
  return a;
}

template <int D>
constexpr Index<D> unit_index(int axis) {
  Index<D> e{};
  e[axis] = 1;
  return e;
}

/// Base class for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfGridError : public Error {
 public:
  using Error::Error;
};

class CoincidenceViolation : public Error {
 public:
  using Error::Error;
};

class DegenerateElementError : public Error {
 public:
  using Error::Error;
};

class NoDiscriminationPlane : public Error {
 public:
  using Error::Error;
};

class DegenerateTetError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace detail

/// Hash for fixed-size integer arrays (hex vertex tuples, multi-indices).
struct ArrayHash {
  template <typename T, std::size_t N>
  std::size_t operator()(const std::array<T, N>& a) const noexcept {
    std::size_t seed = N;
    for (const T& v : a) detail::hash_combine(seed, std::hash<T>{}(v));
    return seed;
  }
};

}  // namespace hexembed
