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

// Exact closed-set intersection tests between segments, triangles and
// axis-aligned grid cells. "Closed" means touching counts as intersecting.
// Every decision goes through exact orientation predicates or exact
// coordinate comparisons.

#pragma once

#include <algorithm>
#include <array>

#include "hexembed/exact.hpp"
#include "hexembed/grid.hpp"

namespace hexembed::predicates {

using exact::orient2d;
using exact::orient3d;

inline bool lex_less(const Point<3>& a, const Point<3>& b) { return a < b; }

/// True when the closed boxes spanned by the two point sets overlap.
template <int D, std::size_t N, std::size_t M>
bool boxes_overlap(const std::array<Point<D>, N>& a, const std::array<Point<D>, M>& b) {
  for (int k = 0; k < D; ++k) {
    double amin = a[0][k], amax = a[0][k], bmin = b[0][k], bmax = b[0][k];
    for (const auto& p : a) amin = std::min(amin, p[k]), amax = std::max(amax, p[k]);
    for (const auto& p : b) bmin = std::min(bmin, p[k]), bmax = std::max(bmax, p[k]);
    if (amax < bmin || bmax < amin) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 2D

/// Closed segment pq against closed segment ab, degenerate segments allowed.
inline bool segments_intersect(const Point<2>& p, const Point<2>& q, const Point<2>& a,
                               const Point<2>& b) {
  const int o1 = orient2d(p, q, a);
  const int o2 = orient2d(p, q, b);
  const int o3 = orient2d(a, b, p);
  const int o4 = orient2d(a, b, q);
  if (o1 * o2 > 0 || o3 * o4 > 0) return false;
  if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0)
    return boxes_overlap<2>(std::array{p, q}, std::array{a, b});
  return true;
}

/// Closed, nondegenerate triangle abc.
inline bool point_in_triangle(const Point<2>& p, const Point<2>& a, const Point<2>& b,
                              const Point<2>& c) {
  const int o1 = orient2d(a, b, p);
  const int o2 = orient2d(b, c, p);
  const int o3 = orient2d(c, a, p);
  const bool pos = o1 > 0 || o2 > 0 || o3 > 0;
  const bool neg = o1 < 0 || o2 < 0 || o3 < 0;
  return !(pos && neg);
}

inline bool segment_triangle_2d(const Point<2>& p, const Point<2>& q, const Point<2>& a,
                                const Point<2>& b, const Point<2>& c) {
  return point_in_triangle(p, a, b, c) || point_in_triangle(q, a, b, c) ||
         segments_intersect(p, q, a, b) || segments_intersect(p, q, b, c) ||
         segments_intersect(p, q, c, a);
}

inline bool point_in_box(const Point<2>& p, const Point<2>& lo, const Point<2>& hi) {
  return p[0] >= lo[0] && p[0] <= hi[0] && p[1] >= lo[1] && p[1] <= hi[1];
}

/// Closed segment ab against the closed axis-aligned box [lo, hi].
inline bool segment_box(const Point<2>& a, const Point<2>& b, const Point<2>& lo,
                        const Point<2>& hi) {
  if (!boxes_overlap<2>(std::array{a, b}, std::array{lo, hi})) return false;
  if (point_in_box(a, lo, hi) || point_in_box(b, lo, hi)) return true;
  const Point<2> c[4] = {lo, {hi[0], lo[1]}, hi, {lo[0], hi[1]}};
  for (int i = 0; i < 4; ++i)
    if (segments_intersect(a, b, c[i], c[(i + 1) % 4])) return true;
  return false;
}

// ---------------------------------------------------------------------------
// 3D

inline Point<2> drop_axis(const Point<3>& p, int axis) {
  return axis == 0 ? Point<2>{p[1], p[2]} : axis == 1 ? Point<2>{p[0], p[2]} : Point<2>{p[0], p[1]};
}

inline bool collinear(const Point<3>& a, const Point<3>& b, const Point<3>& c) {
  for (int axis = 0; axis < 3; ++axis)
    if (orient2d(drop_axis(a, axis), drop_axis(b, axis), drop_axis(c, axis)) != 0) return false;
  return true;
}

/// Coplanar closed segments pq and ab (the caller guarantees coplanarity).
inline bool coplanar_segments_intersect(const Point<3>& p, const Point<3>& q, const Point<3>& a,
                                        const Point<3>& b) {
  const Point<3> pts[4] = {p, q, a, b};
  // Prefer a projection that keeps the points non-collinear; it is then
  // injective on their common plane.
  for (int axis = 0; axis < 3; ++axis) {
    Point<2> s[4];
    for (int i = 0; i < 4; ++i) s[i] = drop_axis(pts[i], axis);
    if (orient2d(s[0], s[1], s[2]) != 0 || orient2d(s[0], s[1], s[3]) != 0 ||
        orient2d(s[0], s[2], s[3]) != 0 || orient2d(s[1], s[2], s[3]) != 0)
      return segments_intersect(s[0], s[1], s[2], s[3]);
  }
  // All four points are collinear: any projection that does not squash the
  // line to a point is injective on it.
  for (int axis = 0; axis < 3; ++axis) {
    Point<2> s[4];
    for (int i = 0; i < 4; ++i) s[i] = drop_axis(pts[i], axis);
    if (!(s[0] == s[1] && s[0] == s[2] && s[0] == s[3]))
      return segments_intersect(s[0], s[1], s[2], s[3]);
  }
  return true;  // all four points coincide
}

inline bool segments_intersect(const Point<3>& p, const Point<3>& q, const Point<3>& a,
                               const Point<3>& b) {
  if (!boxes_overlap<3>(std::array{p, q}, std::array{a, b})) return false;
  if (orient3d(p, q, a, b) != 0) return false;
  return coplanar_segments_intersect(p, q, a, b);
}

/// Projection axis along which the nondegenerate triangle stays
/// nondegenerate, or -1 for a degenerate triangle.
inline int faithful_axis(const Point<3>& a, const Point<3>& b, const Point<3>& c) {
  for (int axis = 0; axis < 3; ++axis)
    if (orient2d(drop_axis(a, axis), drop_axis(b, axis), drop_axis(c, axis)) != 0) return axis;
  return -1;
}

/// Closed segment pq against closed triangle abc. Degenerate triangles are
/// tested as the segment or point they span, degenerate segments as points.
inline bool segment_triangle(const Point<3>& p, const Point<3>& q, const Point<3>& a,
                             const Point<3>& b, const Point<3>& c) {
  if (!boxes_overlap<3>(std::array{p, q}, std::array{a, b, c})) return false;
  const int axis = faithful_axis(a, b, c);
  if (axis < 0) {
    // Collinear vertices: the hull is the segment between the
    // lexicographically extreme vertices.
    Point<3> v[3] = {a, b, c};
    std::sort(v, v + 3);
    return segments_intersect(p, q, v[0], v[2]);
  }
  const int op = orient3d(a, b, c, p);
  const int oq = orient3d(a, b, c, q);
  if (op * oq > 0) return false;
  if (op == 0 && oq == 0) {
    return segment_triangle_2d(drop_axis(p, axis), drop_axis(q, axis), drop_axis(a, axis),
                               drop_axis(b, axis), drop_axis(c, axis));
  }
  // pq crosses the plane in exactly one point; it lies in the closed
  // triangle iff the three edge orientations seen from pq do not disagree.
  const int s1 = orient3d(p, q, a, b);
  const int s2 = orient3d(p, q, b, c);
  const int s3 = orient3d(p, q, c, a);
  const bool pos = s1 > 0 || s2 > 0 || s3 > 0;
  const bool neg = s1 < 0 || s2 < 0 || s3 < 0;
  return !(pos && neg);
}

inline bool point_in_box(const Point<3>& p, const Point<3>& lo, const Point<3>& hi) {
  for (int k = 0; k < 3; ++k)
    if (p[k] < lo[k] || p[k] > hi[k]) return false;
  return true;
}

/// Closed triangle abc against the closed axis-aligned box [lo, hi].
///
/// A triangle meets a box iff one of its vertices lies in the box, one of
/// its edges crosses a box face, or a box edge pierces the triangle.
inline bool triangle_box(const Point<3>& a, const Point<3>& b, const Point<3>& c,
                         const Point<3>& lo, const Point<3>& hi) {
  if (!boxes_overlap<3>(std::array{a, b, c}, std::array{lo, hi})) return false;
  if (point_in_box(a, lo, hi) || point_in_box(b, lo, hi) || point_in_box(c, lo, hi)) return true;
  Point<3> corner[8];
  for (int k = 0; k < 8; ++k)
    for (int i = 0; i < 3; ++i) corner[k][i] = ((k >> i) & 1) ? hi[i] : lo[i];
  if (faithful_axis(a, b, c) >= 0) {
    int pos = 0, neg = 0;
    for (const Point<3>& x : corner) {
      const int o = orient3d(a, b, c, x);
      pos += o > 0;
      neg += o < 0;
    }
    if (pos == 8 || neg == 8) return false;
  }
  const Point<3>* tri[3] = {&a, &b, &c};
  for (int s = 0; s < 6; ++s) {
    const auto f = Dim<3>::side_corners(s);
    for (int e = 0; e < 3; ++e) {
      const Point<3>& p = *tri[e];
      const Point<3>& q = *tri[(e + 1) % 3];
      if (segment_triangle(p, q, corner[f[0]], corner[f[1]], corner[f[3]]) ||
          segment_triangle(p, q, corner[f[0]], corner[f[3]], corner[f[2]]))
        return true;
    }
  }
  for (int k = 0; k < 8; ++k)
    for (int i = 0; i < 3; ++i)
      if (!((k >> i) & 1) && segment_triangle(corner[k], corner[k | (1 << i)], a, b, c))
        return true;
  return false;
}

// ---------------------------------------------------------------------------
// Dimension-generic entry points

/// Closed surface element (triangle / segment) against closed grid cell.
template <int D>
bool element_cell_intersects(const std::array<Point<D>, D>& element, const GridSpec<D>& grid,
                             const Index<D>& cell) {
  const Point<D> lo = grid.node_position(cell);
  Index<D> up = cell;
  for (int& v : up) ++v;
  const Point<D> hi = grid.node_position(up);
  if constexpr (D == 3)
    return triangle_box(element[0], element[1], element[2], lo, hi);
  else
    return segment_box(element[0], element[1], lo, hi);
}

/// Closed segment pq against a closed surface element.
template <int D>
bool segment_cuts_element(const Point<D>& p, const Point<D>& q,
                          const std::array<Point<D>, D>& element) {
  if constexpr (D == 3)
    return segment_triangle(p, q, element[0], element[1], element[2]);
  else
    return segments_intersect(p, q, element[0], element[1]);
}

/// Orientation of x relative to a surface element, positive on the outward
/// side: the right-handed normal side in 3D, the right of the segment in 2D.
template <int D>
int outward_orientation(const std::array<Point<D>, D>& element, const Point<D>& x) {
  if constexpr (D == 3)
    return orient3d(element[0], element[1], element[2], x);
  else
    return -orient2d(element[0], element[1], x);
}

template <int D>
bool element_degenerate(const std::array<Point<D>, D>& element) {
  if constexpr (D == 3)
    return collinear(element[0], element[1], element[2]);
  else
    return element[0] == element[1];
}

}  // namespace hexembed::predicates
