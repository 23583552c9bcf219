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

// Brute-force references for testing. They are slow on purpose and share as
// little as possible with the main pipeline.

#pragma once

#include <cmath>
#include <random>
#include <unordered_map>
#include <vector>

#include "hexembed/geometry.hpp"
#include "hexembed/hex_mesh.hpp"

namespace hexembed {

class SurfaceSelfIntersects : public Error {
 public:
  using Error::Error;
};

class DegenerateRay : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline bool triangle_pair_intersects(const SurfaceMesh<3>& s, int e0, int e1) {
  const auto t0 = s.element(e0), t1 = s.element(e1);
  const auto& x = s.vertices();
  int shared = 0;
  for (int a : t0)
    for (int b : t1) shared += a == b;
  auto seg_tri = [&](int p, int q, const std::array<int, 3>& t) {
    return predicates::segment_triangle(x[p], x[q], x[t[0]], x[t[1]], x[t[2]]);
  };
  if (shared == 0) {
    for (int k = 0; k < 3; ++k)
      if (seg_tri(t0[k], t0[(k + 1) % 3], t1) || seg_tri(t1[k], t1[(k + 1) % 3], t0)) return true;
    return false;
  }
  if (shared == 1) {
    int v = -1;
    for (int a : t0)
      for (int b : t1)
        if (a == b) v = a;
    auto others = [&](const std::array<int, 3>& t) {
      std::array<int, 2> o{};
      int n = 0;
      for (int a : t)
        if (a != v) o[n++] = a;
      return o;
    };
    const auto o0 = others(t0), o1 = others(t1);
    if (seg_tri(o0[0], o0[1], t1) || seg_tri(o1[0], o1[1], t0)) return true;
    // An edge from v running into the other triangle's corner at v.
    auto in_cone = [&](int a, const std::array<int, 2>& o) {
      if (exact::orient3d(x[v], x[o[0]], x[o[1]], x[a]) != 0) return false;
      const int axis = predicates::faithful_axis(x[v], x[o[0]], x[o[1]]);
      if (axis < 0) return false;
      const auto pv = predicates::drop_axis(x[v], axis);
      const auto pa = predicates::drop_axis(x[a], axis);
      const auto pb = predicates::drop_axis(x[o[0]], axis);
      const auto pc = predicates::drop_axis(x[o[1]], axis);
      const int turn = exact::orient2d(pv, pb, pc);
      return exact::orient2d(pv, pb, pa) * turn >= 0 && exact::orient2d(pv, pa, pc) * turn >= 0;
    };
    return in_cone(o0[0], o1) || in_cone(o0[1], o1) || in_cone(o1[0], o0) || in_cone(o1[1], o0);
  }
  if (shared == 2) {
    // Coplanar fold: the two opposite vertices on the same side of the
    // shared edge within their common plane.
    int u = -1, w = -1, a = -1, b = -1;
    for (int p : t0) {
      bool in1 = p == t1[0] || p == t1[1] || p == t1[2];
      if (!in1) a = p;
      else if (u < 0) u = p;
      else w = p;
    }
    for (int p : t1)
      if (p != u && p != w) b = p;
    if (exact::orient3d(x[u], x[w], x[a], x[b]) != 0) return false;
    const int axis = predicates::faithful_axis(x[u], x[w], x[a]);
    if (axis < 0) return false;
    const auto pu = predicates::drop_axis(x[u], axis), pw = predicates::drop_axis(x[w], axis);
    return exact::orient2d(pu, pw, predicates::drop_axis(x[a], axis)) *
               exact::orient2d(pu, pw, predicates::drop_axis(x[b], axis)) >
           0;
  }
  return true;  // repeated triangle
}

}  // namespace detail

/// Whether any two elements meet outside the vertices and edges they share.
template <int D>
bool surface_self_intersects(const SurfaceMesh<D>& s) {
  const int n = s.element_count();
  std::vector<std::pair<double, int>> order;
  std::vector<std::array<Point<D>, 2>> box(n);
  for (int e = 0; e < n; ++e) {
    const auto p = s.element_points(e);
    box[e] = {p[0], p[0]};
    for (const auto& q : p)
      for (int a = 0; a < D; ++a)
        box[e][0][a] = std::min(box[e][0][a], q[a]), box[e][1][a] = std::max(box[e][1][a], q[a]);
    order.emplace_back(box[e][0][0], e);
  }
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int e0 = order[i].second;
    for (std::size_t j = i + 1; j < order.size() && order[j].first <= box[e0][1][0]; ++j) {
      const int e1 = order[j].second;
      bool overlap = true;
      for (int a = 0; a < D; ++a)
        overlap &= box[e0][0][a] <= box[e1][1][a] && box[e1][0][a] <= box[e0][1][a];
      if (!overlap) continue;
      if constexpr (D == 3) {
        if (detail::triangle_pair_intersects(s, e0, e1)) return true;
      } else {
        const auto a = s.element(e0), b = s.element(e1);
        const auto& x = s.vertices();
        const bool shares = a[0] == b[0] || a[0] == b[1] || a[1] == b[0] || a[1] == b[1];
        if (!shares) {
          if (predicates::segments_intersect(x[a[0]], x[a[1]], x[b[0]], x[b[1]])) return true;
        } else {
          // Shared endpoint: overlap only if the other ends fold back.
          const int v = (a[0] == b[0] || a[0] == b[1]) ? a[0] : a[1];
          const int p = a[0] == v ? a[1] : a[0], q = b[0] == v ? b[1] : b[0];
          if (exact::orient2d(x[v], x[p], x[q]) == 0) {
            const double dot = (x[p][0] - x[v][0]) * (x[q][0] - x[v][0]) +
                               (x[p][1] - x[v][1]) * (x[q][1] - x[v][1]);
            if (dot > 0) return true;
          }
        }
      }
    }
  }
  return false;
}

/// Standard single-copy embedding of an intersection-free surface: the
/// touched cells plus every cell the grid boundary cannot reach through
/// untouched cells, all on shared grid vertices.
template <int D>
std::pair<HexMesh<D>, VertexPool<D>> floodfill_embed(const SurfaceMesh<D>& s,
                                                     const GridSpec<D>& grid) {
  if (surface_self_intersects(s))
    throw SurfaceSelfIntersects("flood-fill oracle needs an intersection-free surface");
  const std::int64_t cells = grid.cell_count();
  std::vector<std::uint8_t> state(static_cast<std::size_t>(cells), 0);  // 1 touched, 2 outside
  for (int e = 0; e < s.element_count(); ++e) {
    const auto p = s.element_points(e);
    bounding_subgrid<D>(p, grid).for_each([&](const Index<D>& c) {
      if (predicates::element_cell_intersects<D>(p, grid, c)) state[grid.cell_linear(c)] = 1;
    });
  }
  std::vector<std::int64_t> stack;
  for (std::int64_t l = 0; l < cells; ++l) {
    const Index<D> c = grid.cell_from_linear(l);
    bool boundary = false;
    for (int a = 0; a < D; ++a) boundary |= c[a] == 0 || c[a] == grid.dims[a] - 1;
    if (boundary && state[l] == 0) state[l] = 2, stack.push_back(l);
  }
  while (!stack.empty()) {
    const Index<D> c = grid.cell_from_linear(stack.back());
    stack.pop_back();
    for (int a = 0; a < D; ++a)
      for (int d : {-1, 1}) {
        Index<D> n = c;
        n[a] += d;
        if (!grid.has_cell(n)) continue;
        const std::int64_t l = grid.cell_linear(n);
        if (state[l] == 0) state[l] = 2, stack.push_back(l);
      }
  }
  HexMesh<D> mesh;
  VertexPool<D> pool(grid);
  std::unordered_map<std::int64_t, VertexId> ids;
  for (std::int64_t l = 0; l < cells; ++l) {
    if (state[l] == 2) continue;
    const Index<D> c = grid.cell_from_linear(l);
    typename HexMesh<D>::Tuple t;
    for (int k = 0; k < Dim<D>::kCorners; ++k) {
      const Index<D> node = c + Dim<D>::corner_offset(k);
      auto [it, inserted] = ids.emplace(grid.node_linear(node), static_cast<VertexId>(pool.size()));
      if (inserted) pool.add(node);
      t[k] = it->second;
    }
    mesh.add(t, c);
  }
  return {std::move(mesh), std::move(pool)};
}

/// Signed count of surface crossings along a random ray from x: exits
/// through outward-facing elements count +1, entries -1. Rays passing too
/// close to an element boundary are retried with a new direction.
template <int D>
int winding_count(const Point<D>& x, const SurfaceMesh<D>& s, unsigned seed = 1234,
                  int attempts = 32) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  constexpr double kTol = 1e-9;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Point<D> d;
    double len = 0;
    for (double& c : d) c = normal(rng), len += c * c;
    len = std::sqrt(len);
    for (double& c : d) c /= len;
    int count = 0;
    bool degenerate = false;
    for (int e = 0; e < s.element_count() && !degenerate; ++e) {
      const auto p = s.element_points(e);
      if constexpr (D == 3) {
        // Moller-Trumbore with barycentric margin checks.
        Point<3> e1, e2, pv, tv, qv;
        for (int i = 0; i < 3; ++i) e1[i] = p[1][i] - p[0][i], e2[i] = p[2][i] - p[0][i];
        pv = {d[1] * e2[2] - d[2] * e2[1], d[2] * e2[0] - d[0] * e2[2], d[0] * e2[1] - d[1] * e2[0]};
        const double det = e1[0] * pv[0] + e1[1] * pv[1] + e1[2] * pv[2];
        const double scale = std::sqrt(detail::dot<3>(e1, e1) * detail::dot<3>(e2, e2));
        if (std::fabs(det) <= kTol * scale) {
          // Ray parallel to the plane; only a problem if it lies in it.
          for (int i = 0; i < 3; ++i) tv[i] = x[i] - p[0][i];
          const Point<3> n = {e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
                              e1[0] * e2[1] - e1[1] * e2[0]};
          if (std::fabs(detail::dot<3>(n, tv)) <= kTol * scale) degenerate = true;
          continue;
        }
        for (int i = 0; i < 3; ++i) tv[i] = x[i] - p[0][i];
        const double u = detail::dot<3>(tv, pv) / det;
        qv = {tv[1] * e1[2] - tv[2] * e1[1], tv[2] * e1[0] - tv[0] * e1[2],
              tv[0] * e1[1] - tv[1] * e1[0]};
        const double v = detail::dot<3>(d, qv) / det;
        const double t = detail::dot<3>(e2, qv) / det;
        const double w = 1 - u - v;
        const double m = std::min({u, v, w});
        if (std::fabs(m) < kTol || std::fabs(t) < kTol) {
          if (m > -kTol && t > -kTol) degenerate = true;
          continue;
        }
        if (m < 0 || t < 0) continue;
        count += det > 0 ? -1 : 1;  // det > 0: ray enters against the normal
      } else {
        // Segment a->b, ray x + t d.
        const Point<2> ab = {p[1][0] - p[0][0], p[1][1] - p[0][1]};
        const double den = d[0] * ab[1] - d[1] * ab[0];
        const double len_ab = std::sqrt(ab[0] * ab[0] + ab[1] * ab[1]);
        const Point<2> ax = {p[0][0] - x[0], p[0][1] - x[1]};
        if (std::fabs(den) <= kTol * len_ab) {
          if (std::fabs(ax[0] * d[1] - ax[1] * d[0]) <= kTol * len_ab) degenerate = true;
          continue;
        }
        const double t = (ax[0] * ab[1] - ax[1] * ab[0]) / den;
        const double u = (ax[0] * d[1] - ax[1] * d[0]) / den;
        if (std::fabs(u) < kTol || std::fabs(u - 1) < kTol || std::fabs(t) < kTol) {
          if (u > -kTol && u < 1 + kTol && t > -kTol) degenerate = true;
          continue;
        }
        if (u < 0 || u > 1 || t < 0) continue;
        // Outward normal of a CCW boundary is (ab_y, -ab_x); exiting when d
        // points along it.
        count += (d[0] * ab[1] - d[1] * ab[0]) > 0 ? 1 : -1;
      }
    }
    if (!degenerate) return count;
  }
  throw DegenerateRay("every sampled ray grazed the surface");
}

}  // namespace hexembed
