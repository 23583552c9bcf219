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

// Surface-relative geometry: which cells an element touches, which grid
// edges it cuts, and local inside/outside signing of points near the
// surface (closest facet plus convexity rules).

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <vector>

#include "hexembed/grid.hpp"
#include "hexembed/predicates.hpp"
#include "hexembed/surface.hpp"

namespace hexembed {

template <int D>
bool tri_cell_intersects(const std::array<Point<D>, D>& element, const GridSpec<D>& grid,
                         const Index<D>& cell) {
  return predicates::element_cell_intersects<D>(element, grid, cell);
}

/// Grid edge from `node` one step along `axis`.
template <int D>
bool edge_cut_by_surface(const GridSpec<D>& grid, const Index<D>& node, int axis,
                         const SurfaceMesh<D>& mesh, std::span<const int> candidates) {
  const Point<D> p = grid.node_position(node);
  const Point<D> q = grid.node_position(node + unit_index<D>(axis));
  for (int e : candidates)
    if (predicates::segment_cuts_element<D>(p, q, mesh.element_points(e))) return true;
  return false;
}

/// +1 on the outward side of the element, -1 otherwise (on-plane included).
template <int D>
int plane_side_sign(const Point<D>& x, const std::array<Point<D>, D>& element) {
  if (predicates::element_degenerate<D>(element))
    throw DegenerateElementError("plane side of a degenerate element");
  return predicates::outward_orientation<D>(element, x) > 0 ? 1 : -1;
}

/// Smallest cell range whose closed union covers the element's bounding
/// box. A coordinate exactly on a grid plane selects the cells on both
/// sides of it.
template <int D>
CellRange<D> bounding_subgrid(const std::array<Point<D>, D>& element, const GridSpec<D>& grid) {
  CellRange<D> r;
  for (int a = 0; a < D; ++a) {
    double mn = element[0][a], mx = element[0][a];
    for (const Point<D>& p : element) mn = std::min(mn, p[a]), mx = std::max(mx, p[a]);
    const int n = grid.dims[a];
    if (!(mn >= grid.node_coord(a, 0)) || !(mx <= grid.node_coord(a, n)))
      throw OutOfGridError("surface element leaves the grid along axis " + std::to_string(a));
    auto guess = [&](double x) {
      const double g = std::floor((x - grid.origin[a]) / grid.dx);
      return static_cast<int>(std::clamp(g, 0.0, static_cast<double>(n - 1)));
    };
    // lo: smallest c with node(c + 1) >= mn
    int lo = guess(mn);
    while (lo > 0 && grid.node_coord(a, lo) >= mn) --lo;
    while (lo < n - 1 && grid.node_coord(a, lo + 1) < mn) ++lo;
    // hi: largest c with node(c) <= mx
    int hi = guess(mx);
    while (hi < n - 1 && grid.node_coord(a, hi + 1) <= mx) ++hi;
    while (hi > 0 && grid.node_coord(a, hi) > mx) --hi;
    r.lo[a] = lo;
    r.hi[a] = hi;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Closest facet

enum class FacetKind { kFace, kEdge, kVertex };

/// Facet of a surface patch nearest to a query point. `vertices` holds the
/// surface vertex ids of the facet (1 for a vertex, 2 for an edge, D for a
/// face); unused slots are -1.
template <int D>
struct ClosestFacet {
  FacetKind kind = FacetKind::kFace;
  int element = -1;
  std::array<int, 3> vertices{-1, -1, -1};
  double squared_distance = std::numeric_limits<double>::infinity();
};

namespace detail {

template <int D>
double dot(const Point<D>& a, const Point<D>& b) {
  double s = 0;
  for (int i = 0; i < D; ++i) s += a[i] * b[i];
  return s;
}

template <int D>
Point<D> sub(const Point<D>& a, const Point<D>& b) {
  Point<D> r;
  for (int i = 0; i < D; ++i) r[i] = a[i] - b[i];
  return r;
}

template <int D>
double dist2(const Point<D>& a, const Point<D>& b) {
  const Point<D> d = sub<D>(a, b);
  return dot<D>(d, d);
}

/// Region of the closest point on segment ab: -1 interior, else endpoint.
template <int D>
std::pair<double, int> closest_on_segment(const Point<D>& p, const Point<D>& a,
                                          const Point<D>& b) {
  const Point<D> ab = sub<D>(b, a);
  const double len2 = dot<D>(ab, ab);
  const double t = len2 > 0 ? dot<D>(sub<D>(p, a), ab) / len2 : 0.0;
  if (t <= 0) return {dist2<D>(p, a), 0};
  if (t >= 1) return {dist2<D>(p, b), 1};
  Point<D> x;
  for (int i = 0; i < D; ++i) x[i] = a[i] + t * ab[i];
  return {dist2<D>(p, x), -1};
}

/// Closest point on triangle abc by Voronoi regions. Region code: 0..2
/// vertex, 3 edge ab, 4 edge bc, 5 edge ca, 6 face.
inline std::pair<double, int> closest_on_triangle(const Point<3>& p, const Point<3>& a,
                                                  const Point<3>& b, const Point<3>& c) {
  const Point<3> ab = sub<3>(b, a), ac = sub<3>(c, a), ap = sub<3>(p, a);
  const double d1 = dot<3>(ab, ap), d2 = dot<3>(ac, ap);
  if (d1 <= 0 && d2 <= 0) return {dist2<3>(p, a), 0};
  const Point<3> bp = sub<3>(p, b);
  const double d3 = dot<3>(ab, bp), d4 = dot<3>(ac, bp);
  if (d3 >= 0 && d4 <= d3) return {dist2<3>(p, b), 1};
  const double vc = d1 * d4 - d3 * d2;
  auto at = [&](const Point<3>& o, const Point<3>& u, double t) {
    Point<3> x;
    for (int i = 0; i < 3; ++i) x[i] = o[i] + t * u[i];
    return dist2<3>(p, x);
  };
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return {at(a, ab, d1 / (d1 - d3)), 3};
  const Point<3> cp = sub<3>(p, c);
  const double d5 = dot<3>(ab, cp), d6 = dot<3>(ac, cp);
  if (d6 >= 0 && d5 <= d6) return {dist2<3>(p, c), 2};
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return {at(a, ac, d2 / (d2 - d6)), 5};
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0)
    return {at(b, sub<3>(c, b), (d4 - d3) / ((d4 - d3) + (d5 - d6))), 4};
  const double denom = va + vb + vc;
  if (!(denom > 0)) {
    // Degenerate triangle: nearest of its three edges.
    std::pair<double, int> best{std::numeric_limits<double>::infinity(), 6};
    const Point<3>* v[3] = {&a, &b, &c};
    for (int e = 0; e < 3; ++e) {
      auto [d, r] = closest_on_segment<3>(p, *v[e], *v[(e + 1) % 3]);
      if (d < best.first) best = {d, r < 0 ? 3 + e : (e + r) % 3};
    }
    return best;
  }
  const double v = vb / denom, w = vc / denom;
  Point<3> x;
  for (int i = 0; i < 3; ++i) x[i] = a[i] + ab[i] * v + ac[i] * w;
  return {dist2<3>(p, x), 6};
}

}  // namespace detail

/// Nearest facet over the patch elements. Equal distances keep the
/// facet found on the lowest element id.
template <int D>
ClosestFacet<D> closest_facet(const SurfaceMesh<D>& mesh, std::span<const int> patch,
                              const Point<D>& x) {
  ClosestFacet<D> best;
  std::vector<int> sorted(patch.begin(), patch.end());
  std::sort(sorted.begin(), sorted.end());
  for (int e : sorted) {
    const auto pts = mesh.element_points(e);
    ClosestFacet<D> f;
    f.element = e;
    if constexpr (D == 3) {
      const auto [d, region] = detail::closest_on_triangle(x, pts[0], pts[1], pts[2]);
      f.squared_distance = d;
      if (region < 3) {
        f.kind = FacetKind::kVertex;
        f.vertices[0] = mesh.vertex(e, region);
      } else if (region < 6) {
        f.kind = FacetKind::kEdge;
        f.vertices[0] = mesh.vertex(e, region - 3);
        f.vertices[1] = mesh.vertex(e, (region - 2) % 3);
      } else {
        f.kind = FacetKind::kFace;
        for (int k = 0; k < 3; ++k) f.vertices[k] = mesh.vertex(e, k);
      }
    } else {
      const auto [d, end] = detail::closest_on_segment<2>(x, pts[0], pts[1]);
      f.squared_distance = d;
      if (end >= 0) {
        f.kind = FacetKind::kVertex;
        f.vertices[0] = mesh.vertex(e, end);
      } else {
        f.kind = FacetKind::kFace;
        f.vertices[0] = mesh.vertex(e, 0);
        f.vertices[1] = mesh.vertex(e, 1);
      }
    }
    if (f.squared_distance < best.squared_distance) best = f;
  }
  return best;
}

/// Adds every element incident to a vertex of the facet. Returns whether
/// the patch grew. `patch` stays sorted.
template <int D>
bool expand_patch(const SurfaceMesh<D>& mesh, const ClosestFacet<D>& facet,
                  std::vector<int>& patch) {
  const std::size_t before = patch.size();
  for (int v : facet.vertices) {
    if (v < 0) continue;
    for (int e : mesh.incident_elements(v))
      if (!std::binary_search(patch.begin(), patch.begin() + before, e)) patch.push_back(e);
  }
  if (patch.size() == before) return false;
  std::sort(patch.begin(), patch.end());
  patch.erase(std::unique(patch.begin(), patch.end()), patch.end());
  return patch.size() > before;
}

/// How often each signing branch ran.
struct SigningCounters {
  std::atomic<long> face{0};
  std::atomic<long> edge{0};
  std::atomic<long> vertex{0};
};

namespace detail {

/// Convexity of the 3D edge uv: +1 convex, -1 concave, 0 flat. Returns 0
/// together with `f0 = -1` when the edge is not manifold.
inline int ridge_convexity(const SurfaceMesh<3>& mesh, int u, int v, int* f0_out = nullptr) {
  int f0 = -1, f1 = -1;  // f0 runs u->v, f1 runs v->u
  for (int e : mesh.incident_elements(u)) {
    for (int k = 0; k < 3; ++k) {
      const int a = mesh.vertex(e, k), b = mesh.vertex(e, (k + 1) % 3);
      if (a == u && b == v) f0 = e;
      if (a == v && b == u) f1 = e;
    }
  }
  if (f0_out) *f0_out = f0;
  if (f0 < 0 || f1 < 0) return 0;
  int w = -1;
  for (int k = 0; k < 3; ++k)
    if (mesh.vertex(f1, k) != u && mesh.vertex(f1, k) != v) w = mesh.vertex(f1, k);
  if (w < 0) return 0;
  const int o = predicates::outward_orientation<3>(mesh.element_points(f0), mesh.vertices()[w]);
  return o < 0 ? 1 : (o > 0 ? -1 : 0);
}

/// Convexity at a 2D vertex: +1 convex, -1 concave, 0 flat.
inline int ridge_convexity(const SurfaceMesh<2>& mesh, int v, int* in_out = nullptr) {
  int in = -1, out = -1;
  for (int e : mesh.incident_elements(v)) {
    if (mesh.vertex(e, 1) == v && in < 0) in = e;
    if (mesh.vertex(e, 0) == v && out < 0) out = e;
  }
  if (in_out) *in_out = in;
  if (in < 0 || out < 0) return 0;
  const auto& x = mesh.vertices();
  const int o = predicates::orient2d(x[mesh.vertex(in, 0)], x[v], x[mesh.vertex(out, 1)]);
  return o > 0 ? 1 : (o < 0 ? -1 : 0);
}

}  // namespace detail

/// Sign of x from its closest facet: the plane side for faces, the
/// convexity of the ridge for 3D edges and 2D vertices, and a
/// discrimination plane through two incident edges for 3D vertices.
/// The patch behind `facet` must already contain every element incident
/// to the facet's vertices.
template <int D>
int horn_taylor_sign(const SurfaceMesh<D>& mesh, const ClosestFacet<D>& facet, const Point<D>& x,
                     SigningCounters* counters = nullptr) {
  auto count = [&](std::atomic<long> SigningCounters::*field) {
    if (counters) (counters->*field).fetch_add(1, std::memory_order_relaxed);
  };
  if (facet.kind == FacetKind::kFace) {
    count(&SigningCounters::face);
    return plane_side_sign<D>(x, mesh.element_points(facet.element));
  }
  if constexpr (D == 2) {
    count(&SigningCounters::vertex);
    int in = -1;
    const int c = detail::ridge_convexity(mesh, facet.vertices[0], &in);
    if (c != 0) return c;
    return plane_side_sign<2>(x, mesh.element_points(in >= 0 ? in : facet.element));
  } else {
    if (facet.kind == FacetKind::kEdge) {
      count(&SigningCounters::edge);
      int f0 = -1;
      const int c = detail::ridge_convexity(mesh, facet.vertices[0], facet.vertices[1], &f0);
      if (c != 0) return c;
      return plane_side_sign<3>(x, mesh.element_points(f0 >= 0 ? f0 : facet.element));
    }
    count(&SigningCounters::vertex);
    const int v = facet.vertices[0];
    const auto& pts = mesh.vertices();
    const std::vector<int> star = mesh.incident_elements(v);
    std::vector<int> nbrs;
    for (int e : star)
      for (int k = 0; k < 3; ++k)
        if (mesh.vertex(e, k) != v) nbrs.push_back(mesh.vertex(e, k));
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    int flat_a = -1, flat_b = -1;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        const int a = nbrs[i], b = nbrs[j];
        if (predicates::collinear(pts[v], pts[a], pts[b])) continue;
        bool pos = false, neg = false;
        for (int n : nbrs) {
          const int o = exact::orient3d(pts[v], pts[a], pts[b], pts[n]);
          pos |= o > 0;
          neg |= o < 0;
        }
        if (pos && neg) continue;  // no empty half-space
        const int ca = detail::ridge_convexity(mesh, v, a);
        const int cb = detail::ridge_convexity(mesh, v, b);
        if (ca == 0 && cb == 0) {
          if (flat_a < 0) flat_a = a, flat_b = b;
          continue;
        }
        if (ca != 0 && cb != 0 && ca != cb) continue;
        return ca != 0 ? ca : cb;
      }
    }
    if (flat_a >= 0) {
      // Every usable plane is spanned by flat edges: the star is locally a
      // plane there, so any star face lying in it decides.
      for (int e : star) {
        const auto ep = mesh.element_points(e);
        bool in_plane = true;
        for (const Point<3>& p : ep)
          in_plane &= exact::orient3d(pts[v], pts[flat_a], pts[flat_b], p) == 0;
        if (in_plane && !predicates::element_degenerate<3>(ep)) return plane_side_sign<3>(x, ep);
      }
    }
    throw NoDiscriminationPlane("no discrimination plane at surface vertex " + std::to_string(v));
  }
}

/// Closest-facet signing with patch expansion: grows the patch while the
/// closest facet is an edge or vertex whose incident elements are missing.
template <int D>
int sign_by_patch(const SurfaceMesh<D>& mesh, std::vector<int> patch, const Point<D>& x,
                  SigningCounters* counters = nullptr) {
  std::sort(patch.begin(), patch.end());
  patch.erase(std::unique(patch.begin(), patch.end()), patch.end());
  ClosestFacet<D> facet;
  for (int round = 0; round <= mesh.element_count(); ++round) {
    facet = closest_facet<D>(mesh, patch, x);
    if (facet.kind == FacetKind::kFace) break;
    if (!expand_patch<D>(mesh, facet, patch)) break;
  }
  return horn_taylor_sign<D>(mesh, facet, x, counters);
}

}  // namespace hexembed
