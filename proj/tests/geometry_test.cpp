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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hexembed/geometry.hpp"
#include "support/rational.hpp"
#include "support/shapes.hpp"

namespace hexembed {
namespace {

namespace rq = testing::rational;

const GridSpec<3> kUnit3 = testing::make_grid<3>({0, 0, 0}, 1.0, {4, 4, 4});
const GridSpec<2> kUnit2 = testing::make_grid<2>({0, 0}, 1.0, {4, 4});

// L-shaped prism over z in [0, 1]. The vertical edge through (1, 1) is the
// one concave ridge.
SurfaceMesh<3> l_prism() {
  const std::vector<Point<2>> ring = {{1, 1}, {1, 2}, {0, 2}, {0, 0}, {2, 0}, {2, 1}};
  const int n = static_cast<int>(ring.size());
  std::vector<Point<3>> v;
  for (const Point<2>& p : ring) v.push_back({p[0], p[1], 0});
  for (const Point<2>& p : ring) v.push_back({p[0], p[1], 1});
  std::vector<int> t;
  for (int i = 1; i + 1 < n; ++i) {
    t.insert(t.end(), {0, i + 1, i});
    t.insert(t.end(), {n, n + i, n + i + 1});
  }
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    t.insert(t.end(), {i, j, n + j});
    t.insert(t.end(), {i, n + j, n + i});
  }
  return SurfaceMesh<3>(v, t);
}

std::vector<int> all_elements(int count) {
  std::vector<int> p(count);
  for (int i = 0; i < count; ++i) p[i] = i;
  return p;
}

TEST(TriCell, BasicCases) {
  // strictly inside cell (1,1,1)
  const std::array<Point<3>, 3> inner = {{{1.2, 1.2, 1.5}, {1.8, 1.3, 1.5}, {1.4, 1.8, 1.6}}};
  EXPECT_TRUE(tri_cell_intersects<3>(inner, kUnit3, {1, 1, 1}));
  EXPECT_FALSE(tri_cell_intersects<3>(inner, kUnit3, {2, 1, 1}));
  // touching the cell only at its corner (2,2,2)
  const std::array<Point<3>, 3> corner = {{{2, 2, 2}, {3, 2.5, 2}, {2.5, 3, 2.2}}};
  EXPECT_TRUE(tri_cell_intersects<3>(corner, kUnit3, {1, 1, 1}));
  EXPECT_TRUE(tri_cell_intersects<3>(corner, kUnit3, {2, 2, 2}));
  // large triangle passing through a cell without any vertex in it
  const std::array<Point<3>, 3> big = {{{-1, -1, 1.5}, {9, -1, 1.5}, {-1, 9, 1.5}}};
  EXPECT_TRUE(tri_cell_intersects<3>(big, kUnit3, {2, 2, 1}));
  EXPECT_FALSE(tri_cell_intersects<3>(big, kUnit3, {2, 2, 2}));
  // the plane x + y + z = 3.01 misses cell (0,0,0) by a sliver
  const std::array<Point<3>, 3> slanted = {{{3.01, 0, 0}, {0, 3.01, 0}, {0, 0, 3.01}}};
  EXPECT_FALSE(tri_cell_intersects<3>(slanted, kUnit3, {0, 0, 0}));
  EXPECT_TRUE(tri_cell_intersects<3>(slanted, kUnit3, {1, 1, 0}));
}

TEST(TriCell, PlanarSegments) {
  const std::array<Point<2>, 2> s = {{{0.5, 0.5}, {2.5, 1.5}}};
  EXPECT_TRUE(tri_cell_intersects<2>(s, kUnit2, {0, 0}));
  EXPECT_TRUE(tri_cell_intersects<2>(s, kUnit2, {1, 0}));
  EXPECT_TRUE(tri_cell_intersects<2>(s, kUnit2, {1, 1}));  // through the node (2,1)
  EXPECT_FALSE(tri_cell_intersects<2>(s, kUnit2, {0, 1}));
  const std::array<Point<2>, 2> on_line = {{{1, 0.2}, {1, 0.8}}};
  EXPECT_TRUE(tri_cell_intersects<2>(on_line, kUnit2, {0, 0}));
  EXPECT_TRUE(tri_cell_intersects<2>(on_line, kUnit2, {1, 0}));
}

TEST(TriCell, PlanarAgreesWithRationalReference) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> lattice(-4, 20);
  std::uniform_real_distribution<double> real(-1.0, 5.0);
  const GridSpec<2> g = testing::make_grid<2>({-1, -1}, 0.25, {24, 24});
  int hits = 0;
  for (int it = 0; it < 20000; ++it) {
    std::array<Point<2>, 2> s;
    for (Point<2>& p : s)
      for (double& x : p) x = (it % 2) ? -1 + 0.25 * lattice(rng) : real(rng);
    if (s[0] == s[1]) continue;
    const Index<2> cell = {std::uniform_int_distribution<int>(0, 23)(rng),
                           std::uniform_int_distribution<int>(0, 23)(rng)};
    Index<2> up = cell;
    for (int& c : up) ++c;
    const bool want = rq::segment_box_2d(s[0], s[1], g.node_position(cell), g.node_position(up));
    ASSERT_EQ(tri_cell_intersects<2>(s, g, cell), want) << it;
    hits += want;
  }
  EXPECT_GT(hits, 100);
}

TEST(EdgeCut, TransversalParallelAndCoplanar) {
  const SurfaceMesh<3> s({{0.5, 0.5, 1.5}, {3.5, 0.5, 1.5}, {0.5, 3.5, 1.5}}, {0, 1, 2});
  const std::vector<int> cand = {0};
  EXPECT_TRUE(edge_cut_by_surface<3>(kUnit3, {1, 1, 1}, 2, s, cand));
  EXPECT_FALSE(edge_cut_by_surface<3>(kUnit3, {1, 1, 1}, 0, s, cand));  // parallel, off plane
  EXPECT_FALSE(edge_cut_by_surface<3>(kUnit3, {3, 3, 1}, 2, s, cand));  // misses the triangle
  EXPECT_FALSE(edge_cut_by_surface<3>(kUnit3, {1, 1, 2}, 2, s, cand));
  // an edge lying in the triangle's plane counts as cut
  const SurfaceMesh<3> flat({{0.5, 0.5, 1}, {3.5, 0.5, 1}, {0.5, 3.5, 1}}, {0, 1, 2});
  EXPECT_TRUE(edge_cut_by_surface<3>(kUnit3, {1, 1, 1}, 0, flat, cand));
  // touching at an endpoint counts as cut
  EXPECT_TRUE(edge_cut_by_surface<3>(kUnit3, {1, 1, 0}, 2, flat, cand));
}

TEST(EdgeCut, PlanarAgreesWithRationalReference) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> lattice(-4, 20);
  const GridSpec<2> g = testing::make_grid<2>({-1, -1}, 0.25, {24, 24});
  int hits = 0;
  for (int it = 0; it < 20000; ++it) {
    std::vector<Point<2>> v(2);
    for (Point<2>& p : v)
      for (double& x : p) x = -1 + 0.25 * lattice(rng) + ((it % 3) ? 0.0 : 0.125);
    if (v[0] == v[1]) continue;
    const SurfaceMesh<2> s(v, {0, 1});
    const Index<2> node = {std::uniform_int_distribution<int>(0, 23)(rng),
                           std::uniform_int_distribution<int>(0, 23)(rng)};
    const int axis = it % 2;
    const std::vector<int> cand = {0};
    const bool want = rq::segment_segment_2d(
        g.node_position(node), g.node_position(node + unit_index<2>(axis)), v[0], v[1]);
    ASSERT_EQ(edge_cut_by_surface<2>(g, node, axis, s, cand), want) << it;
    hits += want;
  }
  EXPECT_GT(hits, 100);
}

TEST(Orientation, AgreesWithRationalOnNearDegenerateInput) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> ulps(-3, 3);
  auto nudge = [&](double x) {
    for (int k = ulps(rng); k != 0; k += (k > 0 ? -1 : 1))
      x = std::nextafter(x, k > 0 ? 10.0 : -10.0);
    return x;
  };
  int zeros = 0;
  for (int it = 0; it < 5000; ++it) {
    const Point<2> a = {u(rng), u(rng)}, b = {u(rng), u(rng)};
    const double t = u(rng);
    Point<2> c = {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
    c = {nudge(c[0]), nudge(c[1])};
    const int want = rq::orient2d(a, b, c);
    ASSERT_EQ(exact::orient2d(a, b, c), want);
    zeros += want == 0;

    const Point<3> p = {u(rng), u(rng), u(rng)}, q = {u(rng), u(rng), u(rng)},
                   r = {u(rng), u(rng), u(rng)};
    const double s = u(rng), w = u(rng);
    Point<3> x;
    for (int i = 0; i < 3; ++i) x[i] = nudge(p[i] + s * (q[i] - p[i]) + w * (r[i] - p[i]));
    ASSERT_EQ(exact::orient3d(p, q, r, x), rq::orient3d(p, q, r, x));
  }
  // integer-valued collinear points are exact zeros
  EXPECT_EQ(exact::orient2d({0, 0}, {1, 1}, {3, 3}), 0);
  EXPECT_EQ(exact::orient3d({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 7, 0}), 0);
  EXPECT_GE(zeros, 0);
}

TEST(PlaneSide, SignsAndDegenerate) {
  const std::array<Point<3>, 3> t = {{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}};
  EXPECT_EQ(plane_side_sign<3>({0.2, 0.2, 1}, t), 1);
  EXPECT_EQ(plane_side_sign<3>({0.2, 0.2, -1}, t), -1);
  EXPECT_EQ(plane_side_sign<3>({5, 5, 0}, t), -1);  // on the plane
  const std::array<Point<3>, 3> line = {{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}};
  EXPECT_THROW(plane_side_sign<3>({0, 0, 1}, line), DegenerateElementError);
  // 2D: outward is the right of the directed segment
  const std::array<Point<2>, 2> s = {{{0, 0}, {1, 0}}};
  EXPECT_EQ(plane_side_sign<2>({0.5, -1}, s), 1);
  EXPECT_EQ(plane_side_sign<2>({0.5, 1}, s), -1);
  EXPECT_EQ(plane_side_sign<2>({3, 0}, s), -1);
  const std::array<Point<2>, 2> dot = {{{1, 1}, {1, 1}}};
  EXPECT_THROW(plane_side_sign<2>({0, 0}, dot), DegenerateElementError);
}

TEST(BoundingSubgrid, InteriorPlaneAndOutside) {
  const std::array<Point<3>, 3> inner = {{{1.2, 1.2, 1.5}, {1.8, 1.3, 1.5}, {1.4, 1.8, 1.6}}};
  const CellRange<3> a = bounding_subgrid<3>(inner, kUnit3);
  EXPECT_EQ(a.lo, (Index<3>{1, 1, 1}));
  EXPECT_EQ(a.hi, (Index<3>{1, 1, 1}));
  // x reaching exactly the plane x = 2 picks up the cells on both sides
  const std::array<Point<3>, 3> plane = {{{1.5, 0.5, 0.5}, {2, 0.5, 0.5}, {2, 0.7, 0.6}}};
  const CellRange<3> b = bounding_subgrid<3>(plane, kUnit3);
  EXPECT_EQ(b.lo, (Index<3>{1, 0, 0}));
  EXPECT_EQ(b.hi, (Index<3>{2, 0, 0}));
  EXPECT_EQ(b.size(), 2);
  // a triangle lying in the plane z = 2
  const std::array<Point<3>, 3> flat = {{{0.5, 0.5, 2}, {1.5, 0.5, 2}, {0.5, 1.5, 2}}};
  const CellRange<3> c = bounding_subgrid<3>(flat, kUnit3);
  EXPECT_EQ(c.lo[2], 1);
  EXPECT_EQ(c.hi[2], 2);
  // on the outer grid boundary the range is clamped to existing cells
  const std::array<Point<3>, 3> face = {{{0, 0.5, 0.5}, {0, 1.5, 0.5}, {0, 0.5, 1.5}}};
  EXPECT_EQ(bounding_subgrid<3>(face, kUnit3).lo[0], 0);
  EXPECT_EQ(bounding_subgrid<3>(face, kUnit3).hi[0], 0);
  const std::array<Point<3>, 3> out = {{{3.5, 0.5, 0.5}, {4.5, 0.5, 0.5}, {3.5, 1.5, 0.5}}};
  EXPECT_THROW(bounding_subgrid<3>(out, kUnit3), OutOfGridError);
  const std::array<Point<2>, 2> s = {{{0.5, 1}, {2.5, 1}}};
  const CellRange<2> d = bounding_subgrid<2>(s, kUnit2);
  EXPECT_EQ(d.lo, (Index<2>{0, 0}));
  EXPECT_EQ(d.hi, (Index<2>{2, 1}));
}

TEST(ClosestFacet, FaceEdgeVertex) {
  const SurfaceMesh<3> cube = testing::box({0, 0, 0}, {1, 1, 1});
  const std::vector<int> all = all_elements(cube.element_count());
  EXPECT_EQ(closest_facet<3>(cube, all, {0.3, 0.6, 1.3}).kind, FacetKind::kFace);
  const ClosestFacet<3> e = closest_facet<3>(cube, all, {1.2, 1.2, 0.5});
  EXPECT_EQ(e.kind, FacetKind::kEdge);
  EXPECT_NEAR(e.squared_distance, 0.08, 1e-12);
  const ClosestFacet<3> v = closest_facet<3>(cube, all, {1.2, 1.3, 1.1});
  EXPECT_EQ(v.kind, FacetKind::kVertex);
  EXPECT_EQ(cube.vertices()[v.vertices[0]], (Point<3>{1, 1, 1}));
  // interior point nearest to the face y = 0
  const ClosestFacet<3> c = closest_facet<3>(cube, all, {0.5, 0.3, 0.6});
  EXPECT_EQ(c.kind, FacetKind::kFace);
  EXPECT_NEAR(c.squared_distance, 0.09, 1e-12);

  const SurfaceMesh<2> sq = testing::rectangle({0, 0}, {1, 1});
  const std::vector<int> all2 = all_elements(sq.element_count());
  EXPECT_EQ(closest_facet<2>(sq, all2, {0.5, 1.5}).kind, FacetKind::kFace);
  EXPECT_EQ(closest_facet<2>(sq, all2, {1.5, 1.5}).kind, FacetKind::kVertex);
}

TEST(HornTaylor, CubeConvexEdgeAndCorner) {
  const SurfaceMesh<3> cube = testing::box({0, 0, 0}, {1, 1, 1});
  SigningCounters n;
  EXPECT_EQ(sign_by_patch<3>(cube, {0}, {1.2, 1.2, 0.5}, &n), 1);
  EXPECT_EQ(n.edge.load(), 1);
  EXPECT_EQ(sign_by_patch<3>(cube, {0}, {1.2, 1.3, 1.1}, &n), 1);
  EXPECT_EQ(n.vertex.load(), 1);
  EXPECT_EQ(sign_by_patch<3>(cube, {2, 3}, {0.3, 0.6, 0.9}, &n), -1);
  EXPECT_EQ(sign_by_patch<3>(cube, {2, 3}, {0.3, 0.6, 1.1}, &n), 1);
  EXPECT_EQ(n.face.load(), 2);
}

TEST(HornTaylor, ConcaveEdgeOfLPrism) {
  const SurfaceMesh<3> l = l_prism();
  ASSERT_TRUE(validate_surface(l).ok());
  const std::vector<int> all = all_elements(l.element_count());
  const Point<3> inside = {0.9, 0.9, 0.5};
  const ClosestFacet<3> f = closest_facet<3>(l, all, inside);
  ASSERT_EQ(f.kind, FacetKind::kEdge);
  EXPECT_EQ(horn_taylor_sign<3>(l, f, inside), -1);
  EXPECT_EQ(sign_by_patch<3>(l, all, {1.1, 1.1, 0.5}), 1);
  // the concave corner on the top cap is a vertex case
  EXPECT_EQ(sign_by_patch<3>(l, all, {0.95, 0.95, 0.97}), -1);
  EXPECT_EQ(sign_by_patch<3>(l, all, {0.9, 0.9, 1.2}), 1);
}

TEST(HornTaylor, PlanarConvexAndConcaveVertices) {
  const SurfaceMesh<2> l = testing::polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
  const std::vector<int> all = all_elements(l.element_count());
  SigningCounters n;
  EXPECT_EQ(sign_by_patch<2>(l, all, {2.2, -0.1}, &n), 1);  // convex corner
  EXPECT_EQ(sign_by_patch<2>(l, all, {0.9, 0.9}, &n), -1);  // concave corner, inside
  EXPECT_EQ(n.vertex.load(), 2);
  EXPECT_EQ(sign_by_patch<2>(l, all, {1.1, 1.5}, &n), 1);
  EXPECT_EQ(n.face.load(), 1);
}

TEST(SignByPatch, GrowsFromASingleElement) {
  const SurfaceMesh<3> sphere = testing::icosphere(2);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.3, 1.3);
  for (int it = 0; it < 300; ++it) {
    const Point<3> x = {u(rng), u(rng), u(rng)};
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (std::abs(r - 0.95) < 0.08) continue;  // too close to the faceted surface
    const int seed = it % sphere.element_count();
    EXPECT_EQ(sign_by_patch<3>(sphere, {seed}, x), r < 0.95 ? -1 : 1) << it;
  }
}

}  // namespace
}  // namespace hexembed
