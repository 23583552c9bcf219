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

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "support/shapes.hpp"

namespace hexembed {
namespace {

TEST(Dim, CornerOrderIsLexicographicWithXFastest) {
  EXPECT_EQ(Dim<3>::corner_offset(0), (Index<3>{0, 0, 0}));
  EXPECT_EQ(Dim<3>::corner_offset(1), (Index<3>{1, 0, 0}));
  EXPECT_EQ(Dim<3>::corner_offset(2), (Index<3>{0, 1, 0}));
  EXPECT_EQ(Dim<3>::corner_offset(6), (Index<3>{0, 1, 1}));
  EXPECT_EQ(Dim<2>::corner_offset(3), (Index<2>{1, 1}));
}

TEST(Dim, SideCornersAndStencil) {
  EXPECT_EQ(Dim<3>::side_corners(0), (std::array<int, 4>{0, 2, 4, 6}));
  EXPECT_EQ(Dim<3>::side_corners(5), (std::array<int, 4>{4, 5, 6, 7}));
  EXPECT_EQ(Dim<2>::side_corners(2), (std::array<int, 2>{0, 1}));
  for (int s = 0; s < Dim<3>::kStencil; ++s)
    EXPECT_EQ(Dim<3>::stencil_slot(Dim<3>::stencil_offset(s)), s);
  EXPECT_EQ(Dim<3>::stencil_offset(Dim<3>::kStencilCenter), (Index<3>{0, 0, 0}));
  EXPECT_EQ(Dim<2>::kStencil, 9);
}

TEST(Grid, NodesAndLinearIndices) {
  const GridSpec<3> g = testing::make_grid<3>({-1, 0, 2}, 0.5, {4, 3, 2});
  EXPECT_EQ(g.node_position({2, 1, 1}), (Point<3>{0, 0.5, 2.5}));
  EXPECT_EQ(g.cell_center({0, 0, 0}), (Point<3>{-0.75, 0.25, 2.25}));
  EXPECT_EQ(g.node_count(), 5 * 4 * 3);
  EXPECT_EQ(g.cell_count(), 24);
  for (std::int64_t l = 0; l < g.node_count(); ++l) EXPECT_EQ(g.node_linear(g.node_from_linear(l)), l);
  for (std::int64_t l = 0; l < g.cell_count(); ++l) EXPECT_EQ(g.cell_linear(g.cell_from_linear(l)), l);
  EXPECT_TRUE(g.is_boundary_node({0, 1, 1}));
  EXPECT_FALSE(g.is_boundary_node({1, 1, 1}));
  EXPECT_FALSE(g.has_cell({4, 0, 0}));
  EXPECT_TRUE(g.has_node({4, 3, 2}));
}

TEST(Grid, RejectsBadSpacing) {
  GridSpec<3> g = testing::make_grid<3>({0, 0, 0}, 0.0, {1, 1, 1});
  EXPECT_THROW(g.validate(), Error);
  g.dx = 1;
  g.dims[1] = 0;
  EXPECT_THROW(g.validate(), Error);
}

TEST(Pool, CoincidenceIsByNode) {
  VertexPool<3> pool(testing::make_grid<3>({0, 0, 0}, 0.1, {4, 4, 4}));
  const VertexId a = pool.add({1, 2, 3}), b = pool.add({1, 2, 3}), c = pool.add({1, 2, 2});
  EXPECT_TRUE(pool.coincident(a, b));
  EXPECT_FALSE(pool.coincident(a, c));
  EXPECT_EQ(pool.position(a), pool.grid().node_position({1, 2, 3}));
}

TEST(Sign, Combine) {
  EXPECT_EQ(combine(Sign::kUnset, Sign::kNegative), Sign::kNegative);
  EXPECT_EQ(combine(Sign::kPositive, Sign::kPositive), Sign::kPositive);
  EXPECT_EQ(combine(Sign::kPositive, Sign::kNegative), Sign::kConflict);
  EXPECT_EQ(combine(Sign::kConflict, Sign::kNegative), Sign::kConflict);
}

TEST(ValidateSurface, ClosedCube) {
  EXPECT_TRUE(validate_surface(testing::box({0, 0, 0}, {1, 1, 1})).ok());
  EXPECT_TRUE(validate_surface(testing::icosphere(2)).ok());
  EXPECT_TRUE(validate_surface(testing::circle(12, 1)).ok());
}

TEST(ValidateSurface, MissingTriangleLeavesThreeOpenEdges) {
  const SurfaceMesh<3> cube = testing::box({0, 0, 0}, {1, 1, 1});
  std::vector<int> e(cube.elements().begin() + 3, cube.elements().end());
  const ValidationReport r = validate_surface(SurfaceMesh<3>(cube.vertices(), e));
  ASSERT_EQ(r.defects.size(), 3u);
  for (const RidgeDefect& d : r.defects) {
    EXPECT_EQ(d.kind, SurfaceDefect::kNonClosed);
    EXPECT_EQ(d.uses, 1);
  }
}

TEST(ValidateSurface, SameEdgeDirectionIsInconsistent) {
  // Two triangles over edge 0-1, both traversing it from 0 to 1.
  const SurfaceMesh<3> s({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}}, {0, 1, 2, 0, 1, 3});
  const ValidationReport r = validate_surface(s);
  const auto it = std::find_if(r.defects.begin(), r.defects.end(), [](const RidgeDefect& d) {
    return d.ridge == std::array<int, 2>{0, 1};
  });
  ASSERT_NE(it, r.defects.end());
  EXPECT_EQ(it->kind, SurfaceDefect::kInconsistentOrientation);
}

TEST(ValidateSurface, OpenPolyline) {
  const SurfaceMesh<2> s({{0, 0}, {1, 0}, {1, 1}}, {0, 1, 1, 2});
  EXPECT_EQ(validate_surface(s).defects.size(), 2u);
}

// Two quad meshes over one shared cell: vertices 2, 3, 4, 5 of the first
// are adjacent to 9, 10, 12, 13 of the second. Entries 6, 7, 8, 11 are
// never used.
struct MergeFixture {
  VertexPool<2> pool{testing::make_grid<2>({0, 0}, 1.0, {4, 2})};
  HexMesh<2> a, b;
  MergeGraph graph;

  MergeFixture() {
    const Index<2> nodes[16] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}, {0, 0}, {0, 0},
                                {0, 0}, {1, 0}, {1, 1}, {0, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1}};
    for (const Index<2>& n : nodes) pool.add(n);
    a.add({0, 2, 1, 3}, {0, 0});
    a.add({2, 4, 3, 5}, {1, 0});
    b.add({9, 12, 10, 13}, {1, 0});
    b.add({12, 14, 13, 15}, {2, 0});
    graph.add(2, 9);
    graph.add(3, 10);
    graph.add(4, 12);
    graph.add(5, 13);
  }
};

TEST(MergeVertices, SharedEdgesDropDuplicateHex) {
  MergeFixture f;
  HexMesh<2> all = f.a;
  all.append(f.b);
  merge_vertices<2>(f.pool, all, f.graph);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(f.pool.size(), 8u);
  EXPECT_EQ(all.corners(0), (HexMesh<2>::Tuple{0, 2, 1, 3}));
  EXPECT_EQ(all.corners(1), (HexMesh<2>::Tuple{2, 4, 3, 5}));
  EXPECT_EQ(all.corners(2), (HexMesh<2>::Tuple{4, 6, 5, 7}));
  EXPECT_EQ(count_hex_components(all), 1);
}

TEST(MergeVertices, SeparateMeshesShareThePool) {
  MergeFixture f;
  HexMesh<2>* meshes[] = {&f.a, &f.b};
  merge_vertices<2>(f.pool, meshes, f.graph);
  EXPECT_EQ(f.a.corners(1), f.b.corners(0));  // duplicates across meshes stay
  EXPECT_EQ(f.pool.size(), 8u);
}

TEST(MergeVertices, EmptyGraphOnlyCompacts) {
  MergeFixture f;
  HexMesh<2> all = f.a;
  all.append(f.b);
  merge_vertices<2>(f.pool, all, MergeGraph{});
  EXPECT_EQ(all.size(), 4u);
  EXPECT_EQ(f.pool.size(), 12u);
  std::set<VertexId> used(all.ids().begin(), all.ids().end());
  EXPECT_EQ(used.size(), 12u);
  EXPECT_EQ(*used.rbegin(), 11u);
}

TEST(MergeVertices, RejectsNonCoincidentPairs) {
  MergeFixture f;
  MergeGraph g;
  g.add(0, 2);
  HexMesh<2> all = f.a;
  EXPECT_THROW(merge_vertices<2>(f.pool, all, g), CoincidenceViolation);
}

TEST(MergeVertices, SignsCombineOnMerge) {
  VertexPool<2> pool(testing::make_grid<2>({0, 0}, 1.0, {2, 2}));
  pool.add({1, 1}, Sign::kNegative);
  pool.add({1, 1}, Sign::kPositive);
  pool.add({1, 1}, Sign::kUnset, true);
  HexMesh<2> m;
  m.add({0, 1, 2, 0}, {0, 0});
  MergeGraph g;
  g.add(1, 0);
  g.add(2, 1);
  merge_vertices<2>(pool, m, g);
  ASSERT_EQ(pool.size(), 1u);
  EXPECT_EQ(pool[0].sign, Sign::kConflict);
  EXPECT_TRUE(pool[0].interior);
}

// Reference: plain union-find with the minimum as root, then the same
// rewrite, dedupe and compaction written out directly.
HexMesh<3> reference_merge(std::vector<PoolEntry<3>> entries, HexMesh<3> mesh,
                           const std::vector<std::pair<VertexId, VertexId>>& edges,
                           std::size_t* pool_size) {
  std::vector<VertexId> parent(entries.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<VertexId(VertexId)> find = [&](VertexId x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& [a, b] : edges) {
    const VertexId ra = find(a), rb = find(b);
    parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  HexMesh<3> out;
  std::set<HexMesh<3>::Tuple> seen;
  for (std::size_t h = 0; h < mesh.size(); ++h) {
    HexMesh<3>::Tuple t = mesh.corners(h);
    for (VertexId& v : t) v = find(v);
    if (seen.insert(t).second) out.add(t, mesh.cell(h));
  }
  std::map<VertexId, VertexId> remap;
  for (VertexId v : out.ids()) remap[v] = 0;
  VertexId next = 0;
  for (auto& [v, n] : remap) n = next++;
  for (VertexId& v : out.ids()) v = remap[v];
  *pool_size = remap.size();
  return out;
}

TEST(MergeVertices, MatchesUnionFindAndIgnoresEdgeOrder) {
  std::mt19937 rng(5);
  for (int round = 0; round < 20; ++round) {
    const GridSpec<3> grid = testing::make_grid<3>({0, 0, 0}, 1.0, {3, 3, 3});
    VertexPool<3> pool(grid);
    HexMesh<3> mesh;
    // Random hexes over a few cells, each with fresh vertices.
    const int hexes = 6 + static_cast<int>(rng() % 10);
    for (int h = 0; h < hexes; ++h) {
      const Index<3> cell = {static_cast<int>(rng() % 2), static_cast<int>(rng() % 2),
                             static_cast<int>(rng() % 2)};
      HexMesh<3>::Tuple t;
      for (int k = 0; k < 8; ++k) t[k] = pool.add(cell + Dim<3>::corner_offset(k));
      mesh.add(t, cell);
    }
    std::map<Index<3>, std::vector<VertexId>> by_node;
    for (VertexId v = 0; v < pool.size(); ++v) by_node[pool[v].node].push_back(v);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& [node, ids] : by_node)
      for (std::size_t i = 0; i + 1 < ids.size(); ++i)
        if (rng() % 3 != 0) edges.emplace_back(ids[i], ids[i + 1 + rng() % (ids.size() - i - 1)]);
    std::size_t ref_size = 0;
    const HexMesh<3> expected = reference_merge(pool.entries(), mesh, edges, &ref_size);
    for (int order = 0; order < 2; ++order) {
      std::vector<std::pair<VertexId, VertexId>> e = edges;
      if (order == 1) {
        std::shuffle(e.begin(), e.end(), rng);
        for (auto& p : e)
          if (rng() % 2) std::swap(p.first, p.second);
      }
      MergeGraph g;
      for (const auto& [a, b] : e) g.add(a, b);
      VertexPool<3> p = pool;
      HexMesh<3> m = mesh;
      merge_vertices<3>(p, m, g);
      EXPECT_EQ(m, expected) << "round " << round << " order " << order;
      EXPECT_EQ(p.size(), ref_size);
      for (VertexId v : m.ids()) EXPECT_LT(v, p.size());
      // Idempotent: without compaction ids stay valid, so the same graph
      // can be applied a second time.
      VertexPool<3> p2 = pool;
      HexMesh<3> once = mesh;
      merge_vertices<3>(p2, once, g, false);
      HexMesh<3> twice = once;
      merge_vertices<3>(p2, twice, g, false);
      EXPECT_EQ(once, twice);
    }
  }
}

TEST(Components, SingleAndDuplicatedCells) {
  VertexPool<3> pool(testing::make_grid<3>({0, 0, 0}, 1.0, {2, 2, 2}));
  HexMesh<3> m;
  HexMesh<3>::Tuple t;
  for (int k = 0; k < 8; ++k) t[k] = pool.add(Dim<3>::corner_offset(k));
  m.add(t, {0, 0, 0});
  EXPECT_EQ(count_hex_components(m), 1);
  for (int k = 0; k < 8; ++k) t[k] = pool.add(Dim<3>::corner_offset(k));
  m.add(t, {0, 0, 0});
  int count = 0;
  const std::vector<int> labels = hex_connected_components(m, &count);
  EXPECT_EQ(count, 2);
  EXPECT_EQ(labels, (std::vector<int>{0, 1}));
  const auto [c, cp] = extract_component(m, pool, labels, 1);
  EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(cp.size(), 8u);
}

TEST(CanonicalForm, IgnoresNumberingAndOrder) {
  const GridSpec<3> grid = testing::make_grid<3>({0, 0, 0}, 0.25, {12, 12, 12});
  auto [m, p] = floodfill_embed<3>(testing::box({0.6, 0.6, 0.6}, {2.1, 2.1, 1.4}), grid);
  // Renumber vertices in reverse and reverse the hex order.
  VertexPool<3> rp(grid);
  for (VertexId v = p.size(); v-- > 0;) rp.entries().push_back(p[v]);
  HexMesh<3> rm;
  for (std::size_t h = m.size(); h-- > 0;) {
    HexMesh<3>::Tuple t = m.corners(h);
    for (VertexId& v : t) v = static_cast<VertexId>(p.size() - 1 - v);
    rm.add(t, m.cell(h));
  }
  EXPECT_EQ(canonical_form(m, p), canonical_form(rm, rp));
  rm.filter([&](std::size_t h) { return h != 0; });
  EXPECT_NE(canonical_form(m, p), canonical_form(rm, rp));
}

}  // namespace
}  // namespace hexembed
