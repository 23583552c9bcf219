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

// Interior regions: grid nodes grouped by connectivity through edges the
// surface does not cut, their classification, how many copies each needs,
// and the hex mesh of one copy.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "hexembed/extension.hpp"

namespace hexembed {

template <int D>
struct RegionPartition {
  GridSpec<D> grid;
  /// Per node (linear index): bit a set when the edge to node + e_a is cut.
  std::vector<std::uint8_t> cut;
  /// Per node: region label.
  std::vector<int> label;
  /// Per node: position in its region's node list.
  std::vector<int> position;
  /// Per region: node linear indices, ascending.
  std::vector<std::vector<std::int64_t>> nodes;
  std::vector<bool> interior;
  std::vector<bool> touches_boundary;

  int region_count() const { return static_cast<int>(nodes.size()); }
  int interior_count() const {
    return static_cast<int>(std::count(interior.begin(), interior.end(), true));
  }
  bool edge_cut(const Index<D>& node, int axis) const {
    return (cut[grid.node_linear(node)] >> axis) & 1;
  }
};

/// Marks every grid edge that touches the closed surface. Only the edges of
/// each element's bounding subgrid are tested.
template <int D>
std::vector<std::uint8_t> compute_cut_edges(const GridSpec<D>& grid,
                                            const SurfaceMesh<D>& surface, int threads = 1) {
  const std::size_t n = static_cast<std::size_t>(surface.element_count());
  std::vector<std::vector<std::pair<std::int64_t, int>>> found(chunk_count(n, threads));
  parallel_chunks(n, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    for (std::size_t e = begin; e < end; ++e) {
      const auto pts = surface.element_points(static_cast<int>(e));
      const CellRange<D> cells = bounding_subgrid<D>(pts, grid);
      for (int axis = 0; axis < D; ++axis) {
        // Edges along `axis` start at nodes lo..hi on that axis and at
        // nodes lo..hi+1 on the others.
        CellRange<D> starts = cells;
        for (int b = 0; b < D; ++b)
          if (b != axis) ++starts.hi[b];
        starts.for_each([&](const Index<D>& node) {
          const Point<D> p = grid.node_position(node);
          const Point<D> q = grid.node_position(node + unit_index<D>(axis));
          if (predicates::segment_cuts_element<D>(p, q, pts))
            found[chunk].emplace_back(grid.node_linear(node), axis);
        });
      }
    }
  });
  std::vector<std::uint8_t> cut(static_cast<std::size_t>(grid.node_count()), 0);
  for (const auto& list : found)
    for (const auto& [node, axis] : list) cut[node] |= static_cast<std::uint8_t>(1u << axis);
  return cut;
}

/// Groups grid nodes into regions by depth-first search over uncut edges.
/// A region is interior when one of its nodes carries a negative extension
/// vertex; regions reaching the grid boundary are always exterior.
/// `pool` must hold the extension vertices (ids below `extension_vertices`).
template <int D>
RegionPartition<D> partition_grid_nodes(const GridSpec<D>& grid, const SurfaceMesh<D>& surface,
                                        const VertexPool<D>& pool,
                                        std::size_t extension_vertices, int threads = 1) {
  RegionPartition<D> part;
  part.grid = grid;
  part.cut = compute_cut_edges<D>(grid, surface, threads);
  const std::int64_t count = grid.node_count();
  const Index<D> nd = grid.node_dims();
  std::int64_t stride[D];
  stride[0] = 1;
  for (int a = 1; a < D; ++a) stride[a] = stride[a - 1] * nd[a - 1];
  part.label.assign(static_cast<std::size_t>(count), -1);
  part.position.assign(static_cast<std::size_t>(count), -1);
  std::vector<std::int64_t> stack;
  for (std::int64_t start = 0; start < count; ++start) {
    if (part.label[start] >= 0) continue;
    const int r = static_cast<int>(part.nodes.size());
    part.nodes.emplace_back();
    bool boundary = false;
    part.label[start] = r;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::int64_t u = stack.back();
      stack.pop_back();
      part.nodes[r].push_back(u);
      const Index<D> node = grid.node_from_linear(u);
      boundary = boundary || grid.is_boundary_node(node);
      for (int a = 0; a < D; ++a) {
        if (node[a] + 1 < nd[a] && !((part.cut[u] >> a) & 1)) {
          const std::int64_t w = u + stride[a];
          if (part.label[w] < 0) part.label[w] = r, stack.push_back(w);
        }
        if (node[a] > 0 && !((part.cut[u - stride[a]] >> a) & 1)) {
          const std::int64_t w = u - stride[a];
          if (part.label[w] < 0) part.label[w] = r, stack.push_back(w);
        }
      }
    }
    std::sort(part.nodes[r].begin(), part.nodes[r].end());
    for (std::size_t i = 0; i < part.nodes[r].size(); ++i)
      part.position[part.nodes[r][i]] = static_cast<int>(i);
    part.touches_boundary.push_back(boundary);
  }
  part.interior.assign(part.nodes.size(), false);
  for (VertexId v = 0; v < extension_vertices; ++v) {
    if (pool[v].sign != Sign::kNegative) continue;
    const int r = part.label[grid.node_linear(pool[v].node)];
    if (!part.touches_boundary[r]) part.interior[r] = true;
  }
  return part;
}

/// Per region: its copies, each given by the negative extension vertices it
/// is seeded from. Exterior regions get no copies. When no node of a region
/// holds more than one negative vertex the region gets a single copy seeded
/// by all of them; otherwise one copy per connected component of negative
/// vertices, two being adjacent when they share an extension hex.
template <int D>
std::vector<std::vector<std::vector<VertexId>>> count_copies(const RegionPartition<D>& part,
                                                             const HexMesh<D>& extension,
                                                             const VertexPool<D>& pool,
                                                             std::size_t extension_vertices) {
  constexpr int kC = Dim<D>::kCorners;
  const GridSpec<D>& grid = part.grid;
  auto region_of = [&](VertexId v) { return part.label[grid.node_linear(pool[v].node)]; };
  auto seeds = [&](VertexId v) {
    return v < extension_vertices && pool[v].sign == Sign::kNegative && part.interior[region_of(v)];
  };
  std::vector<VertexId> parent(extension_vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t h = 0; h < extension.size(); ++h) {
    VertexId first = kNoVertex;
    for (int k = 0; k < kC; ++k) {
      const VertexId v = extension.corner(h, k);
      if (!seeds(v)) continue;
      if (first == kNoVertex) {
        first = v;
        continue;
      }
      if (region_of(v) != region_of(first)) continue;
      const VertexId a = find(first), b = find(v);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<std::vector<VertexId>>> out(part.nodes.size());
  std::vector<bool> multiple(part.nodes.size(), false);
  std::unordered_map<std::int64_t, int> per_node;
  for (VertexId v = 0; v < extension_vertices; ++v) {
    if (!seeds(v)) continue;
    const std::int64_t node = grid.node_linear(pool[v].node);
    if (++per_node[node] > 1) multiple[part.label[node]] = true;
  }
  std::vector<std::unordered_map<VertexId, int>> comp_of_root(part.nodes.size());
  for (VertexId v = 0; v < extension_vertices; ++v) {
    if (!seeds(v)) continue;
    const int r = region_of(v);
    if (!multiple[r]) {
      if (out[r].empty()) out[r].emplace_back();
      out[r][0].push_back(v);
      continue;
    }
    // Components are numbered by their lowest vertex, which is visited first.
    auto [it, inserted] = comp_of_root[r].emplace(find(v), static_cast<int>(out[r].size()));
    if (inserted) out[r].emplace_back();
    out[r][it->second].push_back(v);
  }
  return out;
}

/// Hex mesh of copy 0 of a region over its own local pool. Every region
/// node contributes the hexes of its incident cells over fresh copies of
/// its stencil nodes; stencils of region neighbors joined by an uncut edge
/// are merged. Vertices merged with a stencil center carry the interior flag.
template <int D>
std::pair<HexMesh<D>, VertexPool<D>> build_region_mesh(int region,
                                                      const RegionPartition<D>& part) {
  constexpr int kC = Dim<D>::kCorners;
  constexpr int kS = Dim<D>::kStencil;
  const GridSpec<D>& grid = part.grid;
  const auto& nodes = part.nodes[region];
  VertexPool<D> pool(grid);
  HexMesh<D> mesh;
  pool.reserve(nodes.size() * kS);
  for (std::int64_t linear : nodes) {
    const Index<D> n = grid.node_from_linear(linear);
    if (grid.is_boundary_node(n))
      throw OutOfGridError("interior region reaches the grid boundary; increase padding");
    const VertexId base = static_cast<VertexId>(pool.size());
    for (int s = 0; s < kS; ++s)
      pool.add(n + Dim<D>::stencil_offset(s), Sign::kUnset, s == Dim<D>::kStencilCenter);
    for (int d = 0; d < kC; ++d) {
      const Index<D> back = Dim<D>::corner_offset(d);
      typename HexMesh<D>::Tuple t;
      for (int k = 0; k < kC; ++k)
        t[k] = base + Dim<D>::stencil_slot(Dim<D>::corner_offset(k) - back);
      mesh.add(t, n - back);
    }
  }
  MergeGraph graph;
  graph.reserve(nodes.size() * D * (kS / 3));
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    const Index<D> n = grid.node_from_linear(nodes[r]);
    for (int a = 0; a < D; ++a) {
      if (part.edge_cut(n, a)) continue;
      const std::int64_t m = grid.node_linear(n + unit_index<D>(a));
      if (part.label[m] != region) continue;
      const VertexId base_n = static_cast<VertexId>(r * kS);
      const VertexId base_m = static_cast<VertexId>(part.position[m]) * kS;
      for (int s = 0; s < kS; ++s) {
        const Index<D> o = Dim<D>::stencil_offset(s);
        if (o[a] < 0) continue;
        graph.add(base_n + s, base_m + Dim<D>::stencil_slot(o - unit_index<D>(a)));
      }
    }
  }
  merge_vertices<D>(pool, mesh, graph);
  return {std::move(mesh), std::move(pool)};
}

/// Copy of `mesh` over fresh entries appended to `pool`, flags included.
template <int D>
HexMesh<D> duplicate_region_mesh(const HexMesh<D>& mesh, VertexPool<D>& pool) {
  std::vector<VertexId> ids(mesh.ids().begin(), mesh.ids().end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::unordered_map<VertexId, VertexId> fresh;
  fresh.reserve(ids.size());
  for (VertexId v : ids) {
    const PoolEntry<D> e = pool[v];
    fresh.emplace(v, pool.add(e.node, e.sign, e.interior));
  }
  HexMesh<D> out = mesh;
  for (VertexId& v : out.ids()) v = fresh.at(v);
  return out;
}

}  // namespace hexembed
