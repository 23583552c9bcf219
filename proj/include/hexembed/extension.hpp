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

// Volumetric extension: the hexes of the cells each surface element
// touches, sewn together following the surface topology, with an
// inside/outside sign on every vertex.

#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "hexembed/geometry.hpp"
#include "hexembed/merge.hpp"
#include "hexembed/parallel.hpp"

namespace hexembed {

namespace detail {

/// A precursor over its own local vertex numbering.
template <int D>
struct LocalPrecursor {
  HexMesh<D> mesh;
  std::vector<PoolEntry<D>> entries;
};

template <int D>
LocalPrecursor<D> build_local_precursor(int e, const SurfaceMesh<D>& surface,
                                        const GridSpec<D>& grid) {
  constexpr int kC = Dim<D>::kCorners;
  const auto pts = surface.element_points(e);
  const CellRange<D> range = bounding_subgrid<D>(pts, grid);
  const bool degenerate = predicates::element_degenerate<D>(pts);
  // Dense node -> local id table over the subgrid's nodes.
  Index<D> extent;
  std::size_t total = 1;
  for (int a = 0; a < D; ++a) {
    extent[a] = range.hi[a] - range.lo[a] + 2;
    total *= static_cast<std::size_t>(extent[a]);
  }
  std::vector<VertexId> local(total, kNoVertex);
  auto slot = [&](const Index<D>& node) {
    std::size_t s = 0, stride = 1;
    for (int a = 0; a < D; ++a) {
      s += static_cast<std::size_t>(node[a] - range.lo[a]) * stride;
      stride *= static_cast<std::size_t>(extent[a]);
    }
    return s;
  };
  LocalPrecursor<D> out;
  range.for_each([&](const Index<D>& cell) {
    if (!predicates::element_cell_intersects<D>(pts, grid, cell)) return;
    typename HexMesh<D>::Tuple t;
    for (int k = 0; k < kC; ++k) {
      const Index<D> node = cell + Dim<D>::corner_offset(k);
      VertexId& id = local[slot(node)];
      if (id == kNoVertex) {
        id = static_cast<VertexId>(out.entries.size());
        Sign s = Sign::kUnset;
        if (!degenerate)
          s = plane_side_sign<D>(grid.node_position(node), pts) > 0 ? Sign::kPositive
                                                                    : Sign::kNegative;
        out.entries.push_back({node, s, false});
      }
      t[k] = id;
    }
    out.mesh.add(t, cell);
  });
  return out;
}

}  // namespace detail

/// Builds the precursor of element e: one hex per grid cell the element
/// touches, over fresh pool entries shared only inside this precursor.
/// Vertex signs come from the side of the element's plane.
template <int D>
HexMesh<D> build_precursor(int e, const SurfaceMesh<D>& surface, const GridSpec<D>& grid,
                           VertexPool<D>& pool) {
  detail::LocalPrecursor<D> local = detail::build_local_precursor<D>(e, surface, grid);
  const VertexId base = static_cast<VertexId>(pool.size());
  for (const PoolEntry<D>& entry : local.entries) pool.add(entry.node, entry.sign);
  for (VertexId& id : local.mesh.ids()) id += base;
  return std::move(local.mesh);
}

/// Every element's precursor over one pool, plus the creating element of
/// each pool entry.
template <int D>
struct PrecursorSet {
  std::vector<HexMesh<D>> precursors;  // indexed by element id
  std::vector<int> provenance;         // indexed by pool id
};

/// Builds all precursors in parallel. Pool segments are appended in element
/// order, so the result does not depend on the thread count.
template <int D>
PrecursorSet<D> build_precursors(const SurfaceMesh<D>& surface, const GridSpec<D>& grid,
                                 VertexPool<D>& pool, int threads = 1) {
  const int n = surface.element_count();
  std::vector<detail::LocalPrecursor<D>> local(n);
  parallel_for(n, threads, [&](std::size_t e) {
    local[e] = detail::build_local_precursor<D>(static_cast<int>(e), surface, grid);
  });
  PrecursorSet<D> set;
  set.precursors.resize(n);
  set.provenance.assign(pool.size(), -1);
  for (int e = 0; e < n; ++e) {
    const VertexId base = static_cast<VertexId>(pool.size());
    for (const PoolEntry<D>& entry : local[e].entries) {
      pool.entries().push_back(entry);
      set.provenance.push_back(e);
    }
    for (VertexId& id : local[e].mesh.ids()) id += base;
    set.precursors[e] = std::move(local[e].mesh);
  }
  return set;
}

template <int D>
struct VolumetricExtension {
  HexMesh<D> mesh;
  /// Per pool vertex of the extension: the sorted elements whose precursors
  /// contributed to it. These seed the local signing patch.
  std::vector<std::vector<int>> contributors;
  /// Vertices whose merged contributors disagreed on (or lacked) a sign.
  std::vector<VertexId> conflicted;
};

/// Pairs of elements sharing at least one surface vertex, ascending.
template <int D>
std::vector<std::pair<int, int>> vertex_sharing_pairs(const SurfaceMesh<D>& surface) {
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v < surface.vertex_count(); ++v) {
    const std::vector<int> inc = surface.incident_elements(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j) pairs.emplace_back(inc[i], inc[j]);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

/// Merges precursors of elements that share a surface vertex: coincident
/// hexes of the two precursors have their corresponding corners joined.
/// The pool must hold exactly the precursor vertices; it is compacted and
/// afterwards holds exactly the extension's vertices.
template <int D>
VolumetricExtension<D> merge_surface_precursors(PrecursorSet<D> set,
                                                const SurfaceMesh<D>& surface,
                                                VertexPool<D>& pool) {
  constexpr int kC = Dim<D>::kCorners;
  const GridSpec<D>& grid = pool.grid();
  // Per precursor: (cell linear index, hex) sorted, for coincidence joins.
  std::vector<std::vector<std::pair<std::int64_t, std::uint32_t>>> cells(set.precursors.size());
  for (std::size_t e = 0; e < set.precursors.size(); ++e) {
    const HexMesh<D>& p = set.precursors[e];
    cells[e].reserve(p.size());
    for (std::size_t h = 0; h < p.size(); ++h)
      cells[e].emplace_back(grid.cell_linear(p.cell(h)), static_cast<std::uint32_t>(h));
    std::sort(cells[e].begin(), cells[e].end());
  }
  MergeGraph graph;
  for (const auto& [e0, e1] : vertex_sharing_pairs(surface)) {
    const auto& c0 = cells[e0];
    const auto& c1 = cells[e1];
    std::size_t i = 0, j = 0;
    while (i < c0.size() && j < c1.size()) {
      if (c0[i].first < c1[j].first) {
        ++i;
      } else if (c1[j].first < c0[i].first) {
        ++j;
      } else {
        for (int k = 0; k < kC; ++k)
          graph.add(set.precursors[e0].corner(c0[i].second, k),
                    set.precursors[e1].corner(c1[j].second, k));
        ++i;
        ++j;
      }
    }
  }
  VolumetricExtension<D> ext;
  for (const HexMesh<D>& p : set.precursors) ext.mesh.append(p);
  set.precursors.clear();
  const MergeResult merged = merge_vertices<D>(pool, ext.mesh, graph);
  ext.contributors.assign(pool.size(), {});
  for (std::size_t old = 0; old < set.provenance.size(); ++old) {
    const VertexId id = merged.final_id(static_cast<VertexId>(old));
    if (id != kNoVertex) ext.contributors[id].push_back(set.provenance[old]);
  }
  for (VertexId v = 0; v < pool.size(); ++v) {
    auto& c = ext.contributors[v];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (pool[v].sign == Sign::kConflict || pool[v].sign == Sign::kUnset)
      ext.conflicted.push_back(v);
  }
  return ext;
}

/// Re-signs every conflicted vertex from its closest facet on the patch of
/// contributing elements, growing the patch as needed.
template <int D>
void resolve_sign_conflicts(VolumetricExtension<D>& ext, const SurfaceMesh<D>& surface,
                            VertexPool<D>& pool, int threads = 1,
                            SigningCounters* counters = nullptr) {
  std::vector<Sign> signs(ext.conflicted.size());
  parallel_for(ext.conflicted.size(), threads, [&](std::size_t i) {
    const VertexId v = ext.conflicted[i];
    const int s = sign_by_patch<D>(surface, ext.contributors[v], pool.position(v), counters);
    signs[i] = s > 0 ? Sign::kPositive : Sign::kNegative;
  });
  for (std::size_t i = 0; i < signs.size(); ++i) pool[ext.conflicted[i]].sign = signs[i];
  ext.conflicted.clear();
}

/// The whole extension stage on an empty pool.
template <int D>
VolumetricExtension<D> build_volumetric_extension(const SurfaceMesh<D>& surface,
                                                  VertexPool<D>& pool, int threads = 1,
                                                  SigningCounters* counters = nullptr) {
  PrecursorSet<D> set = build_precursors<D>(surface, pool.grid(), pool, threads);
  VolumetricExtension<D> ext = merge_surface_precursors<D>(std::move(set), surface, pool);
  resolve_sign_conflicts<D>(ext, surface, pool, threads, counters);
  return ext;
}

}  // namespace hexembed
