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

// Coarsening by doubling the grid spacing while keeping duplicated material
// apart: coarse hexes are only sewn where their fine hexes share a face.

#pragma once

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "hexembed/merge.hpp"

namespace hexembed {

template <int D>
struct CoarseMesh {
  GridSpec<D> grid;
  VertexPool<D> pool;
  HexMesh<D> mesh;
};

/// Grid with doubled spacing over the same origin; odd dims round up.
template <int D>
GridSpec<D> coarse_grid(const GridSpec<D>& fine) {
  GridSpec<D> g = fine;
  g.dx = 2 * fine.dx;
  for (int a = 0; a < D; ++a) g.dims[a] = (fine.dims[a] + 1) / 2;
  return g;
}

template <int D>
Index<D> coarse_cell(const Index<D>& fine_cell) {
  Index<D> c;
  for (int a = 0; a < D; ++a) c[a] = fine_cell[a] >> 1;
  return c;
}

/// One level of coarsening. Each fine hex first gets its own coarse hex on
/// the coarse cell containing it. For every pair of fine hexes sharing a
/// face, the coarse hexes are sewn: completely when they sit in one coarse
/// cell on different fine cells, otherwise across one face only.
template <int D>
CoarseMesh<D> coarsen_once(const HexMesh<D>& mesh, const GridSpec<D>& grid) {
  constexpr int kC = Dim<D>::kCorners;
  constexpr int kF = Dim<D>::kSideCorners;
  CoarseMesh<D> out;
  out.grid = coarse_grid(grid);
  out.pool = VertexPool<D>(out.grid);
  out.pool.reserve(mesh.size() * kC);
  for (std::size_t h = 0; h < mesh.size(); ++h) {
    const Index<D> cc = coarse_cell<D>(mesh.cell(h));
    typename HexMesh<D>::Tuple t;
    for (int k = 0; k < kC; ++k) t[k] = out.pool.add(cc + Dim<D>::corner_offset(k));
    out.mesh.add(t, cc);
  }
  // Shared fine faces, keyed by their sorted vertex ids.
  using FaceKey = std::array<VertexId, kF>;
  std::unordered_map<FaceKey, std::vector<std::pair<std::uint32_t, int>>, ArrayHash> faces;
  for (std::size_t h = 0; h < mesh.size(); ++h)
    for (int s = 0; s < Dim<D>::kSides; ++s) {
      FaceKey key;
      const auto sc = Dim<D>::side_corners(s);
      for (int i = 0; i < kF; ++i) key[i] = mesh.corner(h, sc[i]);
      std::sort(key.begin(), key.end());
      faces[key].emplace_back(static_cast<std::uint32_t>(h), s);
    }
  MergeGraph graph;
  // Deterministic order: visit faces by their lowest incident (hex, side).
  std::vector<const std::vector<std::pair<std::uint32_t, int>>*> shared;
  for (const auto& [key, inc] : faces)
    if (inc.size() > 1) shared.push_back(&inc);
  std::sort(shared.begin(), shared.end(), [](auto* a, auto* b) { return a->front() < b->front(); });
  auto corner = [&](std::uint32_t h, int k) { return out.mesh.corner(h, k); };
  for (const auto* inc : shared) {
    for (std::size_t i = 0; i < inc->size(); ++i)
      for (std::size_t j = i + 1; j < inc->size(); ++j) {
        const auto [h0, s0] = (*inc)[i];
        const auto [h1, s1] = (*inc)[j];
        const Index<D>& f0 = mesh.cell(h0);
        const Index<D>& f1 = mesh.cell(h1);
        const bool same_coarse = coarse_cell<D>(f0) == coarse_cell<D>(f1);
        if (same_coarse && f0 != f1) {
          for (int k = 0; k < kC; ++k) graph.add(corner(h0, k), corner(h1, k));
        } else if (f0 == f1) {
          // Coincident fine hexes: the analogous coarse side.
          for (int k : Dim<D>::side_corners(s0)) graph.add(corner(h0, k), corner(h1, k));
        } else {
          // The fine face lies on the coarse face between the two coarse
          // cells; pair its corners by position.
          const Index<D> c0 = out.mesh.cell(h0), c1 = out.mesh.cell(h1);
          for (int k : Dim<D>::side_corners(s0)) {
            const Index<D> node = c0 + Dim<D>::corner_offset(k);
            for (int k1 : Dim<D>::side_corners(s1))
              if (c1 + Dim<D>::corner_offset(k1) == node) graph.add(corner(h0, k), corner(h1, k1));
          }
        }
      }
  }
  merge_vertices<D>(out.pool, out.mesh, graph);
  return out;
}

/// `levels` rounds of coarsen_once; levels == 0 copies the input.
template <int D>
CoarseMesh<D> coarsen(const HexMesh<D>& mesh, const VertexPool<D>& pool, int levels) {
  CoarseMesh<D> cur{pool.grid(), pool, mesh};
  for (int l = 0; l < levels; ++l) cur = coarsen_once<D>(cur.mesh, cur.grid);
  return cur;
}

}  // namespace hexembed
