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

// Sewing region copies to the volumetric extension and to each other.

#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hexembed/regions.hpp"

namespace hexembed {

template <int D>
struct RegionCopy {
  int region = -1;
  int copy = 0;
  HexMesh<D> mesh;
  /// Negative extension vertices this copy is seeded from.
  std::vector<VertexId> seeds;
  bool alive = true;
};

/// Everything that indexes the shared pool between region creation and the
/// final merge. Extension vertices occupy pool ids below
/// `extension_vertices`; region copy vertices come after them.
template <int D>
struct Embedding {
  VertexPool<D> pool;
  HexMesh<D> extension;
  std::size_t extension_vertices = 0;
  std::vector<RegionCopy<D>> copies;
  int dedup_events = 0;

  std::vector<HexMesh<D>*> meshes() {
    std::vector<HexMesh<D>*> out{&extension};
    for (RegionCopy<D>& c : copies)
      if (c.alive) out.push_back(&c.mesh);
    return out;
  }
};

/// Seed pairs between two copies, ordered as discovered.
struct OverlapList {
  int copy0 = -1, copy1 = -1;  // copy0 < copy1
  std::vector<std::pair<std::uint32_t, std::uint32_t>> seeds;
  std::size_t initial_seeds = 0;
};

namespace detail {

/// Collapses over every live mesh and keeps the seed sets on representatives.
template <int D>
void collapse_embedding(Embedding<D>& emb, const MergeGraph& graph) {
  if (graph.empty()) return;
  std::vector<HexMesh<D>*> meshes = emb.meshes();
  const Representatives reps = collapse_vertices<D>(emb.pool, meshes, graph);
  for (RegionCopy<D>& c : emb.copies) {
    if (!c.alive) continue;
    for (VertexId& v : c.seeds) v = reps(v);
    std::sort(c.seeds.begin(), c.seeds.end());
    c.seeds.erase(std::unique(c.seeds.begin(), c.seeds.end()), c.seeds.end());
  }
}

}  // namespace detail

/// Creates every region copy: copy 0 from the region's node precursors, the
/// rest duplicated from it.
template <int D>
void create_region_copies(Embedding<D>& emb, const RegionPartition<D>& part,
                          const std::vector<std::vector<std::vector<VertexId>>>& copies,
                          int threads = 1) {
  std::vector<int> regions;
  for (int r = 0; r < part.region_count(); ++r)
    if (part.interior[r] && !copies[r].empty()) regions.push_back(r);
  std::vector<std::pair<HexMesh<D>, VertexPool<D>>> built(regions.size());
  parallel_for(regions.size(), threads,
               [&](std::size_t i) { built[i] = build_region_mesh<D>(regions[i], part); });
  for (std::size_t i = 0; i < regions.size(); ++i) {
    auto& [mesh, local] = built[i];
    const VertexId base = static_cast<VertexId>(emb.pool.size());
    emb.pool.append(local);
    for (VertexId& v : mesh.ids()) v += base;
    const int r = regions[i];
    for (std::size_t c = 0; c < copies[r].size(); ++c) {
      RegionCopy<D> copy;
      copy.region = r;
      copy.copy = static_cast<int>(c);
      copy.seeds = copies[r][c];
      copy.mesh = c == 0 ? mesh : duplicate_region_mesh<D>(mesh, emb.pool);
      emb.copies.push_back(std::move(copy));
    }
  }
}

/// Merges coincident seed vertices within each listed copy.
template <int D>
void preliminary_coincident_merge(Embedding<D>& emb, const std::vector<int>& which) {
  MergeGraph graph;
  for (int c : which) {
    std::unordered_map<Index<D>, VertexId, ArrayHash> first;
    for (VertexId v : emb.copies[c].seeds) {
      auto [it, inserted] = first.emplace(emb.pool[v].node, v);
      if (!inserted) graph.add(it->second, v);
    }
  }
  detail::collapse_embedding(emb, graph);
}

/// Sews each listed copy to the extension: interior-flagged copy vertices
/// join the seed vertex on their node, copy hexes replaced by an extension
/// hex touching the seeds are removed, and those extension hexes are copied
/// in. Call after preliminary_coincident_merge.
template <int D>
void merge_copies_with_boundary(Embedding<D>& emb, const std::vector<int>& which) {
  constexpr int kC = Dim<D>::kCorners;
  MergeGraph graph;
  for (int c : which) {
    RegionCopy<D>& copy = emb.copies[c];
    std::unordered_map<Index<D>, VertexId, ArrayHash> seed_at;
    for (VertexId v : copy.seeds) seed_at.emplace(emb.pool[v].node, v);
    std::vector<VertexId> ids(copy.mesh.ids().begin(), copy.mesh.ids().end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (VertexId v : ids) {
      if (v < emb.extension_vertices || !emb.pool[v].interior) continue;
      auto it = seed_at.find(emb.pool[v].node);
      if (it != seed_at.end()) graph.add(it->second, v);
    }
  }
  detail::collapse_embedding(emb, graph);

  for (int c : which) {
    RegionCopy<D>& copy = emb.copies[c];
    const std::unordered_set<VertexId> seeds(copy.seeds.begin(), copy.seeds.end());
    auto touches = [&](const HexMesh<D>& m, std::size_t h) {
      for (int k = 0; k < kC; ++k)
        if (seeds.count(m.corner(h, k))) return true;
      return false;
    };
    HexMesh<D> boundary;
    std::unordered_set<Index<D>, ArrayHash> boundary_cells;
    for (std::size_t h = 0; h < emb.extension.size(); ++h) {
      if (!touches(emb.extension, h)) continue;
      boundary.add(emb.extension.corners(h), emb.extension.cell(h));
      boundary_cells.insert(emb.extension.cell(h));
    }
    copy.mesh.filter([&](std::size_t h) {
      return !(boundary_cells.count(copy.mesh.cell(h)) && touches(copy.mesh, h));
    });
    copy.mesh.append(boundary);
    copy.mesh.remove_duplicates();
  }
}

namespace detail {

/// Vertex -> incident hexes of one mesh, compressed.
template <int D>
struct Incidence {
  std::unordered_map<VertexId, std::vector<std::uint32_t>> hexes;

  explicit Incidence(const HexMesh<D>& mesh) {
    for (std::size_t h = 0; h < mesh.size(); ++h)
      for (int k = 0; k < Dim<D>::kCorners; ++k) {
        auto& list = hexes[mesh.corner(h, k)];
        if (list.empty() || list.back() != h) list.push_back(static_cast<std::uint32_t>(h));
      }
  }

  /// Hexes sharing at least one vertex with h, ascending, h excluded.
  std::vector<std::uint32_t> neighbors(const HexMesh<D>& mesh, std::uint32_t h) const {
    std::vector<std::uint32_t> out;
    for (int k = 0; k < Dim<D>::kCorners; ++k) {
      const auto& list = hexes.at(mesh.corner(h, k));
      out.insert(out.end(), list.begin(), list.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.erase(std::remove(out.begin(), out.end(), h), out.end());
    return out;
  }
};

template <int D>
std::unordered_map<typename HexMesh<D>::Tuple, std::uint32_t, ArrayHash> extension_index(
    const HexMesh<D>& extension) {
  std::unordered_map<typename HexMesh<D>::Tuple, std::uint32_t, ArrayHash> index;
  index.reserve(extension.size());
  for (std::size_t h = 0; h < extension.size(); ++h)
    index.emplace(extension.corners(h), static_cast<std::uint32_t>(h));
  return index;
}

}  // namespace detail

/// Seeds are hex pairs from two copies that are both the same extension hex;
/// each list then grows breadth-first through coincident neighbor pairs on
/// unvisited cells.
template <int D>
std::vector<OverlapList> build_overlap_lists(const Embedding<D>& emb, int threads = 1) {
  const auto ext_index = detail::extension_index<D>(emb.extension);
  // extension hex -> (copy, hex) occurrences in copy order
  std::map<std::uint32_t, std::vector<std::pair<int, std::uint32_t>>> occurrences;
  for (std::size_t c = 0; c < emb.copies.size(); ++c) {
    const RegionCopy<D>& copy = emb.copies[c];
    if (!copy.alive) continue;
    for (std::size_t h = 0; h < copy.mesh.size(); ++h) {
      auto it = ext_index.find(copy.mesh.corners(h));
      if (it != ext_index.end())
        occurrences[it->second].emplace_back(static_cast<int>(c), static_cast<std::uint32_t>(h));
    }
  }
  std::map<std::pair<int, int>, OverlapList> lists;
  for (const auto& [ext_hex, occ] : occurrences)
    for (std::size_t i = 0; i < occ.size(); ++i)
      for (std::size_t j = i + 1; j < occ.size(); ++j) {
        OverlapList& list = lists[{occ[i].first, occ[j].first}];
        list.copy0 = occ[i].first;
        list.copy1 = occ[j].first;
        list.seeds.emplace_back(occ[i].second, occ[j].second);
      }
  std::vector<OverlapList> out;
  for (auto& [key, list] : lists) {
    list.initial_seeds = list.seeds.size();
    out.push_back(std::move(list));
  }
  if (out.empty()) return out;

  std::vector<int> involved;
  for (const OverlapList& l : out) involved.push_back(l.copy0), involved.push_back(l.copy1);
  std::sort(involved.begin(), involved.end());
  involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
  std::vector<std::unique_ptr<detail::Incidence<D>>> incidence(emb.copies.size());
  parallel_for(involved.size(), threads, [&](std::size_t i) {
    incidence[involved[i]] =
        std::make_unique<detail::Incidence<D>>(emb.copies[involved[i]].mesh);
  });

  parallel_for(out.size(), threads, [&](std::size_t i) {
    OverlapList& list = out[i];
    const HexMesh<D>& m0 = emb.copies[list.copy0].mesh;
    const HexMesh<D>& m1 = emb.copies[list.copy1].mesh;
    const detail::Incidence<D>& inc0 = *incidence[list.copy0];
    const detail::Incidence<D>& inc1 = *incidence[list.copy1];
    std::unordered_set<Index<D>, ArrayHash> visited;
    for (const auto& [h0, h1] : list.seeds) visited.insert(m0.cell(h0));
    for (std::size_t s = 0; s < list.seeds.size(); ++s) {
      const auto [h0, h1] = list.seeds[s];
      const std::vector<std::uint32_t> n0 = inc0.neighbors(m0, h0);
      const std::vector<std::uint32_t> n1 = inc1.neighbors(m1, h1);
      for (std::uint32_t a : n0) {
        if (visited.count(m0.cell(a))) continue;
        for (std::uint32_t b : n1) {
          if (m1.cell(b) != m0.cell(a)) continue;
          visited.insert(m0.cell(a));
          list.seeds.emplace_back(a, b);
          break;
        }
      }
    }
  });
  return out;
}

/// Finds copies of one region that represent the same material: both occur
/// in seeds that are a common extension hex. Each group of duplicates
/// collapses onto its lowest copy, which takes over the union of the seed
/// sets and is sewn to the boundary again. Returns the number of copies
/// removed.
template <int D>
int deduplicate_copies(Embedding<D>& emb, const std::vector<OverlapList>& lists) {
  const auto ext_index = detail::extension_index<D>(emb.extension);
  std::map<std::uint32_t, std::vector<int>> per_hex;
  for (const OverlapList& l : lists) {
    const HexMesh<D>& m0 = emb.copies[l.copy0].mesh;
    const HexMesh<D>& m1 = emb.copies[l.copy1].mesh;
    for (const auto& [h0, h1] : l.seeds) {
      for (auto it : {ext_index.find(m0.corners(h0)), ext_index.find(m1.corners(h1))}) {
        if (it == ext_index.end()) continue;
        per_hex[it->second].push_back(l.copy0);
        per_hex[it->second].push_back(l.copy1);
      }
    }
  }
  std::vector<int> parent(emb.copies.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto& [hex, copies] : per_hex) {
    std::sort(copies.begin(), copies.end());
    copies.erase(std::unique(copies.begin(), copies.end()), copies.end());
    for (std::size_t i = 0; i < copies.size(); ++i)
      for (std::size_t j = i + 1; j < copies.size(); ++j)
        if (emb.copies[copies[i]].region == emb.copies[copies[j]].region) {
          const int a = find(copies[i]), b = find(copies[j]);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
  }
  std::vector<int> reps;
  int removed = 0;
  for (std::size_t c = 0; c < emb.copies.size(); ++c) {
    const int r = find(static_cast<int>(c));
    if (r == static_cast<int>(c)) continue;
    RegionCopy<D>& dup = emb.copies[c];
    RegionCopy<D>& rep = emb.copies[r];
    rep.seeds.insert(rep.seeds.end(), dup.seeds.begin(), dup.seeds.end());
    dup.alive = false;
    dup.mesh.clear();
    dup.seeds.clear();
    reps.push_back(r);
    ++removed;
  }
  if (removed == 0) return 0;
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  for (int r : reps) {
    std::vector<VertexId>& s = emb.copies[r].seeds;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  preliminary_coincident_merge(emb, reps);
  merge_copies_with_boundary(emb, reps);
  emb.dedup_events += removed;
  return removed;
}

/// Joins the coincident corners of every seed pair, then concatenates the
/// live copies and the extension, removes duplicate hexes and compacts the
/// pool. The returned mesh indexes emb.pool.
template <int D>
HexMesh<D> final_merge(Embedding<D>& emb, const std::vector<OverlapList>& lists) {
  constexpr int kC = Dim<D>::kCorners;
  MergeGraph graph;
  for (const OverlapList& l : lists) {
    const HexMesh<D>& m0 = emb.copies[l.copy0].mesh;
    const HexMesh<D>& m1 = emb.copies[l.copy1].mesh;
    for (const auto& [h0, h1] : l.seeds)
      for (int k = 0; k < kC; ++k) graph.add(m0.corner(h0, k), m1.corner(h1, k));
  }
  detail::collapse_embedding(emb, graph);
  HexMesh<D> out;
  for (RegionCopy<D>& c : emb.copies)
    if (c.alive) out.append(c.mesh);
  out.append(emb.extension);
  out.remove_duplicates();
  HexMesh<D>* meshes[] = {&out};
  compact<D>(emb.pool, meshes);
  emb.copies.clear();
  emb.extension.clear();
  return out;
}

/// The whole region-merging stage, deduplicating until stable.
template <int D>
HexMesh<D> merge_regions(Embedding<D>& emb, int threads = 1) {
  std::vector<int> all(emb.copies.size());
  std::iota(all.begin(), all.end(), 0);
  preliminary_coincident_merge(emb, all);
  merge_copies_with_boundary(emb, all);
  std::vector<OverlapList> lists = build_overlap_lists<D>(emb, threads);
  while (deduplicate_copies<D>(emb, lists) > 0) lists = build_overlap_lists<D>(emb, threads);
  return final_merge<D>(emb, lists);
}

}  // namespace hexembed
