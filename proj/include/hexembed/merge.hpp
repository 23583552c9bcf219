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

// The vertex merge shared by every stage: coincident vertices joined by
// adjacencies collapse onto one representative, duplicate hexes disappear
// and unreferenced vertices are compacted away.

#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hexembed/hex_mesh.hpp"

namespace hexembed {

/// Undirected adjacencies between vertex pool entries.
class MergeGraph {
 public:
  void add(VertexId a, VertexId b) {
    if (a != b) edges_.emplace_back(a, b);
  }
  void reserve(std::size_t n) { edges_.reserve(n); }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }

 private:
  std::vector<std::pair<VertexId, VertexId>> edges_;
};

/// Vertex id -> representative for every vertex touched by a merge.
/// Untouched vertices map to themselves.
class Representatives {
 public:
  VertexId operator()(VertexId v) const {
    auto it = map_.find(v);
    return it == map_.end() ? v : it->second;
  }
  void set(VertexId v, VertexId rep) { map_[v] = rep; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::unordered_map<VertexId, VertexId>& map() const { return map_; }

 private:
  std::unordered_map<VertexId, VertexId> map_;
};

/// Connected components of the adjacency graph by iterative depth-first
/// search. The representative of a component is its lowest vertex id.
inline Representatives connected_representatives(const MergeGraph& graph) {
  Representatives reps;
  if (graph.empty()) return reps;
  // Compress the touched ids to a dense range.
  std::vector<VertexId> ids;
  ids.reserve(2 * graph.size());
  for (const auto& [a, b] : graph.edges()) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto dense = [&](VertexId v) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  };
  const std::size_t n = ids.size();
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<std::pair<std::size_t, std::size_t>> dense_edges;
  dense_edges.reserve(graph.size());
  for (const auto& [a, b] : graph.edges()) {
    const std::size_t da = dense(a), db = dense(b);
    dense_edges.emplace_back(da, db);
    ++offsets[da + 1];
    ++offsets[db + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<std::size_t> adjacency(offsets.back());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (const auto& [a, b] : dense_edges) {
    adjacency[fill[a]++] = b;
    adjacency[fill[b]++] = a;
  }
  std::vector<bool> visited(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> component;
  // ids are ascending, so the first unvisited id starts its component and
  // is its lowest member.
  for (std::size_t start = 0; start < n; ++start) {
    if (visited[start]) continue;
    visited[start] = true;
    stack.push_back(start);
    component.clear();
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      component.push_back(u);
      for (std::size_t i = offsets[u]; i < offsets[u + 1]; ++i) {
        const std::size_t w = adjacency[i];
        if (!visited[w]) {
          visited[w] = true;
          stack.push_back(w);
        }
      }
    }
    const VertexId rep = ids[start];
    for (std::size_t u : component)
      if (ids[u] != rep) reps.set(ids[u], rep);
  }
  return reps;
}

template <int D>
void check_coincidence(const VertexPool<D>& pool, const MergeGraph& graph) {
  for (const auto& [a, b] : graph.edges()) {
    if (a >= pool.size() || b >= pool.size())
      throw CoincidenceViolation("adjacency references a missing vertex");
    if (!pool.coincident(a, b))
      throw CoincidenceViolation("adjacency between vertices " + std::to_string(a) + " and " +
                                 std::to_string(b) + " on different grid nodes");
  }
}

/// Collapses each connected component onto its representative: vertex
/// attributes are combined into the representative, every mesh is rewritten
/// and its duplicate hexes removed. Pool ids stay valid; merged-away entries
/// simply become unreferenced.
template <int D>
Representatives collapse_vertices(VertexPool<D>& pool, std::span<HexMesh<D>* const> meshes,
                                  const MergeGraph& graph) {
  check_coincidence(pool, graph);
  Representatives reps = connected_representatives(graph);
  if (reps.empty()) return reps;
  for (const auto& [v, rep] : reps.map()) {
    PoolEntry<D>& r = pool[rep];
    const PoolEntry<D>& e = pool[v];
    r.sign = combine(r.sign, e.sign);
    r.interior = r.interior || e.interior;
  }
  for (HexMesh<D>* mesh : meshes) {
    for (VertexId& id : mesh->ids()) id = reps(id);
    mesh->remove_duplicates();
  }
  return reps;
}

/// Old id -> new id after compaction; kNoVertex for dropped entries.
using Compaction = std::vector<VertexId>;

/// Drops pool entries no mesh references and renumbers the meshes. Kept
/// entries retain their relative order.
template <int D>
Compaction compact(VertexPool<D>& pool, std::span<HexMesh<D>* const> meshes) {
  std::vector<bool> used(pool.size(), false);
  for (const HexMesh<D>* mesh : meshes)
    for (VertexId id : mesh->ids()) used[id] = true;
  Compaction remap(pool.size(), kNoVertex);
  auto& entries = pool.entries();
  VertexId next = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!used[i]) continue;
    remap[i] = next;
    entries[next] = entries[i];
    ++next;
  }
  entries.resize(next);
  for (HexMesh<D>* mesh : meshes)
    for (VertexId& id : mesh->ids()) id = remap[id];
  return remap;
}

struct MergeResult {
  Representatives representatives;
  Compaction compaction;  // empty when compaction was skipped

  /// Final id of a pre-merge vertex, or kNoVertex if it was dropped.
  VertexId final_id(VertexId v) const {
    const VertexId r = representatives(v);
    return compaction.empty() ? r : compaction[r];
  }
};

/// Merges the pool and all meshes that index it. Every mesh referencing the
/// pool must be passed, since compaction renumbers the pool.
template <int D>
MergeResult merge_vertices(VertexPool<D>& pool, std::span<HexMesh<D>* const> meshes,
                           const MergeGraph& graph, bool compact_pool = true) {
  MergeResult result;
  result.representatives = collapse_vertices(pool, meshes, graph);
  if (compact_pool) result.compaction = compact(pool, meshes);
  return result;
}

template <int D>
MergeResult merge_vertices(VertexPool<D>& pool, HexMesh<D>& mesh, const MergeGraph& graph,
                           bool compact_pool = true) {
  HexMesh<D>* meshes[] = {&mesh};
  return merge_vertices<D>(pool, meshes, graph, compact_pool);
}

/// Labels hexes by connected component, where hexes connect through shared
/// vertex ids. Labels are 0..count-1 in order of first appearance.
template <int D>
std::vector<int> hex_connected_components(const HexMesh<D>& mesh, int* count = nullptr) {
  constexpr int kC = Dim<D>::kCorners;
  std::unordered_map<VertexId, std::size_t> first_hex;
  std::vector<std::size_t> parent(mesh.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t h = 0; h < mesh.size(); ++h) {
    for (int k = 0; k < kC; ++k) {
      auto [it, inserted] = first_hex.emplace(mesh.corner(h, k), h);
      if (!inserted) {
        const std::size_t a = find(it->second), b = find(h);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<int> label(mesh.size(), -1);
  std::unordered_map<std::size_t, int> root_label;
  for (std::size_t h = 0; h < mesh.size(); ++h) {
    auto [it, inserted] = root_label.emplace(find(h), static_cast<int>(root_label.size()));
    label[h] = it->second;
  }
  if (count) *count = static_cast<int>(root_label.size());
  return label;
}

template <int D>
int count_hex_components(const HexMesh<D>& mesh) {
  int n = 0;
  hex_connected_components(mesh, &n);
  return n;
}

/// Extracts the hexes with a given component label as a standalone mesh over
/// a fresh, compacted pool.
template <int D>
std::pair<HexMesh<D>, VertexPool<D>> extract_component(const HexMesh<D>& mesh,
                                                       const VertexPool<D>& pool,
                                                       const std::vector<int>& labels, int which) {
  HexMesh<D> out;
  VertexPool<D> out_pool(pool.grid());
  std::unordered_map<VertexId, VertexId> remap;
  for (std::size_t h = 0; h < mesh.size(); ++h) {
    if (labels[h] != which) continue;
    typename HexMesh<D>::Tuple t = mesh.corners(h);
    for (VertexId& v : t) {
      auto [it, inserted] = remap.emplace(v, static_cast<VertexId>(out_pool.size()));
      if (inserted) out_pool.entries().push_back(pool[v]);
      v = it->second;
    }
    out.add(t, mesh.cell(h));
  }
  return {std::move(out), std::move(out_pool)};
}

/// Order- and numbering-independent description of a hex mesh, used to
/// compare meshes "up to renumbering". Vertices are characterized by their
/// grid node and the (cell, corner) slots of every hex using them; hexes are
/// sorted by cell and those characterizations, then vertices are relabeled
/// in first-use order over the sorted hexes.
template <int D>
struct CanonicalMesh {
  std::size_t vertex_count = 0;
  std::vector<std::pair<Index<D>, typename HexMesh<D>::Tuple>> hexes;
  bool operator==(const CanonicalMesh&) const = default;
};

template <int D>
CanonicalMesh<D> canonical_form(const HexMesh<D>& mesh, const VertexPool<D>& pool) {
  constexpr int kC = Dim<D>::kCorners;
  // vertex -> sorted list of (cell, corner) uses, hashed to a signature
  std::unordered_map<VertexId, std::vector<std::pair<Index<D>, int>>> uses;
  for (std::size_t h = 0; h < mesh.size(); ++h)
    for (int k = 0; k < kC; ++k) uses[mesh.corner(h, k)].emplace_back(mesh.cell(h), k);
  std::unordered_map<VertexId, std::size_t> signature;
  for (auto& [v, list] : uses) {
    std::sort(list.begin(), list.end());
    std::size_t seed = ArrayHash{}(pool[v].node);
    for (const auto& [cell, k] : list) {
      detail::hash_combine(seed, ArrayHash{}(cell));
      detail::hash_combine(seed, static_cast<std::size_t>(k));
    }
    signature[v] = seed;
  }
  std::vector<std::size_t> order(mesh.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t h) {
    std::array<std::size_t, kC> sig;
    for (int k = 0; k < kC; ++k) sig[k] = signature[mesh.corner(h, k)];
    return std::make_pair(mesh.cell(h), sig);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  CanonicalMesh<D> out;
  std::unordered_map<VertexId, VertexId> relabel;
  for (std::size_t h : order) {
    typename HexMesh<D>::Tuple t = mesh.corners(h);
    for (VertexId& v : t) {
      auto [it, inserted] = relabel.emplace(v, static_cast<VertexId>(relabel.size()));
      v = it->second;
    }
    out.hexes.emplace_back(mesh.cell(h), t);
  }
  out.vertex_count = relabel.size();
  return out;
}

}  // namespace hexembed
