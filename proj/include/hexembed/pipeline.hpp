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

// End-to-end driver: surface in, embedding mesh (and optionally a coarser
// mesh and a tet mesh) out, with timings.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hexembed/coarsen.hpp"
#include "hexembed/extension.hpp"
#include "hexembed/region_merge.hpp"
#include "hexembed/regions.hpp"
#include "hexembed/tetrahedralize.hpp"

namespace hexembed {

class InvalidSurface : public Error {
 public:
  explicit InvalidSurface(ValidationReport report)
      : Error("invalid surface:\n" + report.describe()), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

struct PipelineConfig {
  /// Grid spacing; when not positive, derived from max_dim.
  double dx = 0;
  /// Cells along the longest axis when dx is not given.
  int max_dim = 32;
  /// Empty cells added around the bounding box on every side.
  int padding = 3;
  int coarsen_levels = 0;
  bool tets = false;
  int threads = 1;

  void validate() const {
    if (!(dx > 0) && max_dim <= 2 * padding + 1)
      throw Error("max-dim must exceed 2 * pad + 1");
    if (padding < 2) throw Error("padding must be at least 2");
    if (coarsen_levels < 0) throw Error("coarsen levels must be non-negative");
  }
};

struct MeshStats {
  std::string grid_dim;
  double dx = 0;
  std::size_t extension_hex_count = 0;
  std::size_t embedding_hex_count = 0;
  std::size_t hex_count = 0;  // of the output mesh (coarsened if requested)
  std::size_t vertex_count = 0;
  std::size_t tet_count = 0;
  int region_count = 0;
  std::vector<int> copies_per_region;
  int dedup_events = 0;
  long signing_face = 0, signing_edge = 0, signing_vertex = 0;
  std::vector<std::pair<std::string, double>> seconds;

  double total_seconds() const {
    double t = 0;
    for (const auto& [name, s] : seconds) t += s;
    return t;
  }

  std::string to_text() const {
    std::ostringstream out;
    char buf[64];
    out << "grid_dim " << grid_dim << '\n';
    std::snprintf(buf, sizeof buf, "%.17g", dx);
    out << "dx " << buf << '\n';
    out << "hex_count " << hex_count << '\n';
    out << "embedding_hex_count " << embedding_hex_count << '\n';
    out << "extension_hex_count " << extension_hex_count << '\n';
    out << "vertex_count " << vertex_count << '\n';
    out << "tet_count " << tet_count << '\n';
    out << "region_count " << region_count << '\n';
    out << "copies_per_region";
    for (int c : copies_per_region) out << ' ' << c;
    out << '\n';
    out << "dedup_events " << dedup_events << '\n';
    out << "signing_face " << signing_face << '\n';
    out << "signing_edge " << signing_edge << '\n';
    out << "signing_vertex " << signing_vertex << '\n';
    for (const auto& [name, s] : seconds) {
      std::snprintf(buf, sizeof buf, "%.6f", s);
      out << "seconds_" << name << ' ' << buf << '\n';
    }
    std::snprintf(buf, sizeof buf, "%.6f", total_seconds());
    out << "seconds_total " << buf << '\n';
    return out.str();
  }
};

template <int D>
struct PipelineResult {
  GridSpec<D> grid;     // of `mesh`
  VertexPool<D> pool;
  HexMesh<D> mesh;
  std::optional<TetMesh<D>> tets;
  MeshStats stats;
};

/// Grid centered on the surface's bounding box with `padding` empty cells
/// on each side. With max_dim, the longest axis gets exactly max_dim cells
/// and the box faces fall halfway between grid planes.
template <int D>
GridSpec<D> auto_grid(const SurfaceMesh<D>& s, const PipelineConfig& cfg) {
  cfg.validate();
  if (s.vertices().empty()) throw Error("empty surface");
  Point<D> lo = s.vertices()[0], hi = lo;
  for (const Point<D>& p : s.vertices())
    for (int a = 0; a < D; ++a) lo[a] = std::min(lo[a], p[a]), hi[a] = std::max(hi[a], p[a]);
  double ext = 0;
  for (int a = 0; a < D; ++a) ext = std::max(ext, hi[a] - lo[a]);
  GridSpec<D> g;
  g.dx = cfg.dx > 0 ? cfg.dx : (ext > 0 ? ext / (cfg.max_dim - 2 * cfg.padding - 1) : 1.0);
  for (int a = 0; a < D; ++a) {
    g.dims[a] = static_cast<int>(std::floor((hi[a] - lo[a]) / g.dx)) + 1 + 2 * cfg.padding;
    if (cfg.dx <= 0) g.dims[a] = std::min(g.dims[a], cfg.max_dim);
    g.origin[a] = 0.5 * (lo[a] + hi[a]) - 0.5 * g.dims[a] * g.dx;
  }
  g.validate();
  return g;
}

/// Runs validation, the volumetric extension, region creation and merging,
/// then optional coarsening and tet conversion, on a given grid.
template <int D>
PipelineResult<D> run_pipeline(const SurfaceMesh<D>& surface, const GridSpec<D>& grid,
                               const PipelineConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  PipelineResult<D> res;
  MeshStats& st = res.stats;
  auto t = Clock::now();
  auto lap = [&](const char* name) {
    const auto now = Clock::now();
    st.seconds.emplace_back(name, std::chrono::duration<double>(now - t).count());
    t = now;
  };

  ValidationReport report = validate_surface(surface);
  if (!report.ok()) throw InvalidSurface(std::move(report));
  lap("validate");

  SigningCounters counters;
  Embedding<D> emb;
  emb.pool = VertexPool<D>(grid);
  VolumetricExtension<D> ext =
      build_volumetric_extension<D>(surface, emb.pool, cfg.threads, &counters);
  emb.extension = std::move(ext.mesh);
  emb.extension_vertices = emb.pool.size();
  st.extension_hex_count = emb.extension.size();
  st.signing_face = counters.face;
  st.signing_edge = counters.edge;
  st.signing_vertex = counters.vertex;
  lap("extension");

  const RegionPartition<D> part =
      partition_grid_nodes<D>(grid, surface, emb.pool, emb.extension_vertices, cfg.threads);
  const auto copies = count_copies<D>(part, emb.extension, emb.pool, emb.extension_vertices);
  for (int r = 0; r < part.region_count(); ++r)
    if (part.interior[r]) st.copies_per_region.push_back(static_cast<int>(copies[r].size()));
  st.region_count = static_cast<int>(st.copies_per_region.size());
  create_region_copies<D>(emb, part, copies, cfg.threads);
  lap("regions");

  res.mesh = merge_regions<D>(emb, cfg.threads);
  res.pool = std::move(emb.pool);
  res.grid = grid;
  st.dedup_events = emb.dedup_events;
  st.embedding_hex_count = res.mesh.size();
  lap("merging");

  if (cfg.coarsen_levels > 0) {
    CoarseMesh<D> c = coarsen<D>(res.mesh, res.pool, cfg.coarsen_levels);
    res.mesh = std::move(c.mesh);
    res.pool = std::move(c.pool);
    res.grid = c.grid;
    lap("coarsening");
  }
  if (cfg.tets) {
    res.tets = hex_to_tet<D>(res.mesh, res.pool);
    st.tet_count = res.tets->tets.size();
    lap("tets");
  }
  std::ostringstream dims;
  for (int a = 0; a < D; ++a) dims << (a ? "x" : "") << grid.dims[a];
  st.grid_dim = dims.str();
  st.dx = grid.dx;
  st.hex_count = res.mesh.size();
  st.vertex_count = res.pool.size();
  return res;
}

template <int D>
PipelineResult<D> run_pipeline(const SurfaceMesh<D>& surface, const PipelineConfig& cfg) {
  // Validate before sizing the grid so that bad input always reports as such.
  ValidationReport report = validate_surface(surface);
  if (!report.ok()) throw InvalidSurface(std::move(report));
  return run_pipeline<D>(surface, auto_grid<D>(surface, cfg), cfg);
}

}  // namespace hexembed
