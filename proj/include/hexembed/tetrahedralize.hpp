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

// Hex-to-tet conversion on the body-centered lattice: every face spawns
// simplices from its edges (vertices in 2D) and the centers on both sides.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "hexembed/hex_mesh.hpp"

namespace hexembed {

enum class FaceClass {
  kStandardBoundary,
  kStandardInterior,
  kNonStandardInterior,
  kNonStandardBoundary,
};

template <int D>
struct FaceRecord {
  std::array<VertexId, Dim<D>::kSideCorners> key;  // sorted vertex ids
  std::vector<std::pair<std::uint32_t, int>> hexes;  // (hex, side)
  FaceClass kind = FaceClass::kStandardBoundary;
};

/// Faces by sorted vertex ids, in key order. Coincidence of incident hexes
/// is decided by their cells.
template <int D>
std::vector<FaceRecord<D>> classify_faces(const HexMesh<D>& mesh) {
  constexpr int kF = Dim<D>::kSideCorners;
  std::map<std::array<VertexId, kF>, std::vector<std::pair<std::uint32_t, int>>> faces;
  for (std::size_t h = 0; h < mesh.size(); ++h)
    for (int s = 0; s < Dim<D>::kSides; ++s) {
      std::array<VertexId, kF> key;
      const auto sc = Dim<D>::side_corners(s);
      for (int i = 0; i < kF; ++i) key[i] = mesh.corner(h, sc[i]);
      std::sort(key.begin(), key.end());
      faces[key].emplace_back(static_cast<std::uint32_t>(h), s);
    }
  std::vector<FaceRecord<D>> out;
  out.reserve(faces.size());
  for (auto& [key, hexes] : faces) {
    FaceRecord<D> f;
    f.key = key;
    f.hexes = std::move(hexes);
    bool all_coincident = true, any_coincident = false;
    for (std::size_t i = 0; i < f.hexes.size(); ++i)
      for (std::size_t j = i + 1; j < f.hexes.size(); ++j) {
        const bool same = mesh.cell(f.hexes[i].first) == mesh.cell(f.hexes[j].first);
        all_coincident &= same;
        any_coincident |= same;
      }
    if (f.hexes.size() == 1)
      f.kind = FaceClass::kStandardBoundary;
    else if (all_coincident)
      f.kind = FaceClass::kNonStandardBoundary;
    else if (f.hexes.size() == 2 && !any_coincident)
      f.kind = FaceClass::kStandardInterior;
    else
      f.kind = FaceClass::kNonStandardInterior;
    out.push_back(std::move(f));
  }
  return out;
}

/// Simplex mesh: tetrahedra in 3D, triangles in 2D.
template <int D>
struct TetMesh {
  std::vector<Point<D>> points;
  std::vector<std::array<std::uint32_t, D + 1>> tets;
};

template <int D>
double signed_volume(const TetMesh<D>& t, std::size_t i) {
  const auto& ids = t.tets[i];
  const Point<D>& a = t.points[ids[0]];
  Point<D> u[D];
  for (int k = 0; k < D; ++k)
    for (int c = 0; c < D; ++c) u[k][c] = t.points[ids[k + 1]][c] - a[c];
  if constexpr (D == 3) {
    return (u[0][0] * (u[1][1] * u[2][2] - u[1][2] * u[2][1]) -
            u[0][1] * (u[1][0] * u[2][2] - u[1][2] * u[2][0]) +
            u[0][2] * (u[1][0] * u[2][1] - u[1][1] * u[2][0])) /
           6.0;
  } else {
    return (u[0][0] * u[1][1] - u[0][1] * u[1][0]) / 2.0;
  }
}

template <int D>
double total_volume(const TetMesh<D>& t) {
  double v = 0;
  for (std::size_t i = 0; i < t.tets.size(); ++i) v += signed_volume(t, i);
  return v;
}

/// Converts a hex mesh to simplices. Interior faces connect the two hex
/// centers; boundary faces connect the hex center with a face center.
/// Faces shared by several hexes are split by pairs of non-coincident hexes
/// (interior) or handled per hex with private face centers (all
/// coincident).
template <int D>
TetMesh<D> hex_to_tet(const HexMesh<D>& mesh, const VertexPool<D>& pool) {
  TetMesh<D> out;
  const GridSpec<D>& grid = pool.grid();
  out.points.reserve(pool.size() + mesh.size());
  for (VertexId v = 0; v < pool.size(); ++v) out.points.push_back(pool.position(v));
  const std::uint32_t center_base = static_cast<std::uint32_t>(out.points.size());
  for (std::size_t h = 0; h < mesh.size(); ++h) out.points.push_back(grid.cell_center(mesh.cell(h)));

  // Face vertices in cyclic order, oriented arbitrarily: emitted simplices
  // are reoriented afterwards.
  auto cycle = [&](std::uint32_t h, int s) {
    const auto sc = Dim<D>::side_corners(s);
    std::array<VertexId, Dim<D>::kSideCorners> c;
    if constexpr (D == 3)
      c = {mesh.corner(h, sc[0]), mesh.corner(h, sc[1]), mesh.corner(h, sc[3]),
           mesh.corner(h, sc[2])};
    else
      c = {mesh.corner(h, sc[0]), mesh.corner(h, sc[1])};
    return c;
  };
  auto emit = [&](std::array<std::uint32_t, D + 1> t) {
    out.tets.push_back(t);
    const double v = signed_volume(out, out.tets.size() - 1);
    if (v < 0) std::swap(out.tets.back()[0], out.tets.back()[1]);
    if (v == 0 || !std::isfinite(v)) throw DegenerateTetError("degenerate simplex emitted");
  };
  auto face_simplices = [&](std::uint32_t h, int s, std::uint32_t c0, std::uint32_t c1) {
    const auto c = cycle(h, s);
    if constexpr (D == 3) {
      for (int i = 0; i < 4; ++i) emit({c[i], c[(i + 1) % 4], c0, c1});
    } else {
      emit({c[0], c0, c1});
      emit({c[1], c0, c1});
    }
  };
  auto face_center = [&](std::uint32_t h, int s) {
    Point<D> p = grid.cell_center(mesh.cell(h));
    const int axis = s / 2;
    p[axis] += (s % 2 ? 0.5 : -0.5) * grid.dx;
    out.points.push_back(p);
    return static_cast<std::uint32_t>(out.points.size() - 1);
  };
  for (const FaceRecord<D>& f : classify_faces(mesh)) {
    switch (f.kind) {
      case FaceClass::kStandardBoundary:
      case FaceClass::kNonStandardBoundary:
        for (const auto& [h, s] : f.hexes) face_simplices(h, s, center_base + h, face_center(h, s));
        break;
      case FaceClass::kStandardInterior:
      case FaceClass::kNonStandardInterior:
        for (std::size_t i = 0; i < f.hexes.size(); ++i)
          for (std::size_t j = i + 1; j < f.hexes.size(); ++j) {
            const auto [h0, s0] = f.hexes[i];
            const auto [h1, s1] = f.hexes[j];
            if (mesh.cell(h0) == mesh.cell(h1)) continue;
            face_simplices(h0, s0, center_base + h0, center_base + h1);
          }
        break;
    }
  }
  return out;
}

}  // namespace hexembed
