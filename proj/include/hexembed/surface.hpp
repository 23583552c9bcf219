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

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hexembed/types.hpp"

namespace hexembed {

/// Closed, consistently oriented simplex surface: triangles in 3D, segments
/// in 2D. Element `e` uses vertices elements[D * e + k], k < D. In 3D the
/// right-handed triangle normal points outward; in 2D the boundary runs
/// counterclockwise so the interior lies to the left of each segment.
template <int D>
class SurfaceMesh {
 public:
  static constexpr int kVerts = Dim<D>::kElementVertices;

  SurfaceMesh() = default;
  SurfaceMesh(std::vector<Point<D>> vertices, std::vector<int> elements)
      : vertices_(std::move(vertices)), elements_(std::move(elements)) {
    if (elements_.size() % kVerts != 0)
      throw Error("element index list length is not a multiple of " +
                  std::to_string(kVerts));
    for (int v : elements_)
      if (v < 0 || v >= static_cast<int>(vertices_.size()))
        throw Error("element references missing vertex " + std::to_string(v));
    incident_.assign(vertices_.size(), {});
    for (int j = 0; j < static_cast<int>(elements_.size()); ++j)
      incident_[elements_[j]].push_back(j);
  }

  const std::vector<Point<D>>& vertices() const { return vertices_; }
  const std::vector<int>& elements() const { return elements_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int element_count() const {
    return static_cast<int>(elements_.size()) / kVerts;
  }
  bool empty() const { return elements_.empty(); }

  int vertex(int element, int k) const { return elements_[kVerts * element + k]; }

  std::array<int, kVerts> element(int e) const {
    std::array<int, kVerts> ids;
    for (int k = 0; k < kVerts; ++k) ids[k] = vertex(e, k);
    return ids;
  }

  std::array<Point<D>, kVerts> element_points(int e) const {
    std::array<Point<D>, kVerts> pts;
    for (int k = 0; k < kVerts; ++k) pts[k] = vertices_[vertex(e, k)];
    return pts;
  }

  /// Positions j in the element index list with elements()[j] == v.
  std::span<const int> incident_positions(int v) const { return incident_[v]; }

  /// Elements containing vertex v, ascending, without repeats.
  std::vector<int> incident_elements(int v) const {
    std::vector<int> out;
    for (int j : incident_[v]) out.push_back(j / kVerts);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  std::vector<Point<D>> vertices_;
  std::vector<int> elements_;
  std::vector<std::vector<int>> incident_;
};

enum class SurfaceDefect { kNonClosed, kInconsistentOrientation };

/// A ridge is an undirected edge in 3D and a vertex in 2D.
struct RidgeDefect {
  SurfaceDefect kind;
  std::array<int, 2> ridge;  // second entry is -1 in 2D
  int uses = 0;              // incident element count
};

struct ValidationReport {
  std::vector<RidgeDefect> defects;
  bool ok() const { return defects.empty(); }
  std::string describe() const {
    std::string s;
    for (const RidgeDefect& d : defects) {
      s += d.kind == SurfaceDefect::kNonClosed ? "non-closed " :
                                                 "inconsistent-orientation ";
      s += std::to_string(d.ridge[0]);
      if (d.ridge[1] >= 0) s += "-" + std::to_string(d.ridge[1]);
      s += " (" + std::to_string(d.uses) + " incident elements)\n";
    }
    return s;
  }
};

/// Checks that every ridge has exactly two incident elements that traverse
/// it in opposite directions.
template <int D>
ValidationReport validate_surface(const SurfaceMesh<D>& mesh) {
  ValidationReport report;
  if (mesh.empty()) {
    report.defects.push_back({SurfaceDefect::kNonClosed, {-1, -1}, 0});
    return report;
  }
  // ridge -> (forward uses, backward uses)
  std::map<std::array<int, 2>, std::array<int, 2>> uses;
  for (int e = 0; e < mesh.element_count(); ++e) {
    if constexpr (D == 3) {
      for (int k = 0; k < 3; ++k) {
        const int a = mesh.vertex(e, k);
        const int b = mesh.vertex(e, (k + 1) % 3);
        if (a < b)
          ++uses[{a, b}][0];
        else
          ++uses[{b, a}][1];
      }
    } else {
      ++uses[{mesh.vertex(e, 1), -1}][0];  // segment ends here
      ++uses[{mesh.vertex(e, 0), -1}][1];  // segment starts here
    }
  }
  for (const auto& [ridge, count] : uses) {
    const int total = count[0] + count[1];
    if (total != 2)
      report.defects.push_back({SurfaceDefect::kNonClosed, ridge, total});
    else if (count[0] != 1)
      report.defects.push_back(
          {SurfaceDefect::kInconsistentOrientation, ridge, total});
  }
  return report;
}

}  // namespace hexembed
