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

// Text formats: Wavefront OBJ triangles in, a `v x y` / `s i j` segment
// format for the 2D mode, and legacy VTK unstructured grids out.

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hexembed/hex_mesh.hpp"
#include "hexembed/surface.hpp"
#include "hexembed/tetrahedralize.hpp"

namespace hexembed {

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& path, int line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class NonTriangleError : public ParseError {
 public:
  using ParseError::ParseError;
};

namespace detail {

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

/// 1-based (or negative, relative) index as in OBJ.
inline int parse_index(const std::string& token, int count, const std::string& path, int line) {
  const std::string head = token.substr(0, token.find('/'));
  std::size_t used = 0;
  int i = 0;
  try {
    i = std::stoi(head, &used);
  } catch (const std::exception&) {
    throw ParseError(path, line, "bad vertex index '" + token + "'");
  }
  if (used != head.size() || i == 0) throw ParseError(path, line, "bad vertex index '" + token + "'");
  const int zero_based = i > 0 ? i - 1 : count + i;
  if (zero_based < 0 || zero_based >= count)
    throw ParseError(path, line, "vertex index " + token + " out of range");
  return zero_based;
}

}  // namespace detail

/// Triangles from an OBJ file. Only `v` and `f` records matter; faces with
/// more than three corners are rejected.
inline SurfaceMesh<3> read_obj(const std::string& path) {
  std::ifstream in = detail::open_input(path);
  std::vector<Point<3>> verts;
  std::vector<int> tris;
  std::string text;
  for (int line = 1; std::getline(in, text); ++line) {
    std::istringstream ls(text);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Point<3> p;
      if (!(ls >> p[0] >> p[1] >> p[2])) throw ParseError(path, line, "vertex needs 3 coordinates");
      verts.push_back(p);
    } else if (tag == "f") {
      std::vector<std::string> corners;
      for (std::string t; ls >> t;) corners.push_back(t);
      if (corners.size() != 3)
        throw NonTriangleError(path, line,
                               "face with " + std::to_string(corners.size()) + " corners");
      for (const std::string& c : corners)
        tris.push_back(detail::parse_index(c, static_cast<int>(verts.size()), path, line));
    }
  }
  return SurfaceMesh<3>(std::move(verts), std::move(tris));
}

/// Closed polylines: `v x y` per vertex and `s i j` per segment, indices
/// 1-based as in OBJ; `#` starts a comment.
inline SurfaceMesh<2> read_segments(const std::string& path) {
  std::ifstream in = detail::open_input(path);
  std::vector<Point<2>> verts;
  std::vector<int> segs;
  std::string text;
  for (int line = 1; std::getline(in, text); ++line) {
    std::istringstream ls(text);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Point<2> p;
      if (!(ls >> p[0] >> p[1])) throw ParseError(path, line, "vertex needs 2 coordinates");
      verts.push_back(p);
    } else if (tag == "s") {
      std::string a, b, extra;
      if (!(ls >> a >> b) || (ls >> extra)) throw ParseError(path, line, "segment needs 2 indices");
      segs.push_back(detail::parse_index(a, static_cast<int>(verts.size()), path, line));
      segs.push_back(detail::parse_index(b, static_cast<int>(verts.size()), path, line));
    } else {
      throw ParseError(path, line, "unknown record '" + tag + "'");
    }
  }
  return SurfaceMesh<2>(std::move(verts), std::move(segs));
}

inline void write_obj(const SurfaceMesh<3>& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  char buf[128];
  for (const Point<3>& p : s.vertices()) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p[0], p[1], p[2]);
    out << buf;
  }
  for (int e = 0; e < s.element_count(); ++e)
    out << "f " << s.vertex(e, 0) + 1 << ' ' << s.vertex(e, 1) + 1 << ' ' << s.vertex(e, 2) + 1
        << '\n';
  if (!out) throw IoError("failed writing " + path);
}

inline void write_segments(const SurfaceMesh<2>& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  char buf[96];
  for (const Point<2>& p : s.vertices()) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g\n", p[0], p[1]);
    out << buf;
  }
  for (int e = 0; e < s.element_count(); ++e)
    out << "s " << s.vertex(e, 0) + 1 << ' ' << s.vertex(e, 1) + 1 << '\n';
  if (!out) throw IoError("failed writing " + path);
}

// ---------------------------------------------------------------------------
// Legacy VTK

/// Cell block of an unstructured grid as read back from disk.
struct VtkGrid {
  std::vector<std::array<double, 3>> points;
  std::vector<std::vector<std::uint32_t>> cells;
  std::vector<int> types;
};

inline constexpr int kVtkTriangle = 5;
inline constexpr int kVtkQuad = 9;
inline constexpr int kVtkTetra = 10;
inline constexpr int kVtkHexahedron = 12;

/// Writes any grid of a single or mixed cell type.
inline void write_vtk(const VtkGrid& g, const std::string& path,
                      const std::string& title = "hexembed mesh") {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << g.points.size() << " double\n";
  char buf[96];
  for (const auto& p : g.points) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p[0], p[1], p[2]);
    out << buf;
  }
  std::size_t total = 0;
  for (const auto& c : g.cells) total += c.size() + 1;
  out << "CELLS " << g.cells.size() << ' ' << total << '\n';
  for (const auto& c : g.cells) {
    out << c.size();
    for (std::uint32_t v : c) out << ' ' << v;
    out << '\n';
  }
  out << "CELL_TYPES " << g.types.size() << '\n';
  for (int t : g.types) out << t << '\n';
  if (!out) throw IoError("failed writing " + path);
}

namespace detail {

template <int D>
std::array<double, 3> lift(const Point<D>& p) {
  return {p[0], p[1], D == 3 ? p[D - 1] : 0.0};
}

}  // namespace detail

/// Hexes (quads in 2D) with every pool entry written as its own point, so
/// duplicated vertices stay distinct. VTK orders hex corners
/// counterclockwise per layer, so corners are permuted on output.
template <int D>
VtkGrid to_vtk(const HexMesh<D>& mesh, const VertexPool<D>& pool) {
  static constexpr int kOrder3[8] = {0, 1, 3, 2, 4, 5, 7, 6};
  static constexpr int kOrder2[4] = {0, 1, 3, 2};
  VtkGrid g;
  g.points.reserve(pool.size());
  for (VertexId v = 0; v < pool.size(); ++v) g.points.push_back(detail::lift<D>(pool.position(v)));
  g.cells.resize(mesh.size());
  for (std::size_t h = 0; h < mesh.size(); ++h)
    for (int k = 0; k < Dim<D>::kCorners; ++k)
      g.cells[h].push_back(mesh.corner(h, D == 3 ? kOrder3[k] : kOrder2[k]));
  g.types.assign(mesh.size(), D == 3 ? kVtkHexahedron : kVtkQuad);
  return g;
}

template <int D>
VtkGrid to_vtk(const TetMesh<D>& tets) {
  VtkGrid g;
  for (const Point<D>& p : tets.points) g.points.push_back(detail::lift<D>(p));
  for (const auto& t : tets.tets) g.cells.emplace_back(t.begin(), t.end());
  g.types.assign(tets.tets.size(), D == 3 ? kVtkTetra : kVtkTriangle);
  return g;
}

template <int D>
void write_vtk(const HexMesh<D>& mesh, const VertexPool<D>& pool, const std::string& path) {
  write_vtk(to_vtk<D>(mesh, pool), path);
}

template <int D>
void write_vtk(const TetMesh<D>& tets, const std::string& path) {
  write_vtk(to_vtk<D>(tets), path);
}

/// Reads what write_vtk produces.
inline VtkGrid read_vtk(const std::string& path) {
  std::ifstream in = detail::open_input(path);
  VtkGrid g;
  std::string word;
  auto expect = [&](const std::string& w) {
    while (in >> word && word != w) {
    }
    if (!in) throw ParseError(path, 0, "missing " + w + " section");
  };
  std::size_t n = 0, total = 0;
  expect("POINTS");
  in >> n >> word;
  g.points.resize(n);
  for (auto& p : g.points) in >> p[0] >> p[1] >> p[2];
  expect("CELLS");
  in >> n >> total;
  g.cells.resize(n);
  for (auto& c : g.cells) {
    std::size_t k = 0;
    in >> k;
    c.resize(k);
    for (auto& v : c) in >> v;
  }
  expect("CELL_TYPES");
  in >> n;
  g.types.resize(n);
  for (int& t : g.types) in >> t;
  if (!in) throw ParseError(path, 0, "truncated file");
  return g;
}

}  // namespace hexembed
