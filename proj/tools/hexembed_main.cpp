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

// hexembed mesh <input> [options]
//
// Exit codes: 0 success, 1 usage or meshing error, 2 invalid surface,
// 3 input/output failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hexembed/hexembed.hpp"

namespace {

using namespace hexembed;

struct Options {
  std::string input;
  std::string out = "embedding.vtk";
  std::string tet_out;
  std::string stats;
  bool two_d = false;
  PipelineConfig config;
};

template <int D>
int Run(const Options& opt) {
  SurfaceMesh<D> surface;
  if constexpr (D == 3)
    surface = read_obj(opt.input);
  else
    surface = read_segments(opt.input);
  PipelineResult<D> res = run_pipeline<D>(surface, opt.config);
  const auto t0 = std::chrono::steady_clock::now();
  write_vtk<D>(res.mesh, res.pool, opt.out);
  if (res.tets) {
    std::string path = opt.tet_out;
    if (path.empty()) {
      const std::size_t dot = opt.out.rfind('.');
      path = (dot == std::string::npos ? opt.out : opt.out.substr(0, dot)) + "_tets.vtk";
    }
    write_vtk<D>(*res.tets, path);
  }
  res.stats.seconds.emplace_back(
      "export",
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  const std::string text = res.stats.to_text();
  if (opt.stats.empty()) {
    std::cout << text;
  } else {
    std::ofstream s(opt.stats);
    s << text;
    if (!s) throw IoError("cannot write " + opt.stats);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embedding hex meshes for self-intersecting surfaces"};
  app.require_subcommand(1);
  Options opt;
  CLI::App* mesh = app.add_subcommand("mesh", "mesh a closed surface");
  mesh->add_option("input", opt.input, "OBJ triangle mesh, or segment file with --two-d")
      ->required();
  auto* dx = mesh->add_option("--dx", opt.config.dx, "grid spacing");
  mesh->add_option("--max-dim", opt.config.max_dim, "cells along the longest axis")
      ->excludes(dx);
  mesh->add_option("--pad", opt.config.padding, "empty cells around the surface")
      ->capture_default_str();
  mesh->add_option("--coarsen", opt.config.coarsen_levels, "coarsening levels")
      ->capture_default_str();
  mesh->add_flag("--tets", opt.config.tets, "also write a tetrahedral mesh");
  mesh->add_option("--out", opt.out, "hex mesh output (legacy VTK)")->capture_default_str();
  mesh->add_option("--tet-out", opt.tet_out, "tet mesh output (default: <out>_tets.vtk)");
  mesh->add_option("--stats", opt.stats, "statistics output (default: stdout)");
  mesh->add_flag("--two-d", opt.two_d, "2D mode: segments in, quads out");
  mesh->add_option("--threads", opt.config.threads, "worker threads")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    return opt.two_d ? Run<2>(opt) : Run<3>(opt);
  } catch (const InvalidSurface& e) {
    std::cerr << e.what();
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
