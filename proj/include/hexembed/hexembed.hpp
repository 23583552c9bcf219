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

#include "hexembed/coarsen.hpp"
#include "hexembed/extension.hpp"
#include "hexembed/geometry.hpp"
#include "hexembed/grid.hpp"
#include "hexembed/hex_mesh.hpp"
#include "hexembed/io.hpp"
#include "hexembed/merge.hpp"
#include "hexembed/oracle.hpp"
#include "hexembed/pipeline.hpp"
#include "hexembed/region_merge.hpp"
#include "hexembed/regions.hpp"
#include "hexembed/surface.hpp"
#include "hexembed/tetrahedralize.hpp"
#include "hexembed/types.hpp"
