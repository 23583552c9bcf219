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
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hexembed {

/// Splits [0, n) into at most `threads` contiguous chunks and runs
/// body(chunk, begin, end) for each, one chunk per thread. Chunk c always
/// covers the same range for a given (n, threads), so callers that gather
/// per-chunk results in chunk order get deterministic output. The first
/// exception thrown by any chunk is rethrown on the caller's thread.
template <typename Body>
void parallel_chunks(std::size_t n, int threads, Body&& body) {
  const std::size_t chunks =
      std::max<std::size_t>(1, std::min<std::size_t>(threads < 1 ? 1 : threads, n));
  if (chunks == 1) {
    body(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = n * c / chunks, end = n * (c + 1) / chunks;
    pool.emplace_back([&, c, begin, end] {
      try {
        body(c, begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Number of chunks parallel_chunks will use.
inline std::size_t chunk_count(std::size_t n, int threads) {
  return std::max<std::size_t>(1, std::min<std::size_t>(threads < 1 ? 1 : threads, n));
}

/// Runs body(i) for every i in [0, n).
template <typename Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  parallel_chunks(n, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) body(i);
  });
}

}  // namespace hexembed
