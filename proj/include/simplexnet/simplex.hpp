// Copyright 2026 The simplexnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "simplexnet/errors.hpp"
#include "simplexnet/graph.hpp"

namespace simplexnet {

/// Largest simplex size supported; faces are enumerated as 32-bit masks.
inline constexpr std::size_t kMaxSimplexSize = 16;

using LocalVertex = std::uint8_t;

/// Pair of local vertex indices, stored with first < second.
struct LocalEdge {
  LocalVertex first;
  LocalVertex second;

  friend bool operator==(const LocalEdge&, const LocalEdge&) = default;
};

/// An arriving building block: an n-clique with at most one defect edge.
class SimplexSpec {
 public:
  explicit SimplexSpec(std::size_t size,
                       std::optional<LocalEdge> defect_edge = std::nullopt)
      : size_(size) {
    if (size < 2 || size > kMaxSimplexSize) {
      throw UsageError("simplex size " + std::to_string(size) +
                       " outside [2, " + std::to_string(kMaxSimplexSize) + "]");
    }
    if (defect_edge) {
      auto [a, b] = *defect_edge;
      if (a == b || a >= size || b >= size) {
        throw UsageError("invalid defect edge for simplex of size " +
                         std::to_string(size));
      }
      if (a > b) std::swap(a, b);
      defect_edge_ = LocalEdge{a, b};
    }
  }

  std::size_t size() const { return size_; }
  /// q_max = n - 1.
  int order() const { return static_cast<int>(size_) - 1; }
  const std::optional<LocalEdge>& defect_edge() const { return defect_edge_; }
  bool has_defect() const { return defect_edge_.has_value(); }

  std::uint32_t defect_mask() const {
    return defect_edge_ ? (1u << defect_edge_->first) | (1u << defect_edge_->second)
                        : 0u;
  }

  friend bool operator==(const SimplexSpec&, const SimplexSpec&) = default;

 private:
  std::size_t size_;
  std::optional<LocalEdge> defect_edge_;
};

/// A face of a spec: local vertex subset of size q+1.
struct SpecFace {
  std::uint32_t mask;
  bool contains_defect;

  std::vector<LocalVertex> vertices() const {
    std::vector<LocalVertex> out;
    for (std::uint32_t m = mask; m != 0; m &= m - 1) {
      out.push_back(static_cast<LocalVertex>(std::countr_zero(m)));
    }
    return out;
  }
};

/// Next k-subset mask after `mask` in increasing numeric order (Gosper's hack).
inline std::uint32_t next_combination(std::uint32_t mask) {
  const std::uint32_t c = mask & (~mask + 1);
  const std::uint32_t r = mask + c;
  return (((r ^ mask) >> 2) / c) | r;
}

/// All C(n, q+1) faces of order q, in increasing mask order.
inline std::vector<SpecFace> face_subsets(const SimplexSpec& spec, int q) {
  if (q < 0 || q > spec.order() - 1) {
    throw UsageError("face level " + std::to_string(q) + " outside [0, " +
                     std::to_string(spec.order() - 1) + "]");
  }
  const std::size_t n = spec.size();
  const auto k = static_cast<unsigned>(q + 1);
  const std::uint32_t defect = spec.defect_mask();
  std::vector<SpecFace> out;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t mask = (1u << k) - 1; mask < limit;
       mask = next_combination(mask)) {
    out.push_back({mask, defect != 0 && (mask & defect) == defect});
  }
  return out;
}

/// A simplex after docking: global vertex ids (sorted), its defect edge in
/// global ids, the step at which it arrived and the order of the shared face
/// (-1 for the seed simplex, which shares nothing).
struct PlacedSimplex {
  std::vector<VertexId> vertices;
  std::optional<std::pair<VertexId, VertexId>> defect_edge;
  std::size_t step = 0;
  int shared_order = -1;

  friend bool operator==(const PlacedSimplex&, const PlacedSimplex&) = default;
};

}  // namespace simplexnet
