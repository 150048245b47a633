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

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "simplexnet/errors.hpp"
#include "simplexnet/graph.hpp"
#include "simplexnet/simplex.hpp"

namespace simplexnet {

/// Handle to one clique in a CliqueCensus: its vertex count and its slot
/// within that size class.
struct CliqueRef {
  std::uint32_t size;
  std::uint32_t index;

  friend bool operator==(const CliqueRef&, const CliqueRef&) = default;
};

/// Census of every complete subgraph with at most `max_size` vertices,
/// grouped by vertex count. Vertex sets are stored sorted, each with the
/// number of defect bonds among its vertices.
///
/// The census is maintained incrementally while an assembly grows: a new
/// simplex only creates cliques that contain at least one of its fresh
/// vertices, because every edge it adds has a fresh endpoint.
class CliqueCensus {
 public:
  explicit CliqueCensus(std::size_t max_size = 10)
      : max_size_(max_size), vertices_(max_size + 1), defects_(max_size + 1) {
    if (max_size < 1 || max_size > kMaxSimplexSize) {
      throw UsageError("census size bound " + std::to_string(max_size) +
                       " outside [1, " + std::to_string(kMaxSimplexSize) + "]");
    }
  }

  std::size_t max_size() const { return max_size_; }

  /// Number of cliques on exactly k vertices.
  std::size_t count(std::size_t k) const {
    return k >= 1 && k <= max_size_ ? defects_[k].size() : 0;
  }

  /// All cliques of every size (simplexes and their faces).
  std::size_t total() const { return total_; }

  std::span<const VertexId> clique(CliqueRef ref) const {
    return {vertices_[ref.size].data() + std::size_t{ref.index} * ref.size,
            ref.size};
  }

  std::uint32_t defect_edges(CliqueRef ref) const {
    return defects_[ref.size][ref.index];
  }

  /// Cliques (of every size) that contain v.
  std::span<const CliqueRef> containing(VertexId v) const {
    if (v >= membership_.size()) return {};
    return membership_[v];
  }

  /// Registers the cliques introduced by a simplex whose (sorted) vertex set
  /// is `vertices`; bit i of `fresh_mask` marks vertices[i] as new. Every
  /// subset touching a fresh vertex is added, the rest already exist.
  std::vector<CliqueRef> add_simplex(const LabeledGraph& graph,
                                     std::span<const VertexId> vertices,
                                     std::uint32_t fresh_mask) {
    const std::size_t n = vertices.size();
    if (n > kMaxSimplexSize) throw UsageError("simplex too large for census");
    std::vector<std::uint32_t> defect_pairs;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (graph.bond(vertices[i], vertices[j]) == BondType::defect) {
          defect_pairs.push_back((1u << i) | (1u << j));
        }
      }
    }
    const VertexId highest = *std::max_element(vertices.begin(), vertices.end());
    if (membership_.size() <= highest) membership_.resize(highest + 1);

    std::vector<CliqueRef> added;
    const std::uint32_t limit = 1u << n;
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
      if ((mask & fresh_mask) == 0) continue;
      const auto k = static_cast<std::size_t>(std::popcount(mask));
      if (k > max_size_) continue;
      std::uint32_t defects = 0;
      for (const std::uint32_t pair : defect_pairs) {
        if ((mask & pair) == pair) ++defects;
      }
      const CliqueRef ref{static_cast<std::uint32_t>(k),
                          static_cast<std::uint32_t>(defects_[k].size())};
      for (std::uint32_t m = mask; m != 0; m &= m - 1) {
        const VertexId v = vertices[std::countr_zero(m)];
        vertices_[k].push_back(v);
        membership_[v].push_back(ref);
      }
      defects_[k].push_back(defects);
      ++total_;
      added.push_back(ref);
    }
    return added;
  }

  /// From-scratch census of an arbitrary graph (ordered clique extension).
  static CliqueCensus from_graph(const LabeledGraph& graph, std::size_t max_size) {
    CliqueCensus census(max_size);
    census.membership_.resize(graph.node_count());
    std::vector<VertexId> current;
    std::vector<VertexId> candidates;
    for (VertexId v = 0; v < graph.node_count(); ++v) {
      candidates.clear();
      for (const Neighbor& nb : graph.neighbors(v)) {
        if (nb.vertex > v) candidates.push_back(nb.vertex);
      }
      current.assign(1, v);
      census.extend(graph, current, candidates, 0);
    }
    return census;
  }

  /// Canonical listing: for each size k, the sorted list of
  /// (vertex set, defect count). Used for equality checks.
  using Entry = std::pair<std::vector<VertexId>, std::uint32_t>;
  std::vector<std::vector<Entry>> canonical() const {
    std::vector<std::vector<Entry>> out(max_size_ + 1);
    for (std::size_t k = 1; k <= max_size_; ++k) {
      for (std::uint32_t i = 0; i < count(k); ++i) {
        const CliqueRef ref{static_cast<std::uint32_t>(k), i};
        const auto verts = clique(ref);
        out[k].emplace_back(std::vector<VertexId>(verts.begin(), verts.end()),
                            defect_edges(ref));
      }
      std::sort(out[k].begin(), out[k].end());
    }
    return out;
  }

  friend bool operator==(const CliqueCensus& a, const CliqueCensus& b) {
    return a.max_size_ == b.max_size_ && a.canonical() == b.canonical();
  }

 private:
  void extend(const LabeledGraph& graph, std::vector<VertexId>& current,
              const std::vector<VertexId>& candidates, std::uint32_t defects) {
    const auto k = static_cast<std::uint32_t>(current.size());
    const CliqueRef ref{k, static_cast<std::uint32_t>(defects_[k].size())};
    std::vector<VertexId> sorted = current;
    std::sort(sorted.begin(), sorted.end());
    for (const VertexId v : sorted) {
      vertices_[k].push_back(v);
      membership_[v].push_back(ref);
    }
    defects_[k].push_back(defects);
    ++total_;
    if (k == max_size_) return;
    std::vector<VertexId> next;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const VertexId w = candidates[i];
      std::uint32_t added = 0;
      for (const VertexId u : current) {
        if (graph.bond(u, w) == BondType::defect) ++added;
      }
      next.clear();
      for (std::size_t j = i + 1; j < candidates.size(); ++j) {
        if (graph.has_edge(w, candidates[j])) next.push_back(candidates[j]);
      }
      current.push_back(w);
      extend(graph, current, next, defects + added);
      current.pop_back();
    }
  }

  std::size_t max_size_;
  std::vector<std::vector<VertexId>> vertices_;       // per size, flat
  std::vector<std::vector<std::uint32_t>> defects_;   // per size
  std::vector<std::vector<CliqueRef>> membership_;    // per vertex
  std::size_t total_ = 0;
};

}  // namespace simplexnet
