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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "simplexnet/errors.hpp"

namespace simplexnet {

using VertexId = std::uint32_t;

enum class BondType : std::uint8_t { pure = 0, defect = 1 };

struct Neighbor {
  VertexId vertex;
  BondType bond;
};

/// Undirected edge in canonical form, u < v.
struct Edge {
  VertexId u;
  VertexId v;
  BondType bond;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph whose edges carry a bond type. Vertex ids are
/// dense (0..node_count-1); adjacency lists are kept sorted by neighbor id.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  explicit LabeledGraph(std::size_t node_count)
      : adjacency_(node_count), defect_degree_(node_count, 0) {}

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t defect_edge_count() const { return defect_edge_count_; }

  /// Appends `count` isolated vertices and returns the id of the first one.
  VertexId add_vertices(std::size_t count = 1) {
    const auto first = static_cast<VertexId>(adjacency_.size());
    adjacency_.resize(adjacency_.size() + count);
    defect_degree_.resize(adjacency_.size(), 0);
    return first;
  }

  void add_edge(VertexId u, VertexId v, BondType bond) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw UsageError("self-loop on vertex " + std::to_string(u));
    if (has_edge(u, v)) {
      throw UsageError("parallel edge " + std::to_string(u) + "-" +
                       std::to_string(v));
    }
    insert_sorted(adjacency_[u], Neighbor{v, bond});
    insert_sorted(adjacency_[v], Neighbor{u, bond});
    ++edge_count_;
    if (bond == BondType::defect) {
      ++defect_edge_count_;
      ++defect_degree_[u];
      ++defect_degree_[v];
    }
  }

  /// Returns false when the edge is absent.
  bool remove_edge(VertexId u, VertexId v) {
    check_vertex(u);
    check_vertex(v);
    auto& lu = adjacency_[u];
    const auto it = find_in(lu, v);
    if (it == lu.end() || it->vertex != v) return false;
    const BondType bond = it->bond;
    lu.erase(it);
    auto& lv = adjacency_[v];
    lv.erase(find_in(lv, u));
    --edge_count_;
    if (bond == BondType::defect) {
      --defect_edge_count_;
      --defect_degree_[u];
      --defect_degree_[v];
    }
    return true;
  }

  bool has_edge(VertexId u, VertexId v) const { return bond(u, v).has_value(); }

  std::optional<BondType> bond(VertexId u, VertexId v) const {
    if (u >= node_count() || v >= node_count()) return std::nullopt;
    const auto& a = adjacency_[u].size() <= adjacency_[v].size()
                        ? adjacency_[u]
                        : adjacency_[v];
    const VertexId target = (&a == &adjacency_[u]) ? v : u;
    const auto it = find_in(a, target);
    if (it == a.end() || it->vertex != target) return std::nullopt;
    return it->bond;
  }

  std::span<const Neighbor> neighbors(VertexId v) const {
    check_vertex(v);
    return adjacency_[v];
  }

  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  /// Number of defect bonds incident to v.
  std::uint32_t defect_degree(VertexId v) const {
    check_vertex(v);
    return defect_degree_[v];
  }

  template <typename F>
  void for_each_edge(F&& f) const {
    for (VertexId u = 0; u < node_count(); ++u) {
      for (const Neighbor& nb : adjacency_[u]) {
        if (nb.vertex > u) f(Edge{u, nb.vertex, nb.bond});
      }
    }
  }

  /// All edges in lexicographic (u, v) order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for_each_edge([&](const Edge& e) { out.push_back(e); });
    return out;
  }

  std::vector<Edge> defect_edges() const {
    std::vector<Edge> out;
    out.reserve(defect_edge_count_);
    for_each_edge([&](const Edge& e) {
      if (e.bond == BondType::defect) out.push_back(e);
    });
    return out;
  }

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.node_count() == b.node_count() && a.edges() == b.edges();
  }

 private:
  using List = std::vector<Neighbor>;

  static List::const_iterator find_in(const List& list, VertexId v) {
    return std::lower_bound(
        list.begin(), list.end(), v,
        [](const Neighbor& nb, VertexId x) { return nb.vertex < x; });
  }
  static List::iterator find_in(List& list, VertexId v) {
    return std::lower_bound(
        list.begin(), list.end(), v,
        [](const Neighbor& nb, VertexId x) { return nb.vertex < x; });
  }
  static void insert_sorted(List& list, Neighbor nb) {
    if (list.empty() || list.back().vertex < nb.vertex) {
      list.push_back(nb);
    } else {
      list.insert(find_in(list, nb.vertex), nb);
    }
  }
  void check_vertex(VertexId v) const {
    if (v >= node_count()) {
      throw UsageError("vertex " + std::to_string(v) + " out of range [0, " +
                       std::to_string(node_count()) + ")");
    }
  }

  std::vector<List> adjacency_;
  std::vector<std::uint32_t> defect_degree_;
  std::size_t edge_count_ = 0;
  std::size_t defect_edge_count_ = 0;
};

/// Fraction of edges carrying a defect bond.
inline double defect_concentration(const LabeledGraph& graph) {
  if (graph.edge_count() == 0) {
    throw UndefinedInputError("defect concentration of a graph without edges");
  }
  return static_cast<double>(graph.defect_edge_count()) /
         static_cast<double>(graph.edge_count());
}

/// Connected-component label per vertex; labels are numbered in order of
/// each component's smallest vertex id.
inline std::vector<std::uint32_t> component_labels(const LabeledGraph& graph,
                                                   std::size_t* count = nullptr) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> label(graph.node_count(), kUnset);
  std::uint32_t next = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < graph.node_count(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const Neighbor& nb : graph.neighbors(v)) {
        if (label[nb.vertex] == kUnset) {
          label[nb.vertex] = next;
          stack.push_back(nb.vertex);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

inline bool is_connected(const LabeledGraph& graph) {
  std::size_t count = 0;
  component_labels(graph, &count);
  return count <= 1;
}

/// Subgraph induced by `vertices` (which must be distinct); vertex i of the
/// result is vertices[i].
inline LabeledGraph induced_subgraph(const LabeledGraph& graph,
                                     std::span<const VertexId> vertices) {
  constexpr auto kAbsent = static_cast<VertexId>(-1);
  std::vector<VertexId> local(graph.node_count(), kAbsent);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    local[vertices[i]] = static_cast<VertexId>(i);
  }
  LabeledGraph sub(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (const Neighbor& nb : graph.neighbors(vertices[i])) {
      const VertexId j = local[nb.vertex];
      if (j != kAbsent && j > i) sub.add_edge(static_cast<VertexId>(i), j, nb.bond);
    }
  }
  return sub;
}

}  // namespace simplexnet
