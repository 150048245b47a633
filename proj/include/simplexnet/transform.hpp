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
#include <string>
#include <utility>
#include <vector>

#include "simplexnet/errors.hpp"
#include "simplexnet/graph.hpp"
#include "simplexnet/rng.hpp"

namespace simplexnet {

struct RemovalReport {
  std::size_t removed = 0;
  std::size_t removed_defect = 0;  // how many of the removed bonds were defects
  std::size_t components = 0;
  std::size_t largest_component = 0;
};

struct ComponentSplit {
  LabeledGraph subgraph;             // induced on the largest component
  std::vector<VertexId> vertices;    // original id of each subgraph vertex
  std::vector<std::size_t> sizes;    // in order of smallest member id
};

/// Induced subgraph on the largest connected component. Ties go to the
/// component holding the smallest vertex id.
inline ComponentSplit largest_component(const LabeledGraph& graph) {
  std::size_t count = 0;
  const auto label = component_labels(graph, &count);
  ComponentSplit out;
  out.sizes.assign(count, 0);
  for (const auto l : label) ++out.sizes[l];
  if (count == 0) return out;
  const auto best = static_cast<std::uint32_t>(
      std::max_element(out.sizes.begin(), out.sizes.end()) - out.sizes.begin());
  for (VertexId v = 0; v < graph.node_count(); ++v) {
    if (label[v] == best) out.vertices.push_back(v);
  }
  out.subgraph = induced_subgraph(graph, out.vertices);
  return out;
}

namespace detail {
inline void fill_components(const LabeledGraph& g, RemovalReport& report) {
  std::size_t count = 0;
  const auto label = component_labels(g, &count);
  std::vector<std::size_t> sizes(count, 0);
  for (const auto l : label) ++sizes[l];
  report.components = count;
  report.largest_component = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}
}  // namespace detail

/// Drops every defect bond; vertices (including ones left isolated) stay.
inline std::pair<LabeledGraph, RemovalReport> remove_defect_edges(const LabeledGraph& graph) {
  LabeledGraph out(graph.node_count());
  RemovalReport report;
  graph.for_each_edge([&](const Edge& e) {
    if (e.bond == BondType::pure) {
      out.add_edge(e.u, e.v, e.bond);
    } else {
      ++report.removed;
      ++report.removed_defect;
    }
  });
  detail::fill_components(out, report);
  return {std::move(out), report};
}

/// Deletes `count` edges chosen uniformly without replacement. Remaining
/// bonds keep their types.
inline std::pair<LabeledGraph, RemovalReport> remove_random_edges(
    const LabeledGraph& graph, std::size_t count, Pcg32& rng) {
  if (count > graph.edge_count()) {
    throw UsageError("cannot remove " + std::to_string(count) + " of " +
                     std::to_string(graph.edge_count()) + " edges");
  }
  std::vector<Edge> edges = graph.edges();
  // Partial Fisher-Yates: the first `count` slots are the removed edges.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(edges.size() - i);
    std::swap(edges[i], edges[j]);
  }
  RemovalReport report;
  report.removed = count;
  LabeledGraph out(graph.node_count());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i < count) {
      if (edges[i].bond == BondType::defect) ++report.removed_defect;
      continue;
    }
    out.add_edge(edges[i].u, edges[i].v, edges[i].bond);
  }
  detail::fill_components(out, report);
  return {std::move(out), report};
}

/// Same edges with every bond relabelled pure.
inline LabeledGraph clear_bond_types(const LabeledGraph& graph) {
  LabeledGraph out(graph.node_count());
  graph.for_each_edge([&](const Edge& e) { out.add_edge(e.u, e.v, BondType::pure); });
  return out;
}

}  // namespace simplexnet
