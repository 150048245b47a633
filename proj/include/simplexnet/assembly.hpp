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

#include "simplexnet/clique_census.hpp"
#include "simplexnet/docking.hpp"
#include "simplexnet/errors.hpp"
#include "simplexnet/graph.hpp"
#include "simplexnet/rng.hpp"
#include "simplexnet/simplex.hpp"

namespace simplexnet {

struct GrowthConfig {
  std::size_t target_nodes = 1000;
  double affinity = 0.0;             // nu
  double defect_probability = 0.0;   // p
  double size_exponent = 2.0;        // alpha
  std::size_t min_size = 2;
  std::size_t max_size = 10;
  std::uint64_t seed = 0;
  CompatibilityMode mode = CompatibilityMode::contamination;

  void validate() const {
    if (min_size < 2 || min_size > max_size) {
      throw UsageError("need 2 <= n_min <= n_max");
    }
    if (max_size > kMaxSimplexSize) {
      throw UsageError("n_max above " + std::to_string(kMaxSimplexSize));
    }
    if (!(defect_probability >= 0.0 && defect_probability <= 1.0)) {
      throw UsageError("defect probability outside [0, 1]");
    }
    if (target_nodes < min_size) throw UsageError("target nodes below n_min");
  }

  friend bool operator==(const GrowthConfig&, const GrowthConfig&) = default;
};

/// One placed simplex: step t, its size n, shared face order q (-1 for the
/// seed), n_a added vertices, and the totals right after the step.
struct EventRecord {
  std::size_t t = 0;
  std::size_t n = 0;
  int q = -1;
  std::size_t added = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t simplexes = 0;
  std::size_t faces = 0;  // every clique up to n_max vertices, Sigma(t)

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

/// The growing assembly: graph, placed simplexes, event log, clique census
/// and docking-site index. Mutated only through attach_at().
class AssemblyState {
 public:
  explicit AssemblyState(GrowthConfig config)
      : config_((config.validate(), config)),
        rng_(config.seed),
        census_(config.max_size),
        docking_(config.mode, config.max_size) {}

  const GrowthConfig& config() const { return config_; }
  const LabeledGraph& graph() const { return graph_; }
  const std::vector<PlacedSimplex>& placed() const { return placed_; }
  const std::vector<EventRecord>& events() const { return events_; }
  const CliqueCensus& census() const { return census_; }
  const DockingIndex& docking() const { return docking_; }
  Pcg32& rng() { return rng_; }
  bool empty() const { return graph_.node_count() == 0; }

  /// Places `spec` with spec vertex i glued to network vertex assignment[i]
  /// (nullopt: a fresh vertex). The shared vertices must form a clique whose
  /// bonds match the spec; fresh vertices get ids in local-index order.
  const EventRecord& attach_at(const SimplexSpec& spec,
                               std::span<const std::optional<VertexId>> assignment) {
    const std::size_t n = spec.size();
    if (assignment.size() != n) throw UsageError("assignment size mismatch");
    if (n > config_.max_size) throw UsageError("simplex larger than census bound");

    std::vector<VertexId> global(n);
    std::size_t shared = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (assignment[i]) {
        if (*assignment[i] >= graph_.node_count()) {
          throw UsageError("assignment names a missing vertex");
        }
        global[i] = *assignment[i];
        ++shared;
      }
    }
    if (shared == n) throw UsageError("simplex must add at least one vertex");
    if (shared == 0 && !empty()) {
      throw UsageError("simplex must share at least one vertex");
    }
    const auto& defect = spec.defect_edge();
    auto is_defect = [&](std::size_t i, std::size_t j) {
      return defect && defect->first == i && defect->second == j;
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!assignment[i] || !assignment[j]) continue;
        const BondType bond = is_defect(i, j) ? BondType::defect : BondType::pure;
        if (graph_.bond(global[i], global[j]) != bond) {
          throw UsageError("shared face does not match the spec's bonds");
        }
      }
    }

    const std::size_t old_nodes = graph_.node_count();
    VertexId next = graph_.add_vertices(n - shared);
    for (std::size_t i = 0; i < n; ++i) {
      if (!assignment[i]) global[i] = next++;
    }

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (assignment[i] && assignment[j]) continue;
        const BondType bond = is_defect(i, j) ? BondType::defect : BondType::pure;
        graph_.add_edge(global[i], global[j], bond);
        if (bond == BondType::defect) {
          for (const VertexId v : {global[i], global[j]}) {
            if (v < old_nodes) docking_.on_defect_degree_increment(census_, v);
          }
        }
      }
    }

    std::vector<std::pair<VertexId, bool>> order;
    for (std::size_t i = 0; i < n; ++i) order.emplace_back(global[i], !assignment[i]);
    std::sort(order.begin(), order.end());
    std::vector<VertexId> sorted(n);
    std::uint32_t fresh_mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sorted[i] = order[i].first;
      if (order[i].second) fresh_mask |= 1u << i;
    }
    const auto added = census_.add_simplex(graph_, sorted, fresh_mask);
    docking_.on_new_cliques(graph_, census_, added);

    PlacedSimplex placed;
    placed.vertices = sorted;
    if (defect) {
      auto a = global[defect->first];
      auto b = global[defect->second];
      if (a > b) std::swap(a, b);
      placed.defect_edge = std::make_pair(a, b);
    }
    placed.step = placed_.size();
    placed.shared_order = static_cast<int>(shared) - 1;
    placed_.push_back(std::move(placed));

    EventRecord rec;
    rec.t = placed_.size() - 1;
    rec.n = n;
    rec.q = static_cast<int>(shared) - 1;
    rec.added = n - shared;
    rec.nodes = graph_.node_count();
    rec.edges = graph_.edge_count();
    rec.simplexes = placed_.size();
    rec.faces = census_.total();
    events_.push_back(rec);
    return events_.back();
  }

 private:
  GrowthConfig config_;
  Pcg32 rng_;
  LabeledGraph graph_;
  std::vector<PlacedSimplex> placed_;
  std::vector<EventRecord> events_;
  CliqueCensus census_;
  DockingIndex docking_;
};

}  // namespace simplexnet
