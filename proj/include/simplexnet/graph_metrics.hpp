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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "simplexnet/errors.hpp"
#include "simplexnet/graph.hpp"
#include "simplexnet/metric_geometry.hpp"
#include "simplexnet/rng.hpp"
#include "simplexnet/transform.hpp"

namespace simplexnet {

/// Mean hop distance over unordered pairs of a connected graph.
inline double average_path_length(const DistanceMatrix& dm) {
  const std::size_t n = dm.size();
  if (n < 2) throw UndefinedInputError("path length needs at least two vertices");
  long double total = 0.0L;
  for (VertexId u = 0; u < n; ++u) {
    const Distance* r = dm.row(u);
    std::uint64_t s = 0;
    for (VertexId v = u + 1; v < n; ++v) s += r[v];
    total += static_cast<long double>(s);
  }
  return static_cast<double>(total / (static_cast<long double>(n) * (n - 1) / 2.0L));
}

/// Mean distance over all connected pairs, without storing a matrix.
inline double reachable_path_length(const LabeledGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<std::uint32_t> dist(n);
  std::vector<VertexId> queue(n);
  long double total = 0.0L;
  std::uint64_t pairs = 0;
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  for (VertexId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnset);
    dist[s] = 0;
    std::size_t head = 0;
    std::size_t tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      const VertexId v = queue[head++];
      for (const Neighbor& nb : graph.neighbors(v)) {
        if (dist[nb.vertex] == kUnset) {
          dist[nb.vertex] = dist[v] + 1;
          queue[tail++] = nb.vertex;
          if (nb.vertex > s) {
            total += dist[nb.vertex];
            ++pairs;
          }
        }
      }
    }
  }
  if (pairs == 0) return 0.0;
  return static_cast<double>(total / static_cast<long double>(pairs));
}

/// What a vertex of degree < 2 (no neighbour pairs) adds to the mean local
/// clustering: a zero term, or nothing (it is left out of the average).
enum class LowDegreeVertices { count_as_zero, exclude };

/// Mean local clustering: triangles through v over C(deg v, 2).
inline double clustering_coefficient(const LabeledGraph& graph,
                                     LowDegreeVertices low = LowDegreeVertices::count_as_zero) {
  const std::size_t n = graph.node_count();
  if (n == 0) return 0.0;
  std::vector<char> mark(n, 0);
  double sum = 0.0;
  std::size_t counted = 0;
  for (VertexId v = 0; v < n; ++v) {
    const auto nbrs = graph.neighbors(v);
    const std::size_t k = nbrs.size();
    if (k < 2) continue;
    ++counted;
    for (const Neighbor& nb : nbrs) mark[nb.vertex] = 1;
    std::uint64_t links = 0;
    for (const Neighbor& nb : nbrs) {
      for (const Neighbor& w : graph.neighbors(nb.vertex)) {
        if (w.vertex > nb.vertex && mark[w.vertex]) ++links;
      }
    }
    for (const Neighbor& nb : nbrs) mark[nb.vertex] = 0;
    sum += static_cast<double>(links) / (static_cast<double>(k) * (k - 1) / 2.0);
  }
  if (low == LowDegreeVertices::exclude) {
    return counted == 0 ? 0.0 : sum / static_cast<double>(counted);
  }
  return sum / static_cast<double>(n);
}

/// Newman-Girvan modularity of a given partition (resolution 1).
inline double partition_modularity(const LabeledGraph& graph,
                                   const std::vector<std::uint32_t>& community) {
  const double m = static_cast<double>(graph.edge_count());
  if (m == 0) throw UndefinedInputError("modularity of a graph without edges");
  std::unordered_map<std::uint32_t, double> internal;
  std::unordered_map<std::uint32_t, double> degree_sum;
  for (VertexId v = 0; v < graph.node_count(); ++v) {
    degree_sum[community[v]] += static_cast<double>(graph.degree(v));
  }
  graph.for_each_edge([&](const Edge& e) {
    if (community[e.u] == community[e.v]) internal[community[e.u]] += 1.0;
  });
  double q = 0.0;
  for (const auto& [c, tot] : degree_sum) {
    const auto it = internal.find(c);
    const double in = it == internal.end() ? 0.0 : it->second;
    q += in / m - (tot / (2.0 * m)) * (tot / (2.0 * m));
  }
  return q;
}

namespace detail {

// Multi-level greedy modularity optimisation (Louvain).
class Louvain {
 public:
  Louvain(const LabeledGraph& graph, Pcg32& rng) : rng_(rng) {
    const std::size_t n = graph.node_count();
    adj_.resize(n);
    self_.assign(n, 0.0);
    for (VertexId v = 0; v < n; ++v) {
      for (const Neighbor& nb : graph.neighbors(v)) adj_[v].push_back({nb.vertex, 1.0});
    }
    total_weight_ = static_cast<double>(graph.edge_count());
    membership_.resize(n);
    std::iota(membership_.begin(), membership_.end(), std::uint32_t{0});
  }

  std::vector<std::uint32_t> run() {
    for (;;) {
      const auto [moved, community] = one_level();
      for (auto& c : membership_) c = community[c];
      if (!moved) break;
      aggregate(community);
    }
    return renumber(membership_);
  }

 private:
  struct Arc {
    std::uint32_t to;
    double weight;
  };

  double node_degree(std::size_t v) const {
    double k = 2.0 * self_[v];
    for (const Arc& a : adj_[v]) k += a.weight;
    return k;
  }

  std::pair<bool, std::vector<std::uint32_t>> one_level() {
    const std::size_t n = adj_.size();
    std::vector<std::uint32_t> community(n);
    std::iota(community.begin(), community.end(), std::uint32_t{0});
    std::vector<double> k(n);
    std::vector<double> tot(n);
    for (std::size_t v = 0; v < n; ++v) tot[v] = k[v] = node_degree(v);
    const double two_m = 2.0 * total_weight_;

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), std::uint32_t{0});
    shuffle(order.begin(), order.end(), rng_);

    std::vector<double> link(n, 0.0);
    std::vector<std::uint32_t> touched;
    bool any_move = false;
    bool improved = true;
    while (improved) {
      improved = false;
      for (const std::uint32_t v : order) {
        const std::uint32_t own = community[v];
        touched.clear();
        touched.push_back(own);
        link[own] = 0.0;
        for (const Arc& a : adj_[v]) {
          const std::uint32_t c = community[a.to];
          if (link[c] == 0.0 && std::find(touched.begin(), touched.end(), c) == touched.end()) {
            touched.push_back(c);
          }
          link[c] += a.weight;
        }
        tot[own] -= k[v];
        std::uint32_t best = own;
        double best_gain = link[own] - tot[own] * k[v] / two_m;
        for (const std::uint32_t c : touched) {
          const double gain = link[c] - tot[c] * k[v] / two_m;
          if (gain > best_gain + 1e-12) {
            best_gain = gain;
            best = c;
          }
        }
        tot[best] += k[v];
        community[v] = best;
        for (const std::uint32_t c : touched) link[c] = 0.0;
        if (best != own) {
          improved = true;
          any_move = true;
        }
      }
    }
    return {any_move, renumber(community)};
  }

  void aggregate(const std::vector<std::uint32_t>& community) {
    const std::size_t groups =
        community.empty() ? 0 : *std::max_element(community.begin(), community.end()) + 1;
    std::vector<std::unordered_map<std::uint32_t, double>> merged(groups);
    std::vector<double> self(groups, 0.0);
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      const std::uint32_t cv = community[v];
      self[cv] += self_[v];
      for (const Arc& a : adj_[v]) {
        const std::uint32_t cu = community[a.to];
        if (cu == cv) {
          self[cv] += a.weight / 2.0;  // each internal arc is seen twice
        } else {
          merged[cv][cu] += a.weight;
        }
      }
    }
    adj_.assign(groups, {});
    for (std::size_t c = 0; c < groups; ++c) {
      std::vector<Arc> arcs;
      for (const auto& [to, w] : merged[c]) arcs.push_back({to, w});
      std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
      adj_[c] = std::move(arcs);
    }
    self_ = std::move(self);
  }

  static std::vector<std::uint32_t> renumber(const std::vector<std::uint32_t>& labels) {
    std::unordered_map<std::uint32_t, std::uint32_t> map;
    std::vector<std::uint32_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const auto [it, inserted] =
          map.try_emplace(labels[i], static_cast<std::uint32_t>(map.size()));
      out[i] = it->second;
    }
    return out;
  }

  Pcg32& rng_;
  std::vector<std::vector<Arc>> adj_;
  std::vector<double> self_;
  double total_weight_ = 0.0;
  std::vector<std::uint32_t> membership_;
};

}  // namespace detail

struct ModularityResult {
  double value = 0.0;
  std::vector<std::uint32_t> communities;
};

/// Best modularity over `restarts` Louvain runs; restart r is seeded with
/// mix_seed(seed, r), so more restarts never give a lower value.
inline ModularityResult modularity(const LabeledGraph& graph, std::size_t restarts,
                                   std::uint64_t seed) {
  if (graph.edge_count() == 0) throw UndefinedInputError("modularity of a graph without edges");
  ModularityResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
    Pcg32 rng(mix_seed(seed, r));
    auto communities = detail::Louvain(graph, rng).run();
    const double q = partition_modularity(graph, communities);
    if (q > best.value) {
      best.value = q;
      best.communities = std::move(communities);
    }
  }
  return best;
}

struct MetricsOptions {
  std::size_t modularity_restarts = 5;
  std::uint64_t seed = 0;
  bool with_modularity = true;
};

/// One row of graph measures. Distance-based fields and clustering refer to
/// the largest component; N, E, c and <k> are global. `clustering` averages
/// over vertices with degree >= 2, `clustering_zero` counts the others as 0.
struct MetricsRow {
  std::string variant = "base";
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t defect_edges = 0;
  double defect_concentration = 0.0;
  double mean_degree = 0.0;
  double mean_path_length = 0.0;
  double clustering = 0.0;
  double clustering_zero = 0.0;
  double modularity = std::numeric_limits<double>::quiet_NaN();
  std::size_t diameter = 0;
  std::size_t components = 0;
  std::size_t largest_component = 0;
  // Whole-graph counterparts, differing from the above only when components > 1.
  double clustering_all = 0.0;
  double path_length_reachable = 0.0;
};

inline MetricsRow metrics_row(const LabeledGraph& graph, const ComponentSplit& largest,
                              const DistanceMatrix& dm, const MetricsOptions& options) {
  MetricsRow row;
  row.nodes = graph.node_count();
  row.edges = graph.edge_count();
  row.defect_edges = graph.defect_edge_count();
  row.defect_concentration = row.edges > 0 ? defect_concentration(graph) : 0.0;
  row.mean_degree = row.nodes > 0 ? 2.0 * static_cast<double>(row.edges) /
                                        static_cast<double>(row.nodes)
                                  : 0.0;
  row.components = largest.sizes.size();
  row.largest_component = largest.vertices.size();
  row.mean_path_length = dm.size() >= 2 ? average_path_length(dm) : 0.0;
  row.diameter = dm.diameter();
  row.clustering = clustering_coefficient(largest.subgraph, LowDegreeVertices::exclude);
  row.clustering_zero = clustering_coefficient(largest.subgraph);
  if (row.components > 1) {
    row.clustering_all = clustering_coefficient(graph, LowDegreeVertices::exclude);
    row.path_length_reachable = reachable_path_length(graph);
  } else {
    row.clustering_all = row.clustering;
    row.path_length_reachable = row.mean_path_length;
  }
  if (options.with_modularity && row.edges > 0) {
    row.modularity = modularity(graph, options.modularity_restarts, options.seed).value;
  }
  return row;
}

inline MetricsRow metrics_row(const LabeledGraph& graph, const MetricsOptions& options) {
  const ComponentSplit largest = largest_component(graph);
  const DistanceMatrix dm(largest.subgraph);
  return metrics_row(graph, largest, dm, options);
}

}  // namespace simplexnet
