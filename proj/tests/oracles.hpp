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

// Independent reference implementations used by the unit and acceptance
// tests. They favour obviousness over speed and share no code with the
// library beyond the graph type.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "simplexnet/graph.hpp"
#include "simplexnet/rng.hpp"

namespace oracle {

using simplexnet::BondType;
using simplexnet::LabeledGraph;
using simplexnet::VertexId;
using Mask = std::uint64_t;

inline std::vector<Mask> adjacency_masks(const LabeledGraph& g) {
  std::vector<Mask> adj(g.node_count(), 0);
  g.for_each_edge([&](const simplexnet::Edge& e) {
    adj[e.u] |= Mask{1} << e.v;
    adj[e.v] |= Mask{1} << e.u;
  });
  return adj;
}

inline std::vector<VertexId> members(Mask m) {
  std::vector<VertexId> out;
  for (; m; m &= m - 1) out.push_back(static_cast<VertexId>(std::countr_zero(m)));
  return out;
}

// Every vertex subset that is complete, with at most max_size vertices.
// Walks the include/exclude tree over vertices 0..N-1 and abandons a branch
// as soon as the chosen subset stops being complete.
inline std::vector<Mask> complete_subsets(const LabeledGraph& g, std::size_t max_size = 64) {
  const auto adj = adjacency_masks(g);
  const std::size_t n = g.node_count();
  std::vector<Mask> out;
  std::function<void(std::size_t, Mask)> walk = [&](std::size_t v, Mask chosen) {
    if (v == n) {
      if (chosen) out.push_back(chosen);
      return;
    }
    walk(v + 1, chosen);
    const bool fits = (adj[v] & chosen) == chosen &&
                      static_cast<std::size_t>(std::popcount(chosen)) < max_size;
    if (fits) walk(v + 1, chosen | (Mask{1} << v));
  };
  walk(0, 0);
  return out;
}

inline std::vector<std::vector<VertexId>> maximal(const LabeledGraph& g) {
  const auto adj = adjacency_masks(g);
  std::vector<std::vector<VertexId>> out;
  for (const Mask s : complete_subsets(g)) {
    bool extendable = false;
    for (VertexId v = 0; v < g.node_count() && !extendable; ++v) {
      if (!(s >> v & 1) && (adj[v] & s) == s) extendable = true;
    }
    if (!extendable) out.push_back(members(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::size_t> f_counts(const LabeledGraph& g, std::size_t levels) {
  std::vector<std::size_t> f(levels, 0);
  for (const Mask s : complete_subsets(g)) {
    const auto k = static_cast<std::size_t>(std::popcount(s));
    if (k - 1 < levels) ++f[k - 1];
  }
  return f;
}

struct Vectors {
  std::vector<std::size_t> Q, n;
  std::vector<double> tsv;
  int q_star = 0;
};

// Structure vectors straight from the definitions: per level, a BFS over the
// maximal cliques of order >= q linked when they share >= q+1 vertices.
inline Vectors structure_vectors(const std::vector<std::vector<VertexId>>& cliques) {
  std::size_t top = 0;
  for (const auto& c : cliques) top = std::max(top, c.size());
  Vectors v;
  for (std::size_t q = 0; q + 1 <= top; ++q) {
    std::vector<std::size_t> alive;
    for (std::size_t i = 0; i < cliques.size(); ++i) {
      if (cliques[i].size() >= q + 1) alive.push_back(i);
    }
    auto shared = [&](std::size_t a, std::size_t b) {
      std::size_t s = 0;
      for (const VertexId x : cliques[a]) {
        s += std::count(cliques[b].begin(), cliques[b].end(), x);
      }
      return s;
    };
    std::vector<bool> seen(alive.size(), false);
    std::size_t components = 0;
    for (std::size_t i = 0; i < alive.size(); ++i) {
      if (seen[i]) continue;
      ++components;
      std::queue<std::size_t> todo;
      todo.push(i);
      seen[i] = true;
      while (!todo.empty()) {
        const std::size_t a = todo.front();
        todo.pop();
        for (std::size_t b = 0; b < alive.size(); ++b) {
          if (!seen[b] && shared(alive[a], alive[b]) >= q + 1) {
            seen[b] = true;
            todo.push(b);
          }
        }
      }
    }
    v.Q.push_back(components);
    v.n.push_back(alive.size());
    v.tsv.push_back(alive.empty() ? 0.0
                                  : 1.0 - static_cast<double>(components) /
                                              static_cast<double>(alive.size()));
  }
  v.q_star = static_cast<int>(top);
  for (std::size_t q = 1; q < v.Q.size(); ++q) {
    if (v.n[q] > 0 && v.tsv[q] == 0.0) {
      v.q_star = static_cast<int>(q);
      break;
    }
  }
  return v;
}

inline LabeledGraph random_graph(std::size_t n, double density, simplexnet::Pcg32& rng,
                                 double defect_share = 0.0) {
  LabeledGraph g(n);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (rng.bernoulli(density)) {
        g.add_edge(u, v, rng.bernoulli(defect_share) ? BondType::defect : BondType::pure);
      }
    }
  }
  return g;
}

// Hop distances by Floyd-Warshall; -1 for unreachable pairs.
inline std::vector<std::vector<int>> floyd(const LabeledGraph& g) {
  const std::size_t n = g.node_count();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  g.for_each_edge([&](const simplexnet::Edge& e) { d[e.u][e.v] = d[e.v][e.u] = 1; });
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (int& x : row)
      if (x == inf) x = -1;
  return d;
}

// Twice the Gromov four-point delta over all ordered quadruples.
inline int twice_delta(const std::vector<std::vector<int>>& d) {
  const std::size_t n = d.size();
  int best = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t e = 0; e < n; ++e) {
          int s[3] = {d[a][b] + d[c][e], d[a][c] + d[b][e], d[a][e] + d[b][c]};
          std::sort(s, s + 3);
          best = std::max(best, s[2] - s[1]);
        }
  return best;
}

inline simplexnet::LabeledGraph cycle(std::size_t n) {
  LabeledGraph g(n);
  for (VertexId v = 0; v < n; ++v) {
    g.add_edge(v, static_cast<VertexId>((v + 1) % n), BondType::pure);
  }
  return g;
}

// Newman-Girvan modularity of a labelling, from the definition
// Q = (1/2m) sum_ij (A_ij - k_i k_j / 2m) [c_i == c_j].
inline double modularity(const LabeledGraph& g, const std::vector<std::uint32_t>& label) {
  const double two_m = 2.0 * static_cast<double>(g.edge_count());
  double q = 0.0;
  for (VertexId i = 0; i < g.node_count(); ++i) {
    for (VertexId j = 0; j < g.node_count(); ++j) {
      if (label[i] != label[j]) continue;
      const double a = g.has_edge(i, j) ? 1.0 : 0.0;
      q += a - static_cast<double>(g.degree(i)) * static_cast<double>(g.degree(j)) / two_m;
    }
  }
  return q / two_m;
}

// Best modularity over every set partition (restricted growth strings).
inline std::pair<double, std::vector<std::uint32_t>> best_partition(const LabeledGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> label(n, 0);
  std::pair<double, std::vector<std::uint32_t>> best{-1.0, label};
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t used) {
    if (i == n) {
      const double q = modularity(g, label);
      if (q > best.first + 1e-12) best = {q, label};
      return;
    }
    for (std::uint32_t c = 0; c <= used && c < n; ++c) {
      label[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  label[0] = 0;
  rec(1, 1);
  return best;
}

// True when vertex ids form a reverse perfect elimination order: the
// lower-id neighbours of every vertex are pairwise adjacent.
inline bool arrival_order_is_elimination_order(const LabeledGraph& g) {
  for (VertexId v = 0; v < g.node_count(); ++v) {
    std::vector<VertexId> earlier;
    for (const auto& nb : g.neighbors(v)) {
      if (nb.vertex < v) earlier.push_back(nb.vertex);
    }
    for (std::size_t i = 0; i < earlier.size(); ++i)
      for (std::size_t j = i + 1; j < earlier.size(); ++j)
        if (!g.has_edge(earlier[i], earlier[j])) return false;
  }
  return true;
}

// Largest number of defect bonds inside a single triangle.
inline int max_defects_per_triangle(const LabeledGraph& g) {
  int best = 0;
  g.for_each_edge([&](const simplexnet::Edge& e) {
    for (const auto& nb : g.neighbors(e.u)) {
      if (nb.vertex <= e.v || !g.has_edge(e.v, nb.vertex)) continue;
      const int d = (e.bond == BondType::defect) + (nb.bond == BondType::defect) +
                    (*g.bond(e.v, nb.vertex) == BondType::defect);
      best = std::max(best, d);
    }
  });
  return best;
}

}  // namespace oracle
