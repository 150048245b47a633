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
#include <iterator>
#include <numeric>
#include <span>
#include <vector>

#include "simplexnet/errors.hpp"
#include "simplexnet/graph.hpp"

namespace simplexnet {

/// Maximal cliques of a graph, each sorted, the list in lexicographic order.
struct CliqueComplex {
  std::size_t node_count = 0;
  std::vector<std::vector<VertexId>> cliques;

  /// Order (size - 1) of the largest clique; -1 for an empty complex.
  int max_order() const {
    std::size_t best = 0;
    for (const auto& c : cliques) best = std::max(best, c.size());
    return static_cast<int>(best) - 1;
  }

  friend bool operator==(const CliqueComplex&, const CliqueComplex&) = default;
};

namespace detail {

using SortedSet = std::vector<VertexId>;

inline SortedSet intersect(const SortedSet& a, const SortedSet& b) {
  SortedSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::size_t intersection_size(const SortedSet& a, const SortedSet& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

class BronKerbosch {
 public:
  explicit BronKerbosch(const LabeledGraph& graph) : adj_(graph.node_count()) {
    for (VertexId v = 0; v < graph.node_count(); ++v) {
      for (const Neighbor& nb : graph.neighbors(v)) adj_[v].push_back(nb.vertex);
    }
  }

  std::vector<std::vector<VertexId>> run() {
    const auto order = degeneracy_order();
    std::vector<std::size_t> position(adj_.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    for (const VertexId v : order) {
      SortedSet later;
      SortedSet earlier;
      for (const VertexId w : adj_[v]) {
        (position[w] > position[v] ? later : earlier).push_back(w);
      }
      std::vector<VertexId> r{v};
      expand(r, std::move(later), std::move(earlier));
    }
    for (auto& c : found_) std::sort(c.begin(), c.end());
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  // Tomita-style pivoting: branch only on P \ N(u) for the pivot u in P u X
  // that covers the most of P.
  void expand(std::vector<VertexId>& r, SortedSet p, SortedSet x) {
    if (p.empty()) {
      if (x.empty()) found_.push_back(r);
      return;
    }
    VertexId pivot = p.front();
    std::size_t best = 0;
    for (const auto* set : {&p, &x}) {
      for (const VertexId u : *set) {
        const std::size_t s = intersection_size(p, adj_[u]);
        if (s > best) {
          best = s;
          pivot = u;
        }
      }
    }
    SortedSet branch;
    std::set_difference(p.begin(), p.end(), adj_[pivot].begin(), adj_[pivot].end(),
                        std::back_inserter(branch));
    for (const VertexId v : branch) {
      r.push_back(v);
      expand(r, intersect(p, adj_[v]), intersect(x, adj_[v]));
      r.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }

  // Repeatedly removes a minimum-degree vertex (bucket queue).
  std::vector<VertexId> degeneracy_order() const {
    const std::size_t n = adj_.size();
    std::vector<std::size_t> degree(n);
    std::size_t max_degree = 0;
    for (std::size_t v = 0; v < n; ++v) {
      degree[v] = adj_[v].size();
      max_degree = std::max(max_degree, degree[v]);
    }
    std::vector<std::vector<VertexId>> buckets(max_degree + 1);
    for (std::size_t v = 0; v < n; ++v) buckets[degree[v]].push_back(static_cast<VertexId>(v));
    std::vector<bool> removed(n, false);
    std::vector<VertexId> order;
    order.reserve(n);
    std::size_t d = 0;
    while (order.size() < n) {
      d = std::min(d, max_degree);
      while (buckets[d].empty()) ++d;
      const VertexId v = buckets[d].back();
      buckets[d].pop_back();
      if (removed[v] || degree[v] != d) continue;  // stale entry
      removed[v] = true;
      order.push_back(v);
      for (const VertexId w : adj_[v]) {
        if (!removed[w]) {
          --degree[w];
          buckets[degree[w]].push_back(w);
          d = std::min(d, degree[w]);
        }
      }
    }
    return order;
  }

  std::vector<SortedSet> adj_;
  std::vector<std::vector<VertexId>> found_;
};

}  // namespace detail

/// All maximal cliques (Bron-Kerbosch with pivoting over a degeneracy order).
/// Isolated vertices come out as singleton cliques.
inline CliqueComplex maximal_cliques(const LabeledGraph& graph) {
  CliqueComplex complex;
  complex.node_count = graph.node_count();
  complex.cliques = detail::BronKerbosch(graph).run();
  return complex;
}

/// Clique-by-vertex membership matrix, stored by rows (the cliques).
class IncidenceMatrix {
 public:
  explicit IncidenceMatrix(const CliqueComplex& complex)
      : columns_(complex.node_count), rows_(complex.cliques) {
    if (rows_.empty()) throw UsageError("incidence matrix of an empty complex");
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t columns() const { return columns_; }

  int at(std::size_t row, VertexId column) const {
    const auto& r = rows_.at(row);
    return std::binary_search(r.begin(), r.end(), column) ? 1 : 0;
  }

  std::span<const VertexId> row(std::size_t i) const { return rows_.at(i); }

  std::vector<std::size_t> row_sums() const {
    std::vector<std::size_t> out;
    for (const auto& r : rows_) out.push_back(r.size());
    return out;
  }

  std::vector<std::size_t> column_sums() const {
    std::vector<std::size_t> out(columns_, 0);
    for (const auto& r : rows_) {
      for (const VertexId v : r) ++out[v];
    }
    return out;
  }

  /// Entry (i, j) of Lambda Lambda^T: vertices shared by cliques i and j.
  std::size_t overlap(std::size_t i, std::size_t j) const {
    return detail::intersection_size(rows_.at(i), rows_.at(j));
  }

  struct Overlap {
    std::uint32_t first;
    std::uint32_t second;
    std::uint32_t shared;
  };

  /// Every off-diagonal pair i < j with a nonzero overlap.
  std::vector<Overlap> overlaps() const {
    std::vector<std::vector<std::uint32_t>> by_vertex(columns_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (const VertexId v : rows_[i]) by_vertex[v].push_back(static_cast<std::uint32_t>(i));
    }
    std::vector<std::uint32_t> shared(rows_.size(), 0);
    std::vector<std::uint32_t> touched;
    std::vector<Overlap> out;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      touched.clear();
      for (const VertexId v : rows_[i]) {
        for (const std::uint32_t j : by_vertex[v]) {
          if (j <= i) continue;
          if (shared[j]++ == 0) touched.push_back(j);
        }
      }
      for (const std::uint32_t j : touched) {
        out.push_back({static_cast<std::uint32_t>(i), j, shared[j]});
        shared[j] = 0;
      }
    }
    return out;
  }

 private:
  std::size_t columns_;
  std::vector<std::vector<VertexId>> rows_;
};

inline IncidenceMatrix incidence_matrix(const CliqueComplex& complex) {
  return IncidenceMatrix(complex);
}

/// First, second and third structure vectors over q = 0..max order.
struct StructureVectors {
  std::vector<std::size_t> components;   // Q_q, q-connected components
  std::vector<std::size_t> simplices;    // n_q, cliques of order >= q
  std::vector<double> connectivity;      // 1 - Q_q / n_q
  int q_star = 0;                        // first q >= 1 with zero connectivity
  double connectivity_before_q_star = 0.0;

  int max_level() const { return static_cast<int>(components.size()) - 1; }
};

namespace detail {
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::uint32_t> parent_;
};
}  // namespace detail

/// Q-analysis of the complex. Two cliques are q-connected when they share at
/// least q+1 vertices; Q_q counts the classes of the transitive closure among
/// cliques of order >= q. Levels are swept from the top down so that one
/// union-find absorbs each overlap exactly once.
inline StructureVectors structure_vectors(const CliqueComplex& complex) {
  const IncidenceMatrix lambda(complex);
  const int top = complex.max_order();
  const auto levels = static_cast<std::size_t>(top + 1);
  StructureVectors sv;
  sv.components.assign(levels, 0);
  sv.simplices.assign(levels, 0);
  sv.connectivity.assign(levels, 0.0);

  auto pairs = lambda.overlaps();
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.shared > b.shared; });
  std::vector<std::uint32_t> by_size(lambda.rows());
  std::iota(by_size.begin(), by_size.end(), std::uint32_t{0});
  std::sort(by_size.begin(), by_size.end(), [&](std::uint32_t a, std::uint32_t b) {
    return complex.cliques[a].size() > complex.cliques[b].size();
  });

  detail::DisjointSets sets(lambda.rows());
  std::size_t active = 0;
  std::size_t merges = 0;
  std::size_t next_clique = 0;
  std::size_t next_pair = 0;
  for (int q = top; q >= 0; --q) {
    const auto need = static_cast<std::size_t>(q + 1);
    while (next_clique < by_size.size() &&
           complex.cliques[by_size[next_clique]].size() >= need) {
      ++active;
      ++next_clique;
    }
    while (next_pair < pairs.size() && pairs[next_pair].shared >= need) {
      if (sets.unite(pairs[next_pair].first, pairs[next_pair].second)) ++merges;
      ++next_pair;
    }
    const auto level = static_cast<std::size_t>(q);
    sv.simplices[level] = active;
    sv.components[level] = active - merges;
    sv.connectivity[level] =
        active == 0 ? 0.0
                    : 1.0 - static_cast<double>(sv.components[level]) /
                                static_cast<double>(active);
  }

  sv.q_star = top + 1;
  for (int q = 1; q <= top; ++q) {
    const auto level = static_cast<std::size_t>(q);
    if (sv.simplices[level] > 0 && sv.connectivity[level] == 0.0) {
      sv.q_star = q;
      break;
    }
  }
  if (sv.q_star >= 1) {
    sv.connectivity_before_q_star = sv.connectivity[static_cast<std::size_t>(sv.q_star - 1)];
  }
  return sv;
}

/// f_q: number of distinct (q+1)-cliques, q = 0..max order of the complex.
inline std::vector<std::size_t> f_vector(const LabeledGraph& graph,
                                         const CliqueComplex& complex) {
  const int top = complex.max_order();
  std::vector<std::size_t> f(static_cast<std::size_t>(std::max(top + 1, 0)), 0);
  if (f.empty()) return f;
  std::vector<std::vector<VertexId>> higher(graph.node_count());
  for (VertexId v = 0; v < graph.node_count(); ++v) {
    for (const Neighbor& nb : graph.neighbors(v)) {
      if (nb.vertex > v) higher[v].push_back(nb.vertex);
    }
  }
  // Each clique is counted once, from its smallest vertex, extending only
  // through larger common neighbours.
  auto extend = [&](auto&& self, std::size_t depth,
                    const std::vector<VertexId>& candidates) -> void {
    if (depth >= f.size()) return;
    f[depth] += candidates.size();
    for (const VertexId w : candidates) {
      self(self, depth + 1, detail::intersect(candidates, higher[w]));
    }
  };
  f[0] = graph.node_count();
  for (VertexId v = 0; v < graph.node_count(); ++v) extend(extend, 1, higher[v]);
  return f;
}

}  // namespace simplexnet
