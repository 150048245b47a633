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
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "simplexnet/errors.hpp"
#include "simplexnet/graph.hpp"
#include "simplexnet/rng.hpp"

namespace simplexnet {

using Distance = std::uint16_t;

/// All-pairs hop distances of a connected graph (one BFS per source).
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const LabeledGraph& graph)
      : size_(graph.node_count()), data_(size_ * size_, kUnreached) {
    std::vector<VertexId> queue(size_);
    for (VertexId s = 0; s < size_; ++s) {
      Distance* row = data_.data() + std::size_t{s} * size_;
      row[s] = 0;
      std::size_t head = 0;
      std::size_t tail = 0;
      queue[tail++] = s;
      while (head < tail) {
        const VertexId v = queue[head++];
        const Distance next = static_cast<Distance>(row[v] + 1);
        for (const Neighbor& nb : graph.neighbors(v)) {
          if (row[nb.vertex] == kUnreached) {
            row[nb.vertex] = next;
            queue[tail++] = nb.vertex;
          }
        }
      }
      if (tail != size_) {
        throw UndefinedInputError(
            "distance matrix needs a connected graph; take the largest component first");
      }
      for (std::size_t i = 0; i < size_; ++i) diameter_ = std::max(diameter_, row[i]);
    }
  }

  std::size_t size() const { return size_; }
  Distance diameter() const { return diameter_; }

  Distance operator()(VertexId u, VertexId v) const {
    return data_[std::size_t{u} * size_ + v];
  }
  const Distance* row(VertexId u) const { return data_.data() + std::size_t{u} * size_; }

 private:
  static constexpr Distance kUnreached = std::numeric_limits<Distance>::max();

  std::size_t size_;
  std::vector<Distance> data_;
  Distance diameter_ = 0;
};

/// A non-negative multiple of 1/2, stored as twice its value.
struct HalfInteger {
  int twice = 0;

  double value() const { return twice / 2.0; }
  friend auto operator<=>(const HalfInteger&, const HalfInteger&) = default;
};

struct FourPoint {
  HalfInteger delta;
  Distance d_min = 0;
};

namespace detail {
inline FourPoint four_point(int ab, int cd, int ac, int bd, int ad, int bc) {
  std::array<std::array<int, 3>, 3> pairings{{{ab + cd, std::min(ab, cd), 0},
                                              {ac + bd, std::min(ac, bd), 1},
                                              {ad + bc, std::min(ad, bc), 2}}};
  std::sort(pairings.begin(), pairings.end());
  return FourPoint{HalfInteger{pairings[2][0] - pairings[1][0]},
                   static_cast<Distance>(pairings[0][1])};
}
}  // namespace detail

/// Gromov four-point delta of a quadruple: with pairing sums S <= M <= L,
/// delta = (L - M)/2, and d_min is the smaller distance of the S pairing.
inline FourPoint four_point_delta(const DistanceMatrix& dm, VertexId a, VertexId b,
                                  VertexId c, VertexId d) {
  for (const VertexId v : {a, b, c, d}) {
    if (v >= dm.size()) throw UsageError("vertex outside distance matrix");
  }
  if (a == b || a == c || a == d || b == c || b == d || c == d) {
    throw UsageError("four-point condition needs four distinct vertices");
  }
  return detail::four_point(dm(a, b), dm(c, d), dm(a, c), dm(b, d), dm(a, d), dm(b, c));
}

enum class HyperbolicityMode { exhaustive, sampled };

inline std::string_view to_string(HyperbolicityMode mode) {
  return mode == HyperbolicityMode::exhaustive ? "exhaustive" : "sampled";
}

struct HyperbolicityOptions {
  HyperbolicityMode mode = HyperbolicityMode::sampled;
  std::uint64_t samples = 10'000'000;
  std::size_t exhaustive_threshold = 250;
  std::uint64_t seed = 0;
};

struct HyperbolicityProfile {
  /// Largest delta seen per d_min (index); twice == -1 where no quadruple fell.
  std::vector<HalfInteger> max_delta_by_dmin;
  HalfInteger delta;  // delta(G)
  HyperbolicityMode mode = HyperbolicityMode::sampled;
  std::uint64_t quadruples = 0;
  std::uint64_t seed = 0;
};

/// Worst-case four-point delta per d_min, over every quadruple (exhaustive)
/// or over `samples` uniformly drawn quadruples of distinct vertices.
inline HyperbolicityProfile hyperbolicity_profile(const DistanceMatrix& dm,
                                                  const HyperbolicityOptions& options) {
  const std::size_t n = dm.size();
  HyperbolicityProfile profile;
  profile.mode = options.mode;
  profile.seed = options.seed;
  profile.max_delta_by_dmin.assign(std::size_t{dm.diameter()} + 1, HalfInteger{-1});
  if (n < 4) return profile;
  auto& bins = profile.max_delta_by_dmin;
  auto record = [&](const FourPoint& fp) {
    if (fp.delta > bins[fp.d_min]) bins[fp.d_min] = fp.delta;
  };

  if (options.mode == HyperbolicityMode::exhaustive) {
    if (n > options.exhaustive_threshold) {
      throw UsageError("exhaustive hyperbolicity limited to " +
                       std::to_string(options.exhaustive_threshold) + " vertices (graph has " +
                       std::to_string(n) + "); use sampled mode");
    }
    std::uint64_t count = 0;
    for (VertexId a = 0; a < n; ++a) {
      const Distance* ra = dm.row(a);
      for (VertexId b = a + 1; b < n; ++b) {
        const Distance* rb = dm.row(b);
        const int ab = ra[b];
        for (VertexId c = b + 1; c < n; ++c) {
          const Distance* rc = dm.row(c);
          const int ac = ra[c];
          const int bc = rb[c];
          for (VertexId d = c + 1; d < n; ++d) {
            record(detail::four_point(ab, rc[d], ac, rb[d], ra[d], bc));
          }
          count += n - c - 1;
        }
      }
    }
    profile.quadruples = count;
  } else {
    Pcg32 rng(options.seed);
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      VertexId q[4];
      for (int i = 0; i < 4; ++i) {
        bool fresh = false;
        while (!fresh) {
          q[i] = static_cast<VertexId>(rng.below(n));
          fresh = true;
          for (int j = 0; j < i; ++j) fresh = fresh && q[j] != q[i];
        }
      }
      record(detail::four_point(dm(q[0], q[1]), dm(q[2], q[3]), dm(q[0], q[2]),
                                dm(q[1], q[3]), dm(q[0], q[3]), dm(q[1], q[2])));
    }
    profile.quadruples = options.samples;
  }
  for (const HalfInteger& h : bins) profile.delta = std::max(profile.delta, h);
  return profile;
}

/// Chooses exhaustive mode up to the threshold, sampling beyond it.
inline HyperbolicityProfile hyperbolicity_auto(const DistanceMatrix& dm,
                                               HyperbolicityOptions options) {
  options.mode = dm.size() <= options.exhaustive_threshold ? HyperbolicityMode::exhaustive
                                                           : HyperbolicityMode::sampled;
  return hyperbolicity_profile(dm, options);
}

/// P(d) over unordered pairs, indexed by d (entry 0 is always 0).
inline std::vector<double> distance_distribution(const DistanceMatrix& dm) {
  std::vector<double> p(std::size_t{dm.diameter()} + 1, 0.0);
  const std::size_t n = dm.size();
  if (n < 2) return p;
  std::vector<std::uint64_t> counts(p.size(), 0);
  for (VertexId u = 0; u < n; ++u) {
    const Distance* r = dm.row(u);
    for (VertexId v = u + 1; v < n; ++v) ++counts[r[v]];
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  for (std::size_t d = 0; d < p.size(); ++d) p[d] = static_cast<double>(counts[d]) / pairs;
  return p;
}

struct ComponentDelta {
  std::size_t size = 0;
  HalfInteger delta;
  HyperbolicityMode mode = HyperbolicityMode::exhaustive;
};

/// delta of every component with at least four vertices (largest first,
/// then by smallest member id); the graph's delta is their maximum.
inline std::vector<ComponentDelta> component_hyperbolicity(const LabeledGraph& graph,
                                                           const HyperbolicityOptions& options) {
  std::size_t count = 0;
  const auto label = component_labels(graph, &count);
  std::vector<std::vector<VertexId>> members(count);
  for (VertexId v = 0; v < graph.node_count(); ++v) members[label[v]].push_back(v);
  std::stable_sort(members.begin(), members.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  std::vector<ComponentDelta> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].size() < 4) break;
    const DistanceMatrix dm(induced_subgraph(graph, members[i]));
    HyperbolicityOptions o = options;
    o.seed = mix_seed(options.seed, i);
    const auto profile = hyperbolicity_auto(dm, o);
    out.push_back({members[i].size(), profile.delta, profile.mode});
  }
  return out;
}

}  // namespace simplexnet
