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
#include <span>
#include <string>
#include <vector>

#include "simplexnet/assembly.hpp"
#include "simplexnet/clique_census.hpp"
#include "simplexnet/docking.hpp"
#include "simplexnet/errors.hpp"
#include "simplexnet/graph.hpp"
#include "simplexnet/rng.hpp"
#include "simplexnet/simplex.hpp"

namespace simplexnet {

/// Simplex sizes n in [min, max] drawn with weight n^-alpha.
class SizeDistribution {
 public:
  SizeDistribution(double alpha, std::size_t min_size, std::size_t max_size)
      : min_size_(min_size) {
    if (min_size < 2 || min_size > max_size) {
      throw UsageError("need 2 <= n_min <= n_max");
    }
    double total = 0.0;
    for (std::size_t n = min_size; n <= max_size; ++n) {
      total += std::pow(static_cast<double>(n), -alpha);
      cumulative_.push_back(total);
    }
    for (double& c : cumulative_) c /= total;
    cumulative_.back() = 1.0;
  }

  double probability(std::size_t n) const {
    if (n < min_size_ || n >= min_size_ + cumulative_.size()) return 0.0;
    const std::size_t i = n - min_size_;
    return i == 0 ? cumulative_[0] : cumulative_[i] - cumulative_[i - 1];
  }

  std::size_t sample(Pcg32& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return min_size_ + static_cast<std::size_t>(it - cumulative_.begin());
  }

 private:
  std::size_t min_size_;
  std::vector<double> cumulative_;
};

inline std::size_t sample_size(double alpha, std::size_t min_size,
                               std::size_t max_size, Pcg32& rng) {
  return SizeDistribution(alpha, min_size, max_size).sample(rng);
}

/// With probability p one of the C(n,2) edges, chosen uniformly, is a defect.
inline SimplexSpec make_spec(std::size_t n, double p, Pcg32& rng) {
  if (n < 2) throw UsageError("simplex size below 2");
  if (!rng.bernoulli(p)) return SimplexSpec(n);
  std::uint64_t e = rng.below(n * (n - 1) / 2);
  // Decode the pair index row by row: row i holds pairs (i, i+1..n-1).
  std::size_t i = 0;
  while (e >= n - 1 - i) {
    e -= n - 1 - i;
    ++i;
  }
  return SimplexSpec(n, LocalEdge{static_cast<LocalVertex>(i),
                                  static_cast<LocalVertex>(i + 1 + e)});
}

/// Docking sites of one level q. Level 0 sites are the network vertices;
/// for q >= 1 the sites are census indices of (q+1)-cliques.
struct DockingLevel {
  int q = 0;
  std::size_t vertex_sites = 0;
  std::span<const std::uint32_t> pure;
  std::span<const std::uint32_t> defect;

  std::size_t count() const {
    return q == 0 ? vertex_sites : pure.size() + defect.size();
  }
};

/// Eligible docking sites c_q for q = 0..q_max-1 of one arriving spec.
/// Views into the assembly; valid until the assembly changes.
class DockingCensus {
 public:
  DockingCensus(const CliqueCensus& census, std::vector<DockingLevel> levels)
      : census_(&census), levels_(std::move(levels)) {}

  std::size_t levels() const { return levels_.size(); }
  const DockingLevel& level(int q) const { return levels_.at(static_cast<std::size_t>(q)); }

  std::vector<std::size_t> counts() const {
    std::vector<std::size_t> out;
    for (const auto& l : levels_) out.push_back(l.count());
    return out;
  }

  /// Site i of level q: its vertices, and whether it hosts the defect face.
  std::vector<VertexId> face(int q, std::size_t i) const {
    const DockingLevel& l = level(q);
    if (i >= l.count()) throw UsageError("docking site index out of range");
    if (q == 0) return {static_cast<VertexId>(i)};
    const auto k = static_cast<std::uint32_t>(q + 1);
    const bool is_pure = i < l.pure.size();
    const std::uint32_t index = is_pure ? l.pure[i] : l.defect[i - l.pure.size()];
    const auto verts = census_->clique(CliqueRef{k, index});
    return {verts.begin(), verts.end()};
  }

  bool is_defect_site(int q, std::size_t i) const {
    return q > 0 && i >= level(q).pure.size();
  }

  std::vector<std::vector<VertexId>> faces(int q) const {
    std::vector<std::vector<VertexId>> out;
    for (std::size_t i = 0; i < level(q).count(); ++i) out.push_back(face(q, i));
    return out;
  }

 private:
  const CliqueCensus* census_;
  std::vector<DockingLevel> levels_;
};

/// Geometrically compatible docking sites for `spec` on the current assembly.
inline DockingCensus count_docking_sites(const AssemblyState& state,
                                         const SimplexSpec& spec) {
  if (state.empty()) throw UsageError("docking on an empty assembly");
  std::vector<DockingLevel> levels;
  for (int q = 0; q < spec.order(); ++q) {
    DockingLevel level;
    level.q = q;
    if (q == 0) {
      level.vertex_sites = state.graph().node_count();
    } else {
      const auto k = static_cast<std::size_t>(q + 1);
      level.pure = state.docking().pure_sites(k);
      if (spec.has_defect()) level.defect = state.docking().defect_sites(k);
    }
    levels.push_back(level);
  }
  return DockingCensus(state.census(), std::move(levels));
}

/// Probability of docking along a face of each order q = 0..q_max-1.
struct AttachmentDistribution {
  std::vector<double> probabilities;

  int sample(Pcg32& rng) const {
    const double u = rng.uniform();
    double acc = 0.0;
    int last = -1;
    for (std::size_t q = 0; q < probabilities.size(); ++q) {
      if (probabilities[q] <= 0.0) continue;
      acc += probabilities[q];
      last = static_cast<int>(q);
      if (u < acc) return last;
    }
    return last;
  }

  double mean_order() const {
    double m = 0.0;
    for (std::size_t q = 0; q < probabilities.size(); ++q) {
      m += static_cast<double>(q) * probabilities[q];
    }
    return m;
  }
};

/// p(q) = c_q e^{-nu (q_max - q)} / sum_q' c_q' e^{-nu (q_max - q')},
/// evaluated in log space so that large |nu| does not overflow.
inline AttachmentDistribution attachment_distribution(
    std::span<const std::size_t> counts, double affinity, int max_order) {
  if (max_order < 1 || counts.size() != static_cast<std::size_t>(max_order)) {
    throw UsageError("census must cover levels 0..q_max-1");
  }
  std::vector<double> log_weight(counts.size(),
                                 -std::numeric_limits<double>::infinity());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < counts.size(); ++q) {
    if (counts[q] == 0) continue;
    log_weight[q] = std::log(static_cast<double>(counts[q])) -
                    affinity * static_cast<double>(max_order - static_cast<int>(q));
    top = std::max(top, log_weight[q]);
  }
  if (top == -std::numeric_limits<double>::infinity()) {
    throw UsageError("attachment distribution over an all-zero census");
  }
  AttachmentDistribution dist;
  dist.probabilities.assign(counts.size(), 0.0);
  double total = 0.0;
  for (std::size_t q = 0; q < counts.size(); ++q) {
    if (counts[q] == 0) continue;
    dist.probabilities[q] = std::exp(log_weight[q] - top);
    total += dist.probabilities[q];
  }
  for (double& p : dist.probabilities) p /= total;
  return dist;
}

namespace detail {

// First k entries of a uniform random permutation of `items`.
inline void partial_shuffle(std::vector<LocalVertex>& items, std::size_t k,
                            Pcg32& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(items.size() - i);
    std::swap(items[i], items[j]);
  }
}

}  // namespace detail

/// One growth step: draws the face order from the attachment distribution,
/// a docking site uniformly among the eligible ones, a compatible face of the
/// spec uniformly, and a uniform alignment of the two; then glues the spec.
inline const EventRecord& attach_step(AssemblyState& state, const SimplexSpec& spec) {
  if (state.empty()) throw UsageError("attach_step on an empty assembly");
  Pcg32& rng = state.rng();
  const DockingCensus sites = count_docking_sites(state, spec);
  const std::vector<std::size_t> counts = sites.counts();
  const AttachmentDistribution dist =
      attachment_distribution(counts, state.config().affinity, spec.order());
  const int q = dist.sample(rng);
  const std::size_t site = rng.below(counts[static_cast<std::size_t>(q)]);
  const std::vector<VertexId> face = sites.face(q, site);
  const std::size_t n = spec.size();
  const auto k = static_cast<std::size_t>(q + 1);

  std::vector<std::optional<VertexId>> assignment(n);
  if (sites.is_defect_site(q, site)) {
    // Spec face = defect edge + (q-1) other vertices; the defect bonds align.
    const LocalEdge de = *spec.defect_edge();
    std::vector<LocalVertex> others;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != de.first && i != de.second) others.push_back(static_cast<LocalVertex>(i));
    }
    detail::partial_shuffle(others, k - 2, rng);

    std::vector<VertexId> rest;
    std::optional<std::pair<VertexId, VertexId>> net_defect;
    for (std::size_t a = 0; a < face.size() && !net_defect; ++a) {
      for (std::size_t b = a + 1; b < face.size(); ++b) {
        if (state.graph().bond(face[a], face[b]) == BondType::defect) {
          net_defect = std::make_pair(face[a], face[b]);
          break;
        }
      }
    }
    for (const VertexId v : face) {
      if (v != net_defect->first && v != net_defect->second) rest.push_back(v);
    }
    shuffle(rest.begin(), rest.end(), rng);
    if (rng.below(2) == 1) std::swap(net_defect->first, net_defect->second);
    assignment[de.first] = net_defect->first;
    assignment[de.second] = net_defect->second;
    for (std::size_t i = 0; i + 2 < k; ++i) assignment[others[i]] = rest[i];
  } else {
    // Any k-subset of the spec that does not hold the whole defect edge.
    std::vector<LocalVertex> locals(n);
    std::iota(locals.begin(), locals.end(), LocalVertex{0});
    const std::uint32_t defect_mask = spec.defect_mask();
    for (;;) {
      detail::partial_shuffle(locals, k, rng);
      std::uint32_t mask = 0;
      for (std::size_t i = 0; i < k; ++i) mask |= 1u << locals[i];
      if (defect_mask == 0 || (mask & defect_mask) != defect_mask) break;
    }
    // The partial shuffle already yields a uniform alignment.
    for (std::size_t i = 0; i < k; ++i) assignment[locals[i]] = face[i];
  }
  return state.attach_at(spec, assignment);
}

/// Grows an assembly from a seed simplex until it has at least
/// config.target_nodes vertices. Deterministic in config.seed.
inline AssemblyState grow(const GrowthConfig& config) {
  AssemblyState state(config);
  const SizeDistribution sizes(config.size_exponent, config.min_size, config.max_size);
  Pcg32& rng = state.rng();
  {
    const SimplexSpec seed = make_spec(sizes.sample(rng), config.defect_probability, rng);
    std::vector<std::optional<VertexId>> fresh(seed.size());
    state.attach_at(seed, fresh);
  }
  while (state.graph().node_count() < config.target_nodes) {
    const SimplexSpec spec = make_spec(sizes.sample(rng), config.defect_probability, rng);
    attach_step(state, spec);
  }
  return state;
}

}  // namespace simplexnet
