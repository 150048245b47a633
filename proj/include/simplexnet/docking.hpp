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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simplexnet/clique_census.hpp"
#include "simplexnet/errors.hpp"
#include "simplexnet/graph.hpp"

namespace simplexnet {

/// How defect bonds restrict which network faces can host a docking face.
///
/// contamination: a pure face qualifies only if none of its vertices touches
///   a defect bond; a defect face qualifies only if it holds exactly one
///   defect bond and no other defect bond touches its vertices.
/// strict: only the bond-type pattern of the face itself is compared.
enum class CompatibilityMode { contamination, strict };

inline std::string_view to_string(CompatibilityMode mode) {
  return mode == CompatibilityMode::strict ? "strict" : "contamination";
}

inline CompatibilityMode parse_compatibility_mode(std::string_view text) {
  if (text == "contamination") return CompatibilityMode::contamination;
  if (text == "strict" || text == "strict-type-match") {
    return CompatibilityMode::strict;
  }
  throw UsageError("unknown compatibility mode '" + std::string(text) + "'");
}

enum class SiteKind : std::uint8_t { none, pure, defect };

/// Classifies a network face from the number of defect bonds inside it and
/// the summed defect degree of its vertices.
inline SiteKind classify_site(CompatibilityMode mode, std::uint32_t inner_defects,
                              std::uint32_t incident_defects) {
  if (mode == CompatibilityMode::strict) {
    if (inner_defects == 0) return SiteKind::pure;
    if (inner_defects == 1) return SiteKind::defect;
    return SiteKind::none;
  }
  if (incident_defects == 0) return SiteKind::pure;
  // The inner bond contributes 2 to the incident sum; anything more is
  // another defect bond touching the face.
  if (inner_defects == 1 && incident_defects == 2) return SiteKind::defect;
  return SiteKind::none;
}

/// Per-size sets of network faces (cliques with >= 2 vertices) that can host
/// a pure or a defect docking face. Kept in sync with the census and with
/// the vertices' defect degrees as the assembly grows.
class DockingIndex {
 public:
  DockingIndex(CompatibilityMode mode, std::size_t max_size)
      : mode_(mode), levels_(max_size + 1) {}

  CompatibilityMode mode() const { return mode_; }

  /// Census indices of size-k cliques that accept a pure face.
  std::span<const std::uint32_t> pure_sites(std::size_t k) const {
    return k < levels_.size() ? std::span<const std::uint32_t>(levels_[k].pure)
                              : std::span<const std::uint32_t>();
  }
  /// Census indices of size-k cliques that accept the defect face of a spec.
  std::span<const std::uint32_t> defect_sites(std::size_t k) const {
    return k < levels_.size() ? std::span<const std::uint32_t>(levels_[k].defect)
                              : std::span<const std::uint32_t>();
  }

  void on_new_cliques(const LabeledGraph& graph, const CliqueCensus& census,
                      std::span<const CliqueRef> refs) {
    for (const CliqueRef ref : refs) {
      if (ref.size < 2 || ref.size >= levels_.size()) continue;
      Level& level = levels_[ref.size];
      if (level.incident.size() <= ref.index) {
        level.incident.resize(ref.index + 1, 0);
        level.slot.resize(ref.index + 1, kNoSlot);
        level.kind.resize(ref.index + 1, SiteKind::none);
      }
      std::uint32_t incident = 0;
      for (const VertexId v : census.clique(ref)) incident += graph.defect_degree(v);
      level.incident[ref.index] = incident;
      place(level, ref.index,
            classify_site(mode_, census.defect_edges(ref), incident));
    }
  }

  /// Call after a defect bond was attached to an already-registered vertex.
  void on_defect_degree_increment(const CliqueCensus& census, VertexId v) {
    for (const CliqueRef ref : census.containing(v)) {
      if (ref.size < 2 || ref.size >= levels_.size()) continue;
      Level& level = levels_[ref.size];
      const std::uint32_t incident = ++level.incident[ref.index];
      const SiteKind kind =
          classify_site(mode_, census.defect_edges(ref), incident);
      if (kind != level.kind[ref.index]) {
        remove(level, ref.index);
        place(level, ref.index, kind);
      }
    }
  }

 private:
  static constexpr std::uint32_t kNoSlot = std::numeric_limits<std::uint32_t>::max();

  struct Level {
    std::vector<std::uint32_t> pure;
    std::vector<std::uint32_t> defect;
    std::vector<std::uint32_t> incident;  // per clique
    std::vector<std::uint32_t> slot;      // position in pure/defect list
    std::vector<SiteKind> kind;
  };

  static std::vector<std::uint32_t>* list_for(Level& level, SiteKind kind) {
    switch (kind) {
      case SiteKind::pure: return &level.pure;
      case SiteKind::defect: return &level.defect;
      case SiteKind::none: break;
    }
    return nullptr;
  }

  static void place(Level& level, std::uint32_t index, SiteKind kind) {
    level.kind[index] = kind;
    auto* list = list_for(level, kind);
    if (!list) {
      level.slot[index] = kNoSlot;
      return;
    }
    level.slot[index] = static_cast<std::uint32_t>(list->size());
    list->push_back(index);
  }

  static void remove(Level& level, std::uint32_t index) {
    auto* list = list_for(level, level.kind[index]);
    if (!list) return;
    const std::uint32_t pos = level.slot[index];
    const std::uint32_t last = list->back();
    (*list)[pos] = last;
    level.slot[last] = pos;
    list->pop_back();
    level.slot[index] = kNoSlot;
    level.kind[index] = SiteKind::none;
  }

  CompatibilityMode mode_;
  std::vector<Level> levels_;
};

}  // namespace simplexnet
