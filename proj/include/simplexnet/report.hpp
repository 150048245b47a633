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
#include <cctype>
#include <cmath>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "simplexnet/assembly.hpp"
#include "simplexnet/errors.hpp"
#include "simplexnet/graph_metrics.hpp"
#include "simplexnet/io.hpp"
#include "simplexnet/metric_geometry.hpp"
#include "simplexnet/qanalysis.hpp"

namespace simplexnet {

namespace detail {
inline std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  return format_double(x);
}
}  // namespace detail

/// q,Q_q,n_q,TSV_q,f_q rows, then `# q_star=.. tsv_q_star_minus_1=.. n_0=..`.
inline std::string qtop_csv(const StructureVectors& sv, const std::vector<std::size_t>& f) {
  std::ostringstream os;
  os << "q,Q_q,n_q,TSV_q,f_q\n";
  const std::size_t levels = std::max(sv.components.size(), f.size());
  for (std::size_t q = 0; q < levels; ++q) {
    os << q << ',' << (q < sv.components.size() ? sv.components[q] : 0) << ','
       << (q < sv.simplices.size() ? sv.simplices[q] : 0) << ','
       << detail::fmt(q < sv.connectivity.size() ? sv.connectivity[q] : 0.0) << ','
       << (q < f.size() ? f[q] : 0) << '\n';
  }
  os << "# q_star=" << sv.q_star
     << " tsv_q_star_minus_1=" << detail::fmt(sv.connectivity_before_q_star)
     << " n_0=" << (sv.simplices.empty() ? 0 : sv.simplices[0]) << '\n';
  return os.str();
}

/// Two sections (d_min,delta_max then d,P) followed by a `#` summary line.
/// Bins that no quadruple reached are omitted.
inline std::string hyperbolicity_csv(const HyperbolicityProfile& profile,
                                     const std::vector<double>& distances,
                                     std::size_t component_size, std::size_t components,
                                     const std::vector<ComponentDelta>& per_component = {}) {
  std::ostringstream os;
  os << "d_min,delta_max\n";
  for (std::size_t d = 0; d < profile.max_delta_by_dmin.size(); ++d) {
    if (profile.max_delta_by_dmin[d].twice < 0) continue;
    os << d << ',' << detail::fmt(profile.max_delta_by_dmin[d].value()) << '\n';
  }
  os << "d,P\n";
  for (std::size_t d = 1; d < distances.size(); ++d) {
    os << d << ',' << detail::fmt(distances[d]) << '\n';
  }
  HalfInteger worst = profile.delta;
  for (const auto& c : per_component) worst = std::max(worst, c.delta);
  os << "# delta_G=" << detail::fmt(profile.delta.value()) << " mode=" << to_string(profile.mode)
     << " count=" << profile.quadruples << " seed=" << profile.seed
     << " component_size=" << component_size << " components=" << components
     << " delta_all_components=" << detail::fmt(worst.value()) << '\n';
  return os.str();
}

inline constexpr std::string_view kMetricsHeader =
    "variant,c,k,l,Cc,mod,D,N,E,defect_edges,components,largest,Cc_zero,Cc_all,l_reachable";

inline std::string metrics_csv_row(const MetricsRow& r) {
  std::ostringstream os;
  os << r.variant << ',' << detail::fmt(r.defect_concentration) << ','
     << detail::fmt(r.mean_degree) << ',' << detail::fmt(r.mean_path_length) << ','
     << detail::fmt(r.clustering) << ',' << detail::fmt(r.modularity) << ',' << r.diameter
     << ',' << r.nodes << ',' << r.edges << ',' << r.defect_edges << ',' << r.components
     << ',' << r.largest_component << ',' << detail::fmt(r.clustering_zero) << ','
     << detail::fmt(r.clustering_all) << ',' << detail::fmt(r.path_length_reachable) << '\n';
  return os.str();
}

/// t,nodes,edges,simplexes,n,q,n_a,faces per placed simplex; `faces` is the
/// number of simplexes and faces (all cliques up to n_max vertices).
inline std::string event_series_report(const AssemblyState& state) {
  std::ostringstream os;
  os << "t,nodes,edges,simplexes,n,q,n_a,faces\n";
  for (const EventRecord& e : state.events()) {
    os << e.t << ',' << e.nodes << ',' << e.edges << ',' << e.simplexes << ',' << e.n << ','
       << e.q << ',' << e.added << ',' << e.faces << '\n';
  }
  return os.str();
}

/// A parsed CSV section: header names and numeric-or-text cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw FormatError("missing column '" + std::string(name) + "'");
  }
  double number(std::size_t row, std::string_view name) const {
    const std::string& cell = rows.at(row).at(column(name));
    if (cell == "nan") return std::nan("");
    try {
      return std::stod(cell);
    } catch (const std::exception&) {
      throw FormatError("not a number: '" + cell + "'");
    }
  }
};

/// Splits text into CSV sections (a new section starts at each line whose
/// first cell is not numeric) and collects `key=value` pairs from `#` lines.
struct CsvDocument {
  std::vector<CsvTable> sections;
  std::map<std::string, std::string> summary;

  static CsvDocument parse(std::string_view text) {
    CsvDocument doc;
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      if (line[0] == '#') {
        std::istringstream ls(line.substr(1));
        std::string token;
        while (ls >> token) {
          const auto eq = token.find('=');
          if (eq != std::string::npos) doc.summary[token.substr(0, eq)] = token.substr(eq + 1);
        }
        continue;
      }
      std::vector<std::string> cells;
      std::string cell;
      std::istringstream ls(line);
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      // Header lines are the ones without a single numeric cell.
      const bool header = std::none_of(cells.begin(), cells.end(), [](const std::string& c) {
        return !c.empty() && (std::isdigit(static_cast<unsigned char>(c[0])) || c[0] == '-' ||
                              c == "nan");
      });
      if (header || doc.sections.empty()) {
        doc.sections.push_back(CsvTable{std::move(cells), {}});
      } else {
        doc.sections.back().rows.push_back(std::move(cells));
      }
    }
    return doc;
  }

  double summary_number(const std::string& key) const {
    const auto it = summary.find(key);
    if (it == summary.end()) throw FormatError("missing summary key '" + key + "'");
    return it->second == "nan" ? std::nan("") : std::stod(it->second);
  }
};

}  // namespace simplexnet
