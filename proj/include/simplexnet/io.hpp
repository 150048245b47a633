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
#include <cerrno>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "simplexnet/assembly.hpp"
#include "simplexnet/errors.hpp"
#include "simplexnet/graph.hpp"
#include "simplexnet/transform.hpp"

namespace simplexnet {

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string describe(const GrowthConfig& c) {
  std::ostringstream os;
  os << "nodes=" << c.target_nodes << " nu=" << format_double(c.affinity)
     << " p_defect=" << format_double(c.defect_probability)
     << " alpha=" << format_double(c.size_exponent) << " n_min=" << c.min_size
     << " n_max=" << c.max_size << " mode=" << to_string(c.mode);
  return os.str();
}

inline void to_json(nlohmann::json& j, const GrowthConfig& c) {
  j = nlohmann::json{{"nodes", c.target_nodes},   {"nu", c.affinity},
                     {"p_defect", c.defect_probability}, {"alpha", c.size_exponent},
                     {"n_min", c.min_size},      {"n_max", c.max_size},
                     {"seed", c.seed},           {"mode", std::string(to_string(c.mode))}};
}

inline void from_json(const nlohmann::json& j, GrowthConfig& c) {
  c.target_nodes = j.at("nodes").get<std::size_t>();
  c.affinity = j.at("nu").get<double>();
  c.defect_probability = j.at("p_defect").get<double>();
  c.size_exponent = j.at("alpha").get<double>();
  c.min_size = j.at("n_min").get<std::size_t>();
  c.max_size = j.at("n_max").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.mode = parse_compatibility_mode(j.at("mode").get<std::string>());
}

/// Extra `#` lines written above the edges of an edge list.
struct EdgeListHeader {
  std::optional<GrowthConfig> config;
  std::vector<std::string> notes;
};

/// Edge-list text: `#` header lines (node count, config, seed), then one
/// `u v t` line per edge in (u, v) order, t = 0 pure / 1 defect.
inline void write_edge_list(std::ostream& os, const LabeledGraph& graph,
                            const EdgeListHeader& header = {}) {
  os << "# simplexnet edge list\n";
  os << "# nodes " << graph.node_count() << "\n";
  os << "# edges " << graph.edge_count() << "\n";
  if (header.config) {
    os << "# config " << describe(*header.config) << "\n";
    os << "# seed " << header.config->seed << "\n";
  }
  for (const auto& note : header.notes) os << "# " << note << "\n";
  graph.for_each_edge([&](const Edge& e) {
    os << e.u << ' ' << e.v << ' ' << (e.bond == BondType::defect ? 1 : 0) << '\n';
  });
}

inline LabeledGraph read_edge_list(std::istream& is) {
  std::optional<std::size_t> declared;
  std::vector<Edge> edges;
  std::size_t highest = 0;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      hs >> key;
      if (key == "nodes") {
        std::size_t n = 0;
        if (!(hs >> n)) throw FormatError("bad node count on line " + std::to_string(line_no));
        declared = n;
      }
      continue;
    }
    std::istringstream ls(line);
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    int t = -1;
    if (!(ls >> u >> v >> t) || (t != 0 && t != 1)) {
      throw FormatError("expected 'u v t' on line " + std::to_string(line_no));
    }
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v),
                     t == 1 ? BondType::defect : BondType::pure});
    highest = std::max<std::size_t>(highest, std::max(u, v));
    any = true;
  }
  const std::size_t n = declared.value_or(any ? highest + 1 : 0);
  if (any && highest >= n) throw FormatError("edge endpoint beyond declared node count");
  LabeledGraph graph(n);
  for (const Edge& e : edges) {
    try {
      graph.add_edge(e.u, e.v, e.bond);
    } catch (const UsageError& err) {
      throw FormatError(std::string("invalid edge: ") + err.what());
    }
  }
  return graph;
}

inline LabeledGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
  return read_edge_list(in);
}

inline void save_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + path.string());
  out << text;
  if (!out) throw std::system_error(errno, std::generic_category(), "write failed " + path.string());
}

inline void save_edge_list(const std::filesystem::path& path, const LabeledGraph& graph,
                           const EdgeListHeader& header = {}) {
  std::ostringstream os;
  write_edge_list(os, graph, header);
  save_text(path, os.str());
}

inline nlohmann::json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

/// Per-step event log: t,n,q,n_a,nodes,edges,simplexes (q = -1 for the seed).
inline void write_events_csv(std::ostream& os, const std::vector<EventRecord>& events) {
  os << "t,n,q,n_a,nodes,edges,simplexes\n";
  for (const EventRecord& e : events) {
    os << e.t << ',' << e.n << ',' << e.q << ',' << e.added << ',' << e.nodes << ','
       << e.edges << ',' << e.simplexes << '\n';
  }
}

/// JSON sidecar of a grown assembly: config, placed simplexes, event log.
inline nlohmann::json assembly_sidecar(const AssemblyState& state) {
  nlohmann::json j;
  j["format"] = "simplexnet-run";
  j["version"] = 1;
  j["kind"] = "grow";
  j["config"] = state.config();
  j["nodes"] = state.graph().node_count();
  j["edges"] = state.graph().edge_count();
  j["defect_edges"] = state.graph().defect_edge_count();
  auto& placed = j["placed"] = nlohmann::json::array();
  for (const PlacedSimplex& p : state.placed()) {
    nlohmann::json s{{"t", p.step}, {"q", p.shared_order}, {"vertices", p.vertices}};
    s["defect_edge"] = p.defect_edge ? nlohmann::json::array({p.defect_edge->first,
                                                              p.defect_edge->second})
                                     : nlohmann::json(nullptr);
    placed.push_back(std::move(s));
  }
  auto& events = j["events"] = nlohmann::json::array();
  for (const EventRecord& e : state.events()) {
    events.push_back({{"t", e.t}, {"n", e.n}, {"q", e.q}, {"n_a", e.added},
                      {"nodes", e.nodes}, {"edges", e.edges}, {"simplexes", e.simplexes},
                      {"faces", e.faces}});
  }
  return j;
}

/// JSON sidecar of a transformed graph; `source` is the config of the run it
/// was derived from, when known.
inline nlohmann::json transform_sidecar(const std::string& kind,
                                        const std::optional<GrowthConfig>& source,
                                        const LabeledGraph& result, const RemovalReport& report) {
  nlohmann::json j;
  j["format"] = "simplexnet-run";
  j["version"] = 1;
  j["kind"] = kind;
  j["config"] = source ? nlohmann::json(*source) : nlohmann::json(nullptr);
  j["nodes"] = result.node_count();
  j["edges"] = result.edge_count();
  j["defect_edges"] = result.defect_edge_count();
  j["removal"] = {{"removed", report.removed},
                  {"removed_defect", report.removed_defect},
                  {"components", report.components},
                  {"largest_component", report.largest_component}};
  return j;
}

/// Writes graph.edges, run.json and events.csv for a grown assembly.
inline void save_assembly(const std::filesystem::path& dir, const AssemblyState& state) {
  save_edge_list(dir / "graph.edges", state.graph(), EdgeListHeader{state.config(), {}});
  save_text(dir / "run.json", assembly_sidecar(state).dump(1) + "\n");
  std::ostringstream events;
  write_events_csv(events, state.events());
  save_text(dir / "events.csv", events.str());
}

}  // namespace simplexnet
