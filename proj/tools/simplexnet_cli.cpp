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

// simplexnet command-line tool: grow assemblies, transform them, analyse
// graphs and run the reproduction presets.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "simplexnet/assembly.hpp"
#include "simplexnet/errors.hpp"
#include "simplexnet/graph_metrics.hpp"
#include "simplexnet/growth.hpp"
#include "simplexnet/harness.hpp"
#include "simplexnet/io.hpp"
#include "simplexnet/metric_geometry.hpp"
#include "simplexnet/presets.hpp"
#include "simplexnet/qanalysis.hpp"
#include "simplexnet/report.hpp"
#include "simplexnet/transform.hpp"

namespace fs = std::filesystem;
using namespace simplexnet;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};

// Accepts an edge-list file or a run directory holding graph.edges.
fs::path edge_file(const fs::path& in) {
  return fs::is_directory(in) ? in / "graph.edges" : in;
}

std::vector<std::string> header_lines(const fs::path& path) {
  std::ifstream is(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(is, line) && !line.empty() && line[0] == '#') out.push_back(line);
  return out;
}

void emit(const std::optional<fs::path>& out, const std::string& text) {
  if (out) {
    save_text(*out, text);
  } else {
    std::cout << text;
  }
}

void setup_grow(CLI::App& app, const Globals& g) {
  auto* cmd = app.add_subcommand("grow", "Grow an assembly of cliques");
  auto config = std::make_shared<GrowthConfig>();
  auto out = std::make_shared<fs::path>();
  auto mode = std::make_shared<std::string>("contamination");
  cmd->add_option("--nodes", config->target_nodes, "Target node count")->capture_default_str();
  cmd->add_option("--nu", config->affinity, "Affinity parameter")->capture_default_str();
  cmd->add_option("--p-defect", config->defect_probability, "Defect bond probability")
      ->capture_default_str();
  cmd->add_option("--alpha", config->size_exponent, "Size distribution exponent")
      ->capture_default_str();
  cmd->add_option("--n-min", config->min_size, "Smallest simplex size")->capture_default_str();
  cmd->add_option("--n-max", config->max_size, "Largest simplex size")->capture_default_str();
  cmd->add_option("--mode", *mode, "Docking compatibility: contamination or strict")
      ->capture_default_str();
  cmd->add_option("--out", *out, "Output directory")->required();
  cmd->callback([&g, config, out, mode] {
    config->seed = g.seed;
    config->mode = parse_compatibility_mode(*mode);
    const AssemblyState state = grow(*config);
    save_assembly(*out, state);
    std::cerr << "grew " << state.graph().node_count() << " nodes, "
              << state.graph().edge_count() << " edges ("
              << state.graph().defect_edge_count() << " defect) in " << state.placed().size()
              << " steps\n";
  });
}

void setup_transform(CLI::App& app, const Globals& g) {
  auto* cmd = app.add_subcommand("transform", "Derive a graph by removing edges");
  cmd->require_subcommand(1);

  struct Args {
    fs::path in;
    fs::path out;
    std::optional<std::size_t> count;
    std::optional<fs::path> match;
  };
  auto args = std::make_shared<Args>();

  auto finish = [](const fs::path& in, const fs::path& out, const std::string& kind,
                   const LabeledGraph& g, const RemovalReport& report) {
    std::optional<GrowthConfig> source;
    const fs::path sidecar = in.parent_path() / "run.json";
    if (fs::exists(sidecar)) {
      const auto j = load_json(sidecar);
      if (j.contains("config") && !j["config"].is_null()) source = j["config"].get<GrowthConfig>();
    }
    save_edge_list(out / "graph.edges", g, EdgeListHeader{source, {"variant " + kind}});
    save_text(out / "run.json", transform_sidecar(kind, source, g, report).dump(1) + "\n");
    std::cerr << "removed " << report.removed << " edges (" << report.removed_defect
              << " defect); " << report.components << " components, largest "
              << report.largest_component << "\n";
  };

  auto* defects = cmd->add_subcommand("remove-defects", "Remove every defect edge");
  defects->add_option("--in", args->in, "Edge list or run directory")->required();
  defects->add_option("--out", args->out, "Output directory")->required();
  defects->callback([args, finish] {
    const fs::path in = edge_file(args->in);
    const auto [graph, report] = remove_defect_edges(load_edge_list(in));
    finish(in, args->out, "defect-removed", graph, report);
  });

  auto* random = cmd->add_subcommand("remove-random", "Remove uniformly random edges");
  random->add_option("--in", args->in, "Edge list or run directory")->required();
  random->add_option("--out", args->out, "Output directory")->required();
  auto* count = random->add_option("--count", args->count, "Number of edges to remove");
  auto* match = random->add_option("--match", args->match,
                                    "Sidecar (run.json) whose defect-edge count is matched");
  count->excludes(match);
  random->callback([&g, args, finish] {
    std::size_t c = 0;
    if (args->count) {
      c = *args->count;
    } else if (args->match) {
      const fs::path p = fs::is_directory(*args->match) ? *args->match / "run.json" : *args->match;
      c = load_json(p).at("defect_edges").get<std::size_t>();
    } else {
      throw UsageError("remove-random needs --count or --match");
    }
    const fs::path in = edge_file(args->in);
    Pcg32 rng(g.seed);
    const auto [graph, report] = remove_random_edges(load_edge_list(in), c, rng);
    finish(in, args->out, "rand-c", clear_bond_types(graph), report);
  });
}

void setup_analyze(CLI::App& app, const Globals& g) {
  auto* cmd = app.add_subcommand("analyze", "Analyse graphs");
  cmd->require_subcommand(1);

  struct Args {
    fs::path in;
    std::vector<fs::path> inputs;
    std::optional<fs::path> out;
    std::optional<fs::path> json;
    std::uint64_t samples = 10'000'000;
    std::size_t threshold = 250;
    std::string mode = "auto";
    std::size_t restarts = 5;
  };
  auto args = std::make_shared<Args>();

  auto* qtop = cmd->add_subcommand("qtop", "Structure vectors and f_q census");
  qtop->add_option("--in", args->in, "Edge list or run directory")->required();
  qtop->add_option("--out", args->out, "CSV output (default stdout)");
  qtop->callback([args] {
    const LabeledGraph graph = load_edge_list(edge_file(args->in));
    const CliqueComplex complex = maximal_cliques(graph);
    emit(args->out, qtop_csv(structure_vectors(complex), f_vector(graph, complex)));
  });

  auto* hyp = cmd->add_subcommand("hyperbolicity", "Four-point hyperbolicity profile");
  hyp->add_option("--in", args->in, "Edge list or run directory")->required();
  hyp->add_option("--out", args->out, "CSV output (default stdout)");
  hyp->add_option("--samples", args->samples, "Sampled quadruples")->capture_default_str();
  hyp->add_option("--exhaustive-threshold", args->threshold,
                  "Largest component size analysed exhaustively")
      ->capture_default_str();
  hyp->add_option("--mode", args->mode, "auto, exhaustive or sampled")
      ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}))
      ->capture_default_str();
  hyp->callback([&g, args] {
    const LabeledGraph graph = load_edge_list(edge_file(args->in));
    const ComponentSplit largest = largest_component(graph);
    const DistanceMatrix dm(largest.subgraph);
    HyperbolicityOptions o;
    o.samples = args->samples;
    o.exhaustive_threshold = args->threshold;
    o.seed = g.seed;
    HyperbolicityProfile profile;
    if (args->mode == "auto") {
      profile = hyperbolicity_auto(dm, o);
    } else {
      o.mode = args->mode == "exhaustive" ? HyperbolicityMode::exhaustive
                                          : HyperbolicityMode::sampled;
      profile = hyperbolicity_profile(dm, o);
    }
    std::vector<ComponentDelta> others;
    if (largest.sizes.size() > 1) others = component_hyperbolicity(graph, o);
    emit(args->out, hyperbolicity_csv(profile, distance_distribution(dm), dm.size(),
                                      largest.sizes.size(), others));
  });

  auto* metrics = cmd->add_subcommand("metrics", "Graph measures, one CSV row per input");
  metrics->add_option("inputs,--in", args->inputs, "Edge lists or run directories")
      ->required();
  metrics->add_option("--out", args->out, "CSV output (default stdout)");
  metrics->add_option("--json", args->json, "Provenance JSON (default <out>.json)");
  metrics->add_option("--restarts", args->restarts, "Modularity restarts (0 skips modularity)")
      ->capture_default_str();
  metrics->callback([&g, args] {
    std::ostringstream csv;
    csv << kMetricsHeader << '\n';
    nlohmann::json provenance;
    provenance["format"] = "simplexnet-metrics";
    provenance["version"] = 1;
    provenance["seed"] = g.seed;
    provenance["modularity_restarts"] = args->restarts;
    provenance["largest_component_averages"] = true;
    auto& entries = provenance["inputs"] = nlohmann::json::array();
    for (const fs::path& input : args->inputs) {
      const fs::path file = edge_file(input);
      MetricsOptions o;
      o.seed = g.seed;
      o.modularity_restarts = args->restarts;
      o.with_modularity = args->restarts > 0;
      MetricsRow row = metrics_row(load_edge_list(file), o);
      row.variant = input.generic_string();
      csv << metrics_csv_row(row);
      entries.push_back({{"path", file.generic_string()},
                         {"header", header_lines(file)},
                         {"components", row.components},
                         {"largest_component", row.largest_component},
                         {"clustering_zero_convention", row.clustering_zero},
                         {"clustering_all_components", row.clustering_all},
                         {"path_length_reachable_pairs", row.path_length_reachable}});
    }
    emit(args->out, csv.str());
    std::optional<fs::path> json = args->json;
    if (!json && args->out) json = fs::path(args->out->string() + ".json");
    if (json) save_text(*json, provenance.dump(1) + "\n");
  });
}

void setup_report(CLI::App& app, const Globals& g) {
  auto* cmd = app.add_subcommand("report", "Run a reproduction preset");
  cmd->require_subcommand(1);
  auto opts = std::make_shared<PresetOptions>();
  auto mode = std::make_shared<std::string>("contamination");
  auto nodes = std::make_shared<std::size_t>(0);
  auto topo = std::make_shared<std::size_t>(0);

  auto run = [&g, opts, mode, nodes, topo](const std::string& which) {
    opts->base_seed = g.seed;
    opts->jobs = g.jobs;
    opts->mode = parse_compatibility_mode(*mode);
    if (*nodes > 0) opts->nodes = *nodes;
    if (*topo > 0) opts->topology_nodes = *topo;
    PresetResult r;
    if (which == "table1") {
      r = report_table1(*opts);
    } else if (which == "fig2") {
      r = report_figure(Figure::fq, *opts);
    } else if (which == "fig4") {
      r = report_figure(Figure::structure_vectors, *opts);
    } else {
      r = report_figure(Figure::hyperbolicity, *opts);
    }
    for (const auto& f : r.files) std::cout << f.generic_string() << '\n';
    std::cerr << r.runs << " runs, " << r.failed << " failed\n";
    for (const auto& e : r.errors) std::cerr << "  " << e << '\n';
    if (r.failed > 0) throw std::runtime_error(std::to_string(r.failed) + " runs failed");
  };

  for (const char* which : {"table1", "fig2", "fig4", "fig5"}) {
    auto* sub = cmd->add_subcommand(which, std::string("Reproduce ") + which);
    sub->add_option("--out", opts->output, "Output directory")->capture_default_str();
    sub->add_option("--seeds", opts->seeds, "Seeds per cell")->capture_default_str();
    sub->add_option("--nodes", *nodes, "Graph size (preset default when 0)");
    if (std::string(which) == "table1") {
      sub->add_option("--topology-nodes", *topo,
                      "Graph size for delta and q* (preset default when 0)");
    }
    sub->add_option("--samples", opts->samples, "Sampled quadruples for delta")
        ->capture_default_str();
    sub->add_option("--restarts", opts->modularity_restarts, "Modularity restarts")
        ->capture_default_str();
    sub->add_option("--mode", *mode, "Docking compatibility: contamination or strict")
        ->capture_default_str();
    sub->callback([run, which] { run(which); });
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simplexnet: clique-aggregation growth and simplicial analysis"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a TOML/INI file");
  Globals globals;
  app.add_option("--seed", globals.seed, "Random seed")->capture_default_str();
  app.add_option("--jobs", globals.jobs, "Parallel runs for presets")->capture_default_str();

  setup_grow(app, globals);
  setup_transform(app, globals);
  setup_analyze(app, globals);
  setup_report(app, globals);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "simplexnet: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
