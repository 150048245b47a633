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
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "simplexnet/assembly.hpp"
#include "simplexnet/errors.hpp"
#include "simplexnet/graph_metrics.hpp"
#include "simplexnet/growth.hpp"
#include "simplexnet/io.hpp"
#include "simplexnet/metric_geometry.hpp"
#include "simplexnet/qanalysis.hpp"
#include "simplexnet/report.hpp"
#include "simplexnet/transform.hpp"

namespace simplexnet {

/// base: grown with p = 0; defect: grown with p; defect-removed and rand-c are
/// derived from the defect graph of the same seed (rand-c deletes as many
/// uniformly random edges as there are defect bonds).
enum class Variant { base, defect, defect_removed, rand_c };

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::base: return "base";
    case Variant::defect: return "defect";
    case Variant::defect_removed: return "defect-removed";
    case Variant::rand_c: return "rand-c";
  }
  return "?";
}

inline Variant parse_variant(std::string_view s) {
  for (const Variant v : {Variant::base, Variant::defect, Variant::defect_removed, Variant::rand_c}) {
    if (s == to_string(v)) return v;
  }
  throw UsageError("unknown variant '" + std::string(s) + "'");
}

struct AnalysisToggles {
  bool qtop = true;
  bool hyperbolicity = true;
  bool metrics = true;
};

struct ExperimentPlan {
  std::vector<double> affinities{5.0, 0.0, -5.0};
  std::vector<double> defect_probabilities{0.7};
  double alpha = 2.0;
  std::size_t nodes = 1000;
  std::size_t n_min = 2;
  std::size_t n_max = 10;
  CompatibilityMode mode = CompatibilityMode::contamination;
  std::size_t seeds = 20;
  std::uint64_t base_seed = 1;
  std::vector<Variant> variants{Variant::base, Variant::defect, Variant::defect_removed,
                                Variant::rand_c};
  std::filesystem::path output = "runs";
  AnalysisToggles analyses;
  HyperbolicityOptions hyperbolicity;
  MetricsOptions metrics;
  std::size_t jobs = 1;

  GrowthConfig config(double affinity, double p, std::uint64_t seed) const {
    GrowthConfig c;
    c.target_nodes = nodes;
    c.affinity = affinity;
    c.defect_probability = p;
    c.size_exponent = alpha;
    c.min_size = n_min;
    c.max_size = n_max;
    c.seed = seed;
    c.mode = mode;
    return c;
  }

  void validate() const {
    if (affinities.empty() || defect_probabilities.empty() || variants.empty()) {
      throw UsageError("plan needs at least one affinity, defect probability and variant");
    }
    if (seeds == 0) throw UsageError("plan needs at least one seed");
    for (const double p : defect_probabilities) config(0.0, p, 0).validate();
  }
};

struct RunSpec {
  double affinity = 0.0;
  double defect_probability = 0.0;  // 0 for base runs
  std::size_t seed_index = 0;
  std::uint64_t seed = 0;
  Variant variant = Variant::base;
  std::filesystem::path directory;  // relative to the plan output
};

struct RunRecord {
  RunSpec spec;
  GrowthConfig config;
  std::vector<std::filesystem::path> files;
  double grow_seconds = 0.0;
  double analysis_seconds = 0.0;
  bool ok = false;
  std::string error;
};

namespace detail {
inline std::string cell_name(double affinity, double p) {
  return "nu" + format_double(affinity) + "_p" + format_double(p);
}
}  // namespace detail

/// Cartesian product affinity x p x seed x variant. Base runs do not depend
/// on p and appear once per (affinity, seed).
inline std::vector<RunSpec> expand(const ExperimentPlan& plan) {
  plan.validate();
  std::vector<RunSpec> out;
  std::vector<std::tuple<double, std::size_t>> bases;
  for (const double nu : plan.affinities) {
    for (const double p : plan.defect_probabilities) {
      for (std::size_t s = 0; s < plan.seeds; ++s) {
        for (const Variant v : plan.variants) {
          RunSpec r;
          r.affinity = nu;
          r.defect_probability = v == Variant::base ? 0.0 : p;
          r.seed_index = s;
          r.seed = plan.base_seed + s;
          r.variant = v;
          if (v == Variant::base) {
            if (std::find(bases.begin(), bases.end(), std::make_tuple(nu, s)) != bases.end()) {
              continue;
            }
            bases.emplace_back(nu, s);
          }
          r.directory = std::filesystem::path(detail::cell_name(nu, r.defect_probability)) /
                        ("seed" + std::to_string(s)) / std::string(to_string(v));
          out.push_back(std::move(r));
        }
      }
    }
  }
  return out;
}

namespace detail {

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw FormatError("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline void analyze_into(const std::filesystem::path& dir, const LabeledGraph& graph,
                         const ExperimentPlan& plan, const RunSpec& spec, RunRecord& rec) {
  if (plan.analyses.qtop) {
    const CliqueComplex complex = maximal_cliques(graph);
    save_text(dir / "qtop.csv",
              qtop_csv(structure_vectors(complex), f_vector(graph, complex)));
    rec.files.push_back(dir / "qtop.csv");
  }
  if (!plan.analyses.hyperbolicity && !plan.analyses.metrics) return;
  const ComponentSplit largest = largest_component(graph);
  const DistanceMatrix dm(largest.subgraph);
  if (plan.analyses.hyperbolicity) {
    HyperbolicityOptions options = plan.hyperbolicity;
    options.seed = mix_seed(spec.seed, 101);
    const auto profile = hyperbolicity_auto(dm, options);
    std::vector<ComponentDelta> others;
    if (largest.sizes.size() > 1) others = component_hyperbolicity(graph, options);
    save_text(dir / "hyp.csv", hyperbolicity_csv(profile, distance_distribution(dm),
                                                 dm.size(), largest.sizes.size(), others));
    rec.files.push_back(dir / "hyp.csv");
  }
  if (plan.analyses.metrics) {
    MetricsOptions options = plan.metrics;
    options.seed = mix_seed(spec.seed, 102);
    MetricsRow row = metrics_row(graph, largest, dm, options);
    row.variant = std::string(to_string(spec.variant));
    save_text(dir / "metrics.csv", std::string(kMetricsHeader) + "\n" + metrics_csv_row(row));
    rec.files.push_back(dir / "metrics.csv");
  }
}

// Runs every spec sharing one grown assembly (same affinity, p and seed).
inline void run_group(const ExperimentPlan& plan, const std::vector<RunSpec>& specs,
                      std::vector<RunRecord>& records) {
  const RunSpec& first = specs.front();
  const GrowthConfig config = plan.config(first.affinity, first.defect_probability, first.seed);
  std::optional<AssemblyState> state;
  double grow_seconds = 0.0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    RunRecord& rec = records[i];
    rec.spec = specs[i];
    rec.config = config;
    try {
      if (!state) {
        const auto t0 = std::chrono::steady_clock::now();
        state.emplace(grow(config));
        grow_seconds = seconds_since(t0);
      }
      rec.grow_seconds = grow_seconds;
      const auto t0 = std::chrono::steady_clock::now();
      const std::filesystem::path dir = plan.output / specs[i].directory;
      std::filesystem::create_directories(dir);
      LabeledGraph graph;
      switch (specs[i].variant) {
        case Variant::base:
        case Variant::defect:
          save_assembly(dir, *state);
          save_text(dir / "series.csv", event_series_report(*state));
          rec.files = {dir / "graph.edges", dir / "run.json", dir / "events.csv",
                       dir / "series.csv"};
          graph = state->graph();
          break;
        case Variant::defect_removed: {
          auto [g, report] = remove_defect_edges(state->graph());
          save_edge_list(dir / "graph.edges", g, EdgeListHeader{config, {"variant defect-removed"}});
          save_text(dir / "run.json",
                    transform_sidecar(std::string(to_string(specs[i].variant)), config, g, report)
                            .dump(1) +
                        "\n");
          rec.files = {dir / "graph.edges", dir / "run.json"};
          graph = std::move(g);
          break;
        }
        case Variant::rand_c: {
          Pcg32 rng(mix_seed(specs[i].seed, 103));
          auto [g, report] =
              remove_random_edges(state->graph(), state->graph().defect_edge_count(), rng);
          // The comparator has no distinguished bonds left.
          g = clear_bond_types(g);
          save_edge_list(dir / "graph.edges", g, EdgeListHeader{config, {"variant rand-c"}});
          save_text(dir / "run.json",
                    transform_sidecar(std::string(to_string(specs[i].variant)), config, g, report)
                            .dump(1) +
                        "\n");
          rec.files = {dir / "graph.edges", dir / "run.json"};
          graph = std::move(g);
          break;
        }
      }
      analyze_into(dir, graph, plan, specs[i], rec);
      rec.analysis_seconds = seconds_since(t0);
      rec.ok = true;
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.error = e.what();
    }
  }
}

}  // namespace detail

/// Per (affinity, p, variant) cell: ensemble mean and standard deviation of
/// every scalar the runs produced, plus the values of seed index 0.
struct AggregateRow {
  double affinity = 0.0;
  double defect_probability = 0.0;
  Variant variant = Variant::base;
  std::size_t runs = 0;
  std::map<std::string, double> mean;
  std::map<std::string, double> stddev;
  std::map<std::string, double> single;
};

/// Scalars of one finished run, read back from its output files.
inline std::map<std::string, double> read_run_scalars(const std::filesystem::path& dir) {
  std::map<std::string, double> out;
  if (std::filesystem::exists(dir / "metrics.csv")) {
    const auto doc = CsvDocument::parse(detail::slurp(dir / "metrics.csv"));
    const CsvTable& t = doc.sections.at(0);
    for (const char* key : {"c", "k", "l", "Cc", "mod", "D", "N", "E", "components", "Cc_zero"}) {
      out[key] = t.number(0, key);
    }
  }
  if (std::filesystem::exists(dir / "qtop.csv")) {
    const auto doc = CsvDocument::parse(detail::slurp(dir / "qtop.csv"));
    out["q_star"] = doc.summary_number("q_star");
    out["tsv_q_star_minus_1"] = doc.summary_number("tsv_q_star_minus_1");
    out["n_0"] = doc.summary_number("n_0");
  }
  if (std::filesystem::exists(dir / "hyp.csv")) {
    const auto doc = CsvDocument::parse(detail::slurp(dir / "hyp.csv"));
    out["delta_G"] = doc.summary_number("delta_G");
    out["delta_all_components"] = doc.summary_number("delta_all_components");
  }
  return out;
}

/// Aggregates from run outputs on disk only, so re-running it is idempotent.
inline std::vector<AggregateRow> aggregate_runs(const std::filesystem::path& root,
                                                const std::vector<RunSpec>& runs) {
  std::vector<AggregateRow> rows;
  std::map<std::tuple<double, double, int>, std::vector<std::pair<std::size_t, std::map<std::string, double>>>> cells;
  std::vector<std::tuple<double, double, int>> order;
  for (const RunSpec& r : runs) {
    const auto key = std::make_tuple(r.affinity, r.defect_probability, static_cast<int>(r.variant));
    if (!cells.count(key)) order.push_back(key);
    const auto dir = root / r.directory;
    if (!std::filesystem::exists(dir)) {
      cells[key];
      continue;
    }
    cells[key].emplace_back(r.seed_index, read_run_scalars(dir));
  }
  for (const auto& key : order) {
    const auto& values = cells[key];
    AggregateRow row;
    row.affinity = std::get<0>(key);
    row.defect_probability = std::get<1>(key);
    row.variant = static_cast<Variant>(std::get<2>(key));
    row.runs = values.size();
    std::map<std::string, std::vector<double>> series;
    for (const auto& [seed_index, scalars] : values) {
      for (const auto& [name, x] : scalars) series[name].push_back(x);
      if (seed_index == 0) row.single = scalars;
    }
    for (const auto& [name, xs] : series) {
      double m = 0.0;
      for (const double x : xs) m += x;
      m /= static_cast<double>(xs.size());
      double v = 0.0;
      for (const double x : xs) v += (x - m) * (x - m);
      row.mean[name] = m;
      row.stddev[name] = xs.size() > 1 ? std::sqrt(v / static_cast<double>(xs.size() - 1)) : 0.0;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
  std::vector<std::string> names;
  for (const auto& r : rows) {
    for (const auto& [name, x] : r.mean) {
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
    }
  }
  std::sort(names.begin(), names.end());
  std::ostringstream os;
  os << "nu,p,variant,runs";
  for (const auto& n : names) os << ',' << n << ',' << n << "_std," << n << "_single";
  os << '\n';
  auto get = [](const std::map<std::string, double>& m, const std::string& k) {
    const auto it = m.find(k);
    return it == m.end() ? std::string("nan") : detail::fmt(it->second);
  };
  for (const auto& r : rows) {
    os << format_double(r.affinity) << ',' << format_double(r.defect_probability) << ','
       << to_string(r.variant) << ',' << r.runs;
    for (const auto& n : names) {
      os << ',' << get(r.mean, n) << ',' << get(r.stddev, n) << ',' << get(r.single, n);
    }
    os << '\n';
  }
  return os.str();
}

struct PlanResult {
  std::vector<RunRecord> records;
  std::vector<AggregateRow> aggregate;
};

/// Executes a plan: grows each (affinity, p, seed) once, derives the
/// variants, analyses every graph and writes aggregate.csv and runs.csv at
/// the plan root. Failed runs are recorded, not fatal.
inline PlanResult run_plan(const ExperimentPlan& plan) {
  const std::vector<RunSpec> runs = expand(plan);
  std::vector<std::vector<std::size_t>> groups;
  {
    std::map<std::tuple<double, double, std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto key = std::make_tuple(runs[i].affinity, runs[i].defect_probability,
                                       runs[i].seed_index);
      const auto [it, inserted] = index.try_emplace(key, groups.size());
      if (inserted) groups.emplace_back();
      groups[it->second].push_back(i);
    }
  }
  std::vector<std::vector<RunRecord>> grouped(groups.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t g = next++; g < groups.size(); g = next++) {
      std::vector<RunSpec> specs;
      for (const std::size_t i : groups[g]) specs.push_back(runs[i]);
      grouped[g].resize(specs.size());
      detail::run_group(plan, specs, grouped[g]);
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(plan.jobs, 1, std::max<std::size_t>(groups.size(), 1));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  PlanResult result;
  result.records.resize(runs.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t k = 0; k < groups[g].size(); ++k) {
      result.records[groups[g][k]] = std::move(grouped[g][k]);
    }
  }
  std::filesystem::create_directories(plan.output);
  std::ostringstream manifest;
  manifest << "directory,nu,p,seed,variant,ok,grow_seconds,analysis_seconds,error\n";
  for (const RunRecord& r : result.records) {
    std::string error = r.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    manifest << r.spec.directory.generic_string() << ',' << format_double(r.spec.affinity) << ','
             << format_double(r.spec.defect_probability) << ',' << r.spec.seed << ','
             << to_string(r.spec.variant) << ',' << (r.ok ? 1 : 0) << ','
             << format_double(r.grow_seconds) << ',' << format_double(r.analysis_seconds) << ','
             << error << '\n';
  }
  save_text(plan.output / "runs.csv", manifest.str());
  result.aggregate = aggregate_runs(plan.output, runs);
  save_text(plan.output / "aggregate.csv", aggregate_csv(result.aggregate));
  return result;
}

}  // namespace simplexnet
