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
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "simplexnet/errors.hpp"
#include "simplexnet/harness.hpp"
#include "simplexnet/io.hpp"
#include "simplexnet/report.hpp"

namespace simplexnet {

/// Knobs shared by the reproduction presets. Unset sizes fall back to the
/// preset's own defaults.
struct PresetOptions {
  std::filesystem::path output = "report";
  std::size_t seeds = 20;
  std::uint64_t base_seed = 1;
  std::size_t jobs = 1;
  CompatibilityMode mode = CompatibilityMode::contamination;
  std::optional<std::size_t> nodes;           // metric graphs (table1) or figure graphs
  std::optional<std::size_t> topology_nodes;  // delta / q* graphs of table1
  std::size_t samples = 10'000'000;
  std::size_t modularity_restarts = 5;
};

inline std::string series_label(Variant v, double p) {
  switch (v) {
    case Variant::base: return "0.0";
    case Variant::defect: return format_double(p);
    case Variant::defect_removed: return format_double(p) + "-db";
    case Variant::rand_c: return "rand-c";
  }
  return "?";
}

namespace detail {

inline ExperimentPlan preset_plan(const PresetOptions& o, std::size_t nodes,
                                  std::vector<double> ps, std::vector<Variant> variants,
                                  AnalysisToggles toggles, const std::filesystem::path& out) {
  ExperimentPlan plan;
  plan.affinities = {5.0, 0.0, -5.0};
  plan.defect_probabilities = std::move(ps);
  plan.nodes = nodes;
  plan.mode = o.mode;
  plan.seeds = o.seeds;
  plan.base_seed = o.base_seed;
  plan.variants = std::move(variants);
  plan.output = out;
  plan.analyses = toggles;
  plan.hyperbolicity.samples = o.samples;
  plan.metrics.modularity_restarts = o.modularity_restarts;
  plan.metrics.with_modularity = o.modularity_restarts > 0;
  plan.jobs = o.jobs;
  return plan;
}

inline const AggregateRow* find_row(const std::vector<AggregateRow>& rows, double nu, double p,
                                    Variant v) {
  for (const auto& r : rows) {
    if (r.affinity == nu && r.defect_probability == p && r.variant == v) return &r;
  }
  return nullptr;
}

inline std::string value_or_nan(const std::map<std::string, double>& m, const std::string& k) {
  const auto it = m.find(k);
  return it == m.end() ? std::string("nan") : detail::fmt(it->second);
}

struct SeriesStats {
  std::vector<double> values;
  double mean() const {
    double s = 0.0;
    for (const double x : values) s += x;
    return values.empty() ? std::nan("") : s / static_cast<double>(values.size());
  }
  double stddev() const {
    if (values.size() < 2) return 0.0;
    const double m = mean();
    double v = 0.0;
    for (const double x : values) v += (x - m) * (x - m);
    return std::sqrt(v / static_cast<double>(values.size() - 1));
  }
  double max() const {
    return values.empty() ? std::nan("") : *std::max_element(values.begin(), values.end());
  }
};

// (nu, series label, x) -> per-column samples over seeds.
using CurveKey = std::tuple<double, std::string, long>;
using Curves = std::map<CurveKey, std::map<std::string, SeriesStats>>;

// Collects `columns` of table `section` of `file` from every run of a plan,
// keyed by the integer first column.
inline Curves collect_curves(const ExperimentPlan& plan, const std::string& file,
                             std::size_t section, const std::vector<std::string>& columns,
                             std::vector<std::tuple<double, std::string>>& order) {
  Curves curves;
  for (const RunSpec& r : expand(plan)) {
    const auto path = plan.output / r.directory / file;
    if (!std::filesystem::exists(path)) continue;
    const std::string label = series_label(r.variant, r.defect_probability);
    const auto id = std::make_tuple(r.affinity, label);
    if (std::find(order.begin(), order.end(), id) == order.end()) order.push_back(id);
    const auto doc = CsvDocument::parse(slurp(path));
    if (section >= doc.sections.size()) continue;
    const CsvTable& t = doc.sections[section];
    for (std::size_t row = 0; row < t.rows.size(); ++row) {
      const long x = std::lround(t.number(row, t.header.at(0)));
      auto& cell = curves[{r.affinity, label, x}];
      for (const auto& c : columns) cell[c].values.push_back(t.number(row, c));
    }
  }
  return curves;
}

inline std::string curves_csv(const Curves& curves,
                              const std::vector<std::tuple<double, std::string>>& order,
                              const std::string& x_name, const std::vector<std::string>& columns,
                              bool with_max) {
  std::ostringstream os;
  os << "nu,series," << x_name << ",runs";
  for (const auto& c : columns) {
    os << ',' << c << ',' << c << "_std";
    if (with_max) os << ',' << c << "_max";
  }
  os << '\n';
  for (const auto& [nu, label] : order) {
    for (auto it = curves.lower_bound({nu, label, std::numeric_limits<long>::min()});
         it != curves.end() && std::get<0>(it->first) == nu && std::get<1>(it->first) == label;
         ++it) {
      os << format_double(nu) << ',' << label << ',' << std::get<2>(it->first) << ','
         << it->second.begin()->second.values.size();
      for (const auto& c : columns) {
        const SeriesStats& s = it->second.at(c);
        os << ',' << detail::fmt(s.mean()) << ',' << detail::fmt(s.stddev());
        if (with_max) os << ',' << detail::fmt(s.max());
      }
      os << '\n';
    }
  }
  return os.str();
}

inline std::size_t failed_runs(const PlanResult& r) {
  return static_cast<std::size_t>(
      std::count_if(r.records.begin(), r.records.end(), [](const RunRecord& x) { return !x.ok; }));
}

}  // namespace detail

struct PresetResult {
  std::vector<std::filesystem::path> files;
  std::size_t runs = 0;
  std::size_t failed = 0;
  std::vector<std::string> errors;
};

namespace detail {
inline void absorb(PresetResult& out, const PlanResult& r) {
  out.runs += r.records.size();
  out.failed += failed_runs(r);
  for (const auto& rec : r.records) {
    if (!rec.ok) out.errors.push_back(rec.spec.directory.generic_string() + ": " + rec.error);
  }
}
}  // namespace detail

/// Twelve-row table (three affinities x {0.0, 0.7, 0.7-db, rand-c}). Graph
/// measures come from `nodes` (default 5000) graphs, delta and q* from
/// `topology_nodes` (default 1000) graphs. Writes table1.csv (ensemble
/// means), table1_std.csv and table1_single.csv (seed index 0).
inline PresetResult report_table1(const PresetOptions& o) {
  const std::vector<Variant> variants{Variant::base, Variant::defect, Variant::defect_removed,
                                      Variant::rand_c};
  const ExperimentPlan metrics = detail::preset_plan(
      o, o.nodes.value_or(5000), {0.7}, variants, {false, false, true}, o.output / "metrics");
  const ExperimentPlan topology =
      detail::preset_plan(o, o.topology_nodes.value_or(1000), {0.7}, variants,
                          {true, true, false}, o.output / "topology");
  PresetResult out;
  const PlanResult m = run_plan(metrics);
  const PlanResult t = run_plan(topology);
  detail::absorb(out, m);
  detail::absorb(out, t);

  const std::string header = "nu,p,c,k,l,Cc,mod,D,delta_max,q_star,tsv_q_star_minus_1\n";
  std::ostringstream mean_os, std_os, single_os;
  mean_os << header;
  std_os << header;
  single_os << header;
  for (const double nu : metrics.affinities) {
    for (const Variant v : variants) {
      const double p = v == Variant::base ? 0.0 : 0.7;
      const AggregateRow* a = detail::find_row(m.aggregate, nu, p, v);
      const AggregateRow* b = detail::find_row(t.aggregate, nu, p, v);
      auto emit = [&](std::ostringstream& os, auto field) {
        os << format_double(nu) << ',' << series_label(v, 0.7);
        for (const char* k : {"c", "k", "l", "Cc", "mod", "D"}) {
          os << ',' << (a ? detail::value_or_nan(a->*field, k) : "nan");
        }
        os << ',' << (b ? detail::value_or_nan(b->*field, "delta_G") : "nan");
        for (const char* k : {"q_star", "tsv_q_star_minus_1"}) {
          os << ',' << (b ? detail::value_or_nan(b->*field, k) : "nan");
        }
        os << '\n';
      };
      emit(mean_os, &AggregateRow::mean);
      emit(std_os, &AggregateRow::stddev);
      emit(single_os, &AggregateRow::single);
    }
  }
  save_text(o.output / "table1.csv", mean_os.str());
  save_text(o.output / "table1_std.csv", std_os.str());
  save_text(o.output / "table1_single.csv", single_os.str());
  out.files = {o.output / "table1.csv", o.output / "table1_std.csv",
               o.output / "table1_single.csv"};
  return out;
}

enum class Figure { fq, structure_vectors, hyperbolicity };

/// Series 0.0, 0.5, 0.7, 0.5-db and 0.7-db at each affinity on `nodes`
/// (default 1000) graphs.
///   fq: fig2.csv with f_q per level.
///   structure_vectors: fig4.csv with Q_q, n_q and TSV_q per level.
///   hyperbolicity: fig5_pd.csv with P(d) and fig5_delta.csv with delta_max
///   per d_min (ensemble mean and max).
inline PresetResult report_figure(Figure fig, const PresetOptions& o) {
  AnalysisToggles toggles{fig != Figure::hyperbolicity, fig == Figure::hyperbolicity, false};
  const char* name = fig == Figure::fq ? "fig2" : fig == Figure::structure_vectors ? "fig4" : "fig5";
  const ExperimentPlan plan = detail::preset_plan(
      o, o.nodes.value_or(1000), {0.5, 0.7},
      {Variant::base, Variant::defect, Variant::defect_removed}, toggles, o.output / name);
  PresetResult out;
  detail::absorb(out, run_plan(plan));
  std::vector<std::tuple<double, std::string>> order;
  switch (fig) {
    case Figure::fq: {
      const auto c = detail::collect_curves(plan, "qtop.csv", 0, {"f_q"}, order);
      save_text(o.output / "fig2.csv", detail::curves_csv(c, order, "q", {"f_q"}, false));
      out.files = {o.output / "fig2.csv"};
      break;
    }
    case Figure::structure_vectors: {
      const std::vector<std::string> cols{"Q_q", "n_q", "TSV_q"};
      const auto c = detail::collect_curves(plan, "qtop.csv", 0, cols, order);
      save_text(o.output / "fig4.csv", detail::curves_csv(c, order, "q", cols, false));
      out.files = {o.output / "fig4.csv"};
      break;
    }
    case Figure::hyperbolicity: {
      auto pd = detail::collect_curves(plan, "hyp.csv", 1, {"P"}, order);
      save_text(o.output / "fig5_pd.csv", detail::curves_csv(pd, order, "d", {"P"}, false));
      order.clear();
      auto dm = detail::collect_curves(plan, "hyp.csv", 0, {"delta_max"}, order);
      save_text(o.output / "fig5_delta.csv",
                detail::curves_csv(dm, order, "d_min", {"delta_max"}, true));
      out.files = {o.output / "fig5_pd.csv", o.output / "fig5_delta.csv"};
      break;
    }
  }
  return out;
}

}  // namespace simplexnet
