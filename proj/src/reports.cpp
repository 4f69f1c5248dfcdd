// Copyright 2026 The treeamalg Authors
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

#include "treeamalg/reports.hpp"

#include <algorithm>

#include <sstream>

#include "treeamalg/error.hpp"
#include "treeamalg/graph_io.hpp"
#include "treeamalg/json_util.hpp"
#include "treeamalg/spec_io.hpp"

namespace treeamalg {

using nlohmann::json;

namespace {

json path_json(const Path& p) { return p.vertices; }

std::string str_or_null(const json& j) { return j.is_null() ? "?" : j.get<std::string>(); }

}  // namespace

json delta_to_json(const DeltaReport& r, const std::string& name, int radius) {
  return {{"schema", kDeltaSchema},
          {"name", name},
          {"radius", radius},
          {"delta_thin", r.delta_thin ? json(r.delta_thin->str()) : json(nullptr)},
          {"delta4", r.delta4.str()},
          {"delta4_exact", r.delta4_exact},
          {"delta4_role", "proxy"},
          {"method", to_string(r.method)},
          {"triples_checked", r.triples_checked},
          {"triples_considered", r.triples_considered},
          {"certified_fraction", r.certified_fraction},
          {"seed", r.seed ? json(*r.seed) : json(nullptr)}};
}

json delta_growth_to_json(const std::vector<DeltaGrowthPoint>& series, const std::string& name) {
  json rows = json::array();
  for (const auto& p : series) {
    rows.push_back({{"radius", p.radius}, {"vertices", p.vertices}, {"delta4", p.delta4.str()}});
  }
  return {{"schema", kDeltaGrowthSchema}, {"name", name}, {"series", rows}};
}

json end_series_to_json(const std::vector<EndProfile>& series, const std::string& name) {
  std::vector<const EndProfile*> by_k;
  for (const auto& p : series) by_k.push_back(&p);
  std::stable_sort(by_k.begin(), by_k.end(), [](const auto* a, const auto* b) { return a->k < b->k; });
  json rows = json::array();
  for (const EndProfile* q : by_k) {
    const EndProfile& p = *q;
    json shares = json::array();
    for (const auto& c : p.components) shares.push_back(c.frontier_share);
    rows.push_back({{"k", p.k}, {"radius", p.radius}, {"components", p.count()}, {"frontier_share", shares}});
  }
  return {{"schema", kEndsSchema}, {"name", name}, {"series", rows}};
}

json boundary_to_json(const BoundaryProfile& p, const std::string& name) {
  return {{"schema", kBoundarySchema},
          {"name", name},
          {"t", p.t},
          {"sphere_radius", p.sphere_radius},
          {"window_radius", p.window_radius},
          {"cluster_count", p.count()},
          {"all_singletons", p.all_singletons()},
          {"clusters", p.clusters}};
}

json comparison_to_json(const EndsComparison& c) {
  return {{"schema", kCompareSchema},
          {"r", c.r},
          {"k", c.k},
          {"t", c.t},
          {"ends", c.ends},
          {"clusters", c.clusters},
          {"coarse_clusters", c.coarse_clusters},
          {"pieces_per_component", c.pieces_per_component},
          {"straddling_clusters", c.straddling_clusters},
          {"dead_sphere_vertices", c.dead_sphere_vertices},
          {"match", c.match}};
}

json qi_fit_to_json(const QIFit& fit) {
  json witnesses = json::array();
  for (const auto& w : fit.witnesses) {
    witnesses.push_back({{"constraint", w.constraint}, {"pair", {w.u, w.v}}, {"d", w.d}, {"d_image", w.d_image}});
  }
  return {{"schema", kQISchema},
          {"gamma", fit.gamma.str()},
          {"c", fit.c.str()},
          {"codensity", fit.codensity},
          {"objective", QIFit::kObjective},
          {"pairs_checked", fit.pairs_checked},
          {"candidates", fit.candidates},
          {"witnesses", witnesses}};
}

json psi_to_json(const PsiReport& r, int depth) {
  json doc = qi_fit_to_json(r.fit);
  doc["tree_depth"] = depth;
  doc["max_identification_size"] = r.max_identification_size;
  doc["finite_identification_on_truncation"] = r.finite_identification;
  doc["note"] = "constants fitted on a truncation; stability across depths is evidence, not proof";
  return doc;
}

json preservation_to_json(const PreservationReport& r, const AmalgamBundle& bundle) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"copy", v.copy},
                          {"pair", {v.x, v.y}},
                          {"factor_path", path_json(v.factor_path)},
                          {"image", path_json(v.image)},
                          {"amalgam_distance", v.amalgam_distance}});
  }
  json doc = {{"schema", kPreserveSchema},
              {"tree_depth", bundle.spec.tree_depth},
              {"copies", bundle.copy_count()},
              {"pairs_checked", r.pairs_checked},
              {"paths_checked", r.paths_checked},
              {"violation_count", r.violations.size()},
              {"violations", violations}};
  const auto& meta = bundle.amalgam().meta();
  if (const auto it = meta.find("injected_edge"); it != meta.end()) doc["injected_edge"] = it->second;
  return doc;
}

json ray_to_json(const RayClass& ray) {
  return {{"schema", kRaySchema},
          {"kind", to_string(ray.kind)},
          {"copy", ray.copy},
          {"tree_path", ray.tree_path},
          {"witness", path_json(ray.witness)},
          {"final_segment", ray.final_segment},
          {"cutoff", ray.cutoff}};
}

json swap_to_json(const SwappedMap& m, const std::vector<Edge>& unmatched) {
  json um = json::array();
  for (auto [a, b] : unmatched) um.push_back({a, b});
  return {{"schema", kSwapSchema},
          {"map", m.map},
          {"tree_automorphism", m.tree_automorphism},
          {"enumeration", m.enumeration},
          {"swaps", m.swaps},
          {"unmatched_identifications", um}};
}

std::string bundle_to_dot(const AmalgamBundle& bundle, bool contracted) {
  static const char* kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                                   "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};
  constexpr std::size_t kColors = sizeof(kPalette) / sizeof(kPalette[0]);
  if (contracted) return ball_to_dot(bundle.amalgam(), {"amalgam", {}, {}});
  DotStyle style{"plus", {}, bundle.new_edges};
  for (const auto& p : bundle.provenance) style.vertex_colors.push_back(kPalette[p.tree_node % kColors]);
  return ball_to_dot(bundle.plus_graph, style);
}

std::string to_table(const json& a) {
  const auto schema = require<std::string>(a, "schema");
  std::ostringstream out;
  if (schema == kDeltaSchema) {
    out << a.at("name").get<std::string>() << " r=" << a.at("radius").get<int>() << " | δ_thin "
        << str_or_null(a.at("delta_thin")) << " | δ4 " << a.at("delta4").get<std::string>() << "\n";
  } else if (schema == kDeltaGrowthSchema) {
    for (const auto& row : a.at("series")) {
      out << a.at("name").get<std::string>() << " r=" << row.at("radius").get<int>() << " | n "
          << row.at("vertices").get<std::size_t>() << " | δ4 " << row.at("delta4").get<std::string>() << "\n";
    }
  } else if (schema == kEndsSchema) {
    for (const auto& row : a.at("series")) {
      out << a.at("name").get<std::string>() << " r=" << row.at("radius").get<int>() << " | k "
          << row.at("k").get<int>() << " | ends " << row.at("components").get<std::size_t>() << "\n";
    }
  } else if (schema == kBoundarySchema) {
    out << a.at("name").get<std::string>() << " r=" << a.at("sphere_radius").get<int>() << " | t "
        << a.at("t").get<int>() << " | clusters " << a.at("cluster_count").get<std::size_t>() << "\n";
  } else if (schema == kCompareSchema) {
    out << "k " << a.at("k").get<int>() << " | t " << a.at("t").get<int>() << " | ends "
        << a.at("ends").get<std::size_t>() << " | coarse " << a.at("coarse_clusters").get<std::size_t>()
        << " | " << (a.at("match").get<bool>() ? "match" : "mismatch") << "\n";
  } else if (schema == kQISchema) {
    out << "gamma " << a.at("gamma").get<std::string>() << " | c " << a.at("c").get<std::string>()
        << " | codensity " << a.at("codensity").get<int>() << "\n";
  } else if (schema == kPreserveSchema) {
    out << "depth " << a.at("tree_depth").get<int>() << " | pairs " << a.at("pairs_checked").get<std::size_t>()
        << " | violations " << a.at("violation_count").get<std::size_t>() << "\n";
  } else if (schema == kReportSchema) {
    for (const auto& step : a.at("steps")) {
      std::string status = "ERROR";
      if (step.contains("passed")) {
        const json& p = step.at("passed");
        status = p.is_null() ? "-" : p.get<bool>() ? "PASS" : "FAIL";
      }
      out << step.at("id").get<std::string>() << " | " << step.at("op").get<std::string>() << " | "
          << step.value("summary", std::string()) << " | " << status << "\n";
    }
  } else if (schema == kBallSchema) {
    out << "n " << a.at("n").get<std::size_t>() << " | edges " << a.at("edges").size() << " | radius "
        << a.at("radius").get<int>() << " | frontier " << a.at("frontier").size() << "\n";
  } else {
    throw InputError("no table form for schema \"" + schema + "\"");
  }
  return out.str();
}

std::string export_artifact(const json& artifact, const std::string& format) {
  if (format == "json") return artifact.dump(2) + "\n";
  if (format == "table") return to_table(artifact);
  if (format == "dot") {
    const auto schema = require<std::string>(artifact, "schema");
    if (schema == kBallSchema) return ball_to_dot(ball_from_json(artifact));
    if (schema == kBundleSchema) return bundle_to_dot(bundle_from_json(artifact), false);
    throw InputError("no dot form for schema \"" + schema + "\"");
  }
  throw InputError("unknown export format \"" + format + "\" (expected dot, json or table)");
}

}  // namespace treeamalg
