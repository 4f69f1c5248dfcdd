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

#include "treeamalg/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "treeamalg/amalgam.hpp"
#include "treeamalg/boundary.hpp"
#include "treeamalg/error.hpp"
#include "treeamalg/graph_io.hpp"
#include "treeamalg/hyperbolic.hpp"
#include "treeamalg/json_util.hpp"
#include "treeamalg/qi.hpp"
#include "treeamalg/reports.hpp"
#include "treeamalg/spec_io.hpp"

namespace treeamalg {

using nlohmann::json;

namespace {

struct StepContext {
  const json& step;
  std::string where;  // "steps[3]" for messages
  std::uint64_t seed;
  unsigned threads;
};

struct StepOutcome {
  json result;
  std::string summary;
  json checks = json::array();
};

void add_check(StepOutcome& out, const std::string& name, json expected, json actual, bool passed) {
  out.checks.push_back({{"name", name}, {"expected", std::move(expected)}, {"actual", std::move(actual)},
                        {"passed", passed}});
}

const json* expectation(const json& step, const char* key) {
  if (!step.contains("expect")) return nullptr;
  const json& e = step.at("expect");
  return e.contains(key) ? &e.at(key) : nullptr;
}

HalfInt parse_half(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return HalfInt::from_int(std::stoll(s));
    if (s.substr(slash + 1) != "2") throw InputError("");
    return HalfInt::from_doubled(std::stoll(s.substr(0, slash)));
  } catch (const std::exception&) {
    throw SchemaError("\"" + s + "\" is not an integer or k/2");
  }
}

std::vector<int> int_list(const json& step, const char* field, const std::string& where) {
  if (!step.contains(field)) throw SchemaError("missing field \"" + where + "." + field + "\"");
  const json& v = step.at(field);
  if (v.is_number_integer()) return {v.get<int>()};
  return require<std::vector<int>>(step, field, where);
}

// Spec document with its tree depth replaced.
AmalgamationSpec spec_at_depth(const json& spec_doc, int depth) {
  json doc = spec_doc;
  doc["tree"]["depth"] = depth;
  return spec_from_json(doc);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// --- ops -------------------------------------------------------------------

StepOutcome op_ball_summary(const StepContext& ctx) {
  const FiniteBall ball = factor_from_json(ctx.step.at("factor"), ctx.where + ".factor");
  StepOutcome out;
  out.result = {{"vertices", ball.size()},
                {"edges", ball.edge_count()},
                {"radius", ball.radius()},
                {"whole", ball.is_whole()},
                {"frontier", ball.frontier().size()}};
  out.summary = "n " + std::to_string(ball.size()) + ", edges " + std::to_string(ball.edge_count());
  for (const char* key : {"vertices", "edges"}) {
    if (const json* e = expectation(ctx.step, key)) add_check(out, key, *e, out.result[key], *e == out.result[key]);
  }
  return out;
}

StepOutcome op_delta(const StepContext& ctx) {
  const FiniteBall ball = factor_from_json(ctx.step.at("factor"), ctx.where + ".factor");
  const DeltaMode mode = DeltaMode::parse(ctx.step.value("mode", std::string("exhaustive")), ctx.seed);
  const DeltaReport report = delta_thin(ball, mode, {kExhaustiveVertexCap, ctx.threads});
  StepOutcome out;
  out.result = delta_to_json(report, ctx.step.value("name", ctx.step.at("id").get<std::string>()), ball.radius());
  out.summary = "delta_thin " + (report.delta_thin ? report.delta_thin->str() : std::string("?")) + ", delta4 " +
                report.delta4.str();
  for (const char* key : {"delta4", "delta_thin"}) {
    if (const json* e = expectation(ctx.step, key)) add_check(out, key, *e, out.result[key], *e == out.result[key]);
  }
  if (const json* e = expectation(ctx.step, "delta4_max")) {
    add_check(out, "delta4_max", *e, out.result["delta4"], report.delta4 <= parse_half(e->get<std::string>()));
  }
  return out;
}

StepOutcome op_delta_growth(const StepContext& ctx) {
  StepOutcome out;
  std::vector<DeltaGrowthPoint> series;
  json rows = json::array();
  std::string name = ctx.step.value("name", ctx.step.at("id").get<std::string>());
  if (ctx.step.contains("spec")) {
    // Depth series of finite truncated amalgams.
    for (int d : int_list(ctx.step, "depths", ctx.where)) {
      const AmalgamBundle bundle = build_amalgam(spec_at_depth(ctx.step.at("spec"), d));
      const FiniteBall& g = bundle.amalgam();
      series.push_back({d, g.size(), delta_four_point(g, ctx.threads)});
      rows.push_back({{"depth", d}, {"radius", g.radius()}, {"vertices", g.size()}, {"delta4", series.back().delta4.str()}});
    }
    out.result = {{"schema", kDeltaGrowthSchema}, {"name", name}, {"axis", "depth"}, {"series", rows}};
  } else {
    const BallGenerator gen = generator_from_json(ctx.step.at("generator"));
    series = delta_growth(gen, int_list(ctx.step, "radii", ctx.where), ctx.threads);
    out.result = delta_growth_to_json(series, name);
    out.result["axis"] = "radius";
  }
  std::vector<std::string> values;
  for (const auto& p : series) values.push_back(p.delta4.str());
  out.summary = "delta4 " + join(values, ",");
  if (const json* e = expectation(ctx.step, "strictly_increasing")) {
    bool inc = true;
    for (std::size_t i = 1; i < series.size(); ++i) inc = inc && series[i - 1].delta4 < series[i].delta4;
    add_check(out, "strictly_increasing", *e, inc, e->get<bool>() == inc);
  }
  HalfInt max = series.empty() ? HalfInt{} : series.front().delta4;
  for (const auto& p : series) max = std::max(max, p.delta4);
  if (const json* e = expectation(ctx.step, "bounded_slack")) {
    const HalfInt bound = HalfInt::from_doubled(series.front().delta4.doubled() + parse_half(e->get<std::string>()).doubled());
    add_check(out, "bounded_slack", *e, max.str(), max <= bound);
  }
  if (const json* e = expectation(ctx.step, "frozen_bound")) {
    add_check(out, "frozen_bound", *e, max.str(), max <= parse_half(e->get<std::string>()));
  }
  return out;
}

FiniteBall ball_or_generated(const StepContext& ctx, const char* field, int radius) {
  if (ctx.step.contains(field)) return factor_from_json(ctx.step.at(field), ctx.where + "." + field);
  return generator_from_json(ctx.step.at("generator")).make(radius);
}

StepOutcome op_end_profile(const StepContext& ctx) {
  const FiniteBall ball = ball_or_generated(ctx, "factor", ctx.step.value("radius", 0));
  std::vector<EndProfile> series;
  std::vector<std::string> counts;
  json actual = json::array();
  for (int k : int_list(ctx.step, "k", ctx.where)) {
    series.push_back(end_profile(ball, k));
    counts.push_back(std::to_string(series.back().count()));
    actual.push_back(series.back().count());
  }
  StepOutcome out;
  out.result = end_series_to_json(series, ctx.step.value("name", ctx.step.at("id").get<std::string>()));
  out.summary = "ends " + join(counts, ",");
  if (const json* e = expectation(ctx.step, "counts")) add_check(out, "counts", *e, actual, *e == actual);
  return out;
}

StepOutcome op_boundary_profile(const StepContext& ctx) {
  const int r = require<int>(ctx.step, "r", ctx.where);
  const int t = require<int>(ctx.step, "t", ctx.where);
  const BoundaryProfile p = ctx.step.contains("window")
                                ? boundary_profile(factor_from_json(ctx.step.at("window"), ctx.where + ".window"), r, t, ctx.threads)
                                : boundary_profile(generator_from_json(ctx.step.at("generator")), r, t, ctx.threads);
  StepOutcome out;
  out.result = boundary_to_json(p, ctx.step.value("name", ctx.step.at("id").get<std::string>()));
  out.summary = std::to_string(p.count()) + " clusters at t=" + std::to_string(t);
  if (const json* e = expectation(ctx.step, "all_singletons")) {
    add_check(out, "all_singletons", *e, p.all_singletons(), e->get<bool>() == p.all_singletons());
  }
  if (const json* e = expectation(ctx.step, "count")) add_check(out, "count", *e, p.count(), *e == json(p.count()));
  return out;
}

StepOutcome op_disconnectedness(const StepContext& ctx) {
  const BallGenerator gen = generator_from_json(ctx.step.at("generator"));
  StepOutcome out;
  json rows = json::array();
  bool within = true;
  std::vector<std::string> parts;
  for (int r : int_list(ctx.step, "r", ctx.where)) {
    const auto score = disconnectedness_score(gen, r, ctx.threads);
    rows.push_back({{"r", r}, {"score", score ? json(*score) : json(nullptr)}});
    within = within && score && *score <= r;
    parts.push_back("r=" + std::to_string(r) + ":" + (score ? std::to_string(*score) : "?"));
  }
  out.result = {{"schema", kBoundarySchema}, {"name", gen.name}, {"scores", rows}};
  out.summary = "score " + join(parts, ",");
  if (const json* e = expectation(ctx.step, "singletons_by_radius")) {
    add_check(out, "singletons_by_radius", *e, within, e->get<bool>() == within);
  }
  return out;
}

StepOutcome op_components_vs_ends(const StepContext& ctx) {
  const int r = require<int>(ctx.step, "r", ctx.where);
  std::vector<int> ks, ts;
  for (int i = 1; i <= r / 2; ++i) {
    if (i < r) ks.push_back(i);
    ts.push_back(i);
  }
  if (ctx.step.contains("k")) ks = int_list(ctx.step, "k", ctx.where);
  if (ctx.step.contains("t")) ts = int_list(ctx.step, "t", ctx.where);

  std::map<int, FiniteBall> windows;
  std::optional<FiniteBall> fixed;
  if (ctx.step.contains("window")) fixed = factor_from_json(ctx.step.at("window"), ctx.where + ".window");
  std::optional<BallGenerator> gen;
  if (!fixed) gen = generator_from_json(ctx.step.at("generator"));

  StepOutcome out;
  json rows = json::array();
  bool all_match = true;
  std::map<int, std::size_t> ends_by_k;
  std::vector<std::string> parts;
  for (int k : ks) {
    for (int t : ts) {
      const FiniteBall* window = nullptr;
      if (fixed) {
        window = &*fixed;
      } else {
        const int R = ctx.step.value("window_radius", required_window_radius(r, t));
        auto it = windows.find(R);
        if (it == windows.end()) it = windows.emplace(R, gen->make(R)).first;
        window = &it->second;
      }
      const EndsComparison c = components_vs_ends(*window, r, k, t, ctx.threads);
      rows.push_back(comparison_to_json(c));
      all_match = all_match && c.match;
      ends_by_k[k] = c.ends;
      parts.push_back(std::to_string(c.ends) + "=" + std::to_string(c.coarse_clusters));
    }
  }
  out.result = {{"schema", kCompareSchema},
                {"name", ctx.step.value("name", ctx.step.at("id").get<std::string>())},
                {"r", r},
                {"comparisons", rows}};
  out.summary = "ends vs coarse " + join(parts, " ");
  if (const json* e = expectation(ctx.step, "match")) add_check(out, "match", *e, all_match, e->get<bool>() == all_match);
  if (const json* e = expectation(ctx.step, "ends_by_k")) {
    json actual = json::object();
    for (auto [k, n] : ends_by_k) actual[std::to_string(k)] = n;
    bool ok = true;
    for (const auto& [k, n] : e->items()) ok = ok && actual.contains(k) && actual[k] == n;
    add_check(out, "ends_by_k", *e, actual, ok);
  }
  return out;
}

// A chord between two vertices of the root copy that the factor keeps at
// distance >= 2. Deterministic: the first such pair in id order.
AmalgamBundle inject_chord(const AmalgamBundle& bundle) {
  const FiniteBall& factor = bundle.spec.factor(bundle.tree.side[0]);
  const FiniteBall& g = bundle.amalgam();
  for (Vertex x = 0; x < static_cast<Vertex>(factor.size()); ++x) {
    const auto dist = distances_from(factor, x);
    for (Vertex y = x + 1; y < static_cast<Vertex>(factor.size()); ++y) {
      if (dist[y] == kUnreachable || dist[y] < 2 || !factor.certifies(x, y, dist[y])) continue;
      const Vertex a = bundle.psi[bundle.plus_vertex(0, x)];
      const Vertex b = bundle.psi[bundle.plus_vertex(0, y)];
      if (a != b && !g.adjacent(a, b)) return with_extra_edge(bundle, a, b);
    }
  }
  throw PreconditionError("no chord to inject: the root factor has no certified pair at distance >= 2");
}

StepOutcome op_geodesic_preservation(const StepContext& ctx) {
  const bool chord = ctx.step.value("inject_chord", false);
  StepOutcome out;
  json rows = json::array();
  std::size_t total = 0;
  bool every_depth_detected = true;
  std::vector<std::string> parts;
  for (int d : int_list(ctx.step, "depths", ctx.where)) {
    AmalgamBundle bundle = build_amalgam(spec_at_depth(ctx.step.at("spec"), d));
    if (chord) bundle = inject_chord(bundle);
    const PreservationReport report = check_geodesic_preservation(bundle, ctx.threads);
    rows.push_back(preservation_to_json(report, bundle));
    total += report.violations.size();
    every_depth_detected = every_depth_detected && !report.violations.empty();
    parts.push_back(std::to_string(report.violations.size()));
  }
  out.result = {{"schema", kPreserveSchema}, {"inject_chord", chord}, {"depths", rows}};
  out.summary = "violations per depth " + join(parts, ",");
  if (const json* e = expectation(ctx.step, "violations")) add_check(out, "violations", *e, total, *e == json(total));
  if (const json* e = expectation(ctx.step, "detected")) {
    add_check(out, "detected", *e, every_depth_detected, e->get<bool>() == every_depth_detected);
  }
  return out;
}

StepOutcome op_psi_fit(const StepContext& ctx) {
  StepOutcome out;
  json rows = json::array();
  std::vector<std::pair<int, QIFit>> fits;
  std::vector<std::string> parts;
  for (int d : int_list(ctx.step, "depths", ctx.where)) {
    const AmalgamBundle bundle = build_amalgam(spec_at_depth(ctx.step.at("spec"), d));
    const PsiReport report = check_plus_vs_contracted(bundle, ctx.threads);
    rows.push_back(psi_to_json(report, d));
    fits.emplace_back(d, report.fit);
    parts.push_back("d" + std::to_string(d) + "=(" + report.fit.gamma.str() + "," + report.fit.c.str() + ")");
  }
  out.result = {{"schema", kQISchema}, {"fits", rows}};
  out.summary = join(parts, " ");
  if (const json* e = expectation(ctx.step, "stable_from")) {
    const int from = e->get<int>();
    std::optional<QIFit> ref;
    bool stable = true;
    for (const auto& [d, fit] : fits) {
      if (d < from) continue;
      if (!ref) ref = fit;
      stable = stable && fit.gamma == ref->gamma && fit.c == ref->c;
    }
    add_check(out, "stable_from", *e, stable, stable && ref.has_value());
  }
  if (const json* e = expectation(ctx.step, "depth0_identity")) {
    bool identity = false;
    for (const auto& [d, fit] : fits) {
      if (d == 0) identity = fit.gamma == Rational(1) && fit.c == Rational(0);
    }
    add_check(out, "depth0_identity", *e, identity, e->get<bool>() == identity);
  }
  return out;
}

StepOutcome op_end_growth_compare(const StepContext& ctx) {
  const BallGenerator a = generator_from_json(ctx.step.at("a"));
  const BallGenerator b = generator_from_json(ctx.step.at("b"));
  const int radius = require<int>(ctx.step, "radius", ctx.where);
  const FiniteBall ball_a = a.make(radius);
  const FiniteBall ball_b = b.make(radius);
  StepOutcome out;
  json rows = json::array();
  double worst = 1.0;
  std::vector<std::string> parts;
  for (int k : int_list(ctx.step, "k", ctx.where)) {
    const std::size_t ea = end_profile(ball_a, k).count();
    const std::size_t eb = end_profile(ball_b, k).count();
    const double ratio = (ea == 0 || eb == 0) ? 0.0
                                              : static_cast<double>(std::max(ea, eb)) / static_cast<double>(std::min(ea, eb));
    if (ea == 0 || eb == 0) worst = 1e300;
    worst = std::max(worst, ratio);
    json row = {{"k", k}, {"a", ea}, {"b", eb}, {"ratio", ratio}};
    // Boundary clusters at the matched sphere, recorded alongside.
    const int t = (k + 1) / 2;
    row["boundary_t"] = t;
    row["boundary_a"] = boundary_profile(a, k, t, ctx.threads).count();
    row["boundary_b"] = boundary_profile(b, k, t, ctx.threads).count();
    rows.push_back(row);
    parts.push_back(std::to_string(ea) + "/" + std::to_string(eb));
  }
  out.result = {{"schema", kEndsSchema}, {"a", a.name}, {"b", b.name}, {"radius", radius}, {"rows", rows}};
  out.summary = "ends " + a.name + "/" + b.name + " " + join(parts, ",");
  if (const json* e = expectation(ctx.step, "max_ratio")) {
    add_check(out, "max_ratio", *e, worst, worst <= e->get<double>());
  }
  return out;
}

std::vector<Vertex> factor_map(const json& doc, std::size_t n) {
  if (doc.is_string() && doc.get<std::string>() == "identity") {
    std::vector<Vertex> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<Vertex>(i);
    return id;
  }
  return vertex_map_from_json(doc, n);
}

StepOutcome op_swap_map(const StepContext& ctx) {
  StepOutcome out;
  json rows = json::array();
  std::size_t unmatched_total = 0;
  bool all_identity = true;
  std::vector<std::string> parts;
  for (int d : int_list(ctx.step, "depths", ctx.where)) {
    const AmalgamBundle g = build_amalgam(spec_at_depth(ctx.step.at("spec"), d));
    const AmalgamBundle h = ctx.step.contains("h_spec") ? build_amalgam(spec_at_depth(ctx.step.at("h_spec"), d)) : g;
    const auto f1 = factor_map(require<json>(ctx.step, "f1", ctx.where), g.spec.factor1.size());
    const auto f2 = factor_map(require<json>(ctx.step, "f2", ctx.where), g.spec.factor2.size());
    const SwappedMap m = build_swapped_map(g, h, f1, f2);
    const auto unmatched = unmatched_identifications(g, h, m);
    bool identity = true;
    for (std::size_t v = 0; v < m.map.size(); ++v) identity = identity && m.map[v] == static_cast<Vertex>(v);
    json row = swap_to_json(m, unmatched);
    row["tree_depth"] = d;
    row["is_identity"] = identity;
    rows.push_back(row);
    unmatched_total += unmatched.size();
    all_identity = all_identity && identity;
    parts.push_back(std::to_string(unmatched.size()));
  }
  out.result = {{"schema", kSwapSchema}, {"depths", rows}};
  out.summary = "unmatched per depth " + join(parts, ",");
  if (const json* e = expectation(ctx.step, "unmatched")) {
    add_check(out, "unmatched", *e, unmatched_total, *e == json(unmatched_total));
  }
  if (const json* e = expectation(ctx.step, "identity")) {
    add_check(out, "identity", *e, all_identity, e->get<bool>() == all_identity);
  }
  return out;
}

struct OpInfo {
  std::function<StepOutcome(const StepContext&)> run;
  // Each entry lists alternatives; one of them must be present.
  std::vector<std::vector<const char*>> required;
};

const std::map<std::string, OpInfo>& op_table() {
  static const std::map<std::string, OpInfo> table = {
      {"ball_summary", {op_ball_summary, {{"factor"}}}},
      {"delta", {op_delta, {{"factor"}}}},
      {"delta_growth", {op_delta_growth, {{"generator", "spec"}, {"radii", "depths"}}}},
      {"end_profile", {op_end_profile, {{"factor", "generator"}, {"k"}}}},
      {"boundary_profile", {op_boundary_profile, {{"window", "generator"}, {"r"}, {"t"}}}},
      {"disconnectedness", {op_disconnectedness, {{"generator"}, {"r"}}}},
      {"components_vs_ends", {op_components_vs_ends, {{"window", "generator"}, {"r"}}}},
      {"geodesic_preservation", {op_geodesic_preservation, {{"spec"}, {"depths"}}}},
      {"psi_fit", {op_psi_fit, {{"spec"}, {"depths"}}}},
      {"end_growth_compare", {op_end_growth_compare, {{"a"}, {"b"}, {"k"}, {"radius"}}}},
      {"swap_map", {op_swap_map, {{"spec"}, {"depths"}, {"f1"}, {"f2"}}}},
  };
  return table;
}

void validate_nested_spec(const json& doc, const std::string& where) {
  try {
    validate_spec_schema(doc);
  } catch (const SchemaError& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

}  // namespace

std::string config_hash(const json& config) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : config.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> experiment_ops() {
  std::vector<std::string> out;
  for (const auto& [name, info] : op_table()) out.push_back(name);
  return out;
}

void validate_experiment(const json& config) {
  require_schema(config, kExperimentSchema);
  const auto steps = require<json>(config, "steps");
  if (!steps.is_array()) throw SchemaError("field \"steps\" must be an array");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const json& step = steps[i];
    const std::string where = "steps[" + std::to_string(i) + "]";
    const auto id = require<std::string>(step, "id", where);
    const auto op = require<std::string>(step, "op", where);
    if (!ids.insert(id).second) throw SchemaError(where + ": duplicate step id \"" + id + "\"");
    const auto it = op_table().find(op);
    if (it == op_table().end()) throw SchemaError(where + ".op: unknown op \"" + op + "\"");
    for (const auto& alternatives : it->second.required) {
      const bool any = std::any_of(alternatives.begin(), alternatives.end(),
                                   [&](const char* f) { return step.contains(f); });
      if (!any) throw SchemaError("missing field \"" + where + "." + alternatives.front() + "\"");
    }
    for (const char* f : {"spec", "h_spec"}) {
      if (step.contains(f)) validate_nested_spec(step.at(f), where + "." + f);
    }
    for (const char* f : {"generator", "a", "b"}) {
      if (step.contains(f) && step.at(f).is_object() && step.at(f).contains("spec")) {
        validate_nested_spec(step.at(f).at("spec"), where + "." + f + ".spec");
      }
    }
    if (step.contains("expect") && !step.at("expect").is_object()) {
      throw SchemaError("field \"" + where + ".expect\" must be an object");
    }
    if (step.contains("after")) {
      for (const auto& dep : require<std::vector<std::string>>(step, "after", where)) {
        if (!ids.count(dep)) throw SchemaError(where + ".after: \"" + dep + "\" is not an earlier step");
      }
    }
  }
}

ExperimentReport run_experiment(const json& config, const RunOptions& options) {
  validate_experiment(config);
  const json& steps = config.at("steps");
  const std::uint64_t seed = options.seed.value_or(config.value("seed", std::uint64_t{0}));
  json effective = config;
  effective["seed"] = seed;
  const std::string hash = config_hash(effective);

  const std::size_t n = steps.size();
  std::vector<json> records(n);
  std::vector<int> state(n, 0);  // 0 pending, 1 ok, 2 failed or skipped
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[steps[i].at("id").get<std::string>()] = i;
  json errors = json::array();
  json skipped = json::array();

  const auto run_one = [&](std::size_t i) -> std::pair<json, std::optional<json>> {
    const json& step = steps[i];
    const std::string id = step.at("id").get<std::string>();
    const std::string op = step.at("op").get<std::string>();
    const std::uint64_t step_seed = step.value("seed", seed);
    json rec = {{"id", id}, {"op", op}, {"knobs", step}, {"seed", step_seed}};
    auto fail = [&](const std::string& kind, const std::string& message) {
      rec["error"] = {{"kind", kind}, {"message", message}};
      return std::make_pair(rec, std::optional<json>(json{{"id", id}, {"op", op}, {"kind", kind}, {"message", message}}));
    };
    try {
      const StepContext ctx{step, "steps[" + std::to_string(i) + "]", step_seed, options.threads};
      StepOutcome out = op_table().at(op).run(ctx);
      rec["result"] = std::move(out.result);
      rec["summary"] = out.summary;
      rec["checks"] = out.checks;
      if (out.checks.empty()) {
        rec["passed"] = nullptr;
      } else {
        bool ok = true;
        for (const auto& c : out.checks) ok = ok && c.at("passed").get<bool>();
        rec["passed"] = ok;
      }
      return {rec, std::nullopt};
    } catch (const Error& e) {
      return fail(to_string(e.kind()), e.what());
    } catch (const json::exception& e) {
      return fail("schema", e.what());
    } catch (const std::exception& e) {
      return fail("internal", e.what());
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t done = 0;
  while (done < n) {
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i) {
      if (state[i] != 0 || !records[i].is_null()) continue;
      bool deps_ok = true, deps_done = true;
      std::string failed_dep;
      for (const auto& dep : steps[i].value("after", std::vector<std::string>{})) {
        const int s = state[index.at(dep)];
        if (s == 0) deps_done = false;
        if (s == 2) {
          deps_ok = false;
          failed_dep = dep;
        }
      }
      if (!deps_ok) {
        records[i] = {{"id", steps[i].at("id")}, {"op", steps[i].at("op")}, {"knobs", steps[i]},
                      {"skipped", "dependency \"" + failed_dep + "\" failed"}};
        skipped.push_back(steps[i].at("id"));
        state[i] = 2;
        ++done;
        continue;
      }
      if (deps_done) ready.push_back(i);
    }
    if (ready.empty()) continue;  // a skip was recorded; rescan
    std::vector<std::pair<json, std::optional<json>>> results(ready.size());
    if (ready.size() > 1 && hw > 1 && options.threads != 1) {
      std::vector<std::future<std::pair<json, std::optional<json>>>> futures;
      for (std::size_t i : ready) futures.push_back(std::async(std::launch::async, run_one, i));
      for (std::size_t j = 0; j < ready.size(); ++j) results[j] = futures[j].get();
    } else {
      for (std::size_t j = 0; j < ready.size(); ++j) results[j] = run_one(ready[j]);
    }
    for (std::size_t j = 0; j < ready.size(); ++j) {
      records[ready[j]] = std::move(results[j].first);
      state[ready[j]] = results[j].second ? 2 : 1;
      ++done;
    }
  }
  // Manifest in config order regardless of completion order.
  for (std::size_t i = 0; i < n; ++i) {
    if (records[i].contains("error")) {
      json e = records[i].at("error");
      errors.push_back({{"id", records[i].at("id")}, {"op", records[i].at("op")}, {"kind", e.at("kind")},
                        {"message", e.at("message")}});
    }
  }

  ExperimentReport report;
  report.passed = errors.empty() && skipped.empty();
  json step_docs = json::array();
  for (auto& r : records) {
    if (r.contains("passed") && r.at("passed").is_boolean() && !r.at("passed").get<bool>()) report.passed = false;
    step_docs.push_back(std::move(r));
  }
  report.doc = {{"schema", kReportSchema},
                {"tool_version", kToolVersion},
                {"config_hash", hash},
                {"name", config.value("name", std::string())},
                {"seed", seed},
                {"config", effective},
                {"steps", step_docs},
                {"passed", report.passed}};
  report.errors = {{"schema", kErrorManifestSchema},
                   {"config_hash", hash},
                   {"errors", errors},
                   {"skipped", skipped}};
  return report;
}

void write_report_bundle(const ExperimentReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  write_text_file((base / "report.json").string(), report.doc.dump(2) + "\n");
  write_text_file((base / "report.txt").string(), to_table(report.doc));
  write_text_file((base / "errors.json").string(), report.errors.dump(2) + "\n");
}

}  // namespace treeamalg
