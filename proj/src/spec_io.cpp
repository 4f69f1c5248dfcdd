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

#include "treeamalg/spec_io.hpp"

#include <algorithm>

#include "treeamalg/error.hpp"
#include "treeamalg/graph_io.hpp"
#include "treeamalg/json_util.hpp"

namespace treeamalg {

using nlohmann::json;

namespace {

char single_letter(const std::string& s, const std::string& what) {
  if (s.size() != 1) throw SchemaError(what + " must be single letters, got \"" + s + "\"");
  return s[0];
}

int parse_degree(const json& doc, const std::string& field, const std::string& context) {
  if (doc.contains(field) && doc.at(field).is_string()) {
    const auto s = doc.at(field).get<std::string>();
    if (s == "inf" || s == "infinity") return kInfiniteDegree;
    throw SchemaError("field \"" + context + "." + field + "\" must be an integer or \"inf\"");
  }
  return require<int>(doc, field, context);
}

// Adhesion entries are vertex ids or factor labels (e.g. Cayley words).
std::vector<std::vector<Vertex>> adhesion_from_json(const json& doc, const std::string& field,
                                                    const FiniteBall& factor) {
  if (!doc.contains(field)) throw SchemaError("missing field \"" + field + "\"");
  std::vector<std::vector<Vertex>> out;
  for (const auto& set : doc.at(field)) {
    if (!set.is_array()) throw SchemaError("field \"" + field + "\" must be a list of vertex lists");
    std::vector<Vertex> ids;
    for (const auto& x : set) {
      if (x.is_number_integer()) {
        ids.push_back(x.get<Vertex>());
        continue;
      }
      if (!x.is_string()) throw SchemaError("field \"" + field + "\" holds a non-vertex entry");
      const auto& labels = factor.labels();
      const auto it = std::find(labels.begin(), labels.end(), x.get<std::string>());
      if (it == labels.end()) {
        throw InputError("field \"" + field + "\": no factor vertex labelled \"" + x.get<std::string>() + "\"");
      }
      ids.push_back(static_cast<Vertex>(it - labels.begin()));
    }
    out.push_back(std::move(ids));
  }
  return out;
}

}  // namespace

void validate_spec_schema(const json& doc) {
  require_schema(doc, kSpecSchema);
  for (const char* field : {"factor1", "factor2", "adhesion1", "adhesion2", "tree"}) {
    if (!doc.contains(field)) throw SchemaError(std::string("missing field \"") + field + "\"");
  }
  const json& tree = doc.at("tree");
  require<int>(tree, "p1", "tree");
  require<int>(tree, "p2", "tree");
  require<int>(tree, "depth", "tree");
}

Presentation presentation_from_json(const json& doc) {
  if (doc.is_string()) return builtin_presentation(doc.get<std::string>());
  Presentation pres;
  for (const auto& g : require<std::vector<std::string>>(doc, "generators", "presentation")) {
    pres.generators.push_back(single_letter(g, "generators"));
  }
  pres.relators = doc.value("relators", std::vector<std::string>{});
  for (const auto& g : doc.value("involutions", std::vector<std::string>{})) {
    pres.involutions.push_back(single_letter(g, "involutions"));
  }
  pres.validate();
  return pres;
}

json presentation_to_json(const Presentation& pres) {
  json gens = json::array(), invs = json::array();
  for (char g : pres.generators) gens.push_back(std::string(1, g));
  for (char g : pres.involutions) invs.push_back(std::string(1, g));
  return {{"generators", gens}, {"relators", pres.relators}, {"involutions", invs}};
}

BallGenerator generator_from_json(const json& doc) {
  const auto kind = require<std::string>(doc, "generator");
  if (kind == "cayley") {
    if (!doc.contains("presentation")) throw SchemaError("missing field \"presentation\"");
    const json& p = doc.at("presentation");
    return cayley_generator(presentation_from_json(p), p.is_string() ? p.get<std::string>() : "custom");
  }
  if (kind == "tree") {
    return tree_generator(parse_degree(doc, "p1", "tree"), parse_degree(doc, "p2", "tree"));
  }
  if (kind == "grid") return grid_generator();
  if (kind == "amalgam") {
    if (!doc.contains("spec")) throw SchemaError("missing field \"spec\"");
    return amalgam_window_generator(spec_from_json(doc.at("spec")), doc.value("name", std::string("amalgam")));
  }
  throw InputError("generator \"" + kind + "\" has no radius parameter");
}

FiniteBall factor_from_json(const json& doc, const std::string& context) {
  if (!doc.is_object()) throw SchemaError("field \"" + context + "\" must be an object");
  if (doc.contains("ball")) return ball_from_json(doc.at("ball"));
  if (doc.contains("edges") && !doc.contains("generator")) {
    std::vector<Edge> edges;
    for (const auto& e : require<std::vector<std::vector<Vertex>>>(doc, "edges", context)) {
      if (e.size() != 2) throw SchemaError("field \"" + context + ".edges\" must hold [u,v] pairs");
      edges.emplace_back(e[0], e[1]);
    }
    return finite_graph(edges, doc.value("basepoint", 0));
  }
  const auto kind = require<std::string>(doc, "generator", context);
  if (kind == "complete") return complete_graph(require<int>(doc, "n", context));
  if (kind == "cycle") return cycle_graph(require<int>(doc, "n", context));
  if (kind == "path") return path_graph(require<int>(doc, "n", context), doc.value("basepoint", 0));
  if (kind == "tree") {
    return semiregular_tree({parse_degree(doc, "p1", context), parse_degree(doc, "p2", context),
                             require<int>(doc, "depth", context), doc.value("infinity_cap", 6)});
  }
  return generator_from_json(doc).make(require<int>(doc, "radius", context));
}

AmalgamationSpec spec_from_json(const json& doc) {
  validate_spec_schema(doc);
  AmalgamationSpec spec;
  spec.factor1 = factor_from_json(doc.at("factor1"), "factor1");
  spec.factor2 = factor_from_json(doc.at("factor2"), "factor2");
  spec.adhesion1 = adhesion_from_json(doc, "adhesion1", spec.factor1);
  spec.adhesion2 = adhesion_from_json(doc, "adhesion2", spec.factor2);
  const json& tree = doc.at("tree");
  spec.p1 = require<int>(tree, "p1", "tree");
  spec.p2 = require<int>(tree, "p2", "tree");
  spec.tree_depth = require<int>(tree, "depth", "tree");
  if (doc.contains("bijections")) {
    for (const auto& b : doc.at("bijections")) {
      const EdgeLabel label{require<int>(b, "k", "bijections"), require<int>(b, "l", "bijections")};
      Bijection phi;
      for (const auto& pr : require<std::vector<std::vector<Vertex>>>(b, "pairs", "bijections")) {
        if (pr.size() != 2) throw SchemaError("bijection pairs must be [x,y]");
        phi.emplace_back(pr[0], pr[1]);
      }
      spec.bijections[label] = std::move(phi);
    }
  }
  if (doc.contains("labeling") && !doc.at("labeling").is_string()) {
    for (const auto& kl : doc.at("labeling").get<std::vector<std::vector<int>>>()) {
      if (kl.size() != 2) throw SchemaError("labeling entries must be [k,l]");
      spec.labeling.emplace_back(kl[0], kl[1]);
    }
  } else if (doc.contains("labeling") && doc.at("labeling").get<std::string>() != "canonical") {
    throw SchemaError("labeling must be \"canonical\" or a list of [k,l]");
  }
  return spec;
}

json spec_to_json(const AmalgamationSpec& spec) {
  json bijections = json::array();
  for (const auto& [label, phi] : spec.bijections) {
    json pairs = json::array();
    for (auto [x, y] : phi) pairs.push_back({x, y});
    bijections.push_back({{"k", label.first}, {"l", label.second}, {"pairs", pairs}});
  }
  json labeling = "canonical";
  if (!spec.labeling.empty()) {
    labeling = json::array();
    for (auto [k, l] : spec.labeling) labeling.push_back({k, l});
  }
  return {{"schema", kSpecSchema},
          {"factor1", {{"ball", ball_to_json(spec.factor1)}}},
          {"factor2", {{"ball", ball_to_json(spec.factor2)}}},
          {"adhesion1", spec.adhesion1},
          {"adhesion2", spec.adhesion2},
          {"bijections", bijections},
          {"labeling", labeling},
          {"tree", {{"p1", spec.p1}, {"p2", spec.p2}, {"depth", spec.tree_depth}}}};
}

json bundle_to_json(const AmalgamBundle& bundle) {
  json new_edges = json::array(), provenance = json::array();
  for (auto [a, b] : bundle.new_edges) new_edges.push_back({a, b});
  for (const auto& p : bundle.provenance) provenance.push_back({p.tree_node, p.side, p.factor_vertex});
  json doc = {{"schema", kBundleSchema},
              {"spec", spec_to_json(bundle.spec)},
              {"plus", ball_to_json(bundle.plus_graph)},
              {"new_edges", new_edges},
              {"provenance", provenance}};
  if (bundle.is_contracted()) {
    doc["contracted"] = ball_to_json(bundle.amalgam());
    doc["psi"] = bundle.psi;
  }
  return doc;
}

AmalgamBundle bundle_from_json(const json& doc) {
  require_schema(doc, kBundleSchema);
  if (!doc.contains("spec")) throw SchemaError("missing field \"spec\"");
  AmalgamBundle bundle = build_plus(spec_from_json(doc.at("spec")));
  const bool contracted = doc.contains("contracted");
  if (contracted) bundle = contract(std::move(bundle));
  const auto mismatch = [](const std::string& what) {
    throw InputError("bundle document disagrees with its spec: " + what);
  };
  if (ball_from_json(require<json>(doc, "plus")).edges() != bundle.plus_graph.edges()) mismatch("plus graph");
  if (contracted) {
    if (ball_from_json(doc.at("contracted")).edges() != bundle.amalgam().edges()) mismatch("contracted graph");
    if (require<std::vector<Vertex>>(doc, "psi") != bundle.psi) mismatch("psi");
  }
  return bundle;
}

std::vector<Vertex> vertex_map_from_json(const json& doc, std::size_t domain_size) {
  if (!doc.is_array()) throw SchemaError("vertex map must be an array");
  std::vector<Vertex> map(domain_size, -1);
  if (!doc.empty() && doc.front().is_array()) {
    for (const auto& pr : doc) {
      const auto p = pr.get<std::vector<Vertex>>();
      if (p.size() != 2 || p[0] < 0 || static_cast<std::size_t>(p[0]) >= domain_size) {
        throw InputError("vertex map entries must be [domain, codomain] with a valid domain id");
      }
      if (map[p[0]] >= 0) throw InputError("vertex " + std::to_string(p[0]) + " mapped twice");
      map[p[0]] = p[1];
    }
  } else {
    const auto images = doc.get<std::vector<Vertex>>();
    if (images.size() != domain_size) throw InputError("vertex map has the wrong length");
    map = images;
  }
  for (std::size_t v = 0; v < domain_size; ++v) {
    if (map[v] < 0) throw InputError("vertex map misses domain vertex " + std::to_string(v));
  }
  return map;
}

}  // namespace treeamalg
