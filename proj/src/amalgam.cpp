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

#include "treeamalg/amalgam.hpp"

#include <algorithm>
#include <set>

#include "treeamalg/error.hpp"
#include "treeamalg/union_find.hpp"

namespace treeamalg {

namespace {

std::string set_name(int side, int k) {
  return "S^" + std::to_string(side) + "_" + std::to_string(k) + " (" + std::to_string(side) +
         "," + std::to_string(k) + ")";
}

std::vector<EdgeLabel> labels_for(const AmalgamationSpec& spec, const SemiregularTree& tree) {
  return spec.labeling.empty() ? canonical_labeling(tree) : spec.labeling;
}

// Coordinate of `node` on the edge between node and its neighbour `other`.
int coordinate(const SemiregularTree& tree, const std::vector<EdgeLabel>& labels, Vertex node,
               Vertex other) {
  const Vertex child = tree.parent[other] == node ? other : node;
  const EdgeLabel label = labels[child];
  return tree.side[node] == 1 ? label.first : label.second;
}

}  // namespace

std::vector<EdgeLabel> canonical_labeling(const SemiregularTree& tree) {
  std::vector<EdgeLabel> labels(tree.parent.size(), {0, 0});
  for (Vertex u = 1; u < static_cast<Vertex>(tree.parent.size()); ++u) {
    const Vertex v = tree.parent[u];
    const int at_parent = tree.parent[v] < 0 ? tree.child_index[u] : tree.child_index[u] + 1;
    const int at_child = 0;
    labels[u] = tree.side[v] == 1 ? EdgeLabel{at_parent, at_child} : EdgeLabel{at_child, at_parent};
  }
  return labels;
}

Bijection bijection_for(const AmalgamationSpec& spec, EdgeLabel label) {
  const auto it = spec.bijections.find(label);
  if (it != spec.bijections.end()) return it->second;
  auto s1 = spec.adhesion1.at(label.first);
  auto s2 = spec.adhesion2.at(label.second);
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  Bijection out;
  for (std::size_t i = 0; i < std::min(s1.size(), s2.size()); ++i) out.emplace_back(s1[i], s2[i]);
  return out;
}

std::string ValidationReport::str() const {
  std::string out;
  for (const auto& v : violations) out += "[" + v.kind + "] " + v.message + "\n";
  return out;
}

ValidationReport validate_spec(const AmalgamationSpec& spec) {
  ValidationReport report;
  const auto add = [&](std::string kind, std::string message) {
    report.violations.push_back({std::move(kind), std::move(message)});
  };
  if (spec.p1 < 1 || spec.p2 < 1) add("arity", "arities must be >= 1");
  if (spec.tree_depth < 0) add("depth", "tree depth must be nonnegative");
  for (int side : {1, 2}) {
    const auto& sets = spec.adhesion(side);
    if (static_cast<int>(sets.size()) != spec.arity(side)) {
      add("arity", "factor " + std::to_string(side) + " has " + std::to_string(sets.size()) +
                       " adhesion sets but arity " + std::to_string(spec.arity(side)));
    }
    for (std::size_t k = 0; k < sets.size(); ++k) {
      std::set<Vertex> seen;
      for (Vertex x : sets[k]) {
        if (!spec.factor(side).contains(x)) {
          add("vertex", set_name(side, static_cast<int>(k)) + " contains unknown vertex " +
                            std::to_string(x));
        } else if (!seen.insert(x).second) {
          add("vertex", set_name(side, static_cast<int>(k)) + " repeats vertex " + std::to_string(x));
        }
      }
    }
  }
  if (!report.ok()) return report;

  // All S^i_k share one cardinality; S^1_0 is the reference.
  const std::size_t card = spec.adhesion1.front().size();
  for (int side : {1, 2}) {
    for (std::size_t k = 0; k < spec.adhesion(side).size(); ++k) {
      if (side == 1 && k == 0) continue;
      if (spec.adhesion(side)[k].size() != card) {
        add("cardinality", "|" + set_name(side, static_cast<int>(k)) + "| = " +
                               std::to_string(spec.adhesion(side)[k].size()) + " differs from |" +
                               set_name(1, 0) + "| = " + std::to_string(card));
      }
    }
  }

  const auto check_bijection = [&](EdgeLabel label, const Bijection& phi) {
    const auto& [k, l] = label;
    const std::string name = "phi_{" + std::to_string(k) + "," + std::to_string(l) + "}";
    if (k < 0 || k >= spec.p1 || l < 0 || l >= spec.p2) {
      add("bijection", name + " refers to a nonexistent adhesion set");
      return;
    }
    std::set<Vertex> dom(spec.adhesion1[k].begin(), spec.adhesion1[k].end());
    std::set<Vertex> cod(spec.adhesion2[l].begin(), spec.adhesion2[l].end());
    std::set<Vertex> seen_dom, seen_img;
    for (auto [x, y] : phi) {
      if (!dom.count(x)) add("bijection", name + " maps " + std::to_string(x) + " outside S^1_" + std::to_string(k));
      if (!cod.count(y)) add("bijection", name + " hits " + std::to_string(y) + " outside S^2_" + std::to_string(l));
      if (!seen_dom.insert(x).second) add("bijection", name + " maps " + std::to_string(x) + " twice");
      if (!seen_img.insert(y).second) {
        add("bijection", name + " is not injective: two vertices map to " + std::to_string(y));
      }
    }
    if (seen_dom.size() != dom.size() || seen_img.size() != cod.size()) {
      add("bijection", name + " is not a bijection S^1_" + std::to_string(k) + " -> S^2_" + std::to_string(l));
    }
  };
  for (const auto& [label, phi] : spec.bijections) check_bijection(label, phi);

  const SemiregularTree tree = build_semiregular_tree(spec.tree_spec());
  if (!spec.labeling.empty() && spec.labeling.size() != tree.parent.size()) {
    add("labeling", "explicit labeling has " + std::to_string(spec.labeling.size()) +
                        " entries for " + std::to_string(tree.parent.size()) + " tree nodes");
    return report;
  }
  const auto labels = labels_for(spec, tree);
  std::set<EdgeLabel> used;
  for (Vertex u = 1; u < static_cast<Vertex>(tree.parent.size()); ++u) {
    const auto [k, l] = labels[u];
    if (k < 0 || k >= spec.p1 || l < 0 || l >= spec.p2) {
      add("labeling", "tree edge to node " + std::to_string(u) + " has out-of-range label");
      return report;
    }
    used.insert(labels[u]);
  }
  // Exhaustion at every node whose full neighbourhood lies inside the truncation.
  for (Vertex v = 0; v < static_cast<Vertex>(tree.parent.size()); ++v) {
    if (tree.ball.depth(v) >= spec.tree_depth) continue;
    std::vector<int> coords;
    if (tree.parent[v] >= 0) coords.push_back(coordinate(tree, labels, v, tree.parent[v]));
    for (Vertex c : tree.children[v]) coords.push_back(coordinate(tree, labels, v, c));
    std::sort(coords.begin(), coords.end());
    std::vector<int> expected(spec.arity(tree.side[v]));
    for (std::size_t i = 0; i < expected.size(); ++i) expected[i] = static_cast<int>(i);
    if (coords != expected) {
      add("labeling", "labels at tree node " + std::to_string(v) + " do not exhaust {0,...," +
                          std::to_string(spec.arity(tree.side[v]) - 1) + "}");
    }
  }
  for (const auto& label : used) {
    if (!spec.bijections.count(label) && report.ok()) check_bijection(label, bijection_for(spec, label));
  }
  return report;
}

Vertex AmalgamBundle::attachment(Vertex tree_node, Vertex other) const {
  const int side = tree.side[tree_node];
  const int k = coordinate(tree, labels, tree_node, other);
  const auto& set = spec.adhesion(side).at(k);
  if (set.size() != 1) throw PreconditionError("attachment requires adhesion 1");
  return plus_vertex(tree_node, set.front());
}

const FiniteBall& AmalgamBundle::amalgam() const {
  if (!contracted) throw PreconditionError("bundle has not been contracted");
  return *contracted;
}

AmalgamBundle build_plus(const AmalgamationSpec& spec) {
  const ValidationReport report = validate_spec(spec);
  if (!report.ok()) throw ValidationError("invalid amalgamation spec:\n" + report.str());

  SemiregularTree tree = build_semiregular_tree(spec.tree_spec());
  auto labels = labels_for(spec, tree);
  std::vector<Vertex> offsets;
  std::vector<Provenance> prov;
  std::vector<Edge> edges;
  std::vector<std::string> vertex_labels;
  for (Vertex t = 0; t < static_cast<Vertex>(tree.parent.size()); ++t) {
    const auto offset = static_cast<Vertex>(prov.size());
    offsets.push_back(offset);
    const int side = tree.side[t];
    const FiniteBall& factor = spec.factor(side);
    for (Vertex x = 0; x < static_cast<Vertex>(factor.size()); ++x) {
      prov.push_back({t, side, x});
      const std::string fl = factor.labels().empty() ? std::to_string(x) : factor.labels()[x];
      vertex_labels.push_back(std::to_string(t) + ":" + fl);
    }
    for (auto [a, b] : factor.edges()) edges.emplace_back(offset + a, offset + b);
  }
  std::vector<Edge> new_edges;
  for (Vertex u = 1; u < static_cast<Vertex>(tree.parent.size()); ++u) {
    const Vertex v = tree.parent[u];
    const Vertex t1 = tree.side[v] == 1 ? v : u;  // side-1 endpoint
    const Vertex t2 = tree.side[v] == 1 ? u : v;
    for (auto [x, y] : bijection_for(spec, labels[u])) {
      new_edges.emplace_back(offsets[t1] + x, offsets[t2] + y);
    }
  }
  edges.insert(edges.end(), new_edges.begin(), new_edges.end());

  const Vertex base = offsets[0] + spec.factor1.basepoint();
  FiniteBall plus = finite_graph(prov.size(), edges, base);
  plus = plus.with_annotations(std::move(vertex_labels),
                               {{"generator", "amalgam_plus"},
                                {"tree_depth", std::to_string(spec.tree_depth)},
                                {"p1", std::to_string(spec.p1)},
                                {"p2", std::to_string(spec.p2)}});
  return AmalgamBundle{spec,      std::move(tree), std::move(labels),        std::move(offsets),
                       std::move(prov), std::move(new_edges), std::move(plus), std::nullopt, {}, {}};
}

AmalgamBundle contract(AmalgamBundle bundle) {
  const FiniteBall& plus = bundle.plus_graph;
  UnionFind uf(plus.size());
  for (auto [a, b] : bundle.new_edges) uf.unite(a, b);
  std::vector<Vertex> root_id(plus.size(), -1);
  bundle.psi.assign(plus.size(), -1);
  bundle.fibers.clear();
  for (Vertex x = 0; x < static_cast<Vertex>(plus.size()); ++x) {
    const auto r = uf.find(x);
    if (root_id[r] < 0) {
      root_id[r] = static_cast<Vertex>(bundle.fibers.size());
      bundle.fibers.emplace_back();
    }
    bundle.psi[x] = root_id[r];
    bundle.fibers[root_id[r]].push_back(x);
  }
  std::set<Edge> new_set;
  for (auto [a, b] : bundle.new_edges) new_set.emplace(std::min(a, b), std::max(a, b));
  std::vector<Edge> edges;
  for (auto e : plus.edges()) {
    if (new_set.count(e)) continue;
    const Vertex a = bundle.psi[e.first];
    const Vertex b = bundle.psi[e.second];
    if (a != b) edges.emplace_back(a, b);
  }
  std::vector<std::string> labels;
  for (const auto& fiber : bundle.fibers) {
    std::string l;
    for (Vertex x : fiber) l += (l.empty() ? "" : "=") + plus.labels()[x];
    labels.push_back(std::move(l));
  }
  FiniteBall g = finite_graph(bundle.fibers.size(), edges, bundle.psi[plus.basepoint()]);
  auto meta = plus.meta();
  meta["generator"] = "amalgam";
  bundle.contracted = g.with_annotations(std::move(labels), std::move(meta));
  return bundle;
}

int identification_size(const AmalgamBundle& bundle, Vertex g_vertex) {
  const FiniteBall& g = bundle.amalgam();
  g.check_vertex(g_vertex);
  const auto& tree = bundle.tree;
  std::set<Vertex> nodes;
  for (Vertex x : bundle.fibers[g_vertex]) nodes.insert(bundle.provenance[x].tree_node);
  // Steiner subtree in the rooted tree: climb every node to the common ancestor.
  const auto depth = [&](Vertex t) { return tree.ball.depth(t); };
  Vertex lca = *nodes.begin();
  for (Vertex t : nodes) {
    Vertex a = lca, b = t;
    while (depth(a) > depth(b)) a = tree.parent[a];
    while (depth(b) > depth(a)) b = tree.parent[b];
    while (a != b) {
      a = tree.parent[a];
      b = tree.parent[b];
    }
    lca = a;
  }
  std::set<Vertex> span{lca};
  for (Vertex t : nodes) {
    for (Vertex a = t; a != lca && span.insert(a).second; a = tree.parent[a]) {
    }
  }
  return static_cast<int>(span.size());
}

AdhesionMetrics adhesion_metrics(const AmalgamBundle& bundle) {
  AdhesionMetrics m;
  for (int side : {1, 2}) {
    const FiniteBall& factor = bundle.spec.factor(side);
    for (const auto& set : bundle.spec.adhesion(side)) {
      for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = i + 1; j < set.size(); ++j) {
          const auto d = certified_distance(factor, set[i], set[j]);
          if (!d.certified) {
            throw CertificationError("adhesion diameter: pair (" + std::to_string(set[i]) + "," +
                                     std::to_string(set[j]) + ") in factor " +
                                     std::to_string(side) + " is not certified");
          }
          m.max_adhesion_diameter = std::max(m.max_adhesion_diameter, *d.value);
        }
      }
    }
  }
  const FiniteBall& g = bundle.amalgam();
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) {
    m.max_identification_size = std::max(m.max_identification_size, identification_size(bundle, v));
  }
  m.bounded_adhesion = true;
  // A class spanning the whole truncated tree is the truncation's signature of
  // unbounded identification.
  const auto nodes = static_cast<int>(bundle.copy_count());
  m.finite_identification = nodes == 1 || m.max_identification_size < nodes;
  return m;
}

bool is_trivial(const AmalgamationSpec& spec) {
  for (int side : {1, 2}) {
    if (spec.arity(side) != 1 || spec.adhesion(side).size() != 1) continue;
    std::set<Vertex> s(spec.adhesion(side)[0].begin(), spec.adhesion(side)[0].end());
    if (s.size() == spec.factor(side).size()) return true;
  }
  return false;
}

bool has_adhesion_one(const AmalgamationSpec& spec) {
  for (int side : {1, 2}) {
    for (const auto& s : spec.adhesion(side)) {
      if (s.size() != 1) return false;
    }
  }
  return true;
}

bool has_disjoint_adhesion(const AmalgamationSpec& spec) {
  for (int side : {1, 2}) {
    std::set<Vertex> seen;
    for (const auto& s : spec.adhesion(side)) {
      for (Vertex x : s) {
        if (!seen.insert(x).second) return false;
      }
    }
  }
  return true;
}

AmalgamWindow amalgam_metric_ball(const AmalgamBundle& bundle) {
  const FiniteBall& g = bundle.amalgam();
  const auto& spec = bundle.spec;
  const auto& tree = bundle.tree;
  // Plus vertices that may miss neighbours of the untruncated amalgam.
  std::vector<bool> incomplete(bundle.plus_graph.size(), false);
  for (Vertex t = 0; t < static_cast<Vertex>(bundle.copy_count()); ++t) {
    const int side = tree.side[t];
    const FiniteBall& factor = spec.factor(side);
    if (!factor.is_whole()) {
      for (Vertex x : factor.frontier()) incomplete[bundle.plus_vertex(t, x)] = true;
    }
    if (tree.ball.depth(t) < spec.tree_depth) continue;
    // Leaf copy: every adhesion set other than the parent's is unattached.
    const int parent_coord = tree.parent[t] < 0 ? -1 : coordinate(tree, bundle.labels, t, tree.parent[t]);
    for (int k = 0; k < spec.arity(side); ++k) {
      if (k == parent_coord) continue;
      for (Vertex x : spec.adhesion(side)[k]) incomplete[bundle.plus_vertex(t, x)] = true;
    }
  }
  int radius = g.radius();
  bool any = false;
  for (Vertex x = 0; x < static_cast<Vertex>(incomplete.size()); ++x) {
    if (incomplete[x]) {
      radius = std::min(radius, g.depth(bundle.psi[x]));
      any = true;
    }
  }
  if (!any) return {g, [&] {
                      std::vector<Vertex> ids(g.size());
                      for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<Vertex>(i);
                      return ids;
                    }()};
  std::vector<Vertex> kept;
  FiniteBall sub = g.truncated(radius, &kept);
  // A truncation of a whole graph at its own radius would stay whole; here
  // the ambient graph is the untruncated amalgam, so certify by the rule.
  std::vector<Edge> edges = sub.edges();
  BallOptions opts;
  opts.radius = radius;
  opts.labels = sub.labels();
  opts.meta = sub.meta();
  opts.meta["window"] = "amalgam_metric_ball";
  return {FiniteBall::from_edges(sub.size(), edges, sub.basepoint(), std::move(opts)), std::move(kept)};
}

BallGenerator amalgam_window_generator(const AmalgamationSpec& spec, std::string name) {
  return {std::move(name), [spec](int radius) {
            constexpr int kMaxExtraDepth = 32;
            AmalgamationSpec s = spec;
            for (s.tree_depth = std::max(radius, 0); s.tree_depth <= radius + kMaxExtraDepth; ++s.tree_depth) {
              AmalgamWindow w = amalgam_metric_ball(build_amalgam(s));
              if (w.ball.is_whole()) return w.ball;  // a finite amalgam: the whole graph
              if (w.ball.radius() < radius) continue;
              FiniteBall ball = w.ball.truncated(radius);
              auto meta = ball.meta();
              meta["tree_depth"] = std::to_string(s.tree_depth);
              return ball.with_annotations(ball.labels(), std::move(meta));
            }
            throw GenerationError("amalgam window of radius " + std::to_string(radius) +
                                  " not reached within tree depth " +
                                  std::to_string(radius + kMaxExtraDepth));
          }};
}

std::map<Edge, Vertex> contracted_edge_copies(const AmalgamBundle& bundle) {
  std::map<Edge, Vertex> out;
  for (Vertex t = 0; t < static_cast<Vertex>(bundle.copy_count()); ++t) {
    const FiniteBall& factor = bundle.spec.factor(bundle.tree.side[t]);
    for (auto [a, b] : factor.edges()) {
      const Vertex x = bundle.psi[bundle.plus_vertex(t, a)];
      const Vertex y = bundle.psi[bundle.plus_vertex(t, b)];
      out.emplace(Edge{std::min(x, y), std::max(x, y)}, t);
    }
  }
  return out;
}

AmalgamBundle with_extra_edge(const AmalgamBundle& bundle, Vertex a, Vertex b) {
  const FiniteBall& g = bundle.amalgam();
  g.check_vertex(a);
  g.check_vertex(b);
  auto edges = g.edges();
  edges.emplace_back(a, b);
  AmalgamBundle out = bundle;
  auto meta = g.meta();
  meta["injected_edge"] = std::to_string(a) + "-" + std::to_string(b);
  out.contracted = finite_graph(g.size(), edges, g.basepoint()).with_annotations(g.labels(), meta);
  return out;
}

}  // namespace treeamalg
