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

#include "treeamalg/generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <unordered_map>

#include "treeamalg/error.hpp"
#include "treeamalg/union_find.hpp"

namespace treeamalg {

FiniteBall cayley_ball(const Presentation& pres, int radius, const CayleyOptions& options) {
  if (radius < 0) throw InputError("radius must be nonnegative");
  RewritingSystem rws(pres);
  std::size_t max_relator = 0;
  for (const auto& r : pres.relators) max_relator = std::max(max_relator, r.size());
  CompletionBudget budget = options.budget;
  if (budget.max_rule_length == 0) {
    budget.max_rule_length = 2 * static_cast<std::size_t>(radius) + max_relator + options.length_slack;
  }
  if (!rws.complete(budget)) {
    std::string detail = "rewriting did not become confluent";
    if (rws.unresolved()) {
      detail += "; cannot decide whether \"" + rws.unresolved()->first + "\" equals \"" +
                rws.unresolved()->second + "\"";
    }
    throw GenerationError(detail);
  }

  const auto alphabet = pres.alphabet();
  std::vector<std::string> words{""};
  std::unordered_map<std::string, Vertex> index{{"", 0}};
  for (std::size_t head = 0; head < words.size(); ++head) {
    if (static_cast<int>(words[head].size()) >= radius) continue;
    for (char s : alphabet) {
      std::string next = rws.reduce(words[head] + s);
      if (static_cast<int>(next.size()) > radius || index.count(next)) continue;
      index.emplace(next, static_cast<Vertex>(words.size()));
      words.push_back(std::move(next));
    }
  }
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < words.size(); ++v) {
    for (char s : alphabet) {
      const auto it = index.find(rws.reduce(words[v] + s));
      if (it != index.end() && it->second != static_cast<Vertex>(v)) {
        edges.emplace_back(static_cast<Vertex>(v), it->second);
      }
    }
  }
  BallOptions opts;
  opts.radius = radius;
  opts.labels = words;
  std::string gens(pres.generators.begin(), pres.generators.end());
  std::string rels;
  for (const auto& r : pres.relators) rels += (rels.empty() ? "" : ",") + r;
  opts.meta = {{"generator", "cayley"},
               {"generators", gens},
               {"relators", rels},
               {"radius", std::to_string(radius)},
               {"rewriting_rules", std::to_string(rws.rules().size())},
               {"rewriting_length_bound", std::to_string(budget.max_rule_length)}};
  FiniteBall ball = FiniteBall::from_edges(words.size(), edges, 0, std::move(opts));
  // Shortlex normal forms are geodesic words.
  for (Vertex v = 0; v < static_cast<Vertex>(ball.size()); ++v) {
    if (ball.depth(v) != static_cast<int>(words[v].size())) {
      throw GenerationError("normal form \"" + words[v] + "\" is not geodesic");
    }
  }
  return ball;
}

int TreeSpec::degree(int side) const {
  const int p = side == 1 ? p1 : p2;
  return p == kInfiniteDegree ? infinity_cap : p;
}

SemiregularTree build_semiregular_tree(const TreeSpec& spec) {
  const auto valid = [](int p) { return p >= 1 || p == kInfiniteDegree; };
  if (!valid(spec.p1) || !valid(spec.p2)) throw InputError("tree degrees must be >= 1 or infinite");
  if (spec.depth < 0) throw InputError("tree depth must be nonnegative");
  if (spec.infinity_cap < 1) throw InputError("infinity cap must be >= 1");

  SemiregularTree t{FiniteBall::from_edges(1, {}, 0), {-1}, {1}, {0}, {{}}};
  std::vector<int> depth{0};
  std::vector<Edge> edges;
  for (std::size_t head = 0; head < t.parent.size(); ++head) {
    if (depth[head] >= spec.depth) continue;
    const int deg = spec.degree(t.side[head]);
    const int kids = t.parent[head] < 0 ? deg : deg - 1;
    for (int k = 0; k < kids; ++k) {
      const auto id = static_cast<Vertex>(t.parent.size());
      t.parent.push_back(static_cast<Vertex>(head));
      t.side.push_back(3 - t.side[head]);
      t.child_index.push_back(k);
      t.children.emplace_back();
      t.children[head].push_back(id);
      depth.push_back(depth[head] + 1);
      edges.emplace_back(static_cast<Vertex>(head), id);
    }
  }
  BallOptions opts;
  opts.radius = spec.depth;
  for (int s : t.side) opts.labels.push_back(s == 1 ? "V1" : "V2");
  const auto p_str = [](int p) { return p == kInfiniteDegree ? std::string("inf") : std::to_string(p); };
  opts.meta = {{"generator", "semiregular_tree"},
               {"p1", p_str(spec.p1)},
               {"p2", p_str(spec.p2)},
               {"depth", std::to_string(spec.depth)}};
  if (spec.p1 == kInfiniteDegree || spec.p2 == kInfiniteDegree) {
    opts.meta["infinity_cap"] = std::to_string(spec.infinity_cap);
  }
  t.ball = FiniteBall::from_edges(t.parent.size(), edges, 0, std::move(opts));
  return t;
}

FiniteBall semiregular_tree(const TreeSpec& spec) { return build_semiregular_tree(spec).ball; }

FiniteBall finite_graph(std::size_t n, const std::vector<Edge>& edges, Vertex basepoint) {
  if (n == 0) throw InputError("empty graph");
  UnionFind uf(n);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw InputError("edge references an unknown vertex");
    }
    uf.unite(u, v);
  }
  const auto comps = uf.groups();
  if (comps.size() > 1) {
    std::string listing;
    for (const auto& c : comps) {
      listing += " {";
      for (std::size_t i = 0; i < c.size(); ++i) listing += (i ? "," : "") + std::to_string(c[i]);
      listing += "}";
    }
    throw InputError("graph is disconnected; components:" + listing);
  }
  BallOptions opts;
  opts.whole = true;
  opts.meta = {{"generator", "finite"}};
  return FiniteBall::from_edges(n, edges, basepoint, std::move(opts));
}

FiniteBall finite_graph(const std::vector<Edge>& edges, Vertex basepoint) {
  Vertex max_id = basepoint;
  for (auto [u, v] : edges) max_id = std::max({max_id, u, v});
  return finite_graph(static_cast<std::size_t>(max_id) + 1, edges, basepoint);
}

FiniteBall grid_ball(int radius) {
  if (radius < 0) throw InputError("radius must be nonnegative");
  std::map<std::pair<int, int>, Vertex> index;
  std::vector<std::pair<int, int>> points{{0, 0}};
  index[{0, 0}] = 0;
  const int steps[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (std::size_t head = 0; head < points.size(); ++head) {
    const auto [x, y] = points[head];
    for (const auto& s : steps) {
      const std::pair<int, int> q{x + s[0], y + s[1]};
      if (std::abs(q.first) + std::abs(q.second) > radius || index.count(q)) continue;
      index[q] = static_cast<Vertex>(points.size());
      points.push_back(q);
    }
  }
  std::vector<Edge> edges;
  BallOptions opts;
  for (const auto& [p, id] : index) {
    const auto right = index.find({p.first + 1, p.second});
    if (right != index.end()) edges.emplace_back(id, right->second);
    const auto up = index.find({p.first, p.second + 1});
    if (up != index.end()) edges.emplace_back(id, up->second);
  }
  for (const auto& [x, y] : points) {
    opts.labels.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")");
  }
  opts.radius = radius;
  opts.meta = {{"generator", "grid"}, {"radius", std::to_string(radius)}};
  return FiniteBall::from_edges(points.size(), edges, 0, std::move(opts));
}

FiniteBall complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return finite_graph(static_cast<std::size_t>(n), edges, 0);
}

FiniteBall cycle_graph(int n) {
  if (n < 3) throw InputError("cycles need at least 3 vertices");
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return finite_graph(static_cast<std::size_t>(n), edges, 0);
}

FiniteBall path_graph(int n, Vertex basepoint) {
  if (n < 1) throw InputError("paths need at least one vertex");
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return finite_graph(static_cast<std::size_t>(n), edges, basepoint);
}

BallGenerator cayley_generator(const Presentation& pres, std::string name) {
  return {std::move(name), [pres](int r) { return cayley_ball(pres, r); }};
}

BallGenerator tree_generator(int p1, int p2) {
  return {"tree(" + std::to_string(p1) + "," + std::to_string(p2) + ")",
          [p1, p2](int r) { return semiregular_tree({p1, p2, r}); }};
}

BallGenerator grid_generator() {
  return {"grid", [](int r) { return grid_ball(r); }};
}

}  // namespace treeamalg
