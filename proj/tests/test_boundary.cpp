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

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "treeamalg/amalgam.hpp"
#include "treeamalg/boundary.hpp"
#include "treeamalg/error.hpp"
#include "treeamalg/experiment.hpp"
#include "treeamalg/generators.hpp"
#include "treeamalg/spec_io.hpp"

using namespace treeamalg;

namespace {

AmalgamBundle corpus_bundle(const std::string& name, int depth) {
  auto doc = corpus_spec(name);
  doc["tree"]["depth"] = depth;
  return build_amalgam(spec_from_json(doc));
}

// A whole finite tree: random parents, so depths and branching are uneven.
struct RandomTree {
  FiniteBall ball = FiniteBall::from_edges(1, {}, 0);
  std::vector<Vertex> parent;
};

RandomTree random_tree(int n, int max_depth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RandomTree out;
  std::vector<int> depth = {0};
  out.parent = {-1};
  std::vector<Edge> edges;
  while (static_cast<int>(depth.size()) < n) {
    const Vertex p = static_cast<Vertex>(rng() % depth.size());
    if (depth[p] >= max_depth) continue;
    out.parent.push_back(p);
    edges.emplace_back(p, static_cast<Vertex>(depth.size()));
    depth.push_back(depth[p] + 1);
  }
  out.ball = finite_graph(static_cast<std::size_t>(n), edges, 0);
  return out;
}

std::vector<std::vector<int>> as_int(const std::vector<std::vector<Vertex>>& clusters) {
  std::vector<std::vector<int>> out;
  for (const auto& c : clusters) out.emplace_back(c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("end_profile examples") {
  CHECK(end_profile(semiregular_tree({3, 3, 4}), 1).count() == 6);
  CHECK(end_profile(grid_ball(6), 2).count() == 1);
  CHECK(end_profile(semiregular_tree({2, 2, 4}), 1).count() == 2);
  CHECK_THROWS_AS(end_profile(grid_ball(3), 3), InputError);
  CHECK_THROWS_AS(end_profile(grid_ball(3), -1), InputError);
}

TEST_CASE("end_profile discards finite appendages") {
  // A path 0-1-2-3 with a pendant 4 hanging off 1: only the branch through 3
  // reaches the frontier.
  const FiniteBall g = finite_graph({{0, 1}, {1, 2}, {2, 3}, {1, 4}}, 0);
  const auto p = end_profile(g, 1);
  REQUIRE(p.count() == 1);
  CHECK(p.components[0].vertices == std::vector<Vertex>{2, 3});
  CHECK(p.components[0].frontier_count == 1);
}

TEST_CASE("end_profile agrees with the oracle") {
  std::vector<FiniteBall> corpus = {semiregular_tree({3, 3, 5}), semiregular_tree({2, 3, 6}), grid_ball(5),
                                    cayley_ball(builtin_presentation("z2*z3"), 6),
                                    corpus_bundle("k3", 3).amalgam(), corpus_bundle("c6", 2).amalgam()};
  for (const auto& ball : corpus) {
    const auto m = oracle::floyd(ball);
    for (int k = 0; k < ball.radius(); ++k) CHECK(end_profile(ball, k).count() == oracle::ends(ball, m, k));
  }
}

TEST_CASE("boundary_profile examples") {
  const auto tree = tree_generator(3, 3);
  CHECK(boundary_profile(tree, 4, 2).count() == 6);
  const auto leaves = boundary_profile(tree, 4, 4);
  CHECK(leaves.all_singletons());
  CHECK(leaves.count() == 3 * 8);
  for (int t = 1; t <= 4; ++t) CHECK(boundary_profile(tree_generator(2, 2), 4, t).count() == 2);
  CHECK(required_window_radius(4, 2) == 8);
  CHECK(required_window_radius(4, 4) == 8);
  CHECK(required_window_radius(4, 0) == 12);
}

TEST_CASE("boundary_profile rejects bad thresholds and thin windows") {
  const FiniteBall grid = grid_ball(8);
  CHECK_THROWS_AS(boundary_profile(grid, 4, 5), InputError);
  CHECK_THROWS_AS(boundary_profile(grid, 4, -1), InputError);
  CHECK_THROWS_AS(boundary_profile(grid, 9, 1), InputError);
  try {
    boundary_profile(grid_ball(7), 4, 2);
    FAIL("expected CoverageError");
  } catch (const CoverageError& e) {
    CHECK(e.coverage() > 0.0);
    CHECK(e.coverage() < 1.0);
  }
}

TEST_CASE("clusters agree with the oracle on decided windows") {
  struct Case {
    FiniteBall window;
    int r;
  };
  std::vector<Case> cases = {{grid_ball(6), 3}, {semiregular_tree({3, 3, 6}), 3},
                             {cayley_ball(builtin_presentation("free2"), 4), 2},
                             {cayley_ball(builtin_presentation("z2*z3"), 8), 4}};
  for (const auto& c : cases) {
    const auto m = oracle::floyd(c.window);
    for (int t = 0; t <= c.r; ++t) {
      if (required_window_radius(c.r, t) > c.window.radius()) continue;
      CAPTURE(t);
      CHECK(as_int(boundary_profile(c.window, c.r, t).clusters) == oracle::sphere_clusters(m, c.r, t));
    }
  }
  // Whole finite graphs decide every link.
  const FiniteBall k3 = corpus_bundle("k3", 3).amalgam();
  const auto m = oracle::floyd(k3);
  for (int r = 1; r <= k3.radius(); ++r)
    for (int t = 0; t <= r; ++t) CHECK(as_int(boundary_profile(k3, r, t).clusters) == oracle::sphere_clusters(m, r, t));
}

TEST_CASE("clusters refine as the threshold rises") {
  for (const auto& gen : {tree_generator(3, 3), grid_generator(), cayley_generator(builtin_presentation("z2*z3"), "z2*z3")}) {
    const int r = 3;
    std::vector<BoundaryProfile> profiles;
    for (int t = 0; t <= r; ++t) profiles.push_back(boundary_profile(gen, r, t));
    for (int t = 1; t <= r; ++t) {
      for (const auto& fine : profiles[t].clusters) {
        bool inside = false;
        for (const auto& coarse : profiles[t - 1].clusters) {
          inside = inside || std::includes(coarse.begin(), coarse.end(), fine.begin(), fine.end());
        }
        CHECK(inside);
      }
    }
  }
}

TEST_CASE("tree clusters are depth-t ancestors with sphere descendants") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const RandomTree tree = random_tree(40, 6, seed);
    const FiniteBall& ball = tree.ball;
    for (int r = 1; r <= ball.radius(); ++r) {
      for (int t = 0; t <= r; ++t) {
        std::set<Vertex> ancestors;
        for (Vertex v = 0; v < static_cast<Vertex>(ball.size()); ++v) {
          if (ball.depth(v) != r) continue;
          Vertex a = v;
          while (ball.depth(a) > t) a = tree.parent[a];
          ancestors.insert(a);
        }
        CHECK(boundary_profile(ball, r, t).count() == ancestors.size());
      }
    }
  }
}

TEST_CASE("disconnectedness scores") {
  CHECK(disconnectedness_score(tree_generator(3, 3), 4) == std::optional<int>(4));
  for (int r = 1; r <= 5; ++r) {
    CHECK(disconnectedness_score(path_graph(2 * r + 1, r), r) == std::optional<int>(1));
    CHECK(disconnectedness_score(path_graph(r + 1, 0), r) == std::optional<int>(0));
  }
}

TEST_CASE("components_vs_ends examples and corpus") {
  const auto tree = components_vs_ends(tree_generator(3, 3).make(required_window_radius(4, 1)), 4, 1, 1);
  CHECK(tree.ends == 6);
  CHECK(tree.coarse_clusters == 6);
  CHECK(tree.match);
  const auto grid = components_vs_ends(grid_ball(required_window_radius(6, 2)), 6, 2, 2);
  CHECK(grid.ends == 1);
  CHECK(grid.coarse_clusters == 1);
  CHECK(grid.match);
  const auto line = components_vs_ends(tree_generator(2, 2).make(required_window_radius(4, 1)), 4, 1, 1);
  CHECK(line.ends == 2);
  CHECK(line.match);

  const int r = 4;
  for (const auto& gen : {tree_generator(3, 3), tree_generator(2, 3), tree_generator(2, 2), grid_generator()}) {
    for (int k = 1; k <= r / 2; ++k)
      for (int t = 1; t <= r / 2; ++t) {
        const auto window = gen.make(required_window_radius(r, t));
        CHECK(components_vs_ends(window, r, k, t).match);
      }
  }
  const FiniteBall k3 = corpus_bundle("k3", 4).amalgam();
  for (int k = 1; k <= 2; ++k)
    for (int t = 1; t <= 2; ++t) CHECK(components_vs_ends(k3, 4, k, t).match);
}

TEST_CASE("classify_ray examples") {
  // Inside the root copy of the Z amalgam, heading along the a-direction.
  const AmalgamBundle z4 = corpus_bundle("z4", 2);
  const FiniteBall& g = z4.amalgam();
  Path ray{{g.basepoint()}};
  const auto owner = contracted_edge_copies(z4);
  const Vertex target = z4.psi[z4.plus_vertex(0, 4)];
  auto paths = all_geodesics(g, g.basepoint(), target);
  REQUIRE_FALSE(paths.empty());
  const RayClass inside = classify_ray(z4, paths.front());
  CHECK(inside.kind == RayKind::kFactor);
  CHECK(inside.copy == 0);
  CHECK(inside.tree_path == std::vector<Vertex>{0});

  // Depth 0: one copy, always FactorType at the root.
  const AmalgamBundle single = corpus_bundle("k3", 0);
  const FiniteBall& s = single.amalgam();
  for (Vertex v = 0; v < static_cast<Vertex>(s.size()); ++v) {
    const RayClass rc = classify_ray(single, all_geodesics(s, s.basepoint(), v).front());
    CHECK(rc.kind == RayKind::kFactor);
    CHECK(rc.copy == 0);
  }
}

TEST_CASE("classify_ray on K3 amalgams crosses the tree") {
  const int depth = 4;
  const AmalgamBundle k3 = corpus_bundle("k3", depth);
  const FiniteBall& g = k3.amalgam();
  Vertex far = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
    if (g.depth(v) > g.depth(far)) far = v;
  const Path ray = all_geodesics(g, g.basepoint(), far, 64).front();
  const RayClass rc = classify_ray(k3, ray);
  CHECK(rc.kind == RayKind::kTree);
  CHECK(static_cast<int>(rc.tree_path.size()) >= depth - 1);
  for (std::size_t i = 0; i + 1 < rc.tree_path.size(); ++i) {
    const Vertex a = rc.tree_path[i], b = rc.tree_path[i + 1];
    CHECK((k3.tree.parent[a] == b || k3.tree.parent[b] == a));
  }
  CHECK(rc.witness.vertices == ray.vertices);
}

TEST_CASE("classify_ray is total on frontier geodesics") {
  for (const char* name : {"k3", "c6", "z4", "free2"}) {
    const AmalgamBundle b = corpus_bundle(name, 2);
    const FiniteBall& g = b.amalgam();
    const auto owner = contracted_edge_copies(b);
    for (Vertex v : g.frontier()) {
      const Path ray = all_geodesics(g, g.basepoint(), v, 1 << 12).front();
      const RayClass rc = classify_ray(b, ray);
      const bool factor = static_cast<double>(rc.final_segment) >= rc.cutoff * static_cast<double>(ray.length());
      CHECK((rc.kind == RayKind::kFactor) == factor);
      if (rc.kind == RayKind::kFactor) {
        // The witness tail stays in one copy.
        for (std::size_t i = 0; i + 1 < rc.witness.vertices.size(); ++i) {
          const Vertex x = rc.witness.vertices[i], y = rc.witness.vertices[i + 1];
          CHECK(owner.at({std::min(x, y), std::max(x, y)}) == rc.copy);
        }
      } else {
        for (std::size_t i = 0; i + 1 < rc.tree_path.size(); ++i) {
          const Vertex a = rc.tree_path[i], c = rc.tree_path[i + 1];
          CHECK((b.tree.parent[a] == c || b.tree.parent[c] == a));
        }
      }
    }
  }
}

TEST_CASE("classify_ray preconditions") {
  const AmalgamBundle k3 = corpus_bundle("k3", 2);
  const FiniteBall& g = k3.amalgam();
  CHECK_THROWS_AS(classify_ray(k3, Path{{1}}), InputError);
  Vertex a = -1, b = -1;
  for (Vertex v : g.neighbors(g.basepoint())) {
    if (a < 0) {
      a = v;
    } else if (!g.adjacent(a, v)) {
      b = v;
      break;
    }
  }
  if (b >= 0) CHECK_THROWS_AS(classify_ray(k3, Path{{a, g.basepoint(), b}}), InputError);
  auto doc = corpus_spec("free2-p4");
  doc["adhesion1"] = nlohmann::json::array({nlohmann::json::array({"aaa", "aa"}), nlohmann::json::array({"AAA", "AA"}),
                                            nlohmann::json::array({"bbb", "bb"}), nlohmann::json::array({"BBB", "BB"})});
  doc["adhesion2"] = doc["adhesion1"];
  doc["tree"]["depth"] = 1;
  const AmalgamBundle wide = build_amalgam(spec_from_json(doc));
  CHECK_THROWS_AS(classify_ray(wide, Path{{wide.amalgam().basepoint()}}), PreconditionError);
}

TEST_CASE("surface group clusters do not shrink with the radius") {
  const auto gen = cayley_generator(builtin_presentation("surface2"), "surface2");
  std::vector<std::size_t> raw;
  for (int r = 1; r <= 3; ++r) raw.push_back(boundary_profile(gen, r, (r + 1) / 2).count());
  CHECK(std::is_sorted(raw.begin(), raw.end()));
  CHECK(raw.back() > raw.front());
  // One end: the clusters still merge into a single coarse cluster.
  const auto cmp = components_vs_ends(gen.make(required_window_radius(3, 2)), 3, 1, 2);
  CHECK(cmp.ends == 1);
  CHECK(cmp.coarse_clusters == 1);
}
