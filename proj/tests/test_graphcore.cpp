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
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "treeamalg/error.hpp"
#include "treeamalg/generators.hpp"
#include "treeamalg/graph_io.hpp"
#include "treeamalg/graphcore.hpp"

using namespace treeamalg;

namespace {

Vertex by_label(const FiniteBall& ball, const std::string& label) {
  const auto& labels = ball.labels();
  const auto it = std::find(labels.begin(), labels.end(), label);
  REQUIRE(it != labels.end());
  return static_cast<Vertex>(it - labels.begin());
}

std::vector<FiniteBall> small_corpus() {
  std::vector<FiniteBall> out;
  out.push_back(semiregular_tree({3, 3, 3}));
  out.push_back(semiregular_tree({2, 3, 4}));
  out.push_back(cycle_graph(4));
  out.push_back(cycle_graph(6));
  out.push_back(complete_graph(3));
  out.push_back(grid_ball(3));
  out.push_back(cayley_ball(builtin_presentation("z2"), 3));
  out.push_back(cayley_ball(builtin_presentation("z3*z3"), 3));
  return out;
}

}  // namespace

TEST_CASE("distances_from on small graphs") {
  const FiniteBall tree = semiregular_tree({3, 3, 2});
  CHECK(tree.size() == 10);
  const auto d = distances_from(tree, tree.basepoint());
  std::map<int, int> hist;
  for (int x : d) ++hist[x];
  CHECK(hist == std::map<int, int>{{0, 1}, {1, 3}, {2, 6}});

  const FiniteBall dot = FiniteBall::from_edges(1, {}, 0);
  CHECK(distances_from(dot, 0) == std::vector<int>{0});

  const FiniteBall c4 = cycle_graph(4);
  const auto e = distances_from(c4, 0);
  CHECK(e[2] == 2);
  CHECK(e[1] == 1);
  CHECK(e[3] == 1);
}

TEST_CASE("certified_distance follows the certification rule") {
  const FiniteBall z = cayley_ball(builtin_presentation("z"), 5);
  const Vertex o = z.basepoint();
  CHECK(certified_distance(z, o, o) == CertifiedDistance{0, true});
  const auto far = certified_distance(z, by_label(z, "aaaaa"), by_label(z, "AAAAA"));
  CHECK(far.value == 10);
  CHECK_FALSE(far.certified);
  const auto near = certified_distance(z, by_label(z, "a"), by_label(z, "A"));
  CHECK(near.value == 2);
  CHECK(near.certified);
}

TEST_CASE("all_geodesics and is_geodesic on C4") {
  const FiniteBall c4 = cycle_graph(4);
  auto paths = all_geodesics(c4, 0, 2);
  std::sort(paths.begin(), paths.end());
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].vertices == std::vector<Vertex>{0, 1, 2});
  CHECK(paths[1].vertices == std::vector<Vertex>{0, 3, 2});
  CHECK(all_geodesics(c4, 1, 1).size() == 1);
  CHECK(is_geodesic(c4, Path{{0, 1, 2}}));
  CHECK_FALSE(is_geodesic(c4, Path{{0, 1, 2, 3}}));
  CHECK(is_geodesic(c4, Path{{3}}));
}

TEST_CASE("tree geodesics are unique") {
  const FiniteBall tree = semiregular_tree({3, 3, 4});
  const DistanceTable table(tree);
  for (Vertex u = 0; u < static_cast<Vertex>(tree.size()); u += 3) {
    for (Vertex v = 0; v < static_cast<Vertex>(tree.size()); v += 5) {
      if (table.certified(u, v)) CHECK(all_geodesics(tree, u, v).size() == 1);
    }
  }
}

TEST_CASE("uncertified pairs and capacity are refused") {
  const FiniteBall z = cayley_ball(builtin_presentation("z"), 5);
  CHECK_THROWS_AS(all_geodesics(z, by_label(z, "aaaaa"), by_label(z, "AAAAA")), CertificationError);
  const FiniteBall grid = grid_ball(8);
  const Vertex o = grid.basepoint();
  // (4,4) is reached by C(8,4) = 70 monotone lattice paths.
  Vertex corner = -1;
  const auto d = distances_from(grid, o);
  for (Vertex v = 0; v < static_cast<Vertex>(grid.size()); ++v) {
    if (d[v] == 8 && grid.labels()[v] == "(4,4)") corner = v;
  }
  REQUIRE(corner >= 0);
  CHECK(count_geodesics(grid, o, corner) == 70);
  CHECK_THROWS_AS(all_geodesics(grid, o, corner, 10), CapacityError);
}

TEST_CASE("all_geodesics agrees with depth-first enumeration") {
  for (const auto& ball : small_corpus()) {
    const auto m = oracle::floyd(ball);
    const int n = static_cast<int>(ball.size());
    for (int u = 0; u < n; u += 2) {
      for (int v = 0; v < n; v += 3) {
        if (!m.certified(u, v)) continue;
        std::vector<std::vector<Vertex>> got;
        for (const auto& p : all_geodesics(ball, u, v)) {
          CHECK(is_geodesic(ball, p));
          got.push_back(p.vertices);
        }
        auto want = oracle::geodesics(ball, m, u, v);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
      }
    }
  }
}

TEST_CASE("certified distances: symmetry, triangle inequality, agreement with Floyd-Warshall") {
  for (const auto& ball : small_corpus()) {
    const auto m = oracle::floyd(ball);
    const DistanceTable table(ball);
    const int n = static_cast<int>(ball.size());
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        CHECK(table.at(u, v) == m.at(u, v));
        CHECK(table.certified(u, v) == m.certified(u, v));
        CHECK(certified_distance(ball, u, v) == certified_distance(ball, v, u));
      }
    }
    for (int u = 0; u < n; u += 2)
      for (int v = 0; v < n; v += 2)
        for (int w = 0; w < n; w += 3)
          if (m.certified(u, v) && m.certified(v, w) && m.certified(u, w)) CHECK(m.at(u, w) <= m.at(u, v) + m.at(v, w));
  }
}

TEST_CASE("certification is monotone in the radius") {
  for (const char* name : {"z2", "free2", "z2*z3"}) {
    const FiniteBall small = cayley_ball(builtin_presentation(name), 3);
    const FiniteBall big = cayley_ball(builtin_presentation(name), 5);
    const DistanceTable ts(small), tb(big);
    std::vector<Vertex> image;
    for (const auto& label : small.labels()) image.push_back(by_label(big, label));
    for (Vertex u = 0; u < static_cast<Vertex>(small.size()); ++u) {
      for (Vertex v = 0; v < static_cast<Vertex>(small.size()); ++v) {
        if (!ts.certified(u, v)) continue;
        CHECK(tb.certified(image[u], image[v]));
        CHECK(tb.at(image[u], image[v]) == ts.at(u, v));
      }
    }
  }
}

TEST_CASE("depths recorded at construction match BFS") {
  for (const auto& ball : small_corpus()) {
    const auto d = distances_from(ball, ball.basepoint());
    for (Vertex v = 0; v < static_cast<Vertex>(ball.size()); ++v) CHECK(d[v] == ball.depth(v));
  }
}

TEST_CASE("from_edges rejects malformed input") {
  const std::vector<Edge> loop = {{0, 0}};
  CHECK_THROWS_AS(FiniteBall::from_edges(1, loop, 0), InputError);
  const std::vector<Edge> out_of_range = {{0, 3}};
  CHECK_THROWS_AS(FiniteBall::from_edges(2, out_of_range, 0), InputError);
  const std::vector<Edge> split = {{0, 1}};
  CHECK_THROWS_AS(FiniteBall::from_edges(3, split, 0), InputError);
}

TEST_CASE("ball JSON round trip") {
  for (const auto& ball : small_corpus()) {
    const FiniteBall back = ball_from_json(ball_to_json(ball));
    CHECK(back.edges() == ball.edges());
    CHECK(back.radius() == ball.radius());
    CHECK(back.basepoint() == ball.basepoint());
    CHECK(back.is_whole() == ball.is_whole());
    CHECK(ball_to_json(back) == ball_to_json(ball));
  }
  auto doc = ball_to_json(cycle_graph(6));
  doc["frontier"] = nlohmann::json::array({1});
  CHECK_THROWS(ball_from_json(doc));
}

TEST_CASE("truncation keeps ids in order") {
  const FiniteBall grid = grid_ball(4);
  std::vector<Vertex> kept;
  const FiniteBall inner = grid.truncated(2, &kept);
  CHECK(inner.size() == 13);
  CHECK(std::is_sorted(kept.begin(), kept.end()));
  for (Vertex v = 0; v < static_cast<Vertex>(inner.size()); ++v) CHECK(inner.depth(v) == grid.depth(kept[v]));
}
