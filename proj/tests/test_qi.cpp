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
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "doctest.h"
#include "oracles.hpp"
#include "treeamalg/amalgam.hpp"
#include "treeamalg/error.hpp"
#include "treeamalg/experiment.hpp"
#include "treeamalg/generators.hpp"
#include "treeamalg/qi.hpp"
#include "treeamalg/spec_io.hpp"

using namespace treeamalg;

namespace {

AmalgamBundle corpus_bundle(const std::string& name, int depth) {
  auto doc = corpus_spec(name);
  doc["tree"]["depth"] = depth;
  return build_amalgam(spec_from_json(doc));
}

// The same graph read as a whole finite graph, so every pair is certified.
FiniteBall whole(const FiniteBall& ball) { return finite_graph(ball.size(), ball.edges(), ball.basepoint()); }

std::vector<Vertex> identity(std::size_t n) {
  std::vector<Vertex> out(n);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

int codensity(const std::vector<Vertex>& map, const oracle::Metric& cod) {
  int worst = 0;
  for (int y = 0; y < cod.n; ++y) {
    int best = oracle::kInf;
    for (Vertex x : map) best = std::min(best, cod.at(y, x));
    worst = std::max(worst, best);
  }
  return worst;
}

// Brute force over the same candidate ratios.
std::pair<Rational, Rational> fit_oracle(const std::vector<Vertex>& map, const FiniteBall& dom, const FiniteBall& cod) {
  const auto dm = oracle::floyd(dom), cm = oracle::floyd(cod);
  std::set<Rational> candidates = {Rational(1)};
  for (int u = 0; u < dm.n; ++u)
    for (int v = u + 1; v < dm.n; ++v) {
      if (!dm.certified(u, v)) continue;
      const int d = dm.at(u, v), di = cm.at(map[u], map[v]);
      if (di > 0 && d > di) candidates.insert(Rational(d, di));
      if (di > d) candidates.insert(Rational(di, d));
    }
  const Rational dens(codensity(map, cm));
  std::pair<Rational, Rational> best = {Rational(0), Rational(-1)};
  for (Rational g : candidates) {
    const Rational c = std::max(dens, oracle::min_c(map, dm, cm, g));
    if (best.second < Rational(0) || g + c < best.first + best.second) best = {g, c};
  }
  return best;
}

// K2 factors chained through a shared adhesion vertex on side 1.
AmalgamationSpec k2_spec(bool chained, int depth) {
  AmalgamationSpec s;
  s.factor1 = complete_graph(2);
  s.factor2 = complete_graph(2);
  s.p1 = 2;
  s.p2 = 2;
  s.adhesion1 = chained ? std::vector<std::vector<Vertex>>{{0}, {0}} : std::vector<std::vector<Vertex>>{{0}, {1}};
  s.adhesion2 = {{0}, {1}};
  s.tree_depth = depth;
  return s;
}

using ViolationKey = std::tuple<Vertex, Vertex, Vertex, std::vector<Vertex>>;

// Every factor geodesic of every copy, mapped through psi and re-measured.
std::set<ViolationKey> preservation_oracle(const AmalgamBundle& b) {
  std::set<ViolationKey> out;
  const auto gm = oracle::floyd(b.amalgam());
  for (Vertex t = 0; t < static_cast<Vertex>(b.copy_count()); ++t) {
    const FiniteBall& f = b.spec.factor(b.tree.side[t]);
    const auto fm = oracle::floyd(f);
    for (int x = 0; x < fm.n; ++x)
      for (int y = x + 1; y < fm.n; ++y) {
        if (!fm.certified(x, y)) continue;
        for (const auto& p : oracle::geodesics(f, fm, x, y)) {
          std::vector<Vertex> image;
          for (int v : p) image.push_back(b.psi[b.plus_vertex(t, v)]);
          bool ok = gm.at(image.front(), image.back()) == static_cast<int>(p.size()) - 1;
          for (std::size_t i = 0; ok && i + 1 < image.size(); ++i) ok = b.amalgam().adjacent(image[i], image[i + 1]);
          if (!ok) out.emplace(t, x, y, std::vector<Vertex>(p.begin(), p.end()));
        }
      }
  }
  return out;
}

std::set<ViolationKey> keys(const PreservationReport& r) {
  std::set<ViolationKey> out;
  for (const auto& v : r.violations) out.emplace(v.copy, v.x, v.y, v.factor_path.vertices);
  return out;
}

}  // namespace

TEST_CASE("identity and isomorphisms fit exactly") {
  for (const auto& ball : {grid_ball(3), cycle_graph(7), semiregular_tree({3, 3, 3})}) {
    const QIFit fit = qi_constants(identity(ball.size()), ball, ball);
    CHECK(fit.gamma == Rational(1));
    CHECK(fit.c == Rational(0));
    CHECK(fit.codensity == 0);
  }
  // Rotation of C6.
  std::vector<Vertex> rot;
  for (Vertex v = 0; v < 6; ++v) rot.push_back((v + 2) % 6);
  const QIFit fit = qi_constants(rot, cycle_graph(6), cycle_graph(6));
  CHECK(fit.gamma == Rational(1));
  CHECK(fit.c == Rational(0));
  CHECK(fit.codensity == 0);
}

TEST_CASE("collapsing map: c is the diameter and codensity is flagged") {
  const FiniteBall c6 = cycle_graph(6);
  const QIFit fit = qi_constants(std::vector<Vertex>(6, 0), c6, c6);
  CHECK(fit.gamma == Rational(1));
  CHECK(fit.c == Rational(3));
  CHECK(fit.codensity == 3);
  const bool flagged = std::any_of(fit.witnesses.begin(), fit.witnesses.end(),
                                   [](const QIWitness& w) { return w.constraint == "codensity"; });
  CHECK(flagged);
}

TEST_CASE("qi_constants agrees with a brute-force fit") {
  std::mt19937_64 rng(11);
  const std::vector<FiniteBall> graphs = {cycle_graph(6), cycle_graph(8), whole(grid_ball(2)),
                                          whole(semiregular_tree({2, 3, 3}))};
  for (const auto& dom : graphs) {
    for (const auto& cod : graphs) {
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<Vertex> map(dom.size());
        for (auto& y : map) y = static_cast<Vertex>(rng() % cod.size());
        const QIFit fit = qi_constants(map, dom, cod);
        const auto want = fit_oracle(map, dom, cod);
        CHECK(fit.gamma == want.first);
        CHECK(fit.c == want.second);
        for (Rational g : {Rational(1), Rational(3, 2), Rational(2), Rational(7, 3)}) {
          const Rational expected = std::max(Rational(codensity(map, oracle::floyd(cod))),
                                             oracle::min_c(map, oracle::floyd(dom), oracle::floyd(cod), g));
          CHECK(min_c_for_gamma(map, dom, cod, g) == expected);
        }
      }
    }
  }
  // psi maps of amalgams.
  for (const char* name : {"k3", "c6", "z4"}) {
    const AmalgamBundle b = corpus_bundle(name, 2);
    const QIFit fit = qi_constants(b.psi, b.plus_graph, b.amalgam());
    const auto want = fit_oracle(b.psi, b.plus_graph, b.amalgam());
    CHECK(fit.gamma == want.first);
    CHECK(fit.c == want.second);
  }
}

TEST_CASE("restricting the domain never worsens the fit") {
  for (const char* name : {"k3", "c6", "z4"}) {
    const AmalgamBundle b = corpus_bundle(name, 3);
    // Keep one plus vertex per fiber so the image and its codensity stay put.
    QIOptions opts;
    opts.domain_mask.assign(b.plus_graph.size(), false);
    for (const auto& fiber : b.fibers) opts.domain_mask[fiber.front()] = true;
    const QIFit full = qi_constants(b.psi, b.plus_graph, b.amalgam());
    const QIFit part = qi_constants(b.psi, b.plus_graph, b.amalgam(), opts);
    CHECK(part.gamma + part.c <= full.gamma + full.c);
    CHECK(part.pairs_checked <= full.pairs_checked);
    for (Rational g : {Rational(1), Rational(2), Rational(3)}) {
      CHECK(min_c_for_gamma(b.psi, b.plus_graph, b.amalgam(), g, opts) <=
            min_c_for_gamma(b.psi, b.plus_graph, b.amalgam(), g));
    }
  }
}

TEST_CASE("qi input errors") {
  const FiniteBall c4 = cycle_graph(4);
  CHECK_THROWS_AS(qi_constants({}, c4, c4), InputError);
  CHECK_THROWS_AS(qi_constants({0, 1}, c4, c4), InputError);
  QIOptions bad;
  bad.domain_mask = {true};
  CHECK_THROWS_AS(qi_constants(identity(4), c4, c4, bad), InputError);
  CHECK_THROWS_AS(min_c_for_gamma(identity(4), c4, c4, Rational(1, 2)), InputError);
  // Images that land on far frontier pairs of a truncated ball.
  const FiniteBall z = cayley_ball(builtin_presentation("z"), 3);
  const FiniteBall line = path_graph(2);
  Vertex far1 = -1, far2 = -1;
  for (Vertex v = 0; v < static_cast<Vertex>(z.size()); ++v) {
    if (z.labels()[v] == "aaa") far1 = v;
    if (z.labels()[v] == "AAA") far2 = v;
  }
  CHECK_THROWS_AS(qi_constants({far1, far2}, line, z), CertificationError);
}

TEST_CASE("quasi-geodesic paths") {
  const FiniteBall c4 = cycle_graph(4);
  const Path winding{{0, 1, 2, 3, 0}};
  CHECK_FALSE(is_quasi_geodesic(c4, winding, Rational(1), Rational(0)));
  CHECK(is_quasi_geodesic(c4, winding, Rational(1), Rational(8)));
  CHECK_THROWS_AS(is_quasi_geodesic(c4, Path{}, Rational(1), Rational(0)), InputError);
  CHECK_THROWS_AS(is_quasi_geodesic(c4, winding, Rational(1, 2), Rational(0)), InputError);
  CHECK_THROWS_AS(is_quasi_geodesic(c4, winding, Rational(1), Rational(-1)), InputError);

  // With (1,0) the test is exactly the geodesic test.
  for (const auto& ball : {whole(grid_ball(3)), cycle_graph(6), whole(semiregular_tree({2, 3, 3}))}) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      Path p{{static_cast<Vertex>(rng() % ball.size())}};
      const int len = static_cast<int>(rng() % 5);
      for (int i = 0; i < len; ++i) {
        const auto& nb = ball.neighbors(p.back());
        p.vertices.push_back(nb[rng() % nb.size()]);
      }
      CHECK(is_quasi_geodesic(ball, p, Rational(1), Rational(0)) == is_geodesic(ball, p));
    }
  }
}

TEST_CASE("factor geodesics survive amalgamation") {
  for (const char* name : {"k3", "z4"}) {
    const auto report = check_geodesic_preservation(corpus_bundle(name, 2));
    CHECK(report.violations.empty());
    CHECK(report.pairs_checked > 0);
  }
  for (const char* name : {"k3", "c6", "z4", "free2", "free2-p4"}) {
    for (int depth = 0; depth <= 2; ++depth) {
      const AmalgamBundle b = corpus_bundle(name, depth);
      const auto report = check_geodesic_preservation(b);
      CHECK(keys(report) == preservation_oracle(b));
      CHECK(report.violations.empty());
    }
  }
}

TEST_CASE("an injected chord is detected and named") {
  const AmalgamBundle b = corpus_bundle("c6", 1);
  const FiniteBall& g = b.amalgam();
  // Root copy vertices 0 and 3 are antipodal in C6.
  const Vertex a = b.psi[b.plus_vertex(0, 0)], c = b.psi[b.plus_vertex(0, 3)];
  REQUIRE_FALSE(g.adjacent(a, c));
  const AmalgamBundle bad = with_extra_edge(b, a, c);
  const auto report = check_geodesic_preservation(bad);
  REQUIRE_FALSE(report.violations.empty());
  CHECK(keys(report) == preservation_oracle(bad));
  const bool named = std::any_of(report.violations.begin(), report.violations.end(), [&](const auto& v) {
    return v.copy == 0 && v.x == 0 && v.y == 3 && v.amalgam_distance == 1;
  });
  CHECK(named);
}

TEST_CASE("preservation needs adhesion one") {
  AmalgamationSpec s;
  s.factor1 = complete_graph(3);
  s.factor2 = complete_graph(3);
  s.adhesion1 = {{0, 1}};
  s.adhesion2 = {{0, 1}};
  s.tree_depth = 1;
  CHECK_THROWS_AS(check_geodesic_preservation(build_amalgam(s)), PreconditionError);
}

TEST_CASE("psi fits") {
  const PsiReport zero = check_plus_vs_contracted(corpus_bundle("k3", 0));
  CHECK(zero.fit.gamma == Rational(1));
  CHECK(zero.fit.c == Rational(0));

  // Frozen regression values for the K3 corpus bundle.
  for (int depth : {2, 3, 4}) {
    const PsiReport r = check_plus_vs_contracted(corpus_bundle("k3", depth));
    CHECK(r.fit.gamma == Rational(2));
    CHECK(r.fit.c == Rational(1, 2));
    CHECK(r.fit.c <= Rational(2 * r.max_identification_size));
    CHECK(r.finite_identification);
  }
  for (const char* name : {"c6", "z4", "free2"}) {
    const PsiReport two = check_plus_vs_contracted(corpus_bundle(name, 2));
    for (int depth : {3, 4}) {
      const PsiReport r = check_plus_vs_contracted(corpus_bundle(name, depth));
      CHECK(r.fit.gamma == two.fit.gamma);
      CHECK(r.fit.c == two.fit.c);
    }
  }
}

TEST_CASE("chained adhesion needs a larger additive constant") {
  for (int depth : {3, 4}) {
    const PsiReport plain = check_plus_vs_contracted(build_amalgam(k2_spec(false, depth)));
    const PsiReport chained = check_plus_vs_contracted(build_amalgam(k2_spec(true, depth)));
    CAPTURE(plain.fit.gamma);
    CAPTURE(plain.fit.c);
    CAPTURE(chained.fit.gamma);
    CAPTURE(chained.fit.c);
    CHECK(chained.max_identification_size > plain.max_identification_size);
    CHECK(chained.fit.c > plain.fit.c);
  }
}
