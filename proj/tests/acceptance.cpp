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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "treeamalg/amalgam.hpp"
#include "treeamalg/boundary.hpp"
#include "treeamalg/experiment.hpp"
#include "treeamalg/generators.hpp"
#include "treeamalg/hyperbolic.hpp"
#include "treeamalg/qi.hpp"
#include "treeamalg/spec_io.hpp"

using namespace treeamalg;

namespace {

// delta4 of the K3 corpus amalgam at depth 1, frozen from the first oracle run.
constexpr std::int64_t kK3DepthOneDelta4Doubled = 0;

struct Outcome {
  bool ok = true;
  std::string detail;
};

AmalgamBundle corpus_bundle(const std::string& name, int depth) {
  auto doc = corpus_spec(name);
  doc["tree"]["depth"] = depth;
  return build_amalgam(spec_from_json(doc));
}

void fail(Outcome& o, const std::string& why) {
  if (o.ok) o.detail = why;
  o.ok = false;
}

Outcome delta_oracle() {
  Outcome o;
  std::vector<std::pair<std::string, FiniteBall>> corpus = {
      {"tree(3,3) d3", semiregular_tree({3, 3, 3})}, {"tree(2,3) d4", semiregular_tree({2, 3, 4})},
      {"tree(2,2) d6", semiregular_tree({2, 2, 6})}, {"C4", cycle_graph(4)},
      {"C6", cycle_graph(6)}};
  for (int d = 0; d <= 2; ++d) corpus.emplace_back("K3 amalgam d" + std::to_string(d), corpus_bundle("k3", d).amalgam());
  for (int r = 1; r <= 3; ++r) corpus.emplace_back("grid r" + std::to_string(r), grid_ball(r));
  std::size_t checked = 0;
  for (const auto& [name, ball] : corpus) {
    if (ball.size() > 40) continue;
    ++checked;
    const std::int64_t got = delta_four_point(ball).doubled();
    const std::int64_t want = oracle::delta4_doubled(oracle::floyd(ball));
    if (got != want) fail(o, name + ": delta4 " + std::to_string(got) + "/2 vs brute force " + std::to_string(want) + "/2");
  }
  if (o.ok) o.detail = std::to_string(checked) + " graphs agree with the quadruple brute force";
  return o;
}

Outcome tree_flatness() {
  Outcome o;
  DeltaOptions wide;
  wide.exhaustive_cap = 600;
  std::vector<std::pair<std::string, FiniteBall>> trees;
  for (int r = 0; r <= 5; ++r) trees.emplace_back("free2 r" + std::to_string(r), cayley_ball(builtin_presentation("free2"), r));
  for (int r = 0; r <= 3; ++r) trees.emplace_back("free3 r" + std::to_string(r), cayley_ball(builtin_presentation("free3"), r));
  for (auto [p1, p2] : std::vector<std::pair<int, int>>{{3, 3}, {2, 3}, {3, 4}, {2, 2}}) {
    for (int d = 0; d <= 6; ++d) {
      trees.emplace_back("tree(" + std::to_string(p1) + "," + std::to_string(p2) + ") d" + std::to_string(d),
                         semiregular_tree({p1, p2, d}));
    }
  }
  for (const auto& [name, ball] : trees) {
    const DeltaReport r = delta_thin(ball, DeltaMode::exhaustive(), wide);
    if (r.delta_thin != HalfInt{} || delta_four_point(ball) != HalfInt{}) {
      fail(o, name + ": delta_thin " + r.delta_thin->str() + ", delta4 " + delta_four_point(ball).str());
    }
  }
  if (o.ok) o.detail = std::to_string(trees.size()) + " tree balls, delta_thin = delta4 = 0 (exhaustive)";
  return o;
}

Outcome geodesic_preservation() {
  Outcome o;
  std::size_t pairs = 0;
  for (const char* name : {"k3", "c6", "z4", "free2"}) {
    for (int depth = 0; depth <= 3; ++depth) {
      const auto report = check_geodesic_preservation(corpus_bundle(name, depth));
      pairs += report.pairs_checked;
      if (!report.violations.empty()) {
        fail(o, std::string(name) + " depth " + std::to_string(depth) + ": " +
                    std::to_string(report.violations.size()) + " violations");
      }
    }
  }
  // Negative control: a chord between antipodes of the root C6 copy.
  const AmalgamBundle c6 = corpus_bundle("c6", 2);
  const Vertex a = c6.psi[c6.plus_vertex(0, 0)], b = c6.psi[c6.plus_vertex(0, 3)];
  const auto chord = check_geodesic_preservation(with_extra_edge(c6, a, b));
  const bool named = std::any_of(chord.violations.begin(), chord.violations.end(),
                                 [](const auto& v) { return v.copy == 0 && v.x == 0 && v.y == 3; });
  if (!named) fail(o, "injected chord not detected");
  if (o.ok) {
    o.detail = std::to_string(pairs) + " copy pairs clean at depths 0-3; chord control gives " +
               std::to_string(chord.violations.size()) + " violations";
  }
  return o;
}

Outcome psi_stability() {
  Outcome o;
  std::vector<std::string> parts;
  for (const auto& name : corpus_spec_names()) {
    const PsiReport zero = check_plus_vs_contracted(corpus_bundle(name, 0));
    if (zero.fit.gamma != Rational(1) || zero.fit.c != Rational(0)) {
      fail(o, name + " depth 0: (" + zero.fit.gamma.str() + "," + zero.fit.c.str() + ")");
    }
    const PsiReport two = check_plus_vs_contracted(corpus_bundle(name, 2));
    for (int depth : {3, 4}) {
      const PsiReport r = check_plus_vs_contracted(corpus_bundle(name, depth));
      if (r.fit.gamma != two.fit.gamma || r.fit.c != two.fit.c) {
        fail(o, name + " depth " + std::to_string(depth) + ": (" + r.fit.gamma.str() + "," + r.fit.c.str() +
                    ") vs depth 2 (" + two.fit.gamma.str() + "," + two.fit.c.str() + ")");
      }
    }
    parts.push_back(name + " (" + two.fit.gamma.str() + "," + two.fit.c.str() + ")");
  }
  if (o.ok) {
    o.detail = "stable across depths 2,3,4:";
    for (const auto& p : parts) o.detail += " " + p;
  }
  return o;
}

Outcome components_match_ends() {
  Outcome o;
  struct Member {
    std::string name;
    BallGenerator gen;
    int r;
  };
  auto k3_spec = spec_from_json(corpus_spec("k3"));
  const std::vector<Member> corpus = {{"tree(3,3)", tree_generator(3, 3), 4},
                                      {"tree(2,3)", tree_generator(2, 3), 4},
                                      {"double ray", tree_generator(2, 2), 4},
                                      {"grid", grid_generator(), 6},
                                      {"k3 amalgam", amalgam_window_generator(k3_spec, "k3"), 4}};
  std::size_t runs = 0;
  for (const auto& m : corpus) {
    for (int t = 1; t <= m.r / 2; ++t) {
      const FiniteBall window = m.gen.make(required_window_radius(m.r, t));
      for (int k = 1; k <= m.r / 2; ++k) {
        const EndsComparison c = components_vs_ends(window, m.r, k, t);
        ++runs;
        if (!c.match) {
          fail(o, m.name + " r=" + std::to_string(m.r) + " k=" + std::to_string(k) + " t=" + std::to_string(t) +
                      ": ends " + std::to_string(c.ends) + " vs " + std::to_string(c.coarse_clusters));
        }
      }
    }
  }
  const auto pinned = [&](const BallGenerator& gen, int r, int k, int t, std::size_t want, const std::string& name) {
    const EndsComparison c = components_vs_ends(gen.make(required_window_radius(r, t)), r, k, t);
    if (c.ends != want || c.coarse_clusters != want) {
      fail(o, name + ": " + std::to_string(c.ends) + " = " + std::to_string(c.coarse_clusters) + ", expected " +
                  std::to_string(want));
    }
    return std::to_string(c.ends) + " = " + std::to_string(c.coarse_clusters);
  };
  const std::string tree = pinned(tree_generator(3, 3), 4, 1, 1, 6, "tree r=4");
  const std::string grid = pinned(grid_generator(), 6, 2, 2, 1, "grid r=6");
  const std::string line = pinned(tree_generator(2, 2), 4, 1, 1, 2, "double ray");
  if (o.ok) {
    o.detail = std::to_string(runs) + " (k,t) runs match; tree " + tree + ", grid " + grid + ", double ray " + line;
  }
  return o;
}

Outcome tree_boundary() {
  Outcome o;
  std::vector<std::pair<std::string, BallGenerator>> trees = {
      {"tree(3,3)", tree_generator(3, 3)}, {"tree(2,3)", tree_generator(2, 3)}, {"tree(3,4)", tree_generator(3, 4)},
      {"tree(2,2)", tree_generator(2, 2)}, {"free2", cayley_generator(builtin_presentation("free2"), "free2")}};
  for (const auto& [name, gen] : trees) {
    for (int r = 1; r <= 4; ++r) {
      if (!boundary_profile(gen, r, r).all_singletons()) fail(o, name + " r=" + std::to_string(r) + " not singletons");
    }
  }
  // One-ended controls: a single coarse cluster per complement component.
  const auto one_ended = [&](const BallGenerator& gen, int r, int t, const std::string& name) {
    const EndsComparison c = components_vs_ends(gen.make(required_window_radius(r, t)), r, 1, t);
    const bool single = c.coarse_clusters == c.ends && c.ends == 1;
    if (!single) fail(o, name + ": " + std::to_string(c.coarse_clusters) + " coarse clusters over " +
                             std::to_string(c.ends) + " components");
    return std::to_string(c.clusters) + " raw -> " + std::to_string(c.coarse_clusters) + " coarse";
  };
  const std::string grid = one_ended(grid_generator(), 6, 3, "grid r=6 t=3");
  const std::string surface =
      one_ended(cayley_generator(builtin_presentation("surface2"), "surface2"), 3, 2, "surface2 r=3 t=2");
  if (o.ok) {
    o.detail = "trees singleton at t=r for r=1..4; grid r=6 t=3 " + grid + "; surface2 r=3 t=2 " + surface;
  }
  return o;
}

Outcome delta_contrast() {
  Outcome o;
  std::string grid;
  const auto series = delta_growth(grid_generator(), {2, 4, 6});
  for (std::size_t i = 0; i < series.size(); ++i) {
    grid += (i ? "," : "") + series[i].delta4.str();
    if (i > 0 && !(series[i - 1].delta4 < series[i].delta4)) fail(o, "grid delta4 not strictly increasing: " + grid);
  }
  std::string k3;
  for (int depth = 1; depth <= 4; ++depth) {
    const HalfInt d = delta_four_point(corpus_bundle("k3", depth).amalgam());
    k3 += (depth > 1 ? "," : "") + d.str();
    if (depth == 1 && d.doubled() != kK3DepthOneDelta4Doubled) fail(o, "k3 depth-1 delta4 moved to " + d.str());
    if (d.doubled() > kK3DepthOneDelta4Doubled + 2) fail(o, "k3 depth " + std::to_string(depth) + " delta4 " + d.str());
  }
  if (o.ok) o.detail = "grid delta4 " + grid + "; k3 amalgam delta4 " + k3 + " (bound depth-1 + 1)";
  return o;
}

std::vector<std::vector<Vertex>> permutations(int n) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<Vertex>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Factor automorphisms that permute the adhesion vertices among themselves.
std::vector<std::vector<Vertex>> automorphisms(const FiniteBall& f, const std::vector<std::vector<Vertex>>& adhesion) {
  std::vector<bool> attached(f.size(), false);
  for (const auto& set : adhesion)
    for (Vertex v : set) attached[v] = true;
  std::vector<std::vector<Vertex>> out;
  for (const auto& p : permutations(static_cast<int>(f.size()))) {
    bool ok = true;
    for (auto [u, v] : f.edges()) ok = ok && f.adjacent(p[u], p[v]);
    for (Vertex v = 0; v < static_cast<Vertex>(f.size()); ++v) ok = ok && attached[v] == attached[p[v]];
    if (ok) out.push_back(p);
  }
  return out;
}

Outcome swap_map() {
  Outcome o;
  std::size_t maps = 0;
  for (const char* name : {"k3", "c6"}) {
    const AmalgamationSpec spec = corpus_bundle(name, 0).spec;
    const auto autos = automorphisms(spec.factor1, spec.adhesion1);
    for (int depth = 0; depth <= 3; ++depth) {
      const AmalgamBundle g = corpus_bundle(name, depth);
      const auto& id = autos.front();
      const SwappedMap ident = build_swapped_map(g, g, id, id);
      for (Vertex v = 0; v < static_cast<Vertex>(ident.map.size()); ++v) {
        if (ident.map[v] != v) {
          fail(o, std::string(name) + " depth " + std::to_string(depth) + ": identity maps give a non-identity");
          break;
        }
      }
      for (const auto& f1 : autos) {
        for (const auto& f2 : autos) {
          const SwappedMap m = build_swapped_map(g, g, f1, f2);
          ++maps;
          // Identified pairs go to identified pairs, checked through psi.
          bool ok = unmatched_identifications(g, g, m).empty();
          std::vector<Vertex> induced(g.amalgam().size(), -1);
          for (Vertex x = 0; ok && x < static_cast<Vertex>(m.map.size()); ++x) {
            const Vertex image = g.psi[m.map[x]];
            Vertex& slot = induced[g.psi[x]];
            ok = slot < 0 || slot == image;
            slot = image;
          }
          // The induced map on the amalgam is a bijection. It need not be an
          // isometry: exchanging adhesion images breaks adjacency inside C6.
          std::vector<Vertex> sorted = induced;
          std::sort(sorted.begin(), sorted.end());
          for (Vertex v = 0; ok && v < static_cast<Vertex>(sorted.size()); ++v) ok = sorted[v] == v;
          if (!ok) fail(o, std::string(name) + " depth " + std::to_string(depth) + ": identification not preserved");
        }
      }
    }
  }
  if (o.ok) o.detail = std::to_string(maps) + " swap maps over K3 and C6 automorphisms at depths 0-3";
  return o;
}

Outcome parts_finite() {
  Outcome o;
  const int radius = 4;
  const FiniteBall k3 = amalgam_window_generator(spec_from_json(corpus_spec("k3")), "k3").make(radius);
  const FiniteBall tree = tree_generator(3, 3).make(radius);
  std::string parts;
  for (int k = 1; k <= 3; ++k) {
    const std::size_t a = end_profile(k3, k).count(), b = end_profile(tree, k).count();
    parts += (k > 1 ? ", " : "") + std::to_string(a) + "/" + std::to_string(b);
    if (a == 0 || b == 0 || std::max(a, b) > 2 * std::min(a, b)) fail(o, "k=" + std::to_string(k) + " ends " + parts);
  }
  if (o.ok) o.detail = "ends k3-amalgam/tree at r=4, k=1..3: " + parts;
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const auto root = std::filesystem::temp_directory_path() / "treeamalg_acceptance";
  std::filesystem::remove_all(root);
  const auto names = builtin_suite_names();
  for (const auto& name : names) {
    const auto config = builtin_suite(name);
    // Second run single-threaded, so scheduling differences would show.
    write_report_bundle(run_experiment(config, RunOptions{7, 0}), (root / name / "a").string());
    write_report_bundle(run_experiment(config, RunOptions{7, 1}), (root / name / "b").string());
    for (const char* f : {"report.json", "report.txt", "errors.json"}) {
      if (slurp(root / name / "a" / f) != slurp(root / name / "b" / f)) fail(o, name + "/" + f + " differs");
    }
  }
  std::filesystem::remove_all(root);
  if (o.ok) o.detail = std::to_string(names.size()) + " suites byte-identical across two runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {
      delta_oracle,  tree_flatness, geodesic_preservation, psi_stability, components_match_ends,
      tree_boundary, delta_contrast, swap_map,             parts_finite,  determinism};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (o.ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << o.detail << " [" << secs << "s]";
    std::cout << line.str() << std::endl;
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
