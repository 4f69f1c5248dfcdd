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

// Copy-by-copy bijection between two adhesion-1 sum graphs. Copies are fixed
// in BFS order; each copy applies its factor map with one transposition so
// that the vertex glued towards the already-fixed part lands on the matching
// glued vertex of the target. The tree automorphism is read off the
// adhesion vertices rather than fixed in advance, so nontrivial factor
// automorphisms are handled too.

#include <algorithm>
#include <set>

#include "treeamalg/amalgam.hpp"
#include "treeamalg/error.hpp"

namespace treeamalg {

namespace {

void check_permutation(const std::vector<Vertex>& f, std::size_t dom, std::size_t cod, int side) {
  const std::string name = "f" + std::to_string(side);
  if (f.size() != dom || dom != cod) {
    throw InputError(name + " must map " + std::to_string(dom) + " vertices onto " +
                     std::to_string(cod));
  }
  std::vector<bool> hit(cod, false);
  for (Vertex y : f) {
    if (y < 0 || static_cast<std::size_t>(y) >= cod || hit[y]) {
      throw InputError(name + " is not a bijection (image " + std::to_string(y) + ")");
    }
    hit[y] = true;
  }
}

void check_bundle(const AmalgamBundle& b, const char* which) {
  if (!has_adhesion_one(b.spec) || !has_disjoint_adhesion(b.spec)) {
    throw PreconditionError(std::string("bundle ") + which +
                            " needs adhesion 1 with pairwise distinct adhesion sets");
  }
}

}  // namespace

SwappedMap build_swapped_map(const AmalgamBundle& g, const AmalgamBundle& h,
                             const std::vector<Vertex>& f1, const std::vector<Vertex>& f2) {
  check_bundle(g, "G");
  check_bundle(h, "H");
  if (g.spec.p1 != h.spec.p1 || g.spec.p2 != h.spec.p2 || g.spec.tree_depth != h.spec.tree_depth) {
    throw PreconditionError("bundles are built over different truncated trees");
  }
  check_permutation(f1, g.spec.factor1.size(), h.spec.factor1.size(), 1);
  check_permutation(f2, g.spec.factor2.size(), h.spec.factor2.size(), 2);

  const auto& tree = g.tree;
  const std::size_t nodes = g.copy_count();
  SwappedMap out;
  out.map.assign(g.plus_graph.size(), -1);
  out.tree_automorphism.assign(nodes, -1);
  out.tree_automorphism[0] = 0;

  for (Vertex v = 0; v < static_cast<Vertex>(nodes); ++v) {
    out.enumeration.push_back(v);
    const Vertex w = out.tree_automorphism[v];
    const int side = tree.side[v];
    std::vector<Vertex> copy_map = side == 1 ? f1 : f2;
    if (tree.parent[v] >= 0) {
      const Vertex u = g.provenance[g.attachment(v, tree.parent[v])].factor_vertex;
      const Vertex target =
          h.provenance[h.attachment(w, out.tree_automorphism[tree.parent[v]])].factor_vertex;
      const auto pre = static_cast<Vertex>(
          std::find(copy_map.begin(), copy_map.end(), target) - copy_map.begin());
      if (pre != u) {
        std::swap(copy_map[u], copy_map[pre]);
        ++out.swaps;
      }
    }
    for (Vertex x = 0; x < static_cast<Vertex>(copy_map.size()); ++x) {
      out.map[g.plus_vertex(v, x)] = h.plus_vertex(w, copy_map[x]);
    }
    // Child c glued at adhesion vertex a goes to the child of w glued at h(a).
    for (Vertex c : tree.children[v]) {
      const Vertex a = g.provenance[g.attachment(v, c)].factor_vertex;
      const Vertex image = h.plus_vertex(w, copy_map[a]);
      Vertex match = -1;
      for (Vertex d : h.tree.children[w]) {
        if (h.attachment(w, d) == image) match = d;
      }
      if (match < 0) {
        throw PreconditionError("factor map sends adhesion vertex " + std::to_string(a) +
                                " of copy " + std::to_string(v) +
                                " to a vertex without a child copy in H");
      }
      out.tree_automorphism[c] = match;
    }
  }
  return out;
}

std::vector<Edge> unmatched_identifications(const AmalgamBundle& g, const AmalgamBundle& h,
                                            const SwappedMap& swapped) {
  std::set<Edge> target;
  for (auto [a, b] : h.new_edges) target.emplace(std::min(a, b), std::max(a, b));
  std::vector<Edge> out;
  for (auto [a, b] : g.new_edges) {
    const Vertex x = swapped.map.at(a);
    const Vertex y = swapped.map.at(b);
    if (!target.count({std::min(x, y), std::max(x, y)})) out.emplace_back(a, b);
  }
  return out;
}

}  // namespace treeamalg
