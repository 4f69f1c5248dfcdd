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

// Tree amalgamations of two factor graphs over a truncated semiregular tree.
//
// Every tree node t on side i carries a copy G_i^t of factor i. For each tree
// edge t--u with t on side 1 and label (k,l), every x in S^1_k of G_1^t is
// joined by a new edge to phi_{k,l}(x) in G_2^u. The result is the sum
// graph ("plus graph"); contracting all new edges gives the amalgam, and psi
// sends each plus vertex to its contraction class.
//
// Tree nodes are numbered in BFS order from the root, which sits on side 1.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treeamalg/generators.hpp"
#include "treeamalg/graphcore.hpp"

namespace treeamalg {

using Bijection = std::vector<std::pair<Vertex, Vertex>>;
using EdgeLabel = std::pair<int, int>;  // (k, l)

struct AmalgamationSpec {
  FiniteBall factor1 = FiniteBall::from_edges(1, {}, 0);
  FiniteBall factor2 = FiniteBall::from_edges(1, {}, 0);
  int p1 = 1;
  int p2 = 1;
  std::vector<std::vector<Vertex>> adhesion1;  // S^1_k, k < p1
  std::vector<std::vector<Vertex>> adhesion2;  // S^2_l, l < p2
  // phi_{k,l} as (x in S^1_k, y in S^2_l) pairs. A missing entry means the
  // canonical pairing of both sets in ascending order.
  std::map<EdgeLabel, Bijection> bijections;
  // Label of the edge from each tree node to its parent; entry 0 unused.
  // Empty means the canonical labeling.
  std::vector<EdgeLabel> labeling;
  int tree_depth = 0;

  const FiniteBall& factor(int side) const { return side == 1 ? factor1 : factor2; }
  int arity(int side) const { return side == 1 ? p1 : p2; }
  const std::vector<std::vector<Vertex>>& adhesion(int side) const {
    return side == 1 ? adhesion1 : adhesion2;
  }
  TreeSpec tree_spec() const { return {p1, p2, tree_depth}; }
};

// Canonical labeling: at every node the incident edges are numbered in BFS
// child order. The root numbers its children 0..p-1; any other node gives its
// parent edge 0 and its children 1..p-1.
std::vector<EdgeLabel> canonical_labeling(const SemiregularTree& tree);

// phi_{k,l} used for label (k,l): the explicit entry or the canonical pairing.
Bijection bijection_for(const AmalgamationSpec& spec, EdgeLabel label);

struct Violation {
  std::string kind;  // "arity", "vertex", "cardinality", "bijection", "labeling", "depth"
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

ValidationReport validate_spec(const AmalgamationSpec& spec);

struct Provenance {
  Vertex tree_node;
  int side;
  Vertex factor_vertex;
};

struct AmalgamBundle {
  AmalgamationSpec spec;
  SemiregularTree tree;
  std::vector<EdgeLabel> labels;     // per tree node, edge to parent
  std::vector<Vertex> copy_offset;   // first plus vertex of each copy
  std::vector<Provenance> provenance;  // per plus vertex
  std::vector<Edge> new_edges;
  FiniteBall plus_graph = FiniteBall::from_edges(1, {}, 0);

  std::optional<FiniteBall> contracted;
  std::vector<Vertex> psi;  // plus vertex -> contracted vertex
  std::vector<std::vector<Vertex>> fibers;  // contracted vertex -> plus vertices

  bool is_contracted() const { return contracted.has_value(); }
  Vertex plus_vertex(Vertex tree_node, Vertex factor_vertex) const {
    return copy_offset[tree_node] + factor_vertex;
  }
  std::size_t copy_count() const { return copy_offset.size(); }
  // Plus vertex of the adhesion set that copy `tree_node` shares with the
  // neighbouring copy across the tree edge to `other`; adhesion 1 only.
  Vertex attachment(Vertex tree_node, Vertex other) const;
  const FiniteBall& amalgam() const;
};

// Throws ValidationError embedding the report when the spec is invalid.
AmalgamBundle build_plus(const AmalgamationSpec& spec);
AmalgamBundle contract(AmalgamBundle bundle);
inline AmalgamBundle build_amalgam(const AmalgamationSpec& spec) { return contract(build_plus(spec)); }

// Number of tree nodes in the smallest subtree containing every copy touched
// by the contraction class of `g_vertex`.
int identification_size(const AmalgamBundle& bundle, Vertex g_vertex);

struct AdhesionMetrics {
  int max_adhesion_diameter = 0;
  int max_identification_size = 0;
  // Claims about the truncation only.
  bool bounded_adhesion = false;
  bool finite_identification = false;
};

AdhesionMetrics adhesion_metrics(const AmalgamBundle& bundle);

bool is_trivial(const AmalgamationSpec& spec);

// Every adhesion set is a singleton.
bool has_adhesion_one(const AmalgamationSpec& spec);
// Adhesion sets of each factor are pairwise disjoint.
bool has_disjoint_adhesion(const AmalgamationSpec& spec);

// The contracted graph restricted to the largest radius around its basepoint
// on which it agrees with the untruncated amalgam: every vertex strictly
// inside has all of its neighbours present. `contracted_ids` maps ball
// vertices back to contracted ids.
struct AmalgamWindow {
  FiniteBall ball;
  std::vector<Vertex> contracted_ids;
};
AmalgamWindow amalgam_metric_ball(const AmalgamBundle& bundle);

// Honest balls of the untruncated amalgam: radius R deepens the tree until
// the metric window reaches R, then truncates to R. The spec's tree_depth is
// ignored.
BallGenerator amalgam_window_generator(const AmalgamationSpec& spec, std::string name);

// Copy (tree node) owning each contracted edge, keyed by (min,max).
std::map<Edge, Vertex> contracted_edge_copies(const AmalgamBundle& bundle);

// Negative-control helper: the same bundle with one extra edge in the
// contracted graph.
AmalgamBundle with_extra_edge(const AmalgamBundle& bundle, Vertex a, Vertex b);

// Swap-map construction between two adhesion-1 bundles over trees of equal
// shape. f1, f2 are bijections V(G_i) -> V(H_i) of the factors.
struct SwappedMap {
  std::vector<Vertex> map;                // plus vertex of G -> plus vertex of H
  std::vector<Vertex> tree_automorphism;  // tree node -> tree node
  std::vector<Vertex> enumeration;        // order in which copies were fixed
  std::size_t swaps = 0;                  // nontrivial exchanges performed
};

SwappedMap build_swapped_map(const AmalgamBundle& g, const AmalgamBundle& h,
                             const std::vector<Vertex>& f1, const std::vector<Vertex>& f2);

// New-edge pairs of g whose image is not a new-edge pair of h (expected empty).
std::vector<Edge> unmatched_identifications(const AmalgamBundle& g, const AmalgamBundle& h,
                                            const SwappedMap& swapped);

}  // namespace treeamalg
