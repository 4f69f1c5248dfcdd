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

// Ball generators for the standard test actors. Every generator emits its
// vertices in BFS order from the basepoint (vertex 0) and records the knobs it
// used in the ball's meta map.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "treeamalg/graphcore.hpp"
#include "treeamalg/rewriting.hpp"

namespace treeamalg {

struct CayleyOptions {
  CompletionBudget budget;
  // Extra slack on the rewriting word-length bound 2*radius + max relator length.
  std::size_t length_slack = 0;
};

// Ball in the Cayley graph. Labels are the shortlex normal forms ("" = identity).
FiniteBall cayley_ball(const Presentation& pres, int radius, const CayleyOptions& options = {});

// Degree p = infinity is represented by a finite cap recorded in the meta map.
inline constexpr int kInfiniteDegree = -1;

struct TreeSpec {
  int p1 = 3;
  int p2 = 3;
  int depth = 0;
  int infinity_cap = 6;

  int degree(int side) const;  // side 1 or 2, with the cap applied
};

struct SemiregularTree {
  FiniteBall ball;
  std::vector<Vertex> parent;    // -1 at the root
  std::vector<int> side;         // 1 or 2; the root is on side 1
  std::vector<int> child_index;  // position among the parent's children
  std::vector<std::vector<Vertex>> children;
};

SemiregularTree build_semiregular_tree(const TreeSpec& spec);
FiniteBall semiregular_tree(const TreeSpec& spec);

// The whole connected graph; radius is the eccentricity of the basepoint.
FiniteBall finite_graph(std::size_t n, const std::vector<Edge>& edges, Vertex basepoint);
FiniteBall finite_graph(const std::vector<Edge>& edges, Vertex basepoint);

// l1 ball of Z^2 around the origin.
FiniteBall grid_ball(int radius);

// Handy finite graphs.
FiniteBall complete_graph(int n);
FiniteBall cycle_graph(int n);
FiniteBall path_graph(int n, Vertex basepoint = 0);

// A named family of balls indexed by radius.
struct BallGenerator {
  std::string name;
  std::function<FiniteBall(int)> make;
};

BallGenerator cayley_generator(const Presentation& pres, std::string name);
BallGenerator tree_generator(int p1, int p2);
BallGenerator grid_generator();

}  // namespace treeamalg
