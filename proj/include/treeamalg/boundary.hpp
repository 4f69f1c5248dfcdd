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

// Finite-scale views of the boundary: ends as frontier-touching components
// after removing a k-ball, and sphere clusters under Gromov-product
// thresholds.
//
// Sphere profiling works on S(r) inside a window ball of radius R. Two
// sphere vertices x, y are linked at threshold t iff (x|y)_o >= t, i.e.
// d(x,y) <= 2r - 2t. Every path of length <= R - r from a sphere vertex stays
// in the window, so the link relation is decided exactly once
// R >= 3r - 2t (or the window is a whole finite graph).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treeamalg/amalgam.hpp"
#include "treeamalg/error.hpp"
#include "treeamalg/generators.hpp"
#include "treeamalg/graphcore.hpp"

namespace treeamalg {

// Certification did not reach every sphere pair.
class CoverageError : public CertificationError {
 public:
  CoverageError(const std::string& what, double coverage)
      : CertificationError(what), coverage_(coverage) {}
  double coverage() const { return coverage_; }

 private:
  double coverage_;
};

struct EndComponent {
  std::vector<Vertex> vertices;  // ascending
  std::size_t frontier_count = 0;
  double frontier_share = 0.0;
};

struct EndProfile {
  int k = 0;
  int radius = 0;
  std::vector<EndComponent> components;  // ordered by smallest vertex
  std::size_t count() const { return components.size(); }
};

// Components of ball minus the closed k-ball that contain a frontier vertex.
EndProfile end_profile(const FiniteBall& ball, int k);

struct BoundaryProfile {
  int t = 0;
  int sphere_radius = 0;
  int window_radius = 0;
  std::vector<std::vector<Vertex>> clusters;  // window ids, ordered by smallest member
  std::size_t count() const { return clusters.size(); }
  bool all_singletons() const;
};

// Window radius that decides every link at (r, t).
int required_window_radius(int r, int t);

// Clusters of S(r) in `window` under chain connectivity at threshold t.
// Throws CoverageError carrying the decided-pair ratio when the window is
// too small.
BoundaryProfile boundary_profile(const FiniteBall& window, int r, int t, unsigned threads = 0);
// Generates the window itself at required_window_radius(r, t).
BoundaryProfile boundary_profile(const BallGenerator& generator, int r, int t, unsigned threads = 0);

// Smallest t in [0, r] whose clusters are all singletons, or nullopt when
// the window cannot decide it.
std::optional<int> disconnectedness_score(const FiniteBall& window, int r, unsigned threads = 0);
std::optional<int> disconnectedness_score(const BallGenerator& generator, int r, unsigned threads = 0);

struct EndsComparison {
  int r = 0;
  int k = 0;
  int t = 0;
  std::size_t ends = 0;
  std::size_t clusters = 0;         // before splitting by component
  std::size_t coarse_clusters = 0;  // after splitting by component and merging per component
  std::vector<std::size_t> pieces_per_component;
  std::size_t straddling_clusters = 0;  // clusters meeting more than one component
  std::size_t dead_sphere_vertices = 0;  // sphere vertices in finite appendages
  bool match = false;
};

// Ends of window \ B(k) against the clustering of S(r) at t: clusters are
// split by component and the pieces merged per component.
EndsComparison components_vs_ends(const FiniteBall& window, int r, int k, int t, unsigned threads = 0);

enum class RayKind { kFactor, kTree };

struct RayClass {
  RayKind kind = RayKind::kFactor;
  Vertex copy = 0;                 // FactorType: the copy holding the tail
  std::vector<Vertex> tree_path;   // copies crossed, in order
  Path witness;                    // FactorType: the tail; TreeType: the whole ray
  std::size_t final_segment = 0;   // edges after the last copy change
  double cutoff = 0.5;
};

const char* to_string(RayKind kind);

// Ray must be a geodesic of the contracted amalgam starting at its basepoint.
RayClass classify_ray(const AmalgamBundle& bundle, const Path& ray, double cutoff = 0.5);

}  // namespace treeamalg
