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

// Quasi-isometry constants of a given vertex map, quasi-geodesic tests, and
// the two amalgam-level checks built on them.
//
// For a map f and constants (gamma, c) the constraints are, over every
// certified domain pair with d = d(u,v) and d' = d(f(u), f(v)),
//     d / gamma - c <= d' <= gamma * d + c,
// plus c >= codensity of the image. For fixed gamma the least c has a closed
// form; gamma is chosen from the finite set of constraint ratios d/d' and
// d'/d (and 1) minimising gamma + c, ties going to the smaller gamma.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treeamalg/amalgam.hpp"
#include "treeamalg/graphcore.hpp"
#include "treeamalg/numeric.hpp"

namespace treeamalg {

struct QIWitness {
  std::string constraint;  // "lower", "upper" or "codensity"
  Vertex u = 0;            // domain pair, or (codomain vertex, -1) for codensity
  Vertex v = 0;
  int d = 0;
  int d_image = 0;
};

struct QIFit {
  Rational gamma{1};
  Rational c{0};
  int codensity = 0;
  std::vector<QIWitness> witnesses;  // constraints tight at (gamma, c)
  std::size_t pairs_checked = 0;
  std::size_t candidates = 0;
  static constexpr const char* kObjective = "min gamma+c over constraint ratios";
};

struct QIOptions {
  // Restrict the domain to vertices with mask[v] set; empty means all.
  std::vector<bool> domain_mask;
  unsigned threads = 0;
};

// map[v] is the image of domain vertex v. Uncertified domain pairs are not
// constraints; a certified domain pair with an uncertified image pair is a
// certification error listing the offending pairs.
QIFit qi_constants(const std::vector<Vertex>& map, const FiniteBall& dom, const FiniteBall& cod,
                   const QIOptions& options = {});

// Least c for the given gamma (>= 1).
Rational min_c_for_gamma(const std::vector<Vertex>& map, const FiniteBall& dom, const FiniteBall& cod,
                         Rational gamma, const QIOptions& options = {});

bool is_quasi_geodesic(const FiniteBall& ball, const Path& path, Rational gamma, Rational c);

struct PreservationViolation {
  Vertex copy = 0;
  Vertex x = 0;  // factor vertices
  Vertex y = 0;
  Path factor_path;
  Path image;  // in the contracted amalgam
  int amalgam_distance = 0;
};

struct PreservationReport {
  std::vector<PreservationViolation> violations;
  std::size_t pairs_checked = 0;
  std::size_t paths_checked = 0;
};

// Every geodesic between certified pairs inside any copy must stay a
// geodesic of the contracted amalgam. Requires adhesion 1.
PreservationReport check_geodesic_preservation(const AmalgamBundle& bundle, unsigned threads = 0);

struct PsiReport {
  QIFit fit;
  int max_identification_size = 0;
  bool finite_identification = false;
};

// qi_constants of psi from the plus graph onto the contracted amalgam.
PsiReport check_plus_vs_contracted(const AmalgamBundle& bundle, unsigned threads = 0);

}  // namespace treeamalg
