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

// JSON forms of presentations, factor descriptors, amalgamation specs,
// bundles and vertex maps.
//
// Factor descriptor, one of:
//   {"generator": "cayley", "presentation": "surface2" | {...}, "radius": R}
//   {"generator": "tree", "p1": P, "p2": Q, "depth": D}
//   {"generator": "grid", "radius": R}
//   {"generator": "complete" | "cycle" | "path", "n": N}
//   {"edges": [[u,v],...], "basepoint": b}          (whole finite graph)
//   {"ball": <treeamalg.ball/1 document>}
//   {"generator": "amalgam", "spec": <spec>}        (metric windows; radius only)
//
// Spec: {"schema": "treeamalg.spec/1", "factor1": F, "factor2": F,
//        "adhesion1": [[...]], "adhesion2": [[...]],
//        "bijections": [{"k": 0, "l": 0, "pairs": [[x,y],...]}],
//        "labeling": "canonical" | [[k,l],...],
//        "tree": {"p1": P, "p2": Q, "depth": D}}

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "treeamalg/amalgam.hpp"
#include "treeamalg/generators.hpp"
#include "treeamalg/rewriting.hpp"

namespace treeamalg {

inline constexpr const char* kSpecSchema = "treeamalg.spec/1";
inline constexpr const char* kBundleSchema = "treeamalg.bundle/1";

// Accepts a built-in name (JSON string) or {"generators", "relators", "involutions"}.
Presentation presentation_from_json(const nlohmann::json& doc);
nlohmann::json presentation_to_json(const Presentation& pres);

FiniteBall factor_from_json(const nlohmann::json& doc, const std::string& context);
// Generator for descriptors that take a radius/depth ("cayley", "tree", "grid").
BallGenerator generator_from_json(const nlohmann::json& doc);

// Adhesion entries may be vertex ids or factor labels such as Cayley words.
AmalgamationSpec spec_from_json(const nlohmann::json& doc);
// Field presence only; nothing is generated. Names the first missing field.
void validate_spec_schema(const nlohmann::json& doc);
// Factors are inlined as balls, so the output reloads without generators.
nlohmann::json spec_to_json(const AmalgamationSpec& spec);

nlohmann::json bundle_to_json(const AmalgamBundle& bundle);
// Rebuilds from the embedded spec and rejects documents whose stored graphs
// or psi disagree with the rebuild.
AmalgamBundle bundle_from_json(const nlohmann::json& doc);

// [[domain, codomain], ...] or a plain array of images.
std::vector<Vertex> vertex_map_from_json(const nlohmann::json& doc, std::size_t domain_size);

}  // namespace treeamalg
