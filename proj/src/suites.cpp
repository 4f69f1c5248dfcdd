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

#include "treeamalg/error.hpp"
#include "treeamalg/experiment.hpp"

namespace treeamalg {

using nlohmann::json;

namespace {

json spec_doc(json factor, json adhesion, int p) {
  return {{"schema", "treeamalg.spec/1"},
          {"factor1", factor},
          {"factor2", factor},
          {"adhesion1", adhesion},
          {"adhesion2", adhesion},
          {"labeling", "canonical"},
          {"tree", {{"p1", p}, {"p2", p}, {"depth", 0}}}};
}

json tree_gen(int p1, int p2) { return {{"generator", "tree"}, {"p1", p1}, {"p2", p2}}; }

json amalgam_gen(const std::string& spec) {
  return {{"generator", "amalgam"}, {"spec", corpus_spec(spec)}, {"name", spec + "-amalgam"}};
}

json suite(const std::string& name, json steps) {
  return {{"schema", kExperimentSchema}, {"name", name}, {"seed", 1}, {"steps", std::move(steps)}};
}

json geodesic_preservation() {
  json steps = json::array();
  for (const char* s : {"k3", "c6", "z4", "free2"}) {
    steps.push_back({{"id", std::string("preserve-") + s},
                     {"op", "geodesic_preservation"},
                     {"spec", corpus_spec(s)},
                     {"depths", {0, 1, 2, 3}},
                     {"expect", {{"violations", 0}}}});
  }
  // Negative control: a chord inside the root copy must be caught.
  steps.push_back({{"id", "chord-control"},
                   {"op", "geodesic_preservation"},
                   {"spec", corpus_spec("c6")},
                   {"depths", {1, 2, 3}},
                   {"inject_chord", true},
                   {"expect", {{"detected", true}}}});
  return suite("lemma-geodesic-preservation", steps);
}

json psi_stability() {
  json steps = json::array();
  for (const auto& s : corpus_spec_names()) {
    steps.push_back({{"id", "psi-" + s},
                     {"op", "psi_fit"},
                     {"spec", corpus_spec(s)},
                     {"depths", {0, 2, 3, 4}},
                     {"expect", {{"stable_from", 2}, {"depth0_identity", true}}}});
  }
  return suite("psi-qi-stability", steps);
}

json components_vs_ends() {
  json steps = json::array();
  steps.push_back({{"id", "tree-3-3"}, {"op", "components_vs_ends"}, {"generator", tree_gen(3, 3)}, {"r", 4},
                   {"expect", {{"match", true}, {"ends_by_k", {{"1", 6}}}}}});
  steps.push_back({{"id", "double-ray"}, {"op", "components_vs_ends"}, {"generator", tree_gen(2, 2)}, {"r", 4},
                   {"expect", {{"match", true}, {"ends_by_k", {{"1", 2}}}}}});
  steps.push_back({{"id", "grid"}, {"op", "components_vs_ends"}, {"generator", {{"generator", "grid"}}}, {"r", 6},
                   {"expect", {{"match", true}, {"ends_by_k", {{"1", 1}}}}}});
  steps.push_back({{"id", "k3-amalgam"}, {"op", "components_vs_ends"}, {"generator", amalgam_gen("k3")}, {"r", 4},
                   {"expect", {{"match", true}}}});
  return suite("components-vs-ends", steps);
}

json tree_boundary() {
  json steps = json::array();
  const std::pair<const char*, json> trees[] = {
      {"tree-3-3", tree_gen(3, 3)},
      {"tree-2-3", tree_gen(2, 3)},
      {"double-ray", tree_gen(2, 2)},
      {"free2", {{"generator", "cayley"}, {"presentation", "free2"}}},
  };
  for (const auto& [name, gen] : trees) {
    steps.push_back({{"id", std::string(name) + "-singletons"}, {"op", "boundary_profile"}, {"generator", gen},
                     {"r", 4}, {"t", 4}, {"expect", {{"all_singletons", true}}}});
    steps.push_back({{"id", std::string(name) + "-score"}, {"op", "disconnectedness"}, {"generator", gen},
                     {"r", {2, 3, 4}}, {"expect", {{"singletons_by_radius", true}}}});
  }
  // One-ended controls keep one coarse cluster at t = r/2.
  steps.push_back({{"id", "grid-control"}, {"op", "components_vs_ends"}, {"generator", {{"generator", "grid"}}},
                   {"r", 6}, {"k", {1, 2}}, {"t", 3},
                   {"expect", {{"match", true}, {"ends_by_k", {{"1", 1}, {"2", 1}}}}}});
  steps.push_back({{"id", "surface-control"}, {"op", "components_vs_ends"},
                   {"generator", {{"generator", "cayley"}, {"presentation", "surface2"}}},
                   {"r", 3}, {"k", 1}, {"t", 2},
                   {"expect", {{"match", true}, {"ends_by_k", {{"1", 1}}}}}});
  return suite("tree-boundary-disconnectedness", steps);
}

json delta_contrast() {
  json steps = json::array();
  steps.push_back({{"id", "grid-growth"}, {"op", "delta_growth"}, {"generator", {{"generator", "grid"}}},
                   {"radii", {2, 4, 6}}, {"expect", {{"strictly_increasing", true}}}});
  // frozen_bound: depth-1 value (0) + 1, fixed after the first run.
  steps.push_back({{"id", "k3-depths"}, {"op", "delta_growth"}, {"spec", corpus_spec("k3")},
                   {"depths", {1, 2, 3, 4}}, {"expect", {{"bounded_slack", "1"}, {"frozen_bound", "1"}}}});
  steps.push_back({{"id", "grid-sampled"}, {"op", "delta"},
                   {"factor", {{"generator", "grid"}, {"radius", 6}}}, {"mode", "sampled:2000"}});
  return suite("delta-growth-contrast", steps);
}

json finite_factor_comparison() {
  json steps = json::array();
  steps.push_back({{"id", "k3-vs-tree"}, {"op", "end_growth_compare"}, {"a", amalgam_gen("k3")},
                   {"b", tree_gen(3, 3)}, {"k", {1, 2, 3}}, {"radius", 4}, {"expect", {{"max_ratio", 2.0}}}});
  steps.push_back({{"id", "c6-vs-tree"}, {"op", "end_growth_compare"}, {"a", amalgam_gen("c6")},
                   {"b", tree_gen(3, 3)}, {"k", {1, 2, 3}}, {"radius", 4}});
  return suite("finite-factor-tree-comparison", steps);
}

}  // namespace

std::vector<std::string> corpus_spec_names() { return {"k3", "c6", "z4", "free2", "free2-p4"}; }

json corpus_spec(const std::string& name) {
  if (name == "k3") return spec_doc({{"generator", "complete"}, {"n", 3}}, {{0}, {1}, {2}}, 3);
  if (name == "c6") return spec_doc({{"generator", "cycle"}, {"n", 6}}, {{0}, {2}, {4}}, 3);
  if (name == "z4") {
    return spec_doc({{"generator", "cayley"}, {"presentation", "z"}, {"radius", 4}}, {{"aaaa"}, {"AAAA"}}, 2);
  }
  if (name == "free2" || name == "free2-p4") {
    const json f = {{"generator", "cayley"}, {"presentation", "free2"}, {"radius", 3}};
    if (name == "free2") return spec_doc(f, {{"aaa"}, {"AAA"}}, 2);
    return spec_doc(f, {{"aaa"}, {"AAA"}, {"bbb"}, {"BBB"}}, 4);
  }
  throw InputError("unknown corpus spec \"" + name + "\"");
}

std::vector<std::string> builtin_suite_names() {
  return {"lemma-geodesic-preservation", "psi-qi-stability", "components-vs-ends",
          "tree-boundary-disconnectedness", "delta-growth-contrast", "finite-factor-tree-comparison"};
}

json builtin_suite(const std::string& name) {
  if (name == "lemma-geodesic-preservation") return geodesic_preservation();
  if (name == "psi-qi-stability") return psi_stability();
  if (name == "components-vs-ends") return components_vs_ends();
  if (name == "tree-boundary-disconnectedness") return tree_boundary();
  if (name == "delta-growth-contrast") return delta_contrast();
  if (name == "finite-factor-tree-comparison") return finite_factor_comparison();
  throw InputError("unknown suite \"" + name + "\"");
}

}  // namespace treeamalg
