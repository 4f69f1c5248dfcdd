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

// JSON and text renderings of analysis results. Every document carries a
// versioned "schema" field; export dispatches on it.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "treeamalg/amalgam.hpp"
#include "treeamalg/boundary.hpp"
#include "treeamalg/hyperbolic.hpp"
#include "treeamalg/qi.hpp"

namespace treeamalg {

inline constexpr const char* kDeltaSchema = "treeamalg.delta/1";
inline constexpr const char* kDeltaGrowthSchema = "treeamalg.delta_growth/1";
inline constexpr const char* kEndsSchema = "treeamalg.ends/1";
inline constexpr const char* kBoundarySchema = "treeamalg.boundary/1";
inline constexpr const char* kCompareSchema = "treeamalg.compare/1";
inline constexpr const char* kQISchema = "treeamalg.qi/1";
inline constexpr const char* kPreserveSchema = "treeamalg.preserve/1";
inline constexpr const char* kRaySchema = "treeamalg.ray/1";
inline constexpr const char* kSwapSchema = "treeamalg.swap/1";
inline constexpr const char* kReportSchema = "treeamalg.report/1";

// `name` and `radius` identify the ball in tables ("tree r=4").
nlohmann::json delta_to_json(const DeltaReport& report, const std::string& name, int radius);
nlohmann::json delta_growth_to_json(const std::vector<DeltaGrowthPoint>& series, const std::string& name);
nlohmann::json end_series_to_json(const std::vector<EndProfile>& series, const std::string& name);
nlohmann::json boundary_to_json(const BoundaryProfile& profile, const std::string& name);
nlohmann::json comparison_to_json(const EndsComparison& cmp);
nlohmann::json qi_fit_to_json(const QIFit& fit);
nlohmann::json psi_to_json(const PsiReport& report, int depth);
nlohmann::json preservation_to_json(const PreservationReport& report, const AmalgamBundle& bundle);
nlohmann::json ray_to_json(const RayClass& ray);
nlohmann::json swap_to_json(const SwappedMap& map, const std::vector<Edge>& unmatched);

// Plus graph with one colour per copy and new edges highlighted, or the
// contracted graph.
std::string bundle_to_dot(const AmalgamBundle& bundle, bool contracted);

// One line per row, columns separated by " | ".
std::string to_table(const nlohmann::json& artifact);

// format: "json", "dot" or "table"; unknown formats are input errors.
std::string export_artifact(const nlohmann::json& artifact, const std::string& format);

}  // namespace treeamalg
