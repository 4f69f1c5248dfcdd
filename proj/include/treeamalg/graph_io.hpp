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

#pragma once

#include <string>

#include "json.hpp"
#include "treeamalg/graphcore.hpp"

namespace treeamalg {

inline constexpr const char* kBallSchema = "treeamalg.ball/1";

// { "schema", "n", "edges": [[u,v],...], "basepoint", "radius", "frontier",
//   "whole", "labels"?, "meta"? }
nlohmann::json ball_to_json(const FiniteBall& ball);

// Rejects documents whose frontier disagrees with the recomputed one.
FiniteBall ball_from_json(const nlohmann::json& doc);

struct DotStyle {
  std::string name = "ball";
  // Optional fill colour per vertex (empty string = default).
  std::vector<std::string> vertex_colors;
  // Edges drawn bold/red.
  std::vector<Edge> highlighted_edges;
};

// Frontier vertices are drawn as double circles.
std::string ball_to_dot(const FiniteBall& ball, const DotStyle& style = {});

nlohmann::json path_to_json(const Path& path);
Path path_from_json(const nlohmann::json& doc);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace treeamalg
