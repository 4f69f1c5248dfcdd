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

#include "treeamalg/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "treeamalg/error.hpp"
#include "treeamalg/json_util.hpp"

namespace treeamalg {

using nlohmann::json;

json ball_to_json(const FiniteBall& ball) {
  json edges = json::array();
  for (auto [u, v] : ball.edges()) edges.push_back({u, v});
  json doc = {
      {"schema", kBallSchema},
      {"n", ball.size()},
      {"edges", std::move(edges)},
      {"basepoint", ball.basepoint()},
      {"radius", ball.radius()},
      {"frontier", std::vector<Vertex>(ball.frontier().begin(), ball.frontier().end())},
      {"whole", ball.is_whole()},
  };
  if (!ball.labels().empty()) doc["labels"] = ball.labels();
  if (!ball.meta().empty()) doc["meta"] = ball.meta();
  return doc;
}


FiniteBall ball_from_json(const json& doc) {
  const auto n = require<std::size_t>(doc, "n");
  const auto raw_edges = require<std::vector<std::vector<Vertex>>>(doc, "edges");
  std::vector<Edge> edges;
  for (const auto& e : raw_edges) {
    if (e.size() != 2) throw SchemaError("edge entries must be [u,v] pairs");
    edges.emplace_back(e[0], e[1]);
  }
  BallOptions opts;
  opts.radius = require<int>(doc, "radius");
  opts.whole = doc.value("whole", false);
  if (doc.contains("labels")) opts.labels = doc["labels"].get<std::vector<std::string>>();
  if (doc.contains("meta")) opts.meta = doc["meta"].get<std::map<std::string, std::string>>();
  FiniteBall ball = FiniteBall::from_edges(n, edges, require<Vertex>(doc, "basepoint"), std::move(opts));
  if (doc.contains("frontier")) {
    auto listed = doc["frontier"].get<std::vector<Vertex>>();
    std::sort(listed.begin(), listed.end());
    if (!std::equal(listed.begin(), listed.end(), ball.frontier().begin(), ball.frontier().end())) {
      throw InputError("frontier listed in the document does not match depth-radius vertices");
    }
  }
  return ball;
}

std::string ball_to_dot(const FiniteBall& ball, const DotStyle& style) {
  std::set<Edge> highlighted;
  for (auto [u, v] : style.highlighted_edges) highlighted.emplace(std::min(u, v), std::max(u, v));
  std::ostringstream out;
  out << "graph \"" << style.name << "\" {\n";
  out << "  node [shape=circle, fontsize=10];\n";
  for (Vertex v = 0; v < static_cast<Vertex>(ball.size()); ++v) {
    out << "  " << v << " [label=\"";
    if (!ball.labels().empty() && !ball.labels()[v].empty()) {
      out << ball.labels()[v];
    } else {
      out << v;
    }
    out << "\"";
    if (v == ball.basepoint()) out << ", penwidth=2";
    if (ball.on_frontier(v)) out << ", shape=doublecircle, color=blue";
    if (static_cast<std::size_t>(v) < style.vertex_colors.size() && !style.vertex_colors[v].empty()) {
      out << ", style=filled, fillcolor=\"" << style.vertex_colors[v] << "\"";
    }
    out << "];\n";
  }
  for (auto [u, v] : ball.edges()) {
    out << "  " << u << " -- " << v;
    if (highlighted.count({u, v})) out << " [color=red, penwidth=2]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

json path_to_json(const Path& path) { return path.vertices; }

Path path_from_json(const json& doc) {
  if (doc.is_object()) return Path{require<std::vector<Vertex>>(doc, "path")};
  return Path{doc.get<std::vector<Vertex>>()};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace treeamalg
