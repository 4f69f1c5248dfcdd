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

// Finite truncations of locally finite graphs.
//
// A FiniteBall is the closed ball of some radius around a basepoint o,
// induced from a (possibly infinite) graph. Distances measured inside the
// ball are upper bounds for the distances of the ambient graph; a distance is
// *certified* when no shorter ambient path could have left the ball:
//
//   min(d(o,u), d(o,v)) + L <= radius.
//
// Balls flagged `whole` are entire finite graphs, where every distance is
// certified.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace treeamalg {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct CertifiedDistance {
  std::optional<int> value;  // nullopt means unknown
  bool certified = false;

  friend bool operator==(const CertifiedDistance&, const CertifiedDistance&) = default;
};

struct Path {
  std::vector<Vertex> vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

struct BallOptions {
  std::optional<int> radius;  // defaults to the eccentricity of the basepoint
  bool whole = false;
  std::vector<std::string> labels;
  std::map<std::string, std::string> meta;
};

class FiniteBall {
 public:
  // Validates symmetry, loop-freeness and reachability within the radius.
  // Duplicate edges are merged; loops and out-of-range ids are input errors.
  static FiniteBall from_edges(std::size_t n, std::span<const Edge> edges, Vertex basepoint,
                               BallOptions options = {});

  std::size_t size() const { return depth_.size(); }
  std::size_t edge_count() const { return adjacency_.size() / 2; }
  Vertex basepoint() const { return basepoint_; }
  int radius() const { return radius_; }
  bool is_whole() const { return whole_; }

  bool contains(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < size(); }
  void check_vertex(Vertex v) const;

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(Vertex u, Vertex v) const;

  // d(o, v), recorded at construction.
  int depth(Vertex v) const { return depth_[v]; }
  std::span<const int> depths() const { return depth_; }
  std::span<const Vertex> frontier() const { return frontier_; }
  bool on_frontier(Vertex v) const { return depth_[v] == radius_; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::map<std::string, std::string>& meta() const { return meta_; }

  // Whether a within-ball distance L between u and v equals the ambient one.
  bool certifies(Vertex u, Vertex v, int within_ball_distance) const {
    return whole_ || std::min(depth_[u], depth_[v]) + within_ball_distance <= radius_;
  }

  // Edge list with u < v, sorted.
  std::vector<Edge> edges() const;

  // The sub-ball of radius r (r <= radius) with vertices renumbered in their
  // original order. `kept` receives the old id of every new vertex.
  FiniteBall truncated(int r, std::vector<Vertex>* kept = nullptr) const;

  // Same graph with new labels/meta; geometry untouched.
  FiniteBall with_annotations(std::vector<std::string> labels,
                              std::map<std::string, std::string> meta) const;

 private:
  FiniteBall() = default;

  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
  std::vector<int> depth_;
  std::vector<Vertex> frontier_;
  std::vector<std::string> labels_;
  std::map<std::string, std::string> meta_;
  Vertex basepoint_ = 0;
  int radius_ = 0;
  bool whole_ = false;
};

// Exact within-ball BFS distances from `source`.
std::vector<int> distances_from(const FiniteBall& ball, Vertex source);

CertifiedDistance certified_distance(const FiniteBall& ball, Vertex u, Vertex v);

inline constexpr std::size_t kDefaultGeodesicCap = 10000;

// Every shortest u-v path in the ball, enumerated on the shortest-path DAG.
// Throws CertificationError for uncertified pairs and CapacityError when the
// number of geodesics exceeds `cap`.
std::vector<Path> all_geodesics(const FiniteBall& ball, Vertex u, Vertex v,
                                std::size_t cap = kDefaultGeodesicCap);

// Number of shortest u-v paths, saturating at `saturate_at`.
std::uint64_t count_geodesics(const FiniteBall& ball, Vertex u, Vertex v,
                              std::uint64_t saturate_at = std::numeric_limits<std::uint64_t>::max());

bool is_geodesic(const FiniteBall& ball, const Path& path);

inline constexpr std::size_t kDistanceTableCap = 16000;

// All-pairs distance table, computed once by n BFS sweeps (in parallel).
// The ball must outlive the table.
class DistanceTable {
 public:
  explicit DistanceTable(const FiniteBall& ball, unsigned threads = 0);

  std::size_t size() const { return n_; }
  int at(Vertex u, Vertex v) const { return dist_[static_cast<std::size_t>(u) * n_ + v]; }
  bool certified(Vertex u, Vertex v) const { return ball_->certifies(u, v, at(u, v)); }
  CertifiedDistance certified_distance(Vertex u, Vertex v) const {
    return {at(u, v), certified(u, v)};
  }
  const FiniteBall& ball() const { return *ball_; }

 private:
  const FiniteBall* ball_;
  std::size_t n_;
  std::vector<std::uint16_t> dist_;
};

// Runs fn(begin, end) over [0, count) split into contiguous chunks.
void parallel_for_chunks(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace treeamalg
