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

#include "treeamalg/graphcore.hpp"

#include <algorithm>
#include <deque>
#include <thread>

#include "treeamalg/error.hpp"

namespace treeamalg {

namespace {

std::vector<int> bfs(const FiniteBall& ball, Vertex source) {
  std::vector<int> dist(ball.size(), kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(ball.size());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex w : ball.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::string pair_str(Vertex u, Vertex v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

FiniteBall FiniteBall::from_edges(std::size_t n, std::span<const Edge> edges, Vertex basepoint,
                                  BallOptions options) {
  if (n == 0) throw InputError("ball must have at least one vertex");
  if (basepoint < 0 || static_cast<std::size_t>(basepoint) >= n) {
    throw InputError("basepoint " + std::to_string(basepoint) + " out of range");
  }
  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw InputError("edge " + pair_str(u, v) + " references an unknown vertex");
    }
    if (u == v) throw InputError("loop at vertex " + std::to_string(u));
    normalized.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(normalized.begin(), normalized.end());
  normalized.erase(std::unique(normalized.begin(), normalized.end()), normalized.end());

  FiniteBall ball;
  std::vector<std::size_t> degree(n, 0);
  for (auto [u, v] : normalized) {
    ++degree[u];
    ++degree[v];
  }
  ball.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) ball.offsets_[i + 1] = ball.offsets_[i] + degree[i];
  ball.adjacency_.resize(ball.offsets_[n]);
  std::vector<std::size_t> fill(ball.offsets_.begin(), ball.offsets_.end() - 1);
  for (auto [u, v] : normalized) {
    ball.adjacency_[fill[u]++] = v;
    ball.adjacency_[fill[v]++] = u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(ball.adjacency_.begin() + ball.offsets_[i], ball.adjacency_.begin() + ball.offsets_[i + 1]);
  }
  ball.basepoint_ = basepoint;
  ball.whole_ = options.whole;

  ball.depth_.assign(n, 0);  // size() reads depth_
  ball.depth_ = bfs(ball, basepoint);
  int eccentricity = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (ball.depth_[v] == kUnreachable) {
      throw InputError("vertex " + std::to_string(v) + " is unreachable from the basepoint");
    }
    eccentricity = std::max(eccentricity, ball.depth_[v]);
  }
  ball.radius_ = options.radius.value_or(eccentricity);
  if (ball.radius_ < eccentricity) {
    throw InputError("vertex at depth " + std::to_string(eccentricity) + " exceeds radius " +
                     std::to_string(ball.radius_));
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (ball.depth_[v] == ball.radius_) ball.frontier_.push_back(static_cast<Vertex>(v));
  }
  if (!options.labels.empty() && options.labels.size() != n) {
    throw InputError("label count does not match vertex count");
  }
  ball.labels_ = std::move(options.labels);
  ball.meta_ = std::move(options.meta);
  return ball;
}

void FiniteBall::check_vertex(Vertex v) const {
  if (!contains(v)) throw InputError("unknown vertex id " + std::to_string(v));
}

bool FiniteBall::adjacent(Vertex u, Vertex v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> FiniteBall::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < static_cast<Vertex>(size()); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

FiniteBall FiniteBall::truncated(int r, std::vector<Vertex>* kept) const {
  if (r < 0 || r > radius_) {
    throw InputError("truncation radius " + std::to_string(r) + " outside [0," +
                     std::to_string(radius_) + "]");
  }
  std::vector<Vertex> new_id(size(), -1);
  std::vector<Vertex> old_ids;
  for (Vertex v = 0; v < static_cast<Vertex>(size()); ++v) {
    if (depth_[v] <= r) {
      new_id[v] = static_cast<Vertex>(old_ids.size());
      old_ids.push_back(v);
    }
  }
  std::vector<Edge> sub;
  for (auto [u, v] : edges()) {
    if (new_id[u] >= 0 && new_id[v] >= 0) sub.emplace_back(new_id[u], new_id[v]);
  }
  BallOptions opts;
  opts.radius = r;
  opts.whole = whole_ && r == radius_;
  if (!labels_.empty()) {
    for (Vertex v : old_ids) opts.labels.push_back(labels_[v]);
  }
  opts.meta = meta_;
  FiniteBall out = from_edges(old_ids.size(), sub, new_id[basepoint_], std::move(opts));
  if (kept) *kept = std::move(old_ids);
  return out;
}

FiniteBall FiniteBall::with_annotations(std::vector<std::string> labels,
                                        std::map<std::string, std::string> meta) const {
  if (!labels.empty() && labels.size() != size()) {
    throw InputError("label count does not match vertex count");
  }
  FiniteBall out = *this;
  out.labels_ = std::move(labels);
  out.meta_ = std::move(meta);
  return out;
}

std::vector<int> distances_from(const FiniteBall& ball, Vertex source) {
  ball.check_vertex(source);
  return bfs(ball, source);
}

CertifiedDistance certified_distance(const FiniteBall& ball, Vertex u, Vertex v) {
  ball.check_vertex(u);
  ball.check_vertex(v);
  if (u == v) return {0, true};
  const int d = bfs(ball, u)[v];
  return {d, ball.certifies(u, v, d)};
}

namespace {

struct GeodesicDag {
  std::vector<int> from_u;
  std::vector<int> from_v;
  int length = 0;

  bool on_dag(Vertex w) const {
    return from_u[w] != kUnreachable && from_v[w] != kUnreachable &&
           from_u[w] + from_v[w] == length;
  }
};

GeodesicDag certified_dag(const FiniteBall& ball, Vertex u, Vertex v) {
  ball.check_vertex(u);
  ball.check_vertex(v);
  GeodesicDag dag{bfs(ball, u), bfs(ball, v), 0};
  dag.length = dag.from_u[v];
  if (!ball.certifies(u, v, dag.length)) {
    throw CertificationError("pair " + pair_str(u, v) + " at within-ball distance " +
                             std::to_string(dag.length) + " is not certified at radius " +
                             std::to_string(ball.radius()));
  }
  return dag;
}

// Number of geodesics from each DAG vertex to v, saturating.
std::vector<std::uint64_t> count_to_target(const FiniteBall& ball, const GeodesicDag& dag, Vertex v,
                                           std::uint64_t saturate_at) {
  std::vector<Vertex> layer_order;
  for (Vertex w = 0; w < static_cast<Vertex>(ball.size()); ++w) {
    if (dag.on_dag(w)) layer_order.push_back(w);
  }
  std::sort(layer_order.begin(), layer_order.end(),
            [&](Vertex a, Vertex b) { return dag.from_v[a] < dag.from_v[b]; });
  std::vector<std::uint64_t> count(ball.size(), 0);
  count[v] = 1;
  for (Vertex w : layer_order) {
    if (w == v) continue;
    std::uint64_t total = 0;
    for (Vertex x : ball.neighbors(w)) {
      if (dag.on_dag(x) && dag.from_v[x] + 1 == dag.from_v[w]) {
        total = std::min(saturate_at, total + count[x]);
      }
    }
    count[w] = total;
  }
  return count;
}

}  // namespace

std::uint64_t count_geodesics(const FiniteBall& ball, Vertex u, Vertex v,
                              std::uint64_t saturate_at) {
  const GeodesicDag dag = certified_dag(ball, u, v);
  return count_to_target(ball, dag, v, saturate_at)[u];
}

std::vector<Path> all_geodesics(const FiniteBall& ball, Vertex u, Vertex v, std::size_t cap) {
  const GeodesicDag dag = certified_dag(ball, u, v);
  const auto count = count_to_target(ball, dag, v, cap + 1);
  if (count[u] > cap) {
    throw CapacityError("more than " + std::to_string(cap) + " geodesics between " +
                        pair_str(u, v));
  }
  std::vector<Path> out;
  out.reserve(count[u]);
  std::vector<Vertex> stack{u};
  // Depth-first walk down the DAG; neighbor lists are sorted so the output
  // order is lexicographic.
  std::function<void(Vertex)> walk = [&](Vertex w) {
    if (w == v) {
      out.push_back(Path{stack});
      return;
    }
    for (Vertex x : ball.neighbors(w)) {
      if (count[x] > 0 && dag.from_u[x] == dag.from_u[w] + 1 && dag.on_dag(x)) {
        stack.push_back(x);
        walk(x);
        stack.pop_back();
      }
    }
  };
  walk(u);
  return out;
}

bool is_geodesic(const FiniteBall& ball, const Path& path) {
  if (path.vertices.empty()) throw InputError("empty path");
  for (Vertex v : path.vertices) ball.check_vertex(v);
  const CertifiedDistance d = certified_distance(ball, path.front(), path.back());
  if (!d.certified) {
    throw CertificationError("path endpoints " + pair_str(path.front(), path.back()) +
                             " are not certified");
  }
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    if (!ball.adjacent(path.vertices[i], path.vertices[i + 1])) return false;
  }
  return static_cast<int>(path.length()) == *d.value;
}

void parallel_for_chunks(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(fn, begin, end);
  }
  for (auto& th : pool) th.join();
}

DistanceTable::DistanceTable(const FiniteBall& ball, unsigned threads)
    : ball_(&ball), n_(ball.size()), dist_(n_ * n_) {
  if (n_ > kDistanceTableCap) {
    throw CapacityError("distance table for " + std::to_string(n_) + " vertices exceeds cap " +
                        std::to_string(kDistanceTableCap));
  }
  parallel_for_chunks(n_, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const auto row = bfs(ball, static_cast<Vertex>(s));
      for (std::size_t t = 0; t < n_; ++t) {
        dist_[s * n_ + t] = static_cast<std::uint16_t>(row[t]);
      }
    }
  });
}

}  // namespace treeamalg
