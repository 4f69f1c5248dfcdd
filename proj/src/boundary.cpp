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

#include "treeamalg/boundary.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>

#include "treeamalg/union_find.hpp"

namespace treeamalg {

namespace {

std::vector<Vertex> sphere(const FiniteBall& ball, int r) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(ball.size()); ++v) {
    if (ball.depth(v) == r) out.push_back(v);
  }
  return out;
}

// BFS from `source` up to `limit` steps; calls visit(v, d) for every vertex
// reached. `dist` must be all -1 on entry and is restored on exit.
template <typename Visit>
void bounded_bfs(const FiniteBall& ball, Vertex source, int limit, std::vector<int>& dist, Visit&& visit) {
  std::vector<Vertex> seen{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < seen.size(); ++head) {
    const Vertex u = seen[head];
    visit(u, dist[u]);
    if (dist[u] == limit) continue;
    for (Vertex w : ball.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        seen.push_back(w);
      }
    }
  }
  for (Vertex v : seen) dist[v] = -1;
}

void check_sphere_args(const FiniteBall& window, int r, int t) {
  if (r < 0 || r > window.radius()) {
    throw InputError("sphere radius " + std::to_string(r) + " outside window radius " +
                     std::to_string(window.radius()));
  }
  if (t < 0 || t > r) throw InputError("threshold t must satisfy 0 <= t <= r");
}

bool window_decides(const FiniteBall& window, int r, int t) {
  return window.is_whole() || window.radius() - r >= 2 * r - 2 * t;
}

}  // namespace

EndProfile end_profile(const FiniteBall& ball, int k) {
  if (k < 0 || k >= ball.radius()) {
    throw InputError("removal radius k=" + std::to_string(k) + " must satisfy 0 <= k < radius " +
                     std::to_string(ball.radius()));
  }
  EndProfile profile;
  profile.k = k;
  profile.radius = ball.radius();
  const auto n = static_cast<Vertex>(ball.size());
  const std::size_t frontier_total = ball.frontier().size();
  std::vector<bool> seen(n, false);
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s] || ball.depth(s) <= k) continue;
    EndComponent comp;
    std::deque<Vertex> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      comp.vertices.push_back(u);
      if (ball.on_frontier(u)) ++comp.frontier_count;
      for (Vertex w : ball.neighbors(u)) {
        if (!seen[w] && ball.depth(w) > k) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    if (comp.frontier_count == 0) continue;  // finite appendage, not an end
    std::sort(comp.vertices.begin(), comp.vertices.end());
    comp.frontier_share = static_cast<double>(comp.frontier_count) / static_cast<double>(frontier_total);
    profile.components.push_back(std::move(comp));
  }
  return profile;
}

bool BoundaryProfile::all_singletons() const {
  return std::all_of(clusters.begin(), clusters.end(), [](const auto& c) { return c.size() == 1; });
}

int required_window_radius(int r, int t) { return std::max(2 * r, 3 * r - 2 * t); }

BoundaryProfile boundary_profile(const FiniteBall& window, int r, int t, unsigned threads) {
  check_sphere_args(window, r, t);
  const auto s = sphere(window, r);
  const int link = 2 * r - 2 * t;  // max distance of linked sphere vertices
  std::vector<int> slot(window.size(), -1);
  for (std::size_t i = 0; i < s.size(); ++i) slot[s[i]] = static_cast<int>(i);

  if (!window_decides(window, r, t)) {
    // Only certified pairs are decided; report how many.
    std::mutex mu;
    std::uint64_t certified = 0;
    parallel_for_chunks(s.size(), threads, [&](std::size_t begin, std::size_t end) {
      std::vector<int> dist(window.size(), -1);
      std::uint64_t local = 0;
      for (std::size_t i = begin; i < end; ++i) {
        bounded_bfs(window, s[i], window.radius() - r, dist, [&](Vertex v, int) {
          if (slot[v] > static_cast<int>(i)) ++local;
        });
      }
      std::lock_guard<std::mutex> lock(mu);
      certified += local;
    });
    const std::uint64_t pairs = s.size() * (s.size() - 1) / 2;
    if (certified < pairs) {
      const double coverage = static_cast<double>(certified) / static_cast<double>(pairs);
      throw CoverageError("window radius " + std::to_string(window.radius()) + " decides " +
                              std::to_string(certified) + " of " + std::to_string(pairs) +
                              " sphere pairs at r=" + std::to_string(r) + ", t=" + std::to_string(t) +
                              "; need radius " + std::to_string(required_window_radius(r, t)),
                          coverage);
    }
  }

  std::mutex mu;
  std::vector<std::pair<int, int>> links;
  parallel_for_chunks(s.size(), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<int> dist(window.size(), -1);
    std::vector<std::pair<int, int>> local;
    for (std::size_t i = begin; i < end; ++i) {
      bounded_bfs(window, s[i], link, dist, [&](Vertex v, int) {
        if (slot[v] > static_cast<int>(i)) local.emplace_back(static_cast<int>(i), slot[v]);
      });
    }
    std::lock_guard<std::mutex> lock(mu);
    links.insert(links.end(), local.begin(), local.end());
  });
  UnionFind uf(s.size());
  for (auto [a, b] : links) uf.unite(a, b);

  BoundaryProfile profile;
  profile.t = t;
  profile.sphere_radius = r;
  profile.window_radius = window.radius();
  for (const auto& group : uf.groups()) {
    std::vector<Vertex> cluster;
    for (auto i : group) cluster.push_back(s[i]);
    profile.clusters.push_back(std::move(cluster));
  }
  return profile;
}

BoundaryProfile boundary_profile(const BallGenerator& generator, int r, int t, unsigned threads) {
  if (t < 0 || t > r) throw InputError("threshold t must satisfy 0 <= t <= r");
  const FiniteBall window = generator.make(required_window_radius(r, t));
  return boundary_profile(window, r, t, threads);
}

std::optional<int> disconnectedness_score(const FiniteBall& window, int r, unsigned threads) {
  for (int t = 0; t <= r; ++t) {
    if (!window_decides(window, r, t)) return std::nullopt;
    if (boundary_profile(window, r, t, threads).all_singletons()) return t;
  }
  return std::nullopt;
}

std::optional<int> disconnectedness_score(const BallGenerator& generator, int r, unsigned threads) {
  const FiniteBall window = generator.make(required_window_radius(r, 0));
  return disconnectedness_score(window, r, threads);
}

EndsComparison components_vs_ends(const FiniteBall& window, int r, int k, int t, unsigned threads) {
  check_sphere_args(window, r, t);
  if (k < 0 || k >= r) throw InputError("removal radius k must satisfy 0 <= k < r");
  // Components are taken in the whole window so that branches of B(r) that
  // reconnect beyond depth r are not counted as separate ends.
  const EndProfile ends = end_profile(window, k);
  const BoundaryProfile profile = boundary_profile(window, r, t, threads);

  std::vector<int> component(window.size(), -1);
  for (std::size_t c = 0; c < ends.components.size(); ++c) {
    for (Vertex v : ends.components[c].vertices) component[v] = static_cast<int>(c);
  }
  EndsComparison out;
  out.r = r;
  out.k = k;
  out.t = t;
  out.ends = ends.count();
  out.clusters = profile.count();
  out.pieces_per_component.assign(ends.count(), 0);
  for (const auto& cluster : profile.clusters) {
    std::set<int> met;
    for (Vertex v : cluster) {
      if (component[v] < 0) {
        ++out.dead_sphere_vertices;
      } else {
        met.insert(component[v]);
      }
    }
    if (met.size() > 1) ++out.straddling_clusters;
    for (int c : met) ++out.pieces_per_component[c];
  }
  out.coarse_clusters = static_cast<std::size_t>(std::count_if(
      out.pieces_per_component.begin(), out.pieces_per_component.end(), [](std::size_t p) { return p > 0; }));
  out.match = out.coarse_clusters == out.ends;
  return out;
}

const char* to_string(RayKind kind) { return kind == RayKind::kFactor ? "factor" : "tree"; }

RayClass classify_ray(const AmalgamBundle& bundle, const Path& ray, double cutoff) {
  if (!has_adhesion_one(bundle.spec)) throw PreconditionError("ray classification needs adhesion 1");
  const FiniteBall& g = bundle.amalgam();
  if (ray.vertices.empty() || ray.front() != g.basepoint()) {
    throw InputError("ray must start at the basepoint of the amalgam");
  }
  if (!is_geodesic(g, ray)) throw InputError("ray is not a geodesic of the amalgam");

  RayClass out;
  out.cutoff = cutoff;
  if (ray.length() == 0 || bundle.copy_count() == 1) {
    out.kind = RayKind::kFactor;
    out.copy = 0;
    out.tree_path = {0};
    out.witness = ray;
    out.final_segment = ray.length();
    return out;
  }
  const auto owner = contracted_edge_copies(bundle);
  std::vector<Vertex> per_edge;
  for (std::size_t i = 0; i + 1 < ray.vertices.size(); ++i) {
    const Vertex a = ray.vertices[i], b = ray.vertices[i + 1];
    per_edge.push_back(owner.at({std::min(a, b), std::max(a, b)}));
  }
  for (Vertex c : per_edge) {
    if (out.tree_path.empty() || out.tree_path.back() != c) out.tree_path.push_back(c);
  }
  while (out.final_segment < per_edge.size() &&
         per_edge[per_edge.size() - 1 - out.final_segment] == per_edge.back()) {
    ++out.final_segment;
  }
  if (static_cast<double>(out.final_segment) >= cutoff * static_cast<double>(ray.length())) {
    out.kind = RayKind::kFactor;
    out.copy = per_edge.back();
    out.witness.vertices.assign(ray.vertices.end() - static_cast<std::ptrdiff_t>(out.final_segment) - 1,
                                ray.vertices.end());
  } else {
    out.kind = RayKind::kTree;
    out.copy = per_edge.back();
    out.witness = ray;
  }
  return out;
}

}  // namespace treeamalg
