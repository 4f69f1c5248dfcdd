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

#include "treeamalg/qi.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>

#include "treeamalg/error.hpp"

namespace treeamalg {

namespace {

using DistancePair = std::pair<int, int>;  // (d, d')

struct Constraints {
  // Distinct (d, d') values with the first domain pair realising each.
  std::map<DistancePair, Edge> pairs;
  std::size_t checked = 0;
  int codensity = 0;
  Vertex codensity_vertex = -1;
};

Constraints collect(const std::vector<Vertex>& map, const FiniteBall& dom, const FiniteBall& cod,
                    const QIOptions& options) {
  if (map.empty()) throw InputError("empty domain");
  if (map.size() != dom.size()) {
    throw InputError("map has " + std::to_string(map.size()) + " entries for " +
                     std::to_string(dom.size()) + " domain vertices");
  }
  for (Vertex y : map) cod.check_vertex(y);
  if (!options.domain_mask.empty() && options.domain_mask.size() != dom.size()) {
    throw InputError("domain mask size mismatch");
  }
  const auto in_domain = [&](Vertex v) { return options.domain_mask.empty() || options.domain_mask[v]; };

  const DistanceTable dd(dom, options.threads);
  const DistanceTable cd(cod, options.threads);
  Constraints out;
  std::mutex mu;
  std::vector<Edge> bad;
  const auto n = dom.size();
  parallel_for_chunks(n, options.threads, [&](std::size_t begin, std::size_t end) {
    std::map<DistancePair, Edge> local;
    std::vector<Edge> local_bad;
    std::size_t count = 0;
    for (auto u = static_cast<Vertex>(begin); u < static_cast<Vertex>(end); ++u) {
      if (!in_domain(u)) continue;
      for (Vertex v = u + 1; v < static_cast<Vertex>(n); ++v) {
        if (!in_domain(v) || !dd.certified(u, v)) continue;
        if (!cd.certified(map[u], map[v])) {
          local_bad.emplace_back(u, v);
          continue;
        }
        ++count;
        local.emplace(DistancePair{dd.at(u, v), cd.at(map[u], map[v])}, Edge{u, v});
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    out.checked += count;
    bad.insert(bad.end(), local_bad.begin(), local_bad.end());
    for (const auto& [key, pair] : local) {
      auto it = out.pairs.find(key);
      if (it == out.pairs.end()) {
        out.pairs.emplace(key, pair);
      } else {
        it->second = std::min(it->second, pair);
      }
    }
  });
  if (!bad.empty()) {
    std::sort(bad.begin(), bad.end());
    std::string listing;
    for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 5); ++i) {
      listing += " (" + std::to_string(bad[i].first) + "," + std::to_string(bad[i].second) + ")";
    }
    throw CertificationError(std::to_string(bad.size()) +
                             " certified domain pairs have uncertified images:" + listing);
  }

  // Codensity: distance of every codomain vertex to the image.
  std::vector<int> dist(cod.size(), -1);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    if (in_domain(v) && dist[map[v]] < 0) {
      dist[map[v]] = 0;
      queue.push_back(map[v]);
    }
  }
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : cod.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  for (Vertex v = 0; v < static_cast<Vertex>(cod.size()); ++v) {
    if (!cod.is_whole() && cod.depth(v) + dist[v] > cod.radius()) {
      throw CertificationError("codensity at codomain vertex " + std::to_string(v) + " is not certified");
    }
    if (dist[v] > out.codensity) {
      out.codensity = dist[v];
      out.codensity_vertex = v;
    }
  }
  return out;
}

Rational c_for(const Constraints& k, Rational gamma) {
  Rational c = k.codensity;
  for (const auto& [key, pair] : k.pairs) {
    const auto [d, di] = key;
    c = std::max({c, Rational(d) / gamma - Rational(di), Rational(di) - gamma * Rational(d)});
  }
  return c;
}

}  // namespace

Rational min_c_for_gamma(const std::vector<Vertex>& map, const FiniteBall& dom, const FiniteBall& cod,
                         Rational gamma, const QIOptions& options) {
  if (gamma < Rational(1)) throw InputError("gamma must be >= 1");
  return c_for(collect(map, dom, cod, options), gamma);
}

QIFit qi_constants(const std::vector<Vertex>& map, const FiniteBall& dom, const FiniteBall& cod,
                   const QIOptions& options) {
  const Constraints k = collect(map, dom, cod, options);
  std::set<Rational> candidates{Rational(1)};
  for (const auto& [key, pair] : k.pairs) {
    const auto [d, di] = key;
    if (di > 0 && d > di) candidates.insert(Rational(d, di));
    if (di > d) candidates.insert(Rational(di, d));
  }
  QIFit fit;
  fit.codensity = k.codensity;
  fit.pairs_checked = k.checked;
  fit.candidates = candidates.size();
  bool first = true;
  for (Rational gamma : candidates) {  // ascending, so ties keep the smaller gamma
    const Rational c = c_for(k, gamma);
    if (first || gamma + c < fit.gamma + fit.c) {
      fit.gamma = gamma;
      fit.c = c;
      first = false;
    }
  }
  for (const auto& [key, pair] : k.pairs) {
    const auto [d, di] = key;
    if (Rational(d) / fit.gamma - fit.c == Rational(di)) {
      fit.witnesses.push_back({"lower", pair.first, pair.second, d, di});
    }
    if (fit.gamma * Rational(d) + fit.c == Rational(di)) {
      fit.witnesses.push_back({"upper", pair.first, pair.second, d, di});
    }
  }
  if (k.codensity_vertex >= 0 && fit.c == Rational(k.codensity)) {
    fit.witnesses.push_back({"codensity", k.codensity_vertex, -1, k.codensity, 0});
  }
  return fit;
}

bool is_quasi_geodesic(const FiniteBall& ball, const Path& path, Rational gamma, Rational c) {
  if (path.vertices.empty()) throw InputError("empty path");
  if (gamma < Rational(1) || c < Rational(0)) throw InputError("need gamma >= 1 and c >= 0");
  for (Vertex v : path.vertices) ball.check_vertex(v);
  for (std::size_t i = 0; i < path.vertices.size(); ++i) {
    const auto row = distances_from(ball, path.vertices[i]);
    for (std::size_t j = i + 1; j < path.vertices.size(); ++j) {
      const Vertex u = path.vertices[i], v = path.vertices[j];
      if (!ball.certifies(u, v, row[v])) {
        throw CertificationError("path pair (" + std::to_string(u) + "," + std::to_string(v) +
                                 ") is not certified");
      }
      const Rational span(static_cast<std::int64_t>(j - i));
      const Rational d(row[v]);
      if (span / gamma - c > d || d > gamma * span + c) return false;
    }
  }
  return true;
}

PreservationReport check_geodesic_preservation(const AmalgamBundle& bundle, unsigned threads) {
  if (!has_adhesion_one(bundle.spec)) {
    throw PreconditionError("geodesic preservation is checked for adhesion-1 bundles only");
  }
  const FiniteBall& g = bundle.amalgam();

  // Per factor: every certified pair with its geodesics.
  struct PairGeodesics {
    Vertex x, y;
    std::vector<Path> paths;
  };
  std::vector<PairGeodesics> per_factor[3];
  for (int side : {1, 2}) {
    const FiniteBall& f = bundle.spec.factor(side);
    const DistanceTable d(f, threads);
    for (Vertex x = 0; x < static_cast<Vertex>(f.size()); ++x) {
      for (Vertex y = x + 1; y < static_cast<Vertex>(f.size()); ++y) {
        if (d.certified(x, y)) per_factor[side].push_back({x, y, all_geodesics(f, x, y)});
      }
    }
  }

  PreservationReport report;
  std::mutex mu;
  parallel_for_chunks(bundle.copy_count(), threads, [&](std::size_t begin, std::size_t end) {
    PreservationReport local;
    for (auto t = static_cast<Vertex>(begin); t < static_cast<Vertex>(end); ++t) {
      const int side = bundle.tree.side[t];
      Vertex last_source = -1;
      std::vector<int> row;
      for (const auto& pg : per_factor[side]) {
        const Vertex gx = bundle.psi[bundle.plus_vertex(t, pg.x)];
        if (pg.x != last_source) {
          row = distances_from(g, gx);
          last_source = pg.x;
        }
        ++local.pairs_checked;
        for (const Path& p : pg.paths) {
          ++local.paths_checked;
          Path image;
          for (Vertex v : p.vertices) image.vertices.push_back(bundle.psi[bundle.plus_vertex(t, v)]);
          bool ok = static_cast<int>(image.length()) == row[image.back()];
          for (std::size_t i = 0; ok && i + 1 < image.vertices.size(); ++i) {
            ok = g.adjacent(image.vertices[i], image.vertices[i + 1]);
          }
          if (!ok) local.violations.push_back({t, pg.x, pg.y, p, image, row[image.back()]});
        }
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    report.pairs_checked += local.pairs_checked;
    report.paths_checked += local.paths_checked;
    report.violations.insert(report.violations.end(), local.violations.begin(), local.violations.end());
  });
  std::sort(report.violations.begin(), report.violations.end(), [](const auto& a, const auto& b) {
    return std::tie(a.copy, a.x, a.y, a.factor_path) < std::tie(b.copy, b.x, b.y, b.factor_path);
  });
  return report;
}

PsiReport check_plus_vs_contracted(const AmalgamBundle& bundle, unsigned threads) {
  const AdhesionMetrics metrics = adhesion_metrics(bundle);
  if (!metrics.finite_identification) {
    throw PreconditionError("psi fit needs finite identification on the truncation");
  }
  PsiReport report;
  report.max_identification_size = metrics.max_identification_size;
  report.finite_identification = metrics.finite_identification;
  QIOptions options;
  options.threads = threads;
  report.fit = qi_constants(bundle.psi, bundle.plus_graph, bundle.amalgam(), options);
  return report;
}

}  // namespace treeamalg
