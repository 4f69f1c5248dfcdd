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

#include "treeamalg/hyperbolic.hpp"

#include <algorithm>
#include <mutex>
#include <random>

#include "treeamalg/error.hpp"

namespace treeamalg {

namespace {

constexpr std::int32_t kMasked = -(1 << 28);

// Vertices on some a-b geodesic, sorted by distance from a.
std::vector<Vertex> interval(const DistanceTable& d, Vertex a, Vertex b) {
  const int len = d.at(a, b);
  std::vector<Vertex> out;
  for (Vertex u = 0; u < static_cast<Vertex>(d.size()); ++u) {
    if (d.at(a, u) + d.at(u, b) == len) out.push_back(u);
  }
  std::stable_sort(out.begin(), out.end(), [&](Vertex x, Vertex y) { return d.at(a, x) < d.at(a, y); });
  return out;
}

// max over a-b geodesics P of d(v, P). Bottleneck DP on the geodesic DAG,
// walking from b back to a; `scratch` is indexed by vertex.
int farthest_geodesic(const DistanceTable& d, const std::vector<Vertex>& ival, Vertex a, Vertex v,
                      std::vector<int>& scratch) {
  const FiniteBall& ball = d.ball();
  for (auto it = ival.rbegin(); it != ival.rend(); ++it) {
    const Vertex u = *it;
    const int du = d.at(a, u);
    int best = -1;
    for (Vertex s : ball.neighbors(u)) {
      if (d.at(a, s) == du + 1 && scratch[s] >= 0) best = std::max(best, scratch[s]);
    }
    // The last interval vertex is b itself and has no successor.
    scratch[u] = best < 0 ? d.at(v, u) : std::min(d.at(v, u), best);
  }
  const int result = scratch[a];
  for (Vertex u : ival) scratch[u] = -1;
  return result;
}

// Thin-triangle value of one triple given per-side lookups far(side, v).
template <typename Far>
int triangle_value(const DistanceTable& d, Vertex x, Vertex y, Vertex z, const Far& far) {
  const Vertex t[3] = {x, y, z};
  int worst = 0;
  for (int s = 0; s < 3; ++s) {
    const Vertex a = t[s], b = t[(s + 1) % 3], c = t[(s + 2) % 3];
    for (Vertex v : interval(d, a, b)) {
      worst = std::max(worst, std::min(far(b, c, v), far(a, c, v)));
    }
  }
  return worst;
}

bool pairwise_certified(const DistanceTable& d, Vertex x, Vertex y, Vertex z) {
  return d.certified(x, y) && d.certified(y, z) && d.certified(x, z);
}

std::int64_t sampled_four_point(const DistanceTable& d, std::uint64_t samples, std::mt19937_64& rng) {
  const auto n = d.size();
  std::int64_t best = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Vertex q[4];
    for (auto& v : q) v = static_cast<Vertex>(rng() % n);
    bool ok = true;
    for (int a = 0; a < 4 && ok; ++a)
      for (int b = a + 1; b < 4 && ok; ++b) ok = d.certified(q[a], q[b]);
    if (!ok) continue;
    std::int64_t s[3] = {d.at(q[0], q[1]) + d.at(q[2], q[3]), d.at(q[0], q[2]) + d.at(q[1], q[3]),
                         d.at(q[0], q[3]) + d.at(q[1], q[2])};
    std::sort(s, s + 3);
    best = std::max(best, s[2] - s[1]);
  }
  return best;
}

}  // namespace

const char* to_string(DeltaMethod method) {
  return method == DeltaMethod::kExhaustive ? "exhaustive" : "sampled";
}

DeltaMode DeltaMode::parse(const std::string& text, std::uint64_t seed) {
  if (text == "exhaustive") return exhaustive();
  const std::string prefix = "sampled:";
  if (text.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      const auto n = std::stoull(text.substr(prefix.size()), &used);
      if (used == text.size() - prefix.size() && n > 0) return sampled(n, seed);
    } catch (const std::exception&) {
    }
  }
  throw InputError("delta mode must be 'exhaustive' or 'sampled:N', got '" + text + "'");
}

HalfInt delta_four_point(const DistanceTable& d, unsigned threads) {
  const auto n = d.size();
  std::mutex mu;
  std::int64_t best = 0;
  parallel_for_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
    std::int64_t local = 0;
    std::vector<Vertex> c;
    std::vector<std::int32_t> g;
    for (std::size_t w = begin; w < end; ++w) {
      const auto wv = static_cast<Vertex>(w);
      c.clear();
      for (Vertex x = 0; x < static_cast<Vertex>(n); ++x) {
        if (d.certified(wv, x)) c.push_back(x);
      }
      const std::size_t k = c.size();
      // Doubled Gromov products at w, masked where the pair is uncertified.
      g.assign(k * k, kMasked);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          if (d.certified(c[i], c[j])) {
            g[i * k + j] = d.at(wv, c[i]) + d.at(wv, c[j]) - d.at(c[i], c[j]);
          }
        }
      }
      // max over x,y,z of min((x|z),(y|z)) - (x|y): a max-min product row by row.
      for (std::size_t i = 0; i < k; ++i) {
        const std::int32_t* gi = &g[i * k];
        for (std::size_t j = i; j < k; ++j) {
          if (gi[j] == kMasked) continue;
          const std::int32_t* gj = &g[j * k];
          std::int32_t m = kMasked;
          for (std::size_t z = 0; z < k; ++z) m = std::max(m, std::min(gi[z], gj[z]));
          local = std::max<std::int64_t>(local, m - gi[j]);
        }
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    best = std::max(best, local);
  });
  return HalfInt::from_doubled(best);
}

HalfInt delta_four_point(const FiniteBall& ball, unsigned threads) {
  const DistanceTable table(ball, threads);
  return delta_four_point(table, threads);
}

HalfInt gromov_product(const DistanceTable& d, Vertex x, Vertex y) {
  const FiniteBall& ball = d.ball();
  ball.check_vertex(x);
  ball.check_vertex(y);
  const Vertex o = ball.basepoint();
  for (auto [a, b] : {Edge{o, x}, Edge{o, y}, Edge{x, y}}) {
    if (!d.certified(a, b)) {
      throw CertificationError("gromov product needs certified pair (" + std::to_string(a) + "," +
                               std::to_string(b) + ")");
    }
  }
  return HalfInt::from_doubled(d.at(o, x) + d.at(o, y) - d.at(x, y));
}

HalfInt gromov_product(const FiniteBall& ball, Vertex x, Vertex y) {
  ball.check_vertex(x);
  ball.check_vertex(y);
  const auto dxy = certified_distance(ball, x, y);
  if (!dxy.certified) {
    throw CertificationError("gromov product needs certified pair (" + std::to_string(x) + "," +
                             std::to_string(y) + ")");
  }
  return HalfInt::from_doubled(ball.depth(x) + ball.depth(y) - *dxy.value);
}

DeltaReport delta_thin(const FiniteBall& ball, const DeltaMode& mode, const DeltaOptions& options) {
  const std::size_t n = ball.size();
  DeltaReport report;
  report.method = mode.method;
  if (mode.method == DeltaMethod::kExhaustive && n > options.exhaustive_cap) {
    throw CapacityError("exhaustive delta_thin on " + std::to_string(n) +
                        " vertices exceeds the cap of " + std::to_string(options.exhaustive_cap));
  }
  const DistanceTable d(ball, options.threads);
  std::int64_t thin = 0;

  if (mode.method == DeltaMethod::kExhaustive) {
    // far[(a*n+b)*n+v] = max over a-b geodesics P of d(v,P).
    std::vector<std::uint16_t> far(n * n * n, 0);
    parallel_for_chunks(n, options.threads, [&](std::size_t begin, std::size_t end) {
      std::vector<int> scratch(n, -1);
      for (std::size_t a = begin; a < end; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          const auto av = static_cast<Vertex>(a), bv = static_cast<Vertex>(b);
          const auto ival = interval(d, av, bv);
          for (std::size_t v = 0; v < n; ++v) {
            far[(a * n + b) * n + v] =
                static_cast<std::uint16_t>(farthest_geodesic(d, ival, av, static_cast<Vertex>(v), scratch));
          }
        }
      }
    });
    const auto lookup = [&](Vertex a, Vertex b, Vertex v) {
      return static_cast<int>(far[(static_cast<std::size_t>(a) * n + b) * n + v]);
    };
    std::mutex mu;
    std::uint64_t checked = 0;
    parallel_for_chunks(n, options.threads, [&](std::size_t begin, std::size_t end) {
      std::int64_t local = 0;
      std::uint64_t count = 0;
      for (auto x = static_cast<Vertex>(begin); x < static_cast<Vertex>(end); ++x) {
        for (Vertex y = x; y < static_cast<Vertex>(n); ++y) {
          if (!d.certified(x, y)) continue;
          for (Vertex z = y; z < static_cast<Vertex>(n); ++z) {
            if (!pairwise_certified(d, x, y, z)) continue;
            ++count;
            local = std::max<std::int64_t>(local, triangle_value(d, x, y, z, lookup));
          }
        }
      }
      std::lock_guard<std::mutex> lock(mu);
      thin = std::max(thin, local);
      checked += count;
    });
    report.triples_checked = checked;
    report.triples_considered = n * (n + 1) * (n + 2) / 6;
    report.delta4 = delta_four_point(d, options.threads);
  } else {
    std::mt19937_64 rng(mode.seed);
    report.seed = mode.seed;
    std::vector<int> scratch(n, -1);
    const auto on_the_fly = [&](Vertex a, Vertex b, Vertex v) {
      return farthest_geodesic(d, interval(d, a, b), a, v, scratch);
    };
    const std::uint64_t budget = 64 * mode.samples;
    std::uint64_t attempts = 0;
    while (report.triples_checked < mode.samples && attempts < budget) {
      ++attempts;
      const auto x = static_cast<Vertex>(rng() % n);
      const auto y = static_cast<Vertex>(rng() % n);
      const auto z = static_cast<Vertex>(rng() % n);
      if (!pairwise_certified(d, x, y, z)) continue;
      ++report.triples_checked;
      thin = std::max<std::int64_t>(thin, triangle_value(d, x, y, z, on_the_fly));
    }
    report.triples_considered = attempts;
    if (n <= kFourPointSweepCap) {
      report.delta4 = delta_four_point(d, options.threads);
    } else {
      report.delta4 = HalfInt::from_doubled(sampled_four_point(d, mode.samples, rng));
      report.delta4_exact = false;
    }
  }
  if (report.triples_checked == 0) {
    throw CertificationError("no pairwise certified triple among " +
                             std::to_string(report.triples_considered) + " considered");
  }
  report.certified_fraction =
      static_cast<double>(report.triples_checked) / static_cast<double>(report.triples_considered);
  report.delta_thin = HalfInt::from_int(thin);
  return report;
}

std::vector<DeltaGrowthPoint> delta_growth(const BallGenerator& generator, const std::vector<int>& radii,
                                           unsigned threads) {
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (radii[i] <= radii[i - 1]) throw InputError("radii must be strictly increasing");
  }
  std::vector<DeltaGrowthPoint> out;
  for (int r : radii) {
    const FiniteBall ball = generator.make(r);
    out.push_back({r, ball.size(), delta_four_point(ball, threads)});
  }
  return out;
}

}  // namespace treeamalg
