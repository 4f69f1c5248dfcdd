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

// Hyperbolicity estimates on certified windows.
//
// delta_thin is the thin-triangle constant: the least delta such that every
// vertex on one side of a geodesic triangle lies within delta of the union of
// the other two sides, over every triple and every choice of geodesics.
// delta4 is the four-point proxy. The two are reported side by side and never
// substituted for each other.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treeamalg/generators.hpp"
#include "treeamalg/graphcore.hpp"
#include "treeamalg/numeric.hpp"

namespace treeamalg {

enum class DeltaMethod { kExhaustive, kSampled };

const char* to_string(DeltaMethod method);

struct DeltaMode {
  DeltaMethod method = DeltaMethod::kExhaustive;
  std::uint64_t samples = 0;  // sampled mode only
  std::uint64_t seed = 0;

  static DeltaMode exhaustive() { return {}; }
  static DeltaMode sampled(std::uint64_t n, std::uint64_t seed) {
    return {DeltaMethod::kSampled, n, seed};
  }
  // "exhaustive" or "sampled:N".
  static DeltaMode parse(const std::string& text, std::uint64_t seed);
};

inline constexpr std::size_t kExhaustiveVertexCap = 60;
// Above this size the four-point sweep falls back to sampled quadruples.
inline constexpr std::size_t kFourPointSweepCap = 400;

struct DeltaReport {
  std::optional<HalfInt> delta_thin;
  HalfInt delta4;
  bool delta4_exact = true;  // false when quadruples were sampled
  DeltaMethod method = DeltaMethod::kExhaustive;
  std::uint64_t triples_checked = 0;
  std::uint64_t triples_considered = 0;
  double certified_fraction = 0.0;
  std::optional<std::uint64_t> seed;
};

struct DeltaOptions {
  std::size_t exhaustive_cap = kExhaustiveVertexCap;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Throws CapacityError above the exhaustive cap and CertificationError when
// no triple is pairwise certified. Sampled mode is a lower bound.
DeltaReport delta_thin(const FiniteBall& ball, const DeltaMode& mode, const DeltaOptions& options = {});

// Exact four-point delta over all quadruples whose six pairs are certified.
HalfInt delta_four_point(const FiniteBall& ball, unsigned threads = 0);
HalfInt delta_four_point(const DistanceTable& table, unsigned threads = 0);

// (x|y)_o for the ball's basepoint; certification errors name the pair.
HalfInt gromov_product(const FiniteBall& ball, Vertex x, Vertex y);
HalfInt gromov_product(const DistanceTable& table, Vertex x, Vertex y);

struct DeltaGrowthPoint {
  int radius = 0;
  std::size_t vertices = 0;
  HalfInt delta4;
};

// delta4 at each radius; radii must be strictly increasing.
std::vector<DeltaGrowthPoint> delta_growth(const BallGenerator& generator, const std::vector<int>& radii,
                                           unsigned threads = 0);

}  // namespace treeamalg
