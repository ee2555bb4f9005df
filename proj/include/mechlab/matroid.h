// Copyright 2026 The Mechlab Authors.
//
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

#ifndef MECHLAB_MATROID_H_
#define MECHLAB_MATROID_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mechlab/bundle.h"
#include "mechlab/valuation.h"

namespace mechlab {

struct SetFamily {
  int ground_size = 0;
  std::vector<Bundle> sets;
};

// Rank profile over a set family: sets listed in full_rank keep rank |A|,
// every other set of the family is squeezed down to the budget b, and the
// whole function is truncated at d.
struct RankProfileMatroid {
  SetFamily family;
  std::vector<int> full_rank;
  int b = 0;
  int d = 0;
};

int Rank(const RankProfileMatroid& matroid, const Bundle& s);

// Rank on every subset of the ground set, indexed by mask; ground_size <= 24.
std::vector<int> RankTable(const RankProfileMatroid& matroid);

struct AxiomReport {
  bool ok = true;
  // One of "not-normalized", "unit-step", "not-monotone", "not-submodular".
  std::string violation;
  Bundle s;
  Bundle t;
  int x = -1;
  std::string ToString() const;
};

using RankFn = std::function<int(const Bundle&)>;

// Exhaustive mode requires ground_size <= 12.
AxiomReport VerifyMatroidAxioms(const RankFn& rank, int ground_size,
                                std::optional<SampledMode> sampled =
                                    std::nullopt);

// k sets of size s, each drawn uniformly without replacement.
SetFamily RandomSetFamily(int ground_size, int k, int s,
                             std::uint64_t seed);

// ceil(8 * log_base(k)), at least 1.
int DefaultLowRankBudget(int k, double log_base = 2.0);

int MaxPairwiseIntersection(const SetFamily& family);

struct RankProfileOptions {
  int ground_size = 0;
  int k = 1;
  int s = 1;
  int b = 0;  // 0 selects DefaultLowRankBudget(k).
  int d = 0;  // 0 selects s.
  // When set, families whose pairwise intersections exceed b / 2 are
  // resampled as well.
  bool require_near_disjoint = false;
  int retry_cap = 64;
  int samples = 2000;  // Used when ground_size > 12.
};

struct RankProfileResult {
  RankProfileMatroid matroid;
  int attempts = 0;
};

// Samples a family and a full-rank subfamily (each set kept with probability
// 1/2 unless full_rank is given), resampling until the axioms verify.
RankProfileResult MakeRankProfileMatroid(
    const RankProfileOptions& options, std::uint64_t seed,
    std::optional<std::vector<int>> full_rank = std::nullopt);

// Valuation S -> rank(embed^{-1}(S)); embedding[e] is the item carrying
// ground element e.
Valuation MatroidRankValuation(const RankProfileMatroid& matroid, int m,
                               std::vector<int> embedding);

}  // namespace mechlab

#endif  // MECHLAB_MATROID_H_
