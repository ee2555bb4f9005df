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

#ifndef MECHLAB_GS_H_
#define MECHLAB_GS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mechlab/bundle.h"
#include "mechlab/rat.h"
#include "mechlab/valuation.h"

namespace mechlab {

using PriceVector = std::vector<Rat>;

// Every bundle maximizing v(T) - p(T), ties kept, in mask order. m <= 20.
std::vector<Bundle> DemandSet(const Valuation& v, const PriceVector& p);

struct GsWitness {
  PriceVector p;
  PriceVector p_raised;
  Bundle s;  // Demanded at p, with no demanded superset of its frozen part.
};

struct GsReport {
  bool ok = true;
  bool grid_ok = true;
  bool local_ok = true;
  // False when one test found a violation and the other did not.
  bool agree = true;
  bool grid_exhaustive = true;
  std::uint64_t grid_points = 0;
  std::optional<GsWitness> witness;
  // Human-readable local exchange failure, e.g. "pair S={} i=0 j=1".
  std::string local_violation;
};

struct GsCheckOptions {
  // Largest number of grid price vectors visited; beyond it the grid is
  // sampled with the seed below.
  std::uint64_t grid_budget = 4096;
  std::uint64_t seed = 0;
};

// m <= 12.
GsReport IsGrossSubstitutes(const Valuation& v,
                            const GsCheckOptions& options = {});

// Adds item m (the new last index) with additive value c.
Valuation GsExtend(const Valuation& v, const Rat& c);

enum class GsRole { kAliceD, kBobD, kAliceND, kBobND, kP };

struct GsFamilySpec {
  GsRole role = GsRole::kAliceD;
  int m = 3;
  int a = 0;  // Alice's special item.
  int b = 1;  // Bob's special item.
  Rat gamma = 1;
  Rat eta = 0;  // 0 or 1/2.
  Bundle s;     // D: the boosted items, disjoint from {a, b}.
  // ND: base valuation over the m - 2 ordinary items, in increasing index
  // order; integer values in {0..m}.
  Valuation base;
  // P: the reference valuation over all m items, the special bundle, the
  // special item and the sign.
  Valuation reference;
  Bundle s_star;
  int x_star = -1;
  int sn = 0;
};

Valuation GenGsFamily(const GsFamilySpec& spec);

// Ordinary items (all but a and b) in increasing order.
std::vector<int> OrdinaryItems(int m, int a, int b);

struct Allocation {
  std::vector<Bundle> bundles;  // One per bidder; unassigned items allowed.
  Rat welfare;
};

enum class WdpMode { kBrute, kAscending };

// Brute: m <= 12 and n <= 6. Ascending: GS inputs with a common value
// granularity; raises a mode error when a bidder's demand cannot retain its
// holdings.
Allocation GsWelfareMax(const std::vector<Valuation>& valuations,
                        WdpMode mode);

// Every welfare-maximizing assignment (items may stay unassigned). Small
// instances only: (n + 1)^m <= 2^22.
std::vector<Allocation> AllOptimalAllocations(
    const std::vector<Valuation>& valuations);

// Random gross-substitutes valuation: an assignment (OXS) valuation over
// `slots` unit-demand slots with integer weights in [0, max_weight].
Valuation RandomOxsValuation(int m, int slots, int max_weight,
                             std::uint64_t seed);

// max_{j in S} weights[j].
Valuation UnitDemand(std::vector<Rat> weights);

struct GsFamilyMember {
  std::string label;
  Valuation v;
};

// Family members over m items with a = 0, b = 1 and gamma = 1: both D roles
// for every boosted set and eta in {0, 1/2}; both ND roles over `nd_bases`
// random assignment bases; P members built on the ND members with a random
// special bundle, item and sign. m <= 10.
std::vector<GsFamilyMember> GsFamilySample(int m, int nd_bases,
                                           std::uint64_t seed);

}  // namespace mechlab

#endif  // MECHLAB_GS_H_
