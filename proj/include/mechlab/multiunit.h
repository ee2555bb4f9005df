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

#ifndef MECHLAB_MULTIUNIT_H_
#define MECHLAB_MULTIUNIT_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mechlab/rat.h"
#include "mechlab/rng.h"
#include "mechlab/valuation.h"

namespace mechlab {

// A valuation over item counts 0..m, stored as cumulative values.
class MarginalVector {
 public:
  MarginalVector() = default;
  // values[x] = v(x) for x = 0..m; values[0] must be 0.
  static MarginalVector FromValues(std::vector<Rat> values);
  // marginals[k] is the value of the (k+1)-th unit.
  static MarginalVector FromMarginals(const std::vector<Rat>& marginals);

  int m() const { return static_cast<int>(values_.size()) - 1; }
  const Rat& value(int x) const { return values_.at(x); }
  // v(x) - v(x - 1), 1 <= x <= m.
  Rat marginal(int x) const { return values_.at(x) - values_.at(x - 1); }
  const std::vector<Rat>& values() const { return values_; }
  // Marginals non-increasing.
  bool HasDecreasingMarginals() const;
  // Non-negative and non-decreasing.
  bool IsMonotone() const;
  std::size_t MaxBitLength() const;

  // The symmetric set valuation S -> v(|S|).
  Valuation Lift() const;

  friend bool operator==(const MarginalVector& a, const MarginalVector& b) {
    return a.values_ == b.values_;
  }
  friend bool operator<(const MarginalVector& a, const MarginalVector& b);

 private:
  std::vector<Rat> values_;
};

// Counts distinct (player, count) value queries.
class QueryCounter {
 public:
  Rat Ask(int player, const MarginalVector& v, int x);
  std::size_t count() const { return seen_.size(); }

 private:
  std::map<std::pair<int, int>, Rat> seen_;
};

struct CrossingResult {
  int alice = 0;  // Units for the first player.
  int bob = 0;
  Rat welfare;
  std::size_t queries = 0;
};

// Smallest welfare-maximizing split found by binary search on the first
// unit where the first player's next marginal no longer beats the second's.
CrossingResult CrossingOptimum(const MarginalVector& va,
                               const MarginalVector& vb);

struct TwoPlayerPayments {
  Rat alice;
  Rat bob;
};

TwoPlayerPayments VcgTwoPlayer(const MarginalVector& va,
                               const MarginalVector& vb, int oa, int ob);

enum class CrossingVerdict { kUniqueOptimum, kInconclusive };

// s in [0, m]; the end points use the one-sided conditions.
CrossingVerdict CheckCrossingConditions(const MarginalVector& va,
                                        const MarginalVector& vb, int s);

struct MuAllocation {
  std::vector<int> units;
  Rat welfare;
};

// Exact optimum: a linear scan for two players, DP over (bidder, units used)
// otherwise. Needs n * m <= 10^4 when n > 2.
MuAllocation BruteOptimum(const std::vector<MarginalVector>& valuations);

struct FptasOptions {
  Rat epsilon{1, 2};
  // Overrides the block size derived from epsilon when set.
  std::optional<int> block_size;
};

struct FptasResult {
  MuAllocation allocation;
  int q = 0;  // Block size.
  int t = 0;  // Number of blocks.
  int l = 0;  // Remainder units.
  std::size_t queries = 0;
  bool exact_fallback = false;  // q = 0, solved over single units.
};

// Maximal-in-range optimum: every bidder gets a multiple of q units, except
// that one bidder may additionally take the remainder l = m - tq.
FptasResult FptasAllocate(const std::vector<MarginalVector>& valuations,
                          const FptasOptions& options);

// Welfare optimum over the block range for a subset of bidders; `active`
// marks who participates (the others get 0 units).
MuAllocation RangeOptimum(const std::vector<MarginalVector>& valuations,
                          int q, const std::vector<bool>& active,
                          QueryCounter* counter = nullptr);

// p_i = (range optimum of the others without i) - (others' welfare in the
// chosen allocation).
std::vector<Rat> VcgForRange(
    const std::vector<MarginalVector>& valuations,
    const std::function<MuAllocation(const std::vector<bool>&)>& optimizer);

enum class MuFamily { kD, kND, kP };

struct MuFamilyParams {
  MuFamily family = MuFamily::kND;
  int m = 5;
  Rat gamma = 1;
  // D.
  int x_star = 2;
  Rat d_m = 1;
  // ND: d[x - 2] = d_x for x = 2..m-1 (d_m is the field above).
  std::vector<Rat> d;
  // P.
  MarginalVector base;
  int sn = 0;
  int t_star = 1;
};

// Documented bit budget: every value has bit length <= kMuBitBudgetFactor *
// log2(m).
inline constexpr int kMuBitBudgetFactor = 16;
bool WithinBitBudget(const MarginalVector& v, int factor = kMuBitBudgetFactor);

MarginalVector GenMuFamily(const MuFamilyParams& params);

// All 2 (m + 1)^(m - 2) members of the ND family for a weight, in
// lexicographic parameter order.
std::vector<MarginalVector> EnumerateNdFamily(int m, const Rat& gamma);
// All 2 (m - 3) members of the D family for a weight.
std::vector<MarginalVector> EnumerateDFamily(int m, const Rat& gamma);

// m marginals drawn uniformly from 0..max_marginal and sorted
// non-increasing.
MarginalVector RandomDecreasing(int m, int max_marginal, Rng& rng);

// A pair with distinct marginals (drawn from 1..max_marginal) whose
// optimum splits at a strict crossing.
std::pair<MarginalVector, MarginalVector> RandomStrictCrossing(
    int m, int max_marginal, Rng& rng);

// The unique integer within 1/(8m) of v_m - p.
Rat ReconstructValue(const Rat& p, const Rat& v_m, int m);

}  // namespace mechlab

#endif  // MECHLAB_MULTIUNIT_H_
