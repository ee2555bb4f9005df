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

#include "mechlab/separation.h"

#include <gtest/gtest.h>

#include "mechlab/equilibrium.h"
#include "mechlab/errors.h"
#include "mechlab/rng.h"

namespace mechlab {
namespace {

constexpr int kA = SeparationF::kItemA;
constexpr int kB = SeparationF::kItemB;
constexpr int kC = SeparationF::kItemC;

// Rule restated: players key on c, a, b. Player 1 tests player 0's key and
// a pass gives c to player 2; player 2 tests player 1's key and a pass
// gives a to player 0; player 0 tests player 2's key and a pass gives b to
// player 1.
std::vector<Bundle> OracleAllocation(const SeparationF& f,
                                     const std::vector<Valuation>& v) {
  const int m = f.m();
  auto key = [&](int p, int item) {
    return static_cast<int>(v[p](Bundle(m, {item})).num().get_si());
  };
  const int keys[3] = {key(0, kC), key(1, kA), key(2, kB)};
  auto passes = [&](int tester, int source) {
    const int k = keys[source];
    return k >= 1 && k <= f.num_sets() && v[tester](f.Set(k)) < Rat(1);
  };
  std::vector<Bundle> out(3, Bundle(m));
  if (passes(1, 0)) out[2].Insert(kC);
  if (passes(2, 1)) out[0].Insert(kA);
  if (passes(0, 2)) out[1].Insert(kB);
  return out;
}

TEST(SeparationFTest, HalfSizeBundleOrder) {
  const SeparationF f(4);
  ASSERT_EQ(f.num_sets(), 6);
  const std::vector<Bundle> expect = {Bundle(4, {0, 1}), Bundle(4, {0, 2}),
                                      Bundle(4, {0, 3}), Bundle(4, {1, 2}),
                                      Bundle(4, {1, 3}), Bundle(4, {2, 3})};
  for (int i = 1; i <= 6; ++i) {
    EXPECT_EQ(f.Set(i), expect[i - 1]);
    EXPECT_EQ(f.IndexOf(expect[i - 1]), i);
  }
  EXPECT_EQ(f.IndexOf(Bundle(4, {0})), -1);
  EXPECT_EQ(SeparationF(6).num_sets(), 20);
  EXPECT_THROW(SeparationF(5), Error);
  EXPECT_THROW(SeparationF(2), Error);
}

TEST(SeparationFTest, MatchesRestatedRule) {
  const SeparationF f(4);
  Rng rng("separation-test", 1, "valuations");
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<Valuation> v;
    for (int p = 0; p < 3; ++p) {
      std::vector<Rat> values(16);
      for (int mask = 1; mask < 16; ++mask) {
        // Singletons double as keys, so let them fall outside 1..6 too.
        values[mask] = Rat(static_cast<long>(rng.Range(0, 7)));
      }
      v.push_back(Valuation::Table(4, values));
    }
    const Outcome o = f.Apply(v[0], v[1], v[2]);
    EXPECT_EQ(o.allocation, OracleAllocation(f, v));
    for (const Rat& p : o.payments) EXPECT_EQ(p, Rat(0));
  }
}

TEST(IndexReductionTest, OutcomeRevealsArrayEntry) {
  const SeparationF f(4);
  for (int code = 0; code < 64; ++code) {
    std::vector<int> arr(6);
    for (int i = 0; i < 6; ++i) arr[i] = code >> i & 1;
    for (int j = 1; j <= 6; ++j) {
      const IndexInstance in = IndexReduction(f, arr, j);
      const Outcome o = f.Apply(in.alice, in.bob, in.charlie);
      EXPECT_EQ(o.allocation[0].Contains(kA), arr[j - 1] == 1);
    }
  }
  EXPECT_THROW(IndexReduction(f, std::vector<int>(5, 0), 1), Error);
  EXPECT_THROW(IndexReduction(f, std::vector<int>(6, 0), 7), Error);
}

TEST(SeparationProtocolTest, ComputesTheRule) {
  const Domains d = SeparationDomain(4, 3, 8, {1, 2, 7}, 5);
  const Mechanism mech = SeparationProtocol(4, d);
  const SeparationF f(4);
  for (const auto& p : AllProfiles(DomainSizes(d))) {
    const Outcome o =
        Evaluate(mech.tree, BehaviorsFor(mech.strategies, p)).outcome;
    EXPECT_EQ(o, f.Apply(d[0][p[0]], d[1][p[1]], d[2][p[2]]));
  }
}

TEST(SeparationProtocolTest, ExpostButNotDominant) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Mechanism mech =
        SeparationProtocol(4, SeparationDomain(4, 3, 8, {1, 2, 3}, seed));
    EXPECT_LE(mech.tree.MaxPathBits(), 3 * 4 + 6);
    EXPECT_LE(mech.tree.MaxPathBits(), SeparationBitBound(4));
    EXPECT_TRUE(
        CheckExpost(TableFromTree(mech.tree, mech.strategies, mech.domains))
            .ok);
    const DominanceReport ds =
        CheckDominant(mech.tree, mech.strategies, mech.domains);
    EXPECT_FALSE(ds.ok) << seed;
  }
}

TEST(SeparationProtocolTest, Bounds) {
  EXPECT_EQ(SeparationBitBound(4), 18);
  EXPECT_EQ(SeparationBitBound(6), 24);
  EXPECT_THROW(SeparationProtocol(4, Domains(2)), Error);
}

}  // namespace
}  // namespace mechlab
