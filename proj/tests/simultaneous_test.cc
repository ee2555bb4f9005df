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

#include "mechlab/simultaneous.h"

#include <gtest/gtest.h>

#include <set>

#include "mechlab/errors.h"

namespace mechlab {
namespace {

// Binary valuation satisfied by any superset of an interest set.
Valuation Binary(int m, std::vector<Bundle> interests) {
  return Valuation::Function(
      ValuationKind::kParametric, m,
      [interests](const Bundle& s) {
        for (const Bundle& a : interests) {
          if (a.IsSubsetOf(s)) return Rat(1);
        }
        return Rat(0);
      },
      "binary");
}

// Four items, one group of three bidders: the special bidder wants the
// private block {0,1}; the others want {1,2} or {2,3}, and {3}.
AuctionInstance HandInstance() {
  AuctionInstance inst;
  inst.generator = "hand";
  inst.m = 4;
  inst.interests = {{Bundle(4, {0, 1})},
                    {Bundle(4, {1, 2}), Bundle(4, {2, 3})},
                    {Bundle(4, {3})}};
  for (const auto& sets : inst.interests) {
    inst.valuations.push_back(Binary(4, sets));
  }
  inst.group_of = {0, 0, 0};
  inst.special_sets = {Bundle(4, {0, 1})};
  inst.special_bidder = {0};
  inst.shared = Bundle(4, {2, 3});
  return inst;
}

// Largest number of bidders given disjoint interest sets, by enumeration.
int BrutePacking(const AuctionInstance& inst) {
  const int n = inst.num_bidders();
  int best = 0;
  std::function<void(int, Bundle, int)> go = [&](int i, Bundle used,
                                                 int count) {
    if (i == n) {
      best = std::max(best, count);
      return;
    }
    go(i + 1, used, count);
    for (const Bundle& a : inst.interests[i]) {
      if (!a.Intersects(used)) go(i + 1, used.Union(a), count + 1);
    }
  };
  go(0, Bundle(inst.m), 0);
  return best;
}

TEST(PackingTest, HandInstance) {
  const AuctionInstance inst = HandInstance();
  const PackingResult p = MaxPacking(inst);
  EXPECT_EQ(p.welfare, 2);
  EXPECT_EQ(p.welfare, BrutePacking(inst));
  EXPECT_EQ(p.specials_with_block, 1);
  CheckFeasible(inst, p.bundles);
  EXPECT_EQ(Welfare(inst, p.bundles), Rat(2));
  const WelfareDecomposition d = DecomposeWelfare(inst);
  EXPECT_EQ(d.opt, 2);
  EXPECT_EQ(d.other_sets, 2);
  EXPECT_TRUE(d.holds);
}

TEST(PackingTest, GeneratedSmallInstances) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const AuctionInstance inst = GenHardGeneral({.m = 4}, seed);
    EXPECT_EQ(MaxPacking(inst).welfare, BrutePacking(inst)) << seed;
  }
}

TEST(FeasibilityTest, RejectsOverlapsAndWrongCounts) {
  const AuctionInstance inst = HandInstance();
  const Bundle e(4);
  EXPECT_NO_THROW(CheckFeasible(inst, {Bundle(4, {0}), Bundle(4, {1}), e}));
  EXPECT_THROW(CheckFeasible(inst, {Bundle(4, {0}), Bundle(4, {0}), e}),
               Error);
  EXPECT_THROW(CheckFeasible(inst, {e, e}), Error);
}

TEST(GeneralTest, StructureAndDeterminism) {
  const AuctionInstance a = GenHardGeneral({.m = 16}, 7);
  const AuctionInstance b = GenHardGeneral({.m = 16}, 7);
  EXPECT_EQ(a.interests, b.interests);
  EXPECT_EQ(a.num_groups(), 3);
  EXPECT_EQ(a.num_bidders(), 48);
  // Private blocks and the shared block partition the items.
  Bundle all = a.shared;
  for (int g = 0; g < a.num_groups(); ++g) {
    EXPECT_FALSE(a.special_sets[g].Intersects(all));
    all = all.Union(a.special_sets[g]);
    const int s = a.special_bidder[g];
    EXPECT_EQ(a.group_of[s], g);
    EXPECT_EQ(a.valuations[s](a.special_sets[g]), Rat(1));
  }
  EXPECT_EQ(all, Bundle::Full(16));
  // Every interest set stays inside its group's private and shared blocks.
  for (int i = 0; i < a.num_bidders(); ++i) {
    const Bundle home = a.special_sets[a.group_of[i]].Union(a.shared);
    for (const Bundle& s : a.interests[i]) EXPECT_TRUE(s.IsSubsetOf(home));
  }
  const std::vector<Bundle> spec = SpecializedAllocation(a, 0);
  CheckFeasible(a, spec);
  EXPECT_EQ(Welfare(a, spec), Rat(a.num_groups()));
  EXPECT_THROW(GenHardGeneral({.m = 8}, 1), Error);
}

TEST(MatroidInstanceTest, DeskSpecializedWelfare) {
  const AuctionInstance inst = GenHardMatroid(DeskMatroidParams(), 3);
  EXPECT_EQ(inst.m, 256);
  const std::vector<Bundle> spec = SpecializedAllocation(inst, 2);
  CheckFeasible(inst, spec);
  EXPECT_EQ(Welfare(inst, spec), Rat(256));
  EXPECT_FALSE(inst.notes.empty());
}

TEST(RunTest, BaselinesOnHandInstance) {
  const AuctionInstance inst = HandInstance();
  const SimRun silent = RunSimultaneous(SilentAlgorithm(), inst);
  EXPECT_EQ(silent.welfare, Rat(0));
  EXPECT_EQ(silent.max_bits, 0);
  const SimRun top = RunSimultaneous(TopSetFirstCome(4), inst);
  // Requests {0,1}, {1,2}, {3}: the second collides.
  EXPECT_EQ(top.welfare, Rat(2));
  EXPECT_EQ(top.max_bits, 4);
  const SimRun exact = RunSimultaneous(ExactReport(4), inst);
  EXPECT_EQ(exact.welfare, Rat(BrutePacking(inst)));
  EXPECT_EQ(exact.messages[1].size(), 8u);
}

TEST(RunTest, BudgetsAreEnforced) {
  const AuctionInstance inst = HandInstance();
  EXPECT_NO_THROW(RunSimultaneous(TruncatedReport(2, BudgetScope::kPerPlayer, 2),
                                  inst));
  try {
    RunSimultaneous(TruncatedReport(3, BudgetScope::kPerPlayer, 2), inst);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBudget);
  }
  // Three bidders in one group, two bits each.
  EXPECT_THROW(RunSimultaneous(TruncatedReport(2, BudgetScope::kPerGroup, 5),
                               inst),
               Error);
  EXPECT_NO_THROW(RunSimultaneous(
      TruncatedReport(2, BudgetScope::kPerGroup, 6), inst));
}

TEST(GroupDistributionTest, OneSpecialPerDraw) {
  const GroupDistribution dist = MakeGroupDistribution(8, 4, 8, 4, 1);
  EXPECT_EQ(dist.family.size(), 8u);
  std::set<int> specials;
  for (std::uint64_t draw = 0; draw < 200; ++draw) {
    const AuctionInstance g = SampleGroup(dist, 1, draw);
    ASSERT_EQ(g.num_groups(), 1);
    EXPECT_EQ(g.num_bidders(), 4);
    EXPECT_EQ(g.special_sets[0].Size(), 4);
    specials.insert(g.special_bidder[0]);
    // Every family set goes to exactly one bidder.
    std::size_t held = 0;
    for (const auto& sets : g.interests) held += sets.size();
    EXPECT_EQ(held, dist.family.size());
  }
  EXPECT_EQ(specials.size(), 4u);
  const AuctionInstance again = SampleGroup(dist, 1, 5);
  EXPECT_EQ(again.interests, SampleGroup(dist, 1, 5).interests);
}

TEST(FrequentStatsTest, HonestReportVersusCheat) {
  const GroupDistribution dist = MakeGroupDistribution(8, 4, 8, 4, 2);
  const FrequentStats honest = FrequentMessageStats(
      TruncatedReport(1, BudgetScope::kPerGroup, 4), dist, 5000, 4, 2);
  EXPECT_EQ(honest.bound, 16);
  EXPECT_TRUE(honest.within_bound);
  EXPECT_FALSE(honest.inconsistent);
  EXPECT_FALSE(honest.flagged);
  std::uint64_t total = 0;
  for (const TupleStat& t : honest.tuples) total += t.count;
  EXPECT_EQ(total, 5000u);
  const FrequentStats cheat = FrequentMessageStats(
      SpecialCheat(BudgetScope::kPerGroup, 4), dist, 5000, 4, 2);
  EXPECT_TRUE(cheat.inconsistent);
  EXPECT_TRUE(cheat.flagged);
  EXPECT_EQ(cheat.max_special_posterior, Rat(1));
}

}  // namespace
}  // namespace mechlab
