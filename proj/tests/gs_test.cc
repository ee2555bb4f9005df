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

#include "mechlab/gs.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "mechlab/errors.h"
#include "mechlab/rng.h"

namespace mechlab {
namespace {

TEST(DemandTest, AdditiveExamples) {
  const Valuation v = Valuation::Additive({Rat(3), Rat(1)});
  EXPECT_EQ(DemandSet(v, {Rat(2), Rat(2)}),
            std::vector<Bundle>{Bundle(2, {0})});
  EXPECT_EQ(DemandSet(v, {Rat(4), Rat(4)}), std::vector<Bundle>{Bundle(2)});
  // A zero-profit item keeps both options.
  EXPECT_EQ(DemandSet(v, {Rat(3), Rat(5)}).size(), 2u);
}

TEST(GsCheckTest, AdditiveAndUnitDemandPass) {
  EXPECT_TRUE(
      IsGrossSubstitutes(Valuation::Additive({Rat(1), Rat(4), Rat(2)})).ok);
  const GsReport r = IsGrossSubstitutes(UnitDemand({Rat(3), Rat(1), Rat(2)}));
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(r.agree);
}

TEST(GsCheckTest, ComplementsFail) {
  const Valuation v = Valuation::Table(2, {Rat(0), Rat(0), Rat(0), Rat(1)});
  const GsReport r = IsGrossSubstitutes(v);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.grid_ok);
  EXPECT_FALSE(r.local_ok);
  ASSERT_TRUE(r.witness.has_value());
  // The witness bundle is demanded at p and loses its frozen part at p'.
  const GsWitness& w = *r.witness;
  const auto before = DemandSet(v, w.p);
  EXPECT_NE(std::find(before.begin(), before.end(), w.s), before.end());
  Bundle frozen(2);
  for (int j : w.s.Items()) {
    if (w.p[j] == w.p_raised[j]) frozen.Insert(j);
  }
  for (const Bundle& t : DemandSet(v, w.p_raised)) {
    EXPECT_FALSE(frozen.IsSubsetOf(t));
  }
}

// The pair {0,1} competes with item 2. At unit prices both {0,1} and {2}
// are demanded; raising item 0 to 3/2 drops item 1 at an unchanged price.
TEST(GsCheckTest, PairVersusSingleFails) {
  const Valuation v = Valuation::Function(
      ValuationKind::kParametric, 3,
      [](const Bundle& s) {
        Rat best(0);
        if (Bundle(3, {2}).IsSubsetOf(s)) best = Rat(3);
        if (Bundle(3, {0, 1}).IsSubsetOf(s)) best = Rat(4);
        return best;
      },
      "pair-vs-single");
  ASSERT_TRUE(CheckMonotoneNormalized(v).ok);
  const std::vector<Rat> unit = {Rat(1), Rat(1), Rat(1)};
  EXPECT_EQ(DemandSet(v, unit).size(), 2u);
  const std::vector<Bundle> after = DemandSet(v, {Rat(3, 2), Rat(1), Rat(1)});
  ASSERT_EQ(after.size(), 1u);
  EXPECT_EQ(after[0], Bundle(3, {2}));
  EXPECT_FALSE(IsGrossSubstitutes(v).ok);
}

TEST(ExtendTest, Values) {
  const Valuation v = Valuation::Additive({Rat(1), Rat(2)});
  const Valuation same = GsExtend(v, Rat(0));
  for (std::uint64_t m = 0; m < 4; ++m) {
    EXPECT_EQ(same.ValueMask(m), v.ValueMask(m));
  }
  const Valuation e = GsExtend(v, Rat(5));
  EXPECT_EQ(e.m(), 3);
  EXPECT_EQ(e(Bundle(3, {2})), Rat(5));
  EXPECT_EQ(e(Bundle(3, {0, 2})), Rat(6));
  EXPECT_THROW(GsExtend(v, Rat(-1)), Error);
}

TEST(ExtendTest, NewItemDemandedIffPriceAtMostValue) {
  const Valuation e = GsExtend(UnitDemand({Rat(2), Rat(3)}), Rat(2));
  for (int px = 0; px <= 4; ++px) {
    const auto demand = DemandSet(e, {Rat(1), Rat(1), Rat(px)});
    const bool some = std::any_of(demand.begin(), demand.end(),
                                  [](const Bundle& s) { return s.Contains(2); });
    EXPECT_EQ(some, px <= 2) << "price " << px;
  }
}

TEST(ExtendTest, PreservesGrossSubstitutes) {
  Rng rng("gs-test", 1, "extend");
  for (int trial = 0; trial < 20; ++trial) {
    const Valuation v = RandomOxsValuation(4, 2, 3, rng.Next());
    ASSERT_TRUE(IsGrossSubstitutes(v).ok);
    EXPECT_TRUE(IsGrossSubstitutes(GsExtend(v, Rat(rng.Range(0, 2)))).ok);
  }
}

TEST(FamilyTest, AliceDecisiveValues) {
  GsFamilySpec spec;
  spec.role = GsRole::kAliceD;
  spec.m = 5;
  spec.s = Bundle(5);
  const Valuation v = GenGsFamily(spec);
  EXPECT_EQ(v(Bundle(5, {0})), Rat(390625));
  EXPECT_EQ(v(Bundle(5, {1})), Rat(0));
  for (int j = 2; j < 5; ++j) EXPECT_EQ(v(Bundle(5, {j})), Rat(1, 2));
  spec.s = Bundle(5, {1});
  EXPECT_THROW(GenGsFamily(spec), Error);
}

TEST(FamilyTest, NonDecisiveComposition) {
  GsFamilySpec spec;
  spec.role = GsRole::kBobND;
  spec.m = 4;
  spec.gamma = 2;
  spec.eta = Rat(1, 2);
  spec.base = Valuation::Additive({Rat(1), Rat(3)});  // Items 2 and 3.
  const Valuation v = GenGsFamily(spec);
  // 2 * base({3}) + 2 * |S| + m^8 for S = {b, 3}.
  EXPECT_EQ(v(Bundle(4, {1, 3})), Rat(6 + 4 + 65536));
  EXPECT_EQ(v(Bundle(4, {0})), Rat(2) + Rat(1, 2));
  EXPECT_TRUE(IsGrossSubstitutes(v).ok);
}

TEST(FamilyTest, PriceFamilySpecialItem) {
  GsFamilySpec ref;
  ref.role = GsRole::kAliceD;
  ref.m = 4;
  ref.s = Bundle(4, {2});
  GsFamilySpec spec;
  spec.role = GsRole::kP;
  spec.m = 4;
  spec.reference = GenGsFamily(ref);
  spec.s_star = Bundle(4, {0});
  spec.x_star = 3;
  spec.sn = 0;
  const Valuation v = GenGsFamily(spec);
  // Additive reference: the marginal of item 3 is its own value 1/2.
  EXPECT_EQ(v(Bundle(4, {3})), Rat(1, 2) + Rat(1, 128));
  EXPECT_EQ(v(Bundle(4, {0})), Rat::Pow(Rat(4), 15));
  EXPECT_EQ(v(Bundle(4, {1})), Rat(0));
  spec.sn = 1;
  EXPECT_EQ(GenGsFamily(spec)(Bundle(4, {3})), Rat(1, 2) - Rat(1, 128));
}

TEST(FamilyTest, SampledMembersAreGrossSubstitutes) {
  for (const GsFamilyMember& f : GsFamilySample(4, 3, 5)) {
    EXPECT_TRUE(IsGrossSubstitutes(f.v).ok) << f.label;
    EXPECT_TRUE(CheckMonotoneNormalized(f.v).ok) << f.label;
  }
}

TEST(WdpTest, SingleBidderTakesEverything) {
  const Valuation v = Valuation::Additive({Rat(1), Rat(2), Rat(3)});
  const Allocation a = GsWelfareMax({v}, WdpMode::kBrute);
  EXPECT_EQ(a.welfare, Rat(6));
  EXPECT_EQ(a.bundles[0], Bundle::Full(3));
}

TEST(WdpTest, AdditiveMatchesPerItemMaximum) {
  Rng rng("gs-test", 2, "additive");
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Valuation> vals;
    std::vector<std::vector<int>> w(3, std::vector<int>(5));
    for (auto& row : w) {
      for (int& x : row) x = static_cast<int>(rng.Range(0, 9));
      vals.push_back(Valuation::Additive({row.begin(), row.end()}));
    }
    int expect = 0;
    for (int j = 0; j < 5; ++j) {
      expect += std::max({w[0][j], w[1][j], w[2][j]});
    }
    EXPECT_EQ(GsWelfareMax(vals, WdpMode::kBrute).welfare, Rat(expect));
    EXPECT_EQ(GsWelfareMax(vals, WdpMode::kAscending).welfare, Rat(expect));
  }
}

TEST(WdpTest, AscendingMatchesBruteOnOxs) {
  Rng rng("gs-test", 3, "oxs");
  for (int trial = 0; trial < 40; ++trial) {
    const int m = static_cast<int>(rng.Range(2, 6));
    const int n = static_cast<int>(rng.Range(1, 3));
    std::vector<Valuation> vals;
    for (int i = 0; i < n; ++i) {
      vals.push_back(RandomOxsValuation(
          m, static_cast<int>(rng.Range(1, m)), 6, rng.Next()));
    }
    const Allocation brute = GsWelfareMax(vals, WdpMode::kBrute);
    const Allocation asc = GsWelfareMax(vals, WdpMode::kAscending);
    EXPECT_EQ(brute.welfare, asc.welfare);
    Rat w;
    for (int i = 0; i < n; ++i) w += vals[i](asc.bundles[i]);
    EXPECT_EQ(w, asc.welfare);
  }
}

TEST(WdpTest, AscendingRejectsComplements) {
  const Valuation c = Valuation::Table(2, {Rat(0), Rat(0), Rat(0), Rat(4)});
  const Valuation u = Valuation::Additive({Rat(1), Rat(1)});
  EXPECT_THROW(GsWelfareMax({c, u}, WdpMode::kAscending), Error);
}

TEST(WdpTest, AllOptimalListsTies) {
  const Valuation v = Valuation::Additive({Rat(1)});
  // Two identical bidders for one item: either may take it.
  EXPECT_EQ(AllOptimalAllocations({v, v}).size(), 2u);
}

}  // namespace
}  // namespace mechlab
