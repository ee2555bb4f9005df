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

#include "mechlab/valuation.h"

#include <gtest/gtest.h>

#include "mechlab/bundle.h"
#include "mechlab/errors.h"
#include "mechlab/multiunit.h"
#include "mechlab/rng.h"

namespace mechlab {
namespace {

TEST(BundleTest, CanonicalAndAlgebra) {
  const Bundle a(5, {3, 0, 3});
  EXPECT_EQ(a, Bundle(5, {0, 3}));
  EXPECT_EQ(a.Size(), 2);
  EXPECT_EQ(a.ToString(), "{0,3}");
  const Bundle b(5, {3, 4});
  EXPECT_EQ(a.Union(b), Bundle(5, {0, 3, 4}));
  EXPECT_EQ(a.Intersect(b), Bundle(5, {3}));
  EXPECT_EQ(a.Minus(b), Bundle(5, {0}));
  EXPECT_TRUE(Bundle(5, {3}).IsSubsetOf(a));
  EXPECT_EQ(Bundle::FromMask(5, a.Mask()), a);
  EXPECT_THROW(Bundle(5, {5}), Error);
  EXPECT_THROW(a.Union(Bundle(4)), Error);
}

TEST(ValuationTest, AdditiveSumsItems) {
  const Valuation v = Valuation::Additive({Rat(1), Rat(1), Rat(1)});
  EXPECT_EQ(v(Bundle(3, {0, 1})), Rat(2));
  EXPECT_EQ(v(Bundle(3)), Rat(0));
  EXPECT_THROW(v(Bundle(4, {0})), Error);
}

TEST(ValuationTest, TableMatchesMaterialize) {
  Rng rng("valuation-test", 1, "table");
  std::vector<Rat> t(16);
  for (std::size_t k = 1; k < t.size(); ++k) t[k] = Rat(rng.Range(0, 9));
  const Valuation v = Valuation::Table(4, t);
  EXPECT_EQ(v.Materialize(), t);
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    EXPECT_EQ(v.ValueMask(mask), t[mask]);
    EXPECT_EQ(v(Bundle::FromMask(4, mask)), t[mask]);
  }
}

TEST(ValuationTest, CountsDependOnSizeOnly) {
  const Valuation v = Valuation::FromCounts(3, {Rat(0), Rat(5), Rat(8), Rat(9)});
  EXPECT_EQ(v(Bundle(3, {2})), Rat(5));
  EXPECT_EQ(v(Bundle(3, {0, 2})), Rat(8));
  EXPECT_EQ(v(Bundle::Full(3)), Rat(9));
}

TEST(MonotoneTest, AcceptsAdditive) {
  EXPECT_TRUE(CheckMonotoneNormalized(
                  Valuation::Additive({Rat(2), Rat(0), Rat(1, 2)}))
                  .ok);
}

TEST(MonotoneTest, FlagsNotNormalized) {
  std::vector<Rat> t(4, Rat(1));
  const MonotoneReport r = CheckMonotoneNormalized(Valuation::Table(2, t));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.violation, "not-normalized");
}

TEST(MonotoneTest, FlagsDecrease) {
  // v({0}) = 2, v({0,1}) = 1.
  const Valuation v = Valuation::Table(2, {Rat(0), Rat(2), Rat(0), Rat(1)});
  const MonotoneReport r = CheckMonotoneNormalized(v);
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(r.violation, "not-monotone");
  EXPECT_EQ(r.smaller, Bundle(2, {0}));
  EXPECT_EQ(r.larger, Bundle(2, {0, 1}));
}

TEST(ScaleShiftTest, Values) {
  const Valuation base = Valuation::Additive({Rat(1), Rat(2)});
  const Valuation same = ScaleShift(base, Rat(1), Rat(0));
  for (std::uint64_t m = 0; m < 4; ++m) {
    EXPECT_EQ(same.ValueMask(m), base.ValueMask(m));
  }
  const Valuation doubled = ScaleShift(base, Rat(2), Rat(0));
  EXPECT_EQ(doubled(Bundle(2, {0, 1})), Rat(6));
  const Valuation one = Valuation::Additive({Rat(1), Rat(0), Rat(0)});
  // 4 * (1 + 1/64) computed by hand: 260/64.
  const Valuation w = ScaleShift(one, Rat(4), Rat(1, 64));
  EXPECT_EQ(w(Bundle(3, {0})), Rat(260, 64));
  EXPECT_THROW(ScaleShift(one, Rat(0), Rat(0)), Error);
}

TEST(ScaleShiftTest, PreservesMonotonicity) {
  Rng rng("valuation-test", 2, "monotone");
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rat> items(5);
    for (Rat& x : items) x = Rat(rng.Range(0, 20));
    const Valuation w = ScaleShift(Valuation::Additive(items),
                                   Rat(rng.Range(1, 5)), Rat(1, 3));
    EXPECT_TRUE(CheckMonotoneNormalized(w).ok);
  }
}

TEST(ValuationTest, LiftedNdMemberAtOneUnit) {
  // Every member of the ND family at m = 5 is worth 3 * 5^8 for one unit.
  const auto family = EnumerateNdFamily(5, Rat(1));
  ASSERT_FALSE(family.empty());
  for (const MarginalVector& v : family) {
    const Valuation lifted = v.Lift();
    EXPECT_EQ(lifted(Bundle(5, {3})), Rat(1171875));
    EXPECT_TRUE(CheckMonotoneNormalized(lifted).ok);
  }
}

TEST(ValuationTest, SumAddsPointwise) {
  const Valuation a = Valuation::Additive({Rat(1), Rat(2)});
  const Valuation b = Valuation::FromCounts(2, {Rat(0), Rat(3), Rat(4)});
  const Valuation s = Sum(a, b);
  for (std::uint64_t m = 0; m < 4; ++m) {
    EXPECT_EQ(s.ValueMask(m), a.ValueMask(m) + b.ValueMask(m));
  }
}

}  // namespace
}  // namespace mechlab
