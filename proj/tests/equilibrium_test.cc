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

#include "mechlab/equilibrium.h"

#include <gtest/gtest.h>

#include "mechlab/errors.h"
#include "mechlab/fixtures.h"
#include "mechlab/multiunit.h"
#include "mechlab/rng.h"

namespace mechlab {
namespace {

Domains SingleItemDomains(int levels) {
  Domains d(2);
  for (int i = 0; i < 2; ++i) {
    for (int v = 0; v < levels; ++v) d[i].push_back(SingleItem(1, v));
  }
  return d;
}

// Highest bid wins, ties to the first bidder, and the winner pays its bid.
Mechanism FirstPrice(int levels) {
  return DirectMechanism(
      "first-price", 1, SingleItemDomains(levels),
      [](const std::vector<int>& b) {
        const int w = b[0] >= b[1] ? 0 : 1;
        Outcome o{{Bundle(1), Bundle(1)}, {Rat(0), Rat(0)}};
        o.allocation[w] = Bundle(1, {0});
        o.payments[w] = Rat(b[w]);
        return o;
      });
}

// Truthfulness of a direct table by enumeration, written independently of
// CheckExpost.
bool DirectTruthful(const SocialChoiceTable& t) {
  const std::vector<int> sizes = t.sizes();
  for (const auto& p : AllProfiles(sizes)) {
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const Valuation& v = t.domains[i][p[i]];
      const Rat honest = Profit(t.At(p), static_cast<int>(i), v);
      for (int r = 0; r < sizes[i]; ++r) {
        std::vector<int> q = p;
        q[i] = r;
        if (Profit(t.At(q), static_cast<int>(i), v) > honest) return false;
      }
    }
  }
  return true;
}

TEST(DominanceTest, SealedBidBothMethodsAgree) {
  for (int levels : {2, 4}) {
    const Mechanism m = SealedBidSecondPrice(levels);
    const DominanceReport r =
        CheckDominant(m.tree, m.strategies, m.domains,
                      {.method = DominanceMethod::kBoth});
    EXPECT_TRUE(r.ok);
    EXPECT_TRUE(r.agree);
    EXPECT_GT(r.oracle_evaluations, 0u);
    EXPECT_EQ(r.verdicts.size(), 2u * levels);
  }
}

TEST(DominanceTest, CorpusIsDominant) {
  for (const Mechanism& m : DominantCorpus()) {
    EXPECT_TRUE(CheckDominant(m.tree, m.strategies, m.domains).ok) << m.name;
  }
}

void ExpectReplays(const Mechanism& m, const ViolationCertificate& c) {
  const Valuation& v = m.domains[c.player][c.valuation];
  std::vector<Behavior> deviating = c.opponents;
  deviating[c.player] = c.deviation;
  EXPECT_EQ(Profit(Evaluate(m.tree, c.opponents).outcome, c.player, v),
            c.honest_profit);
  EXPECT_EQ(Profit(Evaluate(m.tree, deviating).outcome, c.player, v),
            c.deviating_profit);
  EXPECT_GT(c.deviating_profit, c.honest_profit);
  EXPECT_FALSE(DescribeCertificate(m.tree, c).empty());
}

TEST(DominanceTest, SerialCertificateReplays) {
  const Mechanism m = SerialSecondPrice({10}, 12, 10);
  const DominanceReport r = CheckDominant(m.tree, m.strategies, m.domains);
  ASSERT_FALSE(r.ok);
  ASSERT_FALSE(r.certificates.empty());
  const ViolationCertificate& c = r.certificates.front();
  EXPECT_EQ(c.player, 0);
  EXPECT_EQ(c.honest_profit, Rat(1));
  EXPECT_EQ(c.deviating_profit, Rat(10));
  ExpectReplays(m, c);
}

TEST(DominanceTest, SmallSerialBothMethods) {
  const Mechanism m = SerialSecondPrice({2}, 3, 3);
  const DominanceReport r = CheckDominant(m.tree, m.strategies, m.domains,
                                          {.method = DominanceMethod::kBoth});
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(r.agree);
  ASSERT_FALSE(r.certificates.empty());
  ExpectReplays(m, r.certificates.front());
}

TEST(DominanceTest, FirstPriceViolatesAndCollectsAll) {
  const Mechanism m = FirstPrice(3);
  const DominanceReport first =
      CheckDominant(m.tree, m.strategies, m.domains);
  EXPECT_FALSE(first.ok);
  EXPECT_EQ(first.certificates.size(), 1u);
  const DominanceReport all = CheckDominant(
      m.tree, m.strategies, m.domains,
      {.method = DominanceMethod::kBoth, .collect_all = true});
  EXPECT_TRUE(all.agree);
  // Shading pays for values 1 and 2 of the first bidder, who wins ties, but
  // only for value 2 of the second.
  std::vector<std::pair<int, int>> bad;
  for (const DominanceVerdict& v : all.verdicts) {
    if (!v.ok) bad.emplace_back(v.player, v.valuation);
  }
  EXPECT_EQ(bad, (std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(all.certificates.size(), 3u);
}

TEST(DominanceTest, OracleBudgetIsEnforced) {
  const Mechanism m = SealedBidSecondPrice(4);
  try {
    CheckDominant(m.tree, m.strategies, m.domains,
                  {.method = DominanceMethod::kOracle, .oracle_budget = 1});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapability);
  }
}

TEST(ExpostTest, MatchesIndependentEnumeration) {
  for (const Mechanism& m : {SealedBidSecondPrice(4), FirstPrice(4)}) {
    const SocialChoiceTable t = TableFromTree(m.tree, m.strategies, m.domains);
    EXPECT_EQ(CheckExpost(t).ok, DirectTruthful(t)) << m.name;
  }
  const Mechanism fp = FirstPrice(3);
  const ExpostReport r =
      CheckExpost(TableFromTree(fp.tree, fp.strategies, fp.domains));
  ASSERT_FALSE(r.ok);
  EXPECT_GT(r.deviating_profit, r.honest_profit);
}

TEST(ExpostTest, TableFollowsSecondPriceRule) {
  const Mechanism m = SealedBidSecondPrice(5);
  const SocialChoiceTable t = TableFromTree(m.tree, m.strategies, m.domains);
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      const Outcome& o = t.At({a, b});
      const int w = a >= b ? 0 : 1;
      EXPECT_FALSE(o.allocation[w].Empty());
      EXPECT_EQ(o.payments[w], Rat(std::min(a, b)));
      EXPECT_EQ(o.payments[1 - w], Rat(0));
    }
  }
}

TEST(ExpostTest, MultiUnitVcgTable) {
  const std::vector<MarginalVector> dom = MarginalLevelDomain(4, {1, 2, 3});
  const SocialChoiceTable t = MultiUnitTable(dom, dom, VcgMechanism);
  EXPECT_TRUE(CheckExpost(t).ok);
  EXPECT_TRUE(DirectTruthful(t));
}

TEST(TaxationTest, SecondPriceMenu) {
  const Mechanism m = SealedBidSecondPrice(5);
  const SocialChoiceTable t = TableFromTree(m.tree, m.strategies, m.domains);
  const TaxationMenu menu = ExtractTaxationMenu(t, 0, {0, 2});
  EXPECT_TRUE(menu.consistent);
  ASSERT_EQ(menu.menu.size(), 2u);
  EXPECT_EQ(menu.menu.at(Bundle(1)), Rat(0));
  EXPECT_EQ(menu.menu.at(Bundle(1, {0})), Rat(2));
}

TEST(TaxationTest, FirstPriceHasTwoPrices) {
  const Mechanism m = FirstPrice(4);
  const SocialChoiceTable t = TableFromTree(m.tree, m.strategies, m.domains);
  try {
    ExtractTaxationMenu(t, 0, {0, 0});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTaxation);
  }
}

TEST(VcgTest, PaymentsAreExternalities) {
  Rng rng("vcg-test", 3, "pairs");
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng.Range(0, 8));
    const MarginalVector va = RandomDecreasing(m, 20, rng);
    const MarginalVector vb = RandomDecreasing(m, 20, rng);
    const MuOutcome o = VcgMechanism(va, vb);
    ASSERT_EQ(o.alice + o.bob, m);
    Rat best = va.value(0) + vb.value(m);
    for (int x = 0; x <= m; ++x) {
      best = Max(best, va.value(x) + vb.value(m - x));
    }
    EXPECT_EQ(va.value(o.alice) + vb.value(o.bob), best);
    // Alone, either player would take every unit.
    EXPECT_EQ(o.alice_payment, vb.value(m) - vb.value(o.bob));
    EXPECT_EQ(o.bob_payment, va.value(m) - va.value(o.alice));
  }
}

TEST(SketchTest, ProbeWinsExactlyX) {
  const MarginalVector va =
      MarginalVector::FromMarginals({Rat(9), Rat(7), Rat(4), Rat(1)});
  for (int x = 1; x < 4; ++x) {
    const MarginalVector probe = SketchProbe(va, x);
    EXPECT_TRUE(probe.HasDecreasingMarginals());
    EXPECT_EQ(VcgMechanism(va, probe).bob, x);
  }
}

TEST(SketchTest, VcgPassesAndShiftedPricesFail) {
  const std::vector<MarginalVector> slice = MarginalLevelDomain(4, {1, 3, 5});
  const PaymentsSketchReport ok = PaymentsSketchCheck(VcgMechanism, slice);
  EXPECT_TRUE(ok.ok) << ok.reason;
  EXPECT_EQ(ok.checked, slice.size() * 3);
  const TwoPlayerMechanism shifted = [](const MarginalVector& a,
                                        const MarginalVector& b) {
    MuOutcome o = VcgMechanism(a, b);
    o.bob_payment += Rat(1, 2);
    return o;
  };
  const PaymentsSketchReport bad = PaymentsSketchCheck(shifted, slice);
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.price - bad.center, Rat(1, 2));
}

}  // namespace
}  // namespace mechlab
