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

#include "mechlab/protocol_tree.h"

#include <gtest/gtest.h>

#include "mechlab/equilibrium.h"
#include "mechlab/errors.h"
#include "mechlab/fixtures.h"

namespace mechlab {
namespace {

Outcome SingleBidder(int m, const Bundle& s, const Rat& price) {
  return {{s}, {price}};
}

// One bidder choosing between the given (bundle, price) leaves at the root.
ProtocolTree MenuTree(int m, const std::vector<std::pair<Bundle, Rat>>& menu) {
  ProtocolTree t(1, m);
  const NodeId root =
      t.AddInternal({0}, {static_cast<int>(menu.size())});
  for (std::size_t k = 0; k < menu.size(); ++k) {
    t.SetChild(root, {static_cast<int>(k)},
               t.AddLeaf(SingleBidder(m, menu[k].first, menu[k].second)));
  }
  t.set_root(root);
  return t;
}

TEST(EvaluateTest, SingleLeaf) {
  ProtocolTree t(1, 1);
  t.set_root(t.AddLeaf(SingleBidder(1, Bundle(1), Rat(0))));
  t.Validate();
  const Evaluation e = Evaluate(t, {Behavior(1, -1)});
  EXPECT_EQ(e.leaf, t.root());
  EXPECT_EQ(e.bits, 0);
}

TEST(EvaluateTest, SealedBidWinnerPaysSecondBid) {
  const Mechanism m = SealedBidSecondPrice(11);
  const Evaluation e = Evaluate(m.tree, BehaviorsFor(m.strategies, {10, 7}));
  EXPECT_EQ(e.outcome.allocation[0], Bundle(1, {0}));
  EXPECT_TRUE(e.outcome.allocation[1].Empty());
  EXPECT_EQ(e.outcome.payments[0], Rat(7));
  EXPECT_EQ(e.outcome.payments[1], Rat(0));
  EXPECT_EQ(e.bits, 8);
}

TEST(EvaluateTest, SerialOpponentBidsNine) {
  const Mechanism m = SerialSecondPrice({10}, 12, 10);
  const ProtocolTree& t = m.tree;
  std::vector<Behavior> b(2, Behavior(t.size(), -1));
  b[0][t.root()] = 10;
  const NodeId second = t.Child(t.root(), {10});
  b[1][second] = 9;
  const Evaluation e = Evaluate(t, b);
  EXPECT_EQ(e.outcome.allocation[0], Bundle(1, {0}));
  EXPECT_EQ(e.outcome.payments[0], Rat(9));
}

TEST(EvaluateTest, MissingBehaviorIsAnError) {
  const Mechanism m = SealedBidSecondPrice(3);
  std::vector<Behavior> b(2, Behavior(m.tree.size(), -1));
  b[0][m.tree.root()] = 1;
  try {
    Evaluate(m.tree, b);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIncompleteStrategy);
  }
}

TEST(ValidateTest, CatchesMissingChild) {
  ProtocolTree t(1, 1);
  const NodeId root = t.AddInternal({0}, {2});
  t.SetChild(root, {0}, t.AddLeaf(SingleBidder(1, Bundle(1), Rat(0))));
  t.set_root(root);
  EXPECT_THROW(t.Validate(), Error);
}

TEST(ValidateTest, CatchesOverlappingBundles) {
  ProtocolTree t(2, 1);
  t.set_root(t.AddLeaf({{Bundle(1, {0}), Bundle(1, {0})}, {Rat(0), Rat(0)}}));
  EXPECT_THROW(t.Validate(), Error);
}

TEST(BitsTest, SumOfSpeakerBits) {
  const Mechanism m = SealedBidSecondPrice(4);
  EXPECT_EQ(m.tree.NodeBits(m.tree.root()), 4);
  EXPECT_EQ(m.tree.MaxPathBits(), 4);
  EXPECT_EQ(m.tree.NumLeaves(), 16);
}

void ExpectSameOutcomes(const Mechanism& a, const MinimizeResult& b) {
  for (const auto& p : AllProfiles(DomainSizes(a.domains))) {
    EXPECT_EQ(Evaluate(a.tree, BehaviorsFor(a.strategies, p)).outcome,
              Evaluate(b.tree, BehaviorsFor(b.strategies, p)).outcome);
  }
}

TEST(MinimizeTest, IdempotentAndOutcomePreserving) {
  std::vector<Mechanism> corpus = DominantCorpus();
  corpus.push_back(FigureOneTree());
  corpus.push_back(NonSemiSimultaneousTree());
  for (const Mechanism& m : corpus) {
    const MinimizeResult once = Minimize(m.tree, m.strategies, m.domains);
    once.tree.Validate();
    ExpectSameOutcomes(m, once);
    const MinimizeResult twice =
        Minimize(once.tree, once.strategies, m.domains);
    EXPECT_TRUE(StructurallyEqual(once.tree, twice.tree)) << m.name;
  }
}

TEST(MinimizeTest, PaddingCollapses) {
  const Mechanism padded = PaddedSealedBid(4);
  const Mechanism plain = SealedBidSecondPrice(4);
  const MinimizeResult a =
      Minimize(padded.tree, padded.strategies, padded.domains);
  const MinimizeResult b = Minimize(plain.tree, plain.strategies, plain.domains);
  EXPECT_TRUE(StructurallyEqual(a.tree, b.tree));
  EXPECT_LT(a.tree.MaxPathBits(), padded.tree.MaxPathBits());
}

TEST(MinimizeTest, PrunesUnsentMessages) {
  // Every value accepts, so the decline edge disappears and the root
  // collapses into the sale leaf.
  const Mechanism m = PostedPrice(1, {1, 2, 3});
  const MinimizeResult r = Minimize(m.tree, m.strategies, m.domains);
  EXPECT_EQ(r.tree.size(), 1);
  EXPECT_EQ(r.tree.NumLeaves(), 1);
  EXPECT_EQ(r.tree.node(r.tree.root()).outcome->payments[0], Rat(1));
}

TEST(InducedTreeTest, NotASpeaker) {
  const Mechanism m = SerialSecondPrice({0, 1}, 2, 2);
  try {
    MakeInducedTree(m.tree, m.tree.root(), 1, {});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotASpeaker);
  }
}

TEST(InducedTreeTest, SealedBidOpponentFixed) {
  const Mechanism m = SealedBidSecondPrice(11);
  const InducedTree it = MakeInducedTree(m.tree, m.tree.root(), 0, {7});
  EXPECT_EQ(it.subtrees.size(), 11u);
  for (const LeafView& l : InducedLeaves(it)) {
    EXPECT_EQ(l.payment, l.bundle.Empty() ? Rat(0) : Rat(7));
    EXPECT_EQ(l.bundle.Empty(), l.subtree < 7);
  }
}

TEST(InducedTreeTest, SingleMessageGivesOneSubtree) {
  const ProtocolTree t = MenuTree(1, {{Bundle(1, {0}), Rat(1)}});
  EXPECT_EQ(MakeInducedTree(t, t.root(), 0, {}).subtrees.size(), 1u);
}

TEST(PaymentUniquenessTest, SealedBidEverywhere) {
  const Mechanism m = SealedBidSecondPrice(3);
  for (int player = 0; player < 2; ++player) {
    for (const Profile& others : OtherProfiles(m.tree, m.tree.root(), player)) {
      EXPECT_TRUE(CheckPaymentUniqueness(
                      MakeInducedTree(m.tree, m.tree.root(), player, others))
                      .ok);
    }
  }
}

TEST(PaymentUniquenessTest, ConflictingPrices) {
  const ProtocolTree t = PriceConflictTree();
  const PaymentUniquenessReport r =
      CheckPaymentUniqueness(MakeInducedTree(t, t.root(), 0, {}));
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(r.bundle, Bundle(1, {0}));
  EXPECT_EQ(std::min(r.price_a, r.price_b), Rat(1));
  EXPECT_EQ(std::max(r.price_a, r.price_b), Rat(2));
}

TEST(PaymentUniquenessTest, DistinctBundlesVacuous) {
  const ProtocolTree t =
      MenuTree(2, {{Bundle(2, {0}), Rat(1)}, {Bundle(2, {1}), Rat(5)}});
  EXPECT_TRUE(CheckPaymentUniqueness(MakeInducedTree(t, t.root(), 0, {})).ok);
}

TEST(MinimalPriceTest, MinimumOverSupersets) {
  const ProtocolTree t =
      MenuTree(2, {{Bundle(2, {0}), Rat(3)}, {Bundle(2, {0, 1}), Rat(2)}});
  const InducedTree it = MakeInducedTree(t, t.root(), 0, {});
  EXPECT_EQ(MinimalPrice(it, Bundle(2, {0})), Rat(2));
  const ProtocolTree u = MenuTree(2, {{Bundle(2, {1}), Rat(1)}});
  EXPECT_FALSE(
      MinimalPrice(MakeInducedTree(u, u.root(), 0, {}), Bundle(2, {0}))
          .has_value());
}

TEST(DecisiveTest, SingletonLeaf) {
  const ProtocolTree t = MenuTree(1, {{Bundle(1, {0}), Rat(1)}});
  const InducedTree it = MakeInducedTree(t, t.root(), 0, {});
  EXPECT_TRUE(IsDecisive(it, Bundle(1, {0}), Rat(1)));
  EXPECT_FALSE(IsDecisive(it, Bundle(1, {0}), Rat(1, 2)));
}

TEST(DecisiveTest, PostedPriceAccept) {
  const Mechanism m = PostedPrice(1, {0, 2});
  const InducedTree it = MakeInducedTree(m.tree, m.tree.root(), 0, {});
  EXPECT_TRUE(IsDecisive(it, Bundle(1, {0}), Rat(1)));
  EXPECT_EQ(GuaranteedProfit(it, SingleItem(1, 3)), Rat(2));
  EXPECT_EQ(GuaranteedProfit(it, SingleItem(1, 0)), Rat(0));
}

TEST(DecisiveTest, UnrevealedOpponentBid) {
  // The first bidder speaks before the second, whose bids go up to 9.
  const Mechanism m = SerialSecondPrice({10}, 12, 10);
  const InducedTree it = MakeInducedTree(m.tree, m.tree.root(), 0, {});
  const Bundle item(1, {0});
  EXPECT_TRUE(IsDecisive(it, item, Rat(9)));
  for (int p = 0; p < 9; ++p) EXPECT_FALSE(IsDecisive(it, item, Rat(p)));
  EXPECT_TRUE(IsDecisive(it, Bundle(1), Rat(0)));
}

TEST(DecisiveTest, FixedOpponentBidProfit) {
  const Mechanism m = SealedBidSecondPrice(11);
  const InducedTree it = MakeInducedTree(m.tree, m.tree.root(), 0, {7});
  EXPECT_EQ(GuaranteedProfit(it, SingleItem(1, 10)), Rat(3));
}

TEST(ContainmentTest, HoldsOnDominantCorpus) {
  for (const Mechanism& m : DominantCorpus()) {
    const MinimizeResult mz = Minimize(m.tree, m.strategies, m.domains);
    for (NodeId u = 0; u < mz.tree.size(); ++u) {
      if (mz.tree.node(u).is_leaf()) continue;
      for (int i : mz.tree.node(u).speakers) {
        for (const Profile& z : OtherProfiles(mz.tree, u, i)) {
          EXPECT_TRUE(
              CheckContainmentMonotone(MakeInducedTree(mz.tree, u, i, z)).ok)
              << m.name;
        }
      }
    }
  }
}

TEST(SemiSimultaneousTest, SealedBidNeedsNoSpecialSubtree) {
  const Mechanism m = SealedBidSecondPrice(3);
  const MinimizeResult mz = Minimize(m.tree, m.strategies, m.domains);
  const SemiSimultaneousReport r =
      CheckSemiSimultaneous(mz.tree, mz.strategies, m.domains);
  EXPECT_TRUE(r.ok);
  for (const SemiSimultaneousEntry& e : r.special) EXPECT_EQ(e.special, -1);
}

TEST(SemiSimultaneousTest, AscendingAuction) {
  const Mechanism m = AscendingAuction(2, 3);
  const MinimizeResult mz = Minimize(m.tree, m.strategies, m.domains);
  EXPECT_TRUE(CheckSemiSimultaneous(mz.tree, mz.strategies, m.domains).ok);
}

TEST(SemiSimultaneousTest, FlagsTwoCheapSubtrees) {
  const Mechanism m = NonSemiSimultaneousTree();
  const SemiSimultaneousReport r =
      CheckSemiSimultaneous(m.tree, m.strategies, m.domains);
  ASSERT_FALSE(r.ok);
  EXPECT_NE(r.subtree_a, r.subtree_b);
  EXPECT_GE(r.leaf_a, 0);
  EXPECT_GE(r.leaf_b, 0);
}

}  // namespace
}  // namespace mechlab
