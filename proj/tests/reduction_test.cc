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

#include "mechlab/reduction.h"

#include <gtest/gtest.h>

#include "mechlab/equilibrium.h"
#include "mechlab/errors.h"
#include "mechlab/rng.h"

namespace mechlab {
namespace {

TEST(NoiseTest, LatticeAndWidth) {
  EXPECT_EQ(NoiseValue(4, 3), Rat(3, 256));
  EXPECT_EQ(NoiseValue(2, 0), Rat(0));
  // Smallest width holding 0..3^m.
  for (int m = 1; m <= 8; ++m) {
    long top = 1;
    for (int k = 0; k < m; ++k) top *= 3;
    int bits = 0;
    while ((1L << bits) < top + 1) ++bits;
    EXPECT_EQ(NoiseBits(m), bits) << m;
  }
}

TEST(ToyTest, ScaledNoisyDomainsAndTruthful) {
  const WeightedMechanism wm = ToyWeightedMechanism(2, 1);
  const Bundle wants[2] = {Bundle(4, {0, 1}), Bundle(4, {1, 2})};
  const int noise[2] = {2, 1};
  for (int i = 0; i < 2; ++i) {
    ASSERT_EQ(wm.mech.domains[i].size(), 4u);
    for (int k = 0; k < 4; ++k) {
      const WeightedEntry& e = wm.entries[i][k];
      EXPECT_EQ(e.noise_index, noise[i]);
      const Rat scale = e.weight * (Rat(1) + NoiseValue(4, noise[i]));
      const Valuation& v = wm.mech.domains[i][k];
      EXPECT_EQ(v(wants[e.base]), scale);
      EXPECT_EQ(v(Bundle::Full(4)), scale);
      EXPECT_EQ(v(Bundle(4, {3})), Rat(0));
    }
  }
  EXPECT_TRUE(
      CheckDominant(wm.mech.tree, wm.mech.strategies, wm.mech.domains).ok);
}

class ReductionTest : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(ReductionTest, EncodingRoundTripsAndAllocationIsSafe) {
  const auto [na, nb] = GetParam();
  const WeightedMechanism wm = ToyWeightedMechanism(na, nb);
  const std::vector<CriticalCandidate> cands = ScanCriticalWeights(wm);
  ASSERT_FALSE(cands.empty());
  EXPECT_EQ(cands.front().vertex, wm.mech.tree.root());
  const SimultaneousReduction red(wm, cands.front().vertex,
                                  cands.front().alpha);
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 4; ++k) {
      const ReductionMessage sent = red.EncodeEntry(i, k);
      EXPECT_EQ(sent.domain_index, k);
      const ReductionMessage got = red.Decode(i, sent.bits);
      EXPECT_EQ(got.z, sent.z);
      EXPECT_EQ(got.double_weight, sent.double_weight);
      EXPECT_EQ(got.critical, sent.critical);
      EXPECT_EQ(got.base_set, sent.base_set);
      EXPECT_EQ(got.noise_index, sent.noise_index);
    }
  }
  for (const auto& p : AllProfiles(DomainSizes(wm.mech.domains))) {
    std::vector<Message> msgs;
    for (int i = 0; i < 2; ++i) msgs.push_back(red.EncodeEntry(i, p[i]).bits);
    const ReductionAllocation alloc = red.Allocate(msgs);
    ASSERT_EQ(alloc.bundles.size(), 2u);
    EXPECT_FALSE(alloc.bundles[0].Intersects(alloc.bundles[1]));
    int holders = 0;
    for (int i = 0; i < 2; ++i) {
      const Bundle& got = alloc.bundles[i];
      if (wm.special_sets[0].IsSubsetOf(got)) ++holders;
      // Grants are valuable to their holder.
      if (!got.Empty()) EXPECT_GT(wm.mech.domains[i][p[i]](got), Rat(0));
    }
    EXPECT_LE(holders, 1);
  }
}

INSTANTIATE_TEST_SUITE_P(Noise, ReductionTest,
                         ::testing::Values(std::make_pair(2, 1),
                                           std::make_pair(1, 1),
                                           std::make_pair(0, 3)));

TEST(ReductionDrawTest, EncodeDrawsADomainValuation) {
  const WeightedMechanism wm = ToyWeightedMechanism();
  const std::vector<CriticalCandidate> cands = ScanCriticalWeights(wm);
  ASSERT_FALSE(cands.empty());
  const SimultaneousReduction red(wm, cands.front().vertex,
                                  cands.front().alpha);
  Rng coins("reduction-test", 1, "coins");
  for (int trial = 0; trial < 50; ++trial) {
    for (int i = 0; i < 2; ++i) {
      for (int base = 0; base < 2; ++base) {
        const ReductionMessage msg = red.Encode(i, base, i == 0 ? 2 : 1, coins);
        ASSERT_GE(msg.domain_index, 0);
        ASSERT_LT(msg.domain_index, 4);
        EXPECT_EQ(wm.entries[i][msg.domain_index].base, base);
      }
    }
  }
}

TEST(ReductionDrawTest, VertexMustBeCommon) {
  const WeightedMechanism wm = ToyWeightedMechanism();
  const NodeId leaf = wm.mech.tree.node(wm.mech.tree.root()).children.front();
  try {
    SimultaneousReduction red(wm, leaf, Rat(1));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParameter);
  }
}

}  // namespace
}  // namespace mechlab
