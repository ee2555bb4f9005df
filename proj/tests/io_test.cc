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

#include "mechlab/io.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "mechlab/errors.h"
#include "mechlab/fixtures.h"
#include "mechlab/matroid.h"
#include "mechlab/simultaneous.h"

namespace mechlab {
namespace {

void ExpectSameValues(const Valuation& a, const Valuation& b) {
  ASSERT_EQ(a.m(), b.m());
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << a.m()); ++s) {
    EXPECT_EQ(a.ValueMask(s), b.ValueMask(s));
  }
}

TEST(IoTest, ValuationRoundTrip) {
  const Valuation table =
      Valuation::Table(2, {Rat(0), Rat(1, 3), Rat(2), Rat(5, 2)});
  const Valuation additive = Valuation::Additive({Rat(1), Rat(7, 4), Rat(0)});
  for (const Valuation& v : {table, additive}) {
    const Json j = ValuationToJson(v);
    EXPECT_TRUE(j.contains("kind"));
    ExpectSameValues(ValuationFromJson(ParseJson(j.dump(), "mem")), v);
  }
}

TEST(IoTest, MechanismRoundTripKeepsOutcomes) {
  const Mechanism m = SerialSecondPrice({1, 3}, 4, 4);
  const Json j = MechanismToJson(m);
  EXPECT_EQ(j["schema"], "mechanism");
  const Mechanism back = MechanismFromJson(ParseJson(j.dump(), "mem"));
  EXPECT_TRUE(StructurallyEqual(m.tree, back.tree));
  for (const auto& p : AllProfiles(DomainSizes(m.domains))) {
    EXPECT_EQ(Evaluate(m.tree, BehaviorsFor(m.strategies, p)).outcome,
              Evaluate(back.tree, BehaviorsFor(back.strategies, p)).outcome);
  }
  EXPECT_EQ(MechanismToJson(back).dump(), j.dump());
}

TEST(IoTest, MatroidRoundTrip) {
  RankProfileOptions opts;
  opts.ground_size = 10;
  opts.k = 3;
  opts.s = 3;
  opts.b = 1;
  const RankProfileMatroid mat = MakeRankProfileMatroid(opts, 4).matroid;
  const RankProfileMatroid back =
      MatroidFromJson(ParseJson(MatroidToJson(mat).dump(), "mem"));
  EXPECT_EQ(RankTable(back), RankTable(mat));
  EXPECT_EQ(back.full_rank, mat.full_rank);
}

TEST(IoTest, InstanceRegenerates) {
  const AuctionInstance inst = GenHardGeneral({.m = 9}, 5);
  const Json j = InstanceToJson(inst);
  EXPECT_EQ(j["schema"], "instance");
  const AuctionInstance back = InstanceFromJson(j);
  EXPECT_EQ(back.interests, inst.interests);
  EXPECT_EQ(back.special_sets, inst.special_sets);
  const AuctionInstance again =
      RegenerateInstance("hard-general", Json{{"m", 9}}, 5);
  EXPECT_EQ(again.interests, inst.interests);
  EXPECT_THROW(RegenerateInstance("nope", Json::object(), 1), Error);
}

TEST(IoTest, ParseErrorsNameThePosition) {
  try {
    ParseJson("{\n  \"a\": [1,\n}", "cfg.json");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInput);
    EXPECT_EQ(std::string(e.what()).rfind("cfg.json:3:", 0), 0u) << e.what();
  }
}

TEST(IoTest, FilesRoundTrip) {
  const std::string path = ::testing::TempDir() + "mechlab_io_test.json";
  WriteTextFile(path, "{\"x\": 1}\n");
  EXPECT_EQ(ReadJsonFile(path)["x"], 1);
  std::remove(path.c_str());
  EXPECT_THROW(ReadJsonFile(path), Error);
}

TEST(IoTest, BundleJson) {
  const Bundle b(5, {0, 3});
  EXPECT_EQ(BundleFromJson(5, BundleToJson(b)), b);
  EXPECT_THROW(BundleFromJson(3, Json{0, 4}), Error);
}

}  // namespace
}  // namespace mechlab
