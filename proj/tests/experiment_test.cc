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

#include "mechlab/experiment.h"

#include <gtest/gtest.h>

#include <sstream>

#include "mechlab/errors.h"
#include "mechlab/fixtures.h"

namespace mechlab {
namespace {

ExperimentConfig Config(const std::string& pipeline, Json params, int from,
                        int to) {
  return ConfigFromJson(Json{{"name", "t-" + pipeline},
                             {"pipeline", pipeline},
                             {"params", std::move(params)},
                             {"seeds", Json::object({{"from", from}, {"to", to}})}});
}

int Lines(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

TEST(ConfigTest, SeedForms) {
  const ExperimentConfig range = Config("crossing", Json::object(), 3, 6);
  EXPECT_EQ(range.seeds, (std::vector<std::uint64_t>{3, 4, 5, 6}));
  const ExperimentConfig list = ConfigFromJson(
      Json{{"name", "x"}, {"pipeline", "crossing"}, {"seeds", {9, 2}},
           {"output", {{"csv", "a.csv"}}}, {"budget_ms", 50}});
  EXPECT_EQ(list.seeds, (std::vector<std::uint64_t>{9, 2}));
  EXPECT_EQ(list.csv_path, "a.csv");
  EXPECT_EQ(list.budget_ms, 50);
}

TEST(ConfigTest, Errors) {
  auto kind_of = [](const Json& j) {
    try {
      ConfigFromJson(j);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kParameter;
  };
  EXPECT_EQ(kind_of(Json{{"name", "x"}, {"pipeline", "crossing"},
                         {"seeds", Json::array()}}),
            ErrorKind::kInput);
  EXPECT_EQ(kind_of(Json{{"pipeline", "crossing"}, {"seeds", {1}}}),
            ErrorKind::kInput);
  EXPECT_EQ(kind_of(Json{{"name", "x"}, {"pipeline", "crossing"},
                         {"seeds", {-1}}}),
            ErrorKind::kInput);
  EXPECT_EQ(kind_of(Json{{"schema", "matroid"}, {"name", "x"},
                         {"pipeline", "crossing"}, {"seeds", {1}}}),
            ErrorKind::kInput);
}

TEST(RunTest, RowsIndependentOfThreads) {
  const ExperimentConfig c =
      Config("crossing", Json{{"max_m", 200}}, 1, 12);
  const ExperimentResult one = RunExperiment(c, 1);
  const ExperimentResult three = RunExperiment(c, 3);
  EXPECT_TRUE(one.complete);
  EXPECT_EQ(one.seeds_done, 12u);
  EXPECT_EQ(RowsToCsv(one.rows), RowsToCsv(three.rows));
  for (std::size_t k = 0; k < one.rows.size(); ++k) {
    EXPECT_EQ(one.rows[k].seed, k + 1);
    EXPECT_EQ(one.rows[k].metrics.at("violations"), "0");
  }
}

TEST(RunTest, SweepProducesOneRowPerCase) {
  const ExperimentConfig c = Config(
      "fptas-sweep", Json{{"m", 12}, {"max_marginal", 64}}, 1, 100);
  const ExperimentResult r = RunExperiment(c);
  ASSERT_EQ(r.rows.size(), 600u);
  const std::string csv = RowsToCsv(r.rows);
  EXPECT_EQ(Lines(csv), 601);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("experiment,seed,case,", 0), 0u);
  for (const ResultRow& row : r.rows) {
    EXPECT_EQ(row.metrics.at("violations"), "0") << row.label;
  }
  const Json s = SummaryToJson(c, r);
  EXPECT_EQ(s["schema"], "summary");
  EXPECT_EQ(s["rows"], 600);
  EXPECT_TRUE(s["complete"].get<bool>());
  const Json& ratio = s["metrics"]["ratio"];
  EXPECT_EQ(ratio["count"], 600);
  EXPECT_LE(Rat::Parse(ratio["max"].get<std::string>()), Rat(1));
  EXPECT_GE(Rat::Parse(ratio["min"].get<std::string>()), Rat(1, 2));
}

TEST(RunTest, ExhaustedBudgetIsIncomplete) {
  ExperimentConfig c = Config("crossing", Json::object(), 1, 50);
  c.budget_ms = 0;
  const ExperimentResult r = RunExperiment(c, 1);
  EXPECT_FALSE(r.complete);
  EXPECT_LT(r.seeds_done, 50u);
  EXPECT_EQ(r.rows.size(), r.seeds_done);
}

TEST(RunTest, UnknownPipelineAndBadParams) {
  EXPECT_THROW(RunExperiment(Config("nope", Json::object(), 1, 1)), Error);
  EXPECT_THROW(
      RunExperiment(Config("crossing", Json{{"max_m", "big"}}, 1, 1)), Error);
}

TEST(RunTest, HardGeneralMetrics) {
  const ExperimentResult r = RunExperiment(
      Config("hard-general", Json{{"m", 16}}, 1, 3), 1);
  ASSERT_EQ(r.rows.size(), 3u);
  for (const ResultRow& row : r.rows) {
    EXPECT_TRUE(row.metrics.count("welfare"));
    EXPECT_TRUE(row.metrics.count("opt"));
    EXPECT_GE(std::stoi(row.metrics.at("opt")), 3);
  }
}

TEST(DescribeTest, KnownAndUnknownSchemas) {
  const Mechanism m = SealedBidSecondPrice(3);
  EXPECT_NE(Describe(MechanismToJson(m)).find("mechanism"), std::string::npos);
  EXPECT_NE(Describe(ValuationToJson(SingleItem(2, 3))).find("valuation"),
            std::string::npos);
  try {
    Describe(Json{{"schema", "teapot"}});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInput);
  }
  EXPECT_THROW(Describe(Json{{"hello", 1}}), Error);
}

}  // namespace
}  // namespace mechlab
