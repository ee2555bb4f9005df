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

#ifndef MECHLAB_EXPERIMENT_H_
#define MECHLAB_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mechlab/io.h"
#include "mechlab/rat.h"

namespace mechlab {

// Metric names a result row may carry, in CSV column order.
const std::vector<std::string>& MetricCatalog();

struct ExperimentConfig {
  std::string name;
  // One of "fptas-sweep", "crossing", "hard-general", "hard-matroid".
  std::string pipeline;
  Json params = Json::object();
  std::vector<std::uint64_t> seeds;
  std::string csv_path;      // Empty: not written.
  std::string summary_path;  // Empty: not written.
  std::int64_t budget_ms = -1;
};

// Seeds are a list or {"from", "to"} (inclusive). Throws an input error on
// schema problems, including an empty seed list.
ExperimentConfig ConfigFromJson(const Json& j);

struct ResultRow {
  std::string experiment;
  std::uint64_t seed = 0;
  std::string label;  // Case within the seed, e.g. "n=2 eps=1/2".
  // Metric name -> exact decimal or p/q string.
  std::map<std::string, std::string> metrics;
};

struct MetricSummary {
  std::string metric;
  std::size_t count = 0;
  Rat min, mean, max;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;  // Seed order, then case order.
  bool complete = true;
  std::size_t seeds_done = 0;
  std::vector<MetricSummary> summary;
  std::int64_t wall_ms = 0;
};

// Runs the pipeline over every seed. MECHLAB_THREADS caps the workers;
// rows do not depend on it. Seeds left when the time budget runs out are
// skipped and the result is marked incomplete.
ExperimentResult RunExperiment(const ExperimentConfig& config,
                               int threads = 0);

// Columns: experiment, seed, case, then the catalog metrics present.
std::string RowsToCsv(const std::vector<ResultRow>& rows);
Json SummaryToJson(const ExperimentConfig& config,
                   const ExperimentResult& result);

// Human-readable report of a JSON artifact; throws an input error for an
// unknown schema.
std::string Describe(const Json& j);

}  // namespace mechlab

#endif  // MECHLAB_EXPERIMENT_H_
