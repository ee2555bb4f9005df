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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "mechlab/errors.h"
#include "mechlab/multiunit.h"
#include "mechlab/rng.h"
#include "mechlab/simultaneous.h"

namespace mechlab {
namespace {

[[noreturn]] void BadConfig(const std::string& what) {
  throw Error(ErrorKind::kInput, "experiment config: " + what);
}

int IntParam(const Json& params, const char* key, int dflt) {
  if (!params.contains(key)) return dflt;
  const Json& v = params.at(key);
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    try {
      return std::stoi(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  BadConfig(std::string("'") + key + "' must be an integer");
}

Rat RatOf(const Json& v, const std::string& what) {
  if (v.is_number_integer()) return Rat(v.get<long>());
  if (v.is_string()) return Rat::Parse(v.get<std::string>());
  BadConfig(what + " must be an integer or a \"p/q\" string");
}

template <typename T>
std::vector<T> ListParam(const Json& params, const char* key,
                         std::vector<T> dflt,
                         const std::function<T(const Json&)>& conv) {
  if (!params.contains(key)) return dflt;
  const Json& v = params.at(key);
  if (!v.is_array() || v.empty()) {
    BadConfig(std::string("'") + key + "' must be a non-empty list");
  }
  std::vector<T> out;
  for (const Json& e : v) out.push_back(conv(e));
  return out;
}

int CeilLog2(long x) {
  int k = 0;
  while ((1L << k) < x) ++k;
  return k;
}

using SeedRows = std::vector<ResultRow>;

ResultRow Row(const ExperimentConfig& c, std::uint64_t seed,
              std::string label) {
  ResultRow r;
  r.experiment = c.name;
  r.seed = seed;
  r.label = std::move(label);
  return r;
}

SeedRows FptasSweep(const ExperimentConfig& c, std::uint64_t seed) {
  const int m = IntParam(c.params, "m", 60);
  const int max_marginal = IntParam(c.params, "max_marginal", 1024);
  const std::vector<int> ns = ListParam<int>(
      c.params, "n", {2, 3}, [](const Json& e) {
        if (!e.is_number_integer()) BadConfig("'n' entries must be integers");
        return e.get<int>();
      });
  const std::vector<Rat> epsilons = ListParam<Rat>(
      c.params, "epsilon", {Rat(1, 2), Rat(1, 4), Rat(1, 8)},
      [](const Json& e) { return RatOf(e, "epsilon"); });
  SeedRows rows;
  for (int n : ns) {
    Rng rng(c.name, seed, "fptas n=" + std::to_string(n));
    std::vector<MarginalVector> vals;
    for (int i = 0; i < n; ++i) {
      vals.push_back(RandomDecreasing(m, max_marginal, rng));
    }
    const MuAllocation opt = BruteOptimum(vals);
    for (const Rat& eps : epsilons) {
      const FptasResult res = FptasAllocate(vals, {eps, std::nullopt});
      ResultRow r = Row(c, seed,
                        "n=" + std::to_string(n) + " eps=" + eps.ToString());
      const Rat& w = res.allocation.welfare;
      const Rat ratio = opt.welfare.sign() == 0 ? Rat(1) : w / opt.welfare;
      const int q = std::max(res.q, 1);
      const long query_bound = static_cast<long>(n) * (2 * m / q + 2);
      int violations = 0;
      if (ratio < Rat(1) - eps) ++violations;
      if (static_cast<long>(res.queries) > query_bound) ++violations;
      r.metrics = {{"welfare", w.ToString()},
                   {"opt", opt.welfare.ToString()},
                   {"ratio", ratio.ToString()},
                   {"queries", std::to_string(res.queries)},
                   {"violations", std::to_string(violations)}};
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

SeedRows Crossing(const ExperimentConfig& c, std::uint64_t seed) {
  const int max_m = IntParam(c.params, "max_m", 1024);
  const int max_marginal = IntParam(c.params, "max_marginal", 1024);
  if (max_m < 1) BadConfig("'max_m' must be positive");
  Rng rng(c.name, seed, "crossing");
  const int m = static_cast<int>(rng.Range(1, max_m));
  const MarginalVector va = RandomDecreasing(m, max_marginal, rng);
  const MarginalVector vb = RandomDecreasing(m, max_marginal, rng);
  const CrossingResult res = CrossingOptimum(va, vb);
  const MuAllocation opt = BruteOptimum({va, vb});
  const long query_bound = 4L * CeilLog2(m) + 8;
  int violations = 0;
  if (res.welfare != opt.welfare) ++violations;
  if (static_cast<long>(res.queries) > query_bound) ++violations;
  ResultRow r = Row(c, seed, "m=" + std::to_string(m));
  r.metrics = {{"welfare", res.welfare.ToString()},
               {"opt", opt.welfare.ToString()},
               {"queries", std::to_string(res.queries)},
               {"violations", std::to_string(violations)}};
  return {r};
}

SeedRows HardInstance(const ExperimentConfig& c, std::uint64_t seed) {
  const bool matroid = c.pipeline == "hard-matroid";
  const AuctionInstance inst =
      RegenerateInstance(c.pipeline, c.params, seed);
  const int chunk = IntParam(c.params, "chunk",
                             matroid ? std::stoi(inst.params.at("b")) : 0);
  const std::vector<Bundle> alloc = SpecializedAllocation(inst, chunk);
  CheckFeasible(inst, alloc);
  const Rat welfare = Welfare(inst, alloc);
  const SimRun run = RunSimultaneous(TopSetFirstCome(inst.m), inst);
  ResultRow r = Row(c, seed, c.pipeline);
  r.metrics["welfare"] = welfare.ToString();
  r.metrics["bits"] = std::to_string(run.max_bits);
  int violations = 0;
  if (matroid) {
    if (welfare != Rat(inst.m)) ++violations;
  } else {
    if (welfare < Rat(inst.num_groups())) ++violations;
    const WelfareDecomposition d = DecomposeWelfare(inst);
    if (!d.holds) ++violations;
    r.metrics["opt"] = std::to_string(d.opt);
    r.metrics["ratio"] =
        d.opt == 0 ? std::string("1") : (welfare / Rat(d.opt)).ToString();
  }
  r.metrics["violations"] = std::to_string(violations);
  return {r};
}

std::function<SeedRows(const ExperimentConfig&, std::uint64_t)> Pipeline(
    const std::string& name) {
  if (name == "fptas-sweep") return FptasSweep;
  if (name == "crossing") return Crossing;
  if (name == "hard-general" || name == "hard-matroid") return HardInstance;
  BadConfig("unknown pipeline '" + name + "'");
}

int ThreadCap(int requested) {
  int n = requested > 0 ? requested : 1;
  if (const char* env = std::getenv("MECHLAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = requested > 0 ? std::min(requested, cap) : cap;
  }
  return std::max(n, 1);
}

bool IsSeed(const Json& v) {
  return v.is_number_unsigned() ||
         (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::string YesNo(bool b) { return b ? "yes" : "no"; }

std::string DescribeMechanism(const Json& j) {
  const Mechanism mech = MechanismFromJson(j);
  const ProtocolTree& t = mech.tree;
  std::ostringstream os;
  os << "mechanism " << mech.name << "\n"
     << "  players: " << t.num_players() << ", items: " << t.num_items()
     << "\n"
     << "  nodes: " << t.size() << ", leaves: " << t.NumLeaves()
     << ", internal: " << t.size() - t.NumLeaves() << "\n"
     << "  bit depth: " << t.MaxPathBits() << "\n"
     << "  flags: normalized=" << YesNo(t.normalized)
     << " no_negative_transfers=" << YesNo(t.no_negative_transfers) << "\n"
     << "  domain sizes:";
  for (int s : DomainSizes(mech.domains)) os << " " << s;
  os << "\n  structure check: ok\n";
  return os.str();
}

std::string DescribeInstance(const Json& j) {
  const AuctionInstance inst = InstanceFromJson(j);
  std::ostringstream os;
  os << "instance " << inst.generator << " seed " << inst.seed << "\n"
     << "  bidders: " << inst.num_bidders() << ", items: " << inst.m
     << ", groups: " << inst.num_groups() << "\n"
     << "  params:";
  for (const auto& [k, v] : inst.params) os << " " << k << "=" << v;
  os << "\n  special bidders:";
  for (int s : inst.special_bidder) os << " " << s;
  os << "\n  shared block size: " << inst.shared.Size() << "\n";
  for (const std::string& n : inst.notes) os << "  note: " << n << "\n";
  bool disjoint = true;
  for (int a = 0; a < inst.num_groups(); ++a) {
    for (int b = a + 1; b < inst.num_groups(); ++b) {
      if (!inst.special_sets[a].Intersect(inst.special_sets[b]).Empty()) {
        disjoint = false;
      }
    }
    if (!inst.special_sets[a].Intersect(inst.shared).Empty()) {
      disjoint = false;
    }
  }
  os << "  private blocks disjoint: " << YesNo(disjoint) << "\n"
     << "  regenerated structure: matches\n";
  return os.str();
}

std::string DescribeMatroid(const Json& j) {
  const RankProfileMatroid mat = MatroidFromJson(j);
  const int g = mat.family.ground_size;
  std::ostringstream os;
  os << "rank-profile matroid\n"
     << "  ground size: " << g << ", sets: " << mat.family.sets.size()
     << ", full rank: " << mat.full_rank.size() << ", b: " << mat.b
     << ", d: " << mat.d << "\n"
     << "  max pairwise intersection: "
     << MaxPairwiseIntersection(mat.family) << "\n";
  const RankFn rank = [&](const Bundle& s) { return Rank(mat, s); };
  std::optional<SampledMode> mode;
  if (g > 12) mode = SampledMode{2000, 1};
  const AxiomReport rep = VerifyMatroidAxioms(rank, g, mode);
  os << "  axioms (" << (mode ? "sampled" : "exhaustive")
     << "): " << (rep.ok ? "ok" : rep.ToString()) << "\n";
  return os.str();
}

std::string DescribeValuation(const Json& j) {
  const Valuation v = ValuationFromJson(j);
  std::ostringstream os;
  os << "valuation " << v.Label() << " over " << v.m() << " items\n"
     << "  v(all) = " << v.Value(Bundle::Full(v.m())) << "\n";
  std::optional<SampledMode> mode;
  if (v.m() > 20) mode = SampledMode{2000, 1};
  const MonotoneReport rep = CheckMonotoneNormalized(v, mode);
  os << "  monotone and normalized: "
     << (rep.ok ? std::string("yes") : "no (" + rep.violation + ")") << "\n";
  return os.str();
}

std::string DescribeExperiment(const Json& j) {
  const ExperimentConfig c = ConfigFromJson(j);
  Pipeline(c.pipeline);
  std::ostringstream os;
  os << "experiment " << c.name << "\n"
     << "  pipeline: " << c.pipeline << "\n"
     << "  seeds: " << c.seeds.size() << " (" << c.seeds.front() << " .. "
     << c.seeds.back() << ")\n"
     << "  params: " << c.params.dump() << "\n";
  if (!c.csv_path.empty()) os << "  csv: " << c.csv_path << "\n";
  if (!c.summary_path.empty()) os << "  summary: " << c.summary_path << "\n";
  if (c.budget_ms >= 0) os << "  budget: " << c.budget_ms << " ms\n";
  return os.str();
}

}  // namespace

const std::vector<std::string>& MetricCatalog() {
  static const std::vector<std::string> kCatalog = {
      "welfare", "opt", "ratio", "queries", "bits", "violations"};
  return kCatalog;
}

ExperimentConfig ConfigFromJson(const Json& j) {
  if (!j.is_object()) BadConfig("expected an object");
  if (j.contains("schema") && j.at("schema") != "experiment") {
    BadConfig("schema must be \"experiment\"");
  }
  ExperimentConfig c;
  auto str = [&](const char* key, bool required) -> std::string {
    if (!j.contains(key)) {
      if (required) BadConfig(std::string("missing '") + key + "'");
      return "";
    }
    if (!j.at(key).is_string()) {
      BadConfig(std::string("'") + key + "' must be a string");
    }
    return j.at(key).get<std::string>();
  };
  c.name = str("name", true);
  c.pipeline = str("pipeline", true);
  Pipeline(c.pipeline);
  if (j.contains("params")) {
    if (!j.at("params").is_object()) BadConfig("'params' must be an object");
    c.params = j.at("params");
  }
  if (!j.contains("seeds")) BadConfig("missing 'seeds'");
  const Json& s = j.at("seeds");
  if (s.is_array()) {
    for (const Json& e : s) {
      if (!IsSeed(e)) BadConfig("seeds must be non-negative integers");
      c.seeds.push_back(e.get<std::uint64_t>());
    }
  } else if (s.is_object() && s.contains("from") && s.contains("to") &&
             IsSeed(s.at("from")) && IsSeed(s.at("to"))) {
    const auto from = s.at("from").get<std::uint64_t>();
    const auto to = s.at("to").get<std::uint64_t>();
    for (std::uint64_t x = from; x <= to && x >= from; ++x) {
      c.seeds.push_back(x);
      if (x == to) break;
    }
  } else {
    BadConfig("'seeds' must be a list or {\"from\", \"to\"}");
  }
  if (c.seeds.empty()) BadConfig("seed list is empty");
  if (j.contains("output")) {
    const Json& o = j.at("output");
    if (!o.is_object()) BadConfig("'output' must be an object");
    if (o.contains("csv")) c.csv_path = o.at("csv").get<std::string>();
    if (o.contains("summary")) {
      c.summary_path = o.at("summary").get<std::string>();
    }
  }
  if (j.contains("budget_ms")) {
    if (!j.at("budget_ms").is_number_integer()) {
      BadConfig("'budget_ms' must be an integer");
    }
    c.budget_ms = j.at("budget_ms").get<std::int64_t>();
  }
  return c;
}

ExperimentResult RunExperiment(const ExperimentConfig& config, int threads) {
  if (config.seeds.empty()) BadConfig("seed list is empty");
  const auto pipeline = Pipeline(config.pipeline);
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                                 start)
        .count();
  };

  const std::size_t n = config.seeds.size();
  std::vector<std::optional<SeedRows>> per_seed(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> out_of_time{false};
  std::mutex error_mu;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      if (config.budget_ms >= 0 && elapsed_ms() > config.budget_ms) {
        out_of_time = true;
        return;
      }
      const std::size_t k = next++;
      if (k >= n) return;
      {
        std::lock_guard<std::mutex> lock(error_mu);
        if (error) return;
      }
      try {
        per_seed[k] = pipeline(config, config.seeds[k]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  const int workers =
      std::min<int>(ThreadCap(threads), static_cast<int>(n));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  ExperimentResult result;
  for (std::size_t k = 0; k < n; ++k) {
    if (!per_seed[k]) continue;
    ++result.seeds_done;
    for (ResultRow& r : *per_seed[k]) result.rows.push_back(std::move(r));
  }
  result.complete = result.seeds_done == n;

  for (const std::string& metric : MetricCatalog()) {
    MetricSummary s;
    s.metric = metric;
    Rat total;
    for (const ResultRow& r : result.rows) {
      auto it = r.metrics.find(metric);
      if (it == r.metrics.end()) continue;
      const Rat v = Rat::Parse(it->second);
      if (s.count == 0 || v < s.min) s.min = v;
      if (s.count == 0 || v > s.max) s.max = v;
      total += v;
      ++s.count;
    }
    if (s.count == 0) continue;
    s.mean = total / Rat(static_cast<long>(s.count));
    result.summary.push_back(s);
  }
  result.wall_ms = elapsed_ms();
  return result;
}

std::string RowsToCsv(const std::vector<ResultRow>& rows) {
  std::set<std::string> present;
  for (const ResultRow& r : rows) {
    for (const auto& [k, v] : r.metrics) present.insert(k);
  }
  std::vector<std::string> cols;
  for (const std::string& m : MetricCatalog()) {
    if (present.count(m)) cols.push_back(m);
  }
  std::ostringstream os;
  os << "experiment,seed,case";
  for (const std::string& c : cols) os << "," << c;
  os << "\n";
  for (const ResultRow& r : rows) {
    os << r.experiment << "," << r.seed << "," << r.label;
    for (const std::string& c : cols) {
      auto it = r.metrics.find(c);
      os << "," << (it == r.metrics.end() ? "" : it->second);
    }
    os << "\n";
  }
  return os.str();
}

Json SummaryToJson(const ExperimentConfig& config,
                   const ExperimentResult& result) {
  Json out;
  out["schema"] = "summary";
  out["experiment"] = config.name;
  out["pipeline"] = config.pipeline;
  out["complete"] = result.complete;
  out["seeds"] = config.seeds.size();
  out["seeds_done"] = result.seeds_done;
  out["rows"] = result.rows.size();
  Json metrics = Json::object();
  for (const MetricSummary& s : result.summary) {
    metrics[s.metric] = {{"count", s.count},
                         {"min", s.min.ToString()},
                         {"mean", s.mean.ToString()},
                         {"max", s.max.ToString()}};
  }
  out["metrics"] = metrics;
  out["wall_ms"] = result.wall_ms;
  return out;
}

std::string Describe(const Json& j) {
  if (!j.is_object()) {
    throw Error(ErrorKind::kInput, "describe: expected a JSON object");
  }
  std::string schema;
  if (j.contains("schema") && j.at("schema").is_string()) {
    schema = j.at("schema").get<std::string>();
  } else if (j.contains("kind") && j.contains("payload")) {
    schema = "valuation";
  } else if (j.contains("pipeline")) {
    schema = "experiment";
  }
  if (schema == "mechanism") return DescribeMechanism(j);
  if (schema == "instance") return DescribeInstance(j);
  if (schema == "matroid") return DescribeMatroid(j);
  if (schema == "valuation") return DescribeValuation(j);
  if (schema == "experiment") return DescribeExperiment(j);
  throw Error(ErrorKind::kInput,
              "describe: unknown schema '" + schema + "'");
}

}  // namespace mechlab
