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

// mechlab: command-line front end for the verifiers, generators and
// experiment runner.

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mechlab/equilibrium.h"
#include "mechlab/errors.h"
#include "mechlab/experiment.h"
#include "mechlab/fixtures.h"
#include "mechlab/gs.h"
#include "mechlab/io.h"
#include "mechlab/matroid.h"
#include "mechlab/multiunit.h"
#include "mechlab/protocol_tree.h"
#include "mechlab/reduction.h"
#include "mechlab/rng.h"
#include "mechlab/separation.h"
#include "mechlab/simultaneous.h"

namespace mechlab {
namespace {

constexpr int kOk = 0;
constexpr int kViolation = 2;

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::int64_t budget_ms = -1;
  std::string mode;
};

[[noreturn]] void BadInput(const std::string& what) {
  throw Error(ErrorKind::kInput, what);
}

// Writes to --out when given, else to stdout.
void Emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    WriteTextFile(g.out, text.back() == '\n' ? text : text + "\n");
  }
}

Rat ParseRat(const std::string& text) { return Rat::Parse(text); }

Rat RatOf(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) return Rat::Parse(j.get<std::string>());
  BadInput("expected an integer or a \"p/q\" string");
}

Json RatList(const std::vector<Rat>& values) {
  Json out = Json::array();
  for (const Rat& v : values) out.push_back(v.ToString());
  return out;
}

// --- Mechanism sources ------------------------------------------------------

const std::vector<std::string>& FixtureNames() {
  static const std::vector<std::string> kNames = {
      "sealed-bid",  "serial",       "padded-sealed-bid", "ascending",
      "figure-one",  "non-semisim",  "posted-price",      "mu-vcg",
      "range-vcg",   "separation",   "reduction-toy"};
  return kNames;
}

Mechanism FixtureByName(const std::string& name, std::uint64_t seed) {
  if (name == "sealed-bid") return SealedBidSecondPrice(4);
  if (name == "serial") return SerialSecondPrice({10}, 12, 10);
  if (name == "padded-sealed-bid") return PaddedSealedBid(4);
  if (name == "ascending") return AscendingAuction(2, 3);
  if (name == "figure-one") return FigureOneTree();
  if (name == "non-semisim") return NonSemiSimultaneousTree();
  if (name == "posted-price") return PostedPrice(2, {0, 1, 2, 3});
  if (name == "mu-vcg") {
    const auto dom = MarginalLevelDomain(6, {1, 2, 3});
    return MultiUnitDirect("multi-unit-vcg", dom, dom, VcgMechanism);
  }
  if (name == "range-vcg") {
    std::vector<std::vector<MarginalVector>> domains(2);
    Rng rng("cli-range-vcg", seed, "domains");
    for (auto& d : domains) {
      for (int k = 0; k < 3; ++k) d.push_back(RandomDecreasing(8, 16, rng));
    }
    return RangeVcgDirect(domains, 2);
  }
  if (name == "separation") {
    return SeparationProtocol(4, SeparationDomain(4, 3, 8, {1, 2, 3}, seed));
  }
  if (name == "reduction-toy") return ToyWeightedMechanism().mech;
  std::string known;
  for (const std::string& n : FixtureNames()) known += " " + n;
  BadInput("unknown fixture '" + name + "'; known:" + known);
}

Mechanism LoadMechanism(const std::string& file, const std::string& fixture,
                        std::uint64_t seed) {
  if (!file.empty() && !fixture.empty()) {
    BadInput("give either a mechanism file or --fixture, not both");
  }
  if (!fixture.empty()) return FixtureByName(fixture, seed);
  if (file.empty()) BadInput("missing mechanism file (or --fixture)");
  return MechanismFromJson(ReadJsonFile(file));
}

// --- verify ------------------------------------------------------------------

Json CertificateJson(const ProtocolTree& tree, const ViolationCertificate& c) {
  return {{"player", c.player},
          {"valuation", c.valuation},
          {"node", c.node},
          {"others", c.others},
          {"honest_message", c.honest_message},
          {"deviation_message", c.deviation_message},
          {"honest_profit", c.honest_profit.ToString()},
          {"deviating_profit", c.deviating_profit.ToString()},
          {"summary", DescribeCertificate(tree, c)}};
}

int VerifyDs(const Globals& g, const Mechanism& mech) {
  DominanceOptions opts;
  if (g.mode.empty() || g.mode == "stitch") {
    opts.method = DominanceMethod::kStitch;
  } else if (g.mode == "oracle") {
    opts.method = DominanceMethod::kOracle;
  } else if (g.mode == "both") {
    opts.method = DominanceMethod::kBoth;
  } else {
    BadInput("--mode for verify ds: stitch, oracle or both");
  }
  const DominanceReport r =
      CheckDominant(mech.tree, mech.strategies, mech.domains, opts);
  Json out = {{"check", "dominant-strategy"},
              {"mechanism", mech.name},
              {"ok", r.ok}};
  if (opts.method == DominanceMethod::kBoth) out["methods_agree"] = r.agree;
  if (!r.certificates.empty()) {
    out["certificate"] = CertificateJson(mech.tree, r.certificates.front());
  }
  Emit(g, out.dump(2));
  return r.ok && r.agree ? kOk : kViolation;
}

int VerifyExpost(const Globals& g, const Mechanism& mech) {
  const SocialChoiceTable table =
      TableFromTree(mech.tree, mech.strategies, mech.domains);
  const ExpostReport r = CheckExpost(table);
  Json out = {{"check", "ex-post"}, {"mechanism", mech.name}, {"ok", r.ok}};
  if (!r.ok) {
    out["certificate"] = {{"player", r.player},
                          {"valuation", r.valuation},
                          {"misreport", r.misreport},
                          {"profile", r.profile},
                          {"honest_profit", r.honest_profit.ToString()},
                          {"deviating_profit", r.deviating_profit.ToString()}};
  }
  Emit(g, out.dump(2));
  return r.ok ? kOk : kViolation;
}

int VerifySemisim(const Globals& g, const Mechanism& mech) {
  const MinimizeResult mz = Minimize(mech.tree, mech.strategies, mech.domains);
  const SemiSimultaneousReport r =
      CheckSemiSimultaneous(mz.tree, mz.strategies, mech.domains);
  Json out = {{"check", "semi-simultaneous"},
              {"mechanism", mech.name},
              {"nodes", mech.tree.size()},
              {"minimized_nodes", mz.tree.size()},
              {"ok", r.ok}};
  Json special = Json::array();
  for (const SemiSimultaneousEntry& e : r.special) {
    special.push_back(
        {{"player", e.player}, {"vertex", e.vertex}, {"special", e.special}});
  }
  out["vertices"] = special;
  if (!r.ok) {
    out["witness"] = {{"player", r.player},     {"vertex", r.vertex},
                      {"others", r.others},     {"leaf_a", r.leaf_a},
                      {"leaf_b", r.leaf_b},     {"subtree_a", r.subtree_a},
                      {"subtree_b", r.subtree_b}};
  }
  Emit(g, out.dump(2));
  return r.ok ? kOk : kViolation;
}

int VerifyPayments(const Globals& g, const Mechanism& mech) {
  const ProtocolTree& t = mech.tree;
  std::size_t checked = 0;
  Json out = {{"check", "payment-uniqueness"}, {"mechanism", mech.name}};
  for (NodeId u = 0; u < t.size(); ++u) {
    if (t.node(u).is_leaf()) continue;
    for (int player : t.node(u).speakers) {
      for (const Profile& others : OtherProfiles(t, u, player)) {
        const InducedTree it = MakeInducedTree(t, u, player, others);
        const PaymentUniquenessReport r = CheckPaymentUniqueness(it);
        ++checked;
        if (!r.ok) {
          out["ok"] = false;
          out["induced_trees"] = checked;
          out["certificate"] = {{"node", u},
                                {"player", player},
                                {"others", others},
                                {"bundle", r.bundle.ToString()},
                                {"leaf_a", r.leaf_a},
                                {"price_a", r.price_a.ToString()},
                                {"leaf_b", r.leaf_b},
                                {"price_b", r.price_b.ToString()}};
          Emit(g, out.dump(2));
          return kViolation;
        }
      }
    }
  }
  out["ok"] = true;
  out["induced_trees"] = checked;
  Emit(g, out.dump(2));
  return kOk;
}

// --- mu ----------------------------------------------------------------------

struct MuInput {
  int m = 0;
  std::vector<MarginalVector> players;
};

// {m, players: [{marginals: [...]}]}, or random decreasing marginals.
MuInput LoadMu(const std::string& file, int m, int n, int max_marginal,
               std::uint64_t seed) {
  MuInput in;
  if (!file.empty()) {
    const Json j = ReadJsonFile(file);
    if (!j.contains("m") || !j.contains("players")) {
      BadInput(file + ": expected {m, players: [{marginals}]}");
    }
    in.m = j.at("m").get<int>();
    for (const Json& p : j.at("players")) {
      std::vector<Rat> marg;
      for (const Json& x : p.at("marginals")) marg.push_back(RatOf(x));
      if (static_cast<int>(marg.size()) != in.m) {
        BadInput(file + ": every player needs m marginals");
      }
      in.players.push_back(MarginalVector::FromMarginals(marg));
    }
  } else {
    Rng rng("cli-mu", seed, "players");
    in.m = m;
    for (int i = 0; i < n; ++i) {
      in.players.push_back(RandomDecreasing(m, max_marginal, rng));
    }
  }
  if (in.players.empty()) BadInput("no players");
  for (const MarginalVector& v : in.players) {
    if (!v.HasDecreasingMarginals()) {
      BadInput("marginals must be non-increasing");
    }
  }
  return in;
}

int MuOpt(const Globals& g, const MuInput& in) {
  const MuAllocation opt = BruteOptimum(in.players);
  Json out = {{"m", in.m},
              {"n", in.players.size()},
              {"units", opt.units},
              {"welfare", opt.welfare.ToString()}};
  if (in.players.size() == 2) {
    const CrossingResult c = CrossingOptimum(in.players[0], in.players[1]);
    const TwoPlayerPayments pay =
        VcgTwoPlayer(in.players[0], in.players[1], c.alice, c.bob);
    out["search"] = {{"units", {c.alice, c.bob}},
                     {"welfare", c.welfare.ToString()},
                     {"queries", c.queries},
                     {"payments", {pay.alice.ToString(), pay.bob.ToString()}}};
    Emit(g, out.dump(2));
    return c.welfare == opt.welfare ? kOk : kViolation;
  }
  Emit(g, out.dump(2));
  return kOk;
}

int MuFptas(const Globals& g, const MuInput& in,
            const std::vector<std::string>& epsilons) {
  const MuAllocation opt = BruteOptimum(in.players);
  const int n = static_cast<int>(in.players.size());
  std::ostringstream csv;
  csv << "m,n,eps,welfare,opt,ratio,queries\n";
  bool ok = true;
  for (const std::string& e : epsilons) {
    const Rat eps = ParseRat(e);
    const FptasResult r = FptasAllocate(in.players, {eps, std::nullopt});
    const Rat ratio = opt.welfare.sign() == 0
                          ? Rat(1)
                          : r.allocation.welfare / opt.welfare;
    const long bound = static_cast<long>(n) * (2 * in.m / std::max(r.q, 1) + 2);
    if (ratio < Rat(1) - eps || static_cast<long>(r.queries) > bound) {
      ok = false;
    }
    csv << in.m << "," << n << "," << eps << "," << r.allocation.welfare
        << "," << opt.welfare << "," << ratio << "," << r.queries << "\n";
  }
  Emit(g, csv.str());
  return ok ? kOk : kViolation;
}

int MuFamilies(const Globals& g, const std::string& family, int m,
               const std::string& gamma_text) {
  const Rat gamma = ParseRat(gamma_text);
  std::vector<MarginalVector> members;
  if (family == "nd") {
    members = EnumerateNdFamily(m, gamma);
  } else if (family == "d") {
    members = EnumerateDFamily(m, gamma);
  } else {
    BadInput("--family must be nd or d");
  }
  std::size_t decreasing = 0, budget = 0;
  Json list = Json::array();
  for (const MarginalVector& v : members) {
    decreasing += v.HasDecreasingMarginals();
    budget += WithinBitBudget(v);
    list.push_back(RatList(v.values()));
  }
  Json out = {{"family", family},
              {"m", m},
              {"gamma", gamma.ToString()},
              {"members", members.size()},
              {"decreasing_marginals", decreasing},
              {"within_bit_budget", budget}};
  if (!g.out.empty()) out["values"] = list;
  Emit(g, out.dump(g.out.empty() ? 2 : -1));
  return decreasing == members.size() && budget == members.size() ? kOk
                                                                  : kViolation;
}

// --- gs ----------------------------------------------------------------------

int GsCheck(const Globals& g, const std::string& file,
            const std::string& fixture) {
  Valuation v;
  std::string label;
  if (!fixture.empty()) {
    label = fixture;
    if (fixture == "additive") {
      v = Valuation::Additive({Rat(3), Rat(1), Rat(2), Rat(5)});
    } else if (fixture == "unit-demand") {
      v = UnitDemand({Rat(3), Rat(1), Rat(2), Rat(5)});
    } else if (fixture == "complements") {
      std::vector<Rat> t(4, Rat(0));
      t[3] = Rat(2);  // Only the pair is worth anything.
      v = Valuation::Table(2, t);
    } else {
      BadInput("--fixture for gs check: additive, unit-demand, complements");
    }
  } else {
    if (file.empty()) BadInput("missing valuation file (or --fixture)");
    label = file;
    v = ValuationFromJson(ReadJsonFile(file));
  }
  GsCheckOptions opts;
  opts.seed = g.seed;
  const GsReport r = IsGrossSubstitutes(v, opts);
  Json out = {{"valuation", label},
              {"m", v.m()},
              {"ok", r.ok},
              {"grid_ok", r.grid_ok},
              {"local_ok", r.local_ok},
              {"agree", r.agree},
              {"grid_exhaustive", r.grid_exhaustive},
              {"grid_points", r.grid_points}};
  if (!r.local_violation.empty()) out["local_violation"] = r.local_violation;
  if (r.witness) {
    out["witness"] = {{"prices", RatList(r.witness->p)},
                      {"raised", RatList(r.witness->p_raised)},
                      {"bundle", r.witness->s.ToString()}};
  }
  Emit(g, out.dump(2));
  return r.ok && r.agree ? kOk : kViolation;
}

Json AllocationJson(const Allocation& a) {
  Json bundles = Json::array();
  for (const Bundle& b : a.bundles) bundles.push_back(b.ToString());
  return {{"bundles", bundles}, {"welfare", a.welfare.ToString()}};
}

int GsWdp(const Globals& g, const std::string& file, int m, int n) {
  std::vector<Valuation> vals;
  if (!file.empty()) {
    const Json j = ReadJsonFile(file);
    if (!j.contains("valuations")) BadInput(file + ": expected {valuations}");
    for (const Json& v : j.at("valuations")) {
      vals.push_back(ValuationFromJson(v));
    }
  } else {
    Rng rng("cli-gs-wdp", g.seed, "valuations");
    for (int i = 0; i < n; ++i) {
      vals.push_back(RandomOxsValuation(m, static_cast<int>(rng.Range(1, m)),
                                        6, rng.Next()));
    }
  }
  Json out = Json::object();
  const std::string mode = g.mode.empty() ? "brute" : g.mode;
  std::optional<Allocation> brute, asc;
  if (mode == "brute" || mode == "both") {
    brute = GsWelfareMax(vals, WdpMode::kBrute);
    out["brute"] = AllocationJson(*brute);
  }
  if (mode == "ascending" || mode == "both") {
    asc = GsWelfareMax(vals, WdpMode::kAscending);
    out["ascending"] = AllocationJson(*asc);
  }
  if (!brute && !asc) BadInput("--mode for gs wdp: brute, ascending or both");
  int code = kOk;
  if (brute && asc) {
    out["agree"] = brute->welfare == asc->welfare;
    if (brute->welfare != asc->welfare) code = kViolation;
  }
  Emit(g, out.dump(2));
  return code;
}

int GsFamilies(const Globals& g, int m, int bases) {
  const std::vector<GsFamilyMember> members =
      GsFamilySample(m, bases, g.seed);
  std::size_t ok = 0;
  Json failing = Json::array();
  for (const GsFamilyMember& f : members) {
    GsCheckOptions opts;
    opts.seed = g.seed;
    if (IsGrossSubstitutes(f.v, opts).ok) {
      ++ok;
    } else {
      failing.push_back(f.label);
    }
  }
  Json out = {{"m", m},
              {"members", members.size()},
              {"gross_substitutes", ok},
              {"failing", failing}};
  Emit(g, out.dump(2));
  return ok == members.size() ? kOk : kViolation;
}

// --- sim ---------------------------------------------------------------------

SimAlgorithm AlgorithmByName(const std::string& name, int m, int bits) {
  if (name == "silent") return SilentAlgorithm();
  if (name == "top-set") return TopSetFirstCome(m);
  if (name == "exact") return ExactReport(m);
  if (name == "truncated") return TruncatedReport(bits);
  if (name == "cheat") return SpecialCheat();
  BadInput("unknown algorithm '" + name +
           "'; known: silent top-set exact truncated cheat");
}

int SimGen(const Globals& g, const std::string& generator, int m, int t,
           bool desk) {
  AuctionInstance inst;
  if (generator == "hard-general") {
    HardGeneralParams p;
    if (m > 0) p.m = m;
    if (t > 0) p.t = t;
    inst = GenHardGeneral(p, g.seed);
  } else if (generator == "hard-matroid") {
    HardMatroidParams p = desk ? DeskMatroidParams() : HardMatroidParams();
    if (m > 0) p.m = m;
    if (t > 0) p.k = t;
    inst = GenHardMatroid(p, g.seed);
  } else {
    BadInput("--generator: hard-general or hard-matroid");
  }
  Emit(g, InstanceToJson(inst).dump(g.out.empty() ? 2 : -1));
  return kOk;
}

int SimRunCmd(const Globals& g, const std::string& file,
              const std::string& algorithm, int bits) {
  if (file.empty()) BadInput("missing instance file");
  const AuctionInstance inst = InstanceFromJson(ReadJsonFile(file));
  const SimRun run =
      RunSimultaneous(AlgorithmByName(algorithm, inst.m, bits), inst);
  const int chunk =
      inst.generator == "hard-matroid" ? std::stoi(inst.params.at("b")) : 0;
  const Rat specialized = Welfare(inst, SpecializedAllocation(inst, chunk));
  std::ostringstream csv;
  csv << "seed,welfare,opt,ratio,bits\n";
  csv << inst.seed << "," << run.welfare << "," << specialized << ","
      << (specialized.sign() == 0 ? Rat(1) : run.welfare / specialized) << ","
      << run.max_bits << "\n";
  Emit(g, csv.str());
  return kOk;
}

int SimStats(const Globals& g, const std::string& algorithm, int samples,
             int bits, int m, int group_size, int t, int set_size) {
  const GroupDistribution dist =
      MakeGroupDistribution(m, group_size, t, set_size, g.seed);
  SimAlgorithm alg;
  if (algorithm == "truncated") {
    alg = TruncatedReport(1, BudgetScope::kPerGroup, bits);
  } else if (algorithm == "cheat") {
    alg = SpecialCheat(BudgetScope::kPerGroup, bits);
  } else {
    BadInput("--algorithm for sim stats: truncated or cheat");
  }
  const FrequentStats s = FrequentMessageStats(alg, dist, samples, bits,
                                               g.seed);
  Json tuples = Json::array();
  for (const TupleStat& ts : s.tuples) {
    tuples.push_back({{"messages", ts.messages},
                      {"count", ts.count},
                      {"class", TupleClassName(ts.cls)},
                      {"biased", ts.biased},
                      {"special_posterior", ts.special_posterior.ToString()}});
  }
  Json out = {{"algorithm", alg.name},
              {"samples", s.samples},
              {"budget_bits", s.budget_bits},
              {"group_size", s.group_size},
              {"bound", s.bound},
              {"max_biased_frequent", s.max_biased_frequent},
              {"within_bound", s.within_bound},
              {"inconsistent", s.inconsistent},
              {"max_special_posterior", s.max_special_posterior.ToString()},
              {"flagged", s.flagged},
              {"tuples", tuples}};
  if (s.inconsistent) out["inconsistency"] = s.inconsistency;
  Emit(g, out.dump(2));
  return s.flagged ? kViolation : kOk;
}

int SimReduce(const Globals& g, int noise_a, int noise_b) {
  const WeightedMechanism wm = ToyWeightedMechanism(noise_a, noise_b);
  const std::vector<CriticalCandidate> cands = ScanCriticalWeights(wm);
  if (cands.empty()) {
    Emit(g, Json({{"critical_vertices", 0}}).dump(2));
    return kViolation;
  }
  const SimultaneousReduction red(wm, cands.front().vertex,
                                  cands.front().alpha);
  Json rows = Json::array();
  bool ok = true;
  for (const auto& p : AllProfiles(DomainSizes(wm.mech.domains))) {
    std::vector<Message> msgs;
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
      msgs.push_back(red.EncodeEntry(i, p[i]).bits);
    }
    const ReductionAllocation alloc = red.Allocate(msgs);
    const Outcome mech =
        Evaluate(wm.mech.tree, BehaviorsFor(wm.mech.strategies, p)).outcome;
    Json bundles = Json::array(), mech_bundles = Json::array();
    int holders = 0;
    for (std::size_t i = 0; i < alloc.bundles.size(); ++i) {
      bundles.push_back(alloc.bundles[i].ToString());
      mech_bundles.push_back(mech.allocation[i].ToString());
      const Bundle& special = wm.special_sets[wm.group_of[i]];
      if (!special.Empty() && special.IsSubsetOf(alloc.bundles[i])) ++holders;
    }
    if (holders > 1) ok = false;
    Json rejected = Json::array();
    for (const GrantDiagnostic& d : alloc.rejected) {
      rejected.push_back({{"player", d.player},
                          {"leaf", d.leaf},
                          {"profit", d.profit.ToString()},
                          {"reason", d.reason}});
    }
    rows.push_back({{"profile", p},
                    {"mechanism", mech_bundles},
                    {"reduction", bundles},
                    {"rejected", rejected}});
  }
  Json out = {{"vertex", red.vertex()},
              {"alpha", red.alpha_star().ToString()},
              {"noise", {noise_a, noise_b}},
              {"no_double_allocation", ok},
              {"profiles", rows}};
  Emit(g, out.dump(2));
  return ok ? kOk : kViolation;
}

int SimSep(const Globals& g, int m, int count, int max_value) {
  const SeparationF f(m);
  std::vector<int> keys;
  for (int k = 1; k <= count; ++k) keys.push_back(k);
  const Domains domains = SeparationDomain(m, count, max_value, keys, g.seed);
  const Mechanism mech = SeparationProtocol(m, domains);
  const int bits = mech.tree.MaxPathBits();
  const ExpostReport ex =
      CheckExpost(TableFromTree(mech.tree, mech.strategies, mech.domains));
  const DominanceReport ds =
      CheckDominant(mech.tree, mech.strategies, mech.domains);
  Json out = {{"m", m},
              {"nodes", mech.tree.size()},
              {"bits", bits},
              {"bit_bound", SeparationBitBound(m)},
              {"expost_ok", ex.ok},
              {"dominant_ok", ds.ok}};
  if (!ds.certificates.empty()) {
    out["dominance_certificate"] =
        DescribeCertificate(mech.tree, ds.certificates.front());
  }
  // Ex-post holds while dominance fails: the expected separation.
  const bool ok = ex.ok && !ds.ok && bits <= SeparationBitBound(m);
  Emit(g, out.dump(2));
  return ok ? kOk : kViolation;
}

// --- matroid -----------------------------------------------------------------

int MatroidGen(const Globals& g, int ground, int k, int s, int b) {
  RankProfileOptions opts;
  opts.ground_size = ground;
  opts.k = k;
  opts.s = s;
  opts.b = b;
  const RankProfileResult r = MakeRankProfileMatroid(opts, g.seed);
  Json j = MatroidToJson(r.matroid);
  Emit(g, j.dump(g.out.empty() ? 2 : -1));
  return kOk;
}

int MatroidVerify(const Globals& g, const std::string& file, int samples) {
  if (file.empty()) BadInput("missing matroid file");
  const RankProfileMatroid mat = MatroidFromJson(ReadJsonFile(file));
  const int n = mat.family.ground_size;
  std::optional<SampledMode> mode;
  const std::string how =
      g.mode.empty() ? (n <= 12 ? "exhaustive" : "sampled") : g.mode;
  if (how == "sampled") {
    mode = SampledMode{samples, g.seed};
  } else if (how != "exhaustive") {
    BadInput("--mode for matroid verify: exhaustive or sampled");
  }
  const AxiomReport r = VerifyMatroidAxioms(
      [&](const Bundle& x) { return Rank(mat, x); }, n, mode);
  Json out = {{"ground_size", n}, {"mode", how}, {"ok", r.ok}};
  if (!r.ok) out["violation"] = r.ToString();
  Emit(g, out.dump(2));
  return r.ok ? kOk : kViolation;
}

// --- run / describe ----------------------------------------------------------

int RunCmd(const Globals& g, const std::string& file, int threads) {
  if (file.empty()) BadInput("missing experiment config");
  ExperimentConfig c = ConfigFromJson(ReadJsonFile(file));
  if (g.budget_ms >= 0) c.budget_ms = g.budget_ms;
  if (!g.out.empty()) c.csv_path = g.out;
  const ExperimentResult r = RunExperiment(c, threads);
  const std::string csv = RowsToCsv(r.rows);
  if (c.csv_path.empty()) {
    std::cout << csv;
  } else {
    WriteTextFile(c.csv_path, csv);
  }
  const Json summary = SummaryToJson(c, r);
  if (!c.summary_path.empty()) WriteTextFile(c.summary_path, summary.dump(2));
  std::cerr << c.name << ": " << r.rows.size() << " rows, " << r.seeds_done
            << "/" << c.seeds.size() << " seeds"
            << (r.complete ? "" : " (incomplete: budget exhausted)") << "\n";
  if (!r.complete) return ExitCodeFor(ErrorKind::kBudget);
  for (const MetricSummary& s : r.summary) {
    if (s.metric == "violations" && s.max.sign() > 0) return kViolation;
  }
  return kOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"mechlab: mechanism verification and auction experiments"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out, "Write the result to this file");
  app.add_option("--budget-ms", g.budget_ms, "Wall-clock budget (run)");
  app.add_option("--mode", g.mode, "Sub-command specific mode");

  std::function<int()> action;
  std::string file, fixture;

  auto* verify = app.add_subcommand("verify", "Check a mechanism");
  verify->require_subcommand(1);
  for (const char* what : {"ds", "expost", "semisim", "payments"}) {
    auto* sub = verify->add_subcommand(what);
    sub->add_option("mechanism", file, "Mechanism JSON");
    sub->add_option("--fixture", fixture, "Built-in mechanism");
    const std::string w = what;
    sub->callback([&, w] {
      action = [&, w] {
        const Mechanism mech = LoadMechanism(file, fixture, g.seed);
        if (w == "ds") return VerifyDs(g, mech);
        if (w == "expost") return VerifyExpost(g, mech);
        if (w == "semisim") return VerifySemisim(g, mech);
        return VerifyPayments(g, mech);
      };
    });
  }
  auto* export_mech = verify->add_subcommand(
      "export", "Write a built-in mechanism as JSON");
  export_mech->add_option("--fixture", fixture)->required();
  export_mech->callback([&] {
    action = [&] {
      Emit(g, MechanismToJson(FixtureByName(fixture, g.seed)).dump());
      return kOk;
    };
  });

  auto* mu = app.add_subcommand("mu", "Multi-unit auctions");
  mu->require_subcommand(1);
  int mu_m = 16, mu_n = 2, mu_max = 1024;
  std::vector<std::string> epsilons = {"1/2", "1/4", "1/8"};
  std::string family = "nd", gamma = "1";
  std::string price, value_m;
  int fam_m = 5, rec_m = 0;
  for (const char* what : {"opt", "fptas"}) {
    auto* sub = mu->add_subcommand(what);
    sub->add_option("instance", file, "Instance JSON {m, players}");
    sub->add_option("--m", mu_m, "Units when generating");
    sub->add_option("--n", mu_n, "Bidders when generating");
    sub->add_option("--max-marginal", mu_max, "Largest generated marginal");
    if (std::string(what) == "fptas") {
      sub->add_option("--epsilon", epsilons, "Approximation parameters");
    }
    const std::string w = what;
    sub->callback([&, w] {
      action = [&, w] {
        const MuInput in = LoadMu(file, mu_m, mu_n, mu_max, g.seed);
        return w == "opt" ? MuOpt(g, in) : MuFptas(g, in, epsilons);
      };
    });
  }
  auto* fam = mu->add_subcommand("families", "Enumerate a hard family");
  fam->add_option("--family", family, "nd or d");
  fam->add_option("--m", fam_m, "Units");
  fam->add_option("--gamma", gamma, "Weight");
  fam->callback(
      [&] { action = [&] { return MuFamilies(g, family, fam_m, gamma); }; });
  auto* rec = mu->add_subcommand("reconstruct",
                                 "Recover v(x) from a price and v(m)");
  rec->add_option("--price", price)->required();
  rec->add_option("--value-m", value_m)->required();
  rec->add_option("--m", rec_m)->required();
  rec->callback([&] {
    action = [&] {
      const Rat v = ReconstructValue(ParseRat(price), ParseRat(value_m), rec_m);
      Emit(g, v.ToString());
      return kOk;
    };
  });

  auto* gs = app.add_subcommand("gs", "Gross-substitutes valuations");
  gs->require_subcommand(1);
  int gs_m = 4, gs_n = 3, gs_bases = 4, fam_gs_m = 5;
  auto* gs_check = gs->add_subcommand("check");
  gs_check->add_option("valuation", file, "Valuation JSON");
  gs_check->add_option("--fixture", fixture,
                       "additive, unit-demand or complements");
  gs_check->callback(
      [&] { action = [&] { return GsCheck(g, file, fixture); }; });
  auto* gs_wdp = gs->add_subcommand("wdp", "Welfare maximization");
  gs_wdp->add_option("instance", file, "JSON {valuations: [...]}");
  gs_wdp->add_option("--m", gs_m);
  gs_wdp->add_option("--n", gs_n);
  gs_wdp->callback([&] { action = [&] { return GsWdp(g, file, gs_m, gs_n); }; });
  auto* gs_fam = gs->add_subcommand("families", "Check family members");
  gs_fam->add_option("--m", fam_gs_m);
  gs_fam->add_option("--bases", gs_bases);
  gs_fam->callback(
      [&] { action = [&] { return GsFamilies(g, fam_gs_m, gs_bases); }; });

  auto* sim = app.add_subcommand("sim", "Simultaneous auctions");
  sim->require_subcommand(1);
  std::string generator = "hard-general", algorithm = "top-set";
  int sim_m = 0, sim_t = 0, bits = 4, samples = 10000, group_size = 4,
      set_size = 4, noise_a = 2, noise_b = 1, count = 3, max_value = 8,
      stats_m = 8, stats_t = 8, sep_m = 4;
  std::string stats_algorithm = "truncated";
  bool desk = false;
  auto* gen = sim->add_subcommand("gen", "Generate an instance");
  gen->add_option("--generator", generator);
  gen->add_option("--m", sim_m);
  gen->add_option("--t", sim_t, "Family size");
  gen->add_flag("--desk", desk, "Use the desk-scale matroid overrides");
  gen->callback([&] {
    action = [&] { return SimGen(g, generator, sim_m, sim_t, desk); };
  });
  auto* run = sim->add_subcommand("run", "Run an algorithm on an instance");
  run->add_option("instance", file)->required();
  run->add_option("--algorithm", algorithm);
  run->add_option("--bits", bits);
  run->callback(
      [&] { action = [&] { return SimRunCmd(g, file, algorithm, bits); }; });
  auto* stats = sim->add_subcommand("stats", "Frequent-message statistics");
  stats->add_option("--algorithm", stats_algorithm);
  stats->add_option("--samples", samples);
  stats->add_option("--bits", bits);
  stats->add_option("--m", stats_m);
  stats->add_option("--group-size", group_size);
  stats->add_option("--t", stats_t);
  stats->add_option("--set-size", set_size);
  stats->callback([&] {
    action = [&] {
      return SimStats(g, stats_algorithm, samples, bits, stats_m, group_size,
                      stats_t, set_size);
    };
  });
  auto* reduce = sim->add_subcommand("reduce", "Toy simultaneous reduction");
  reduce->add_option("--noise-a", noise_a);
  reduce->add_option("--noise-b", noise_b);
  reduce->callback(
      [&] { action = [&] { return SimReduce(g, noise_a, noise_b); }; });
  auto* sep = sim->add_subcommand("sep", "Separation construction");
  sep->add_option("--m", sep_m);
  sep->add_option("--count", count, "Valuations per player");
  sep->add_option("--max-value", max_value);
  sep->callback(
      [&] { action = [&] { return SimSep(g, sep_m, count, max_value); }; });

  auto* matroid = app.add_subcommand("matroid", "Rank-profile matroids");
  matroid->require_subcommand(1);
  int ground = 12, mk = 4, ms = 4, mb = 2, msamples = 2000;
  auto* mgen = matroid->add_subcommand("gen");
  mgen->add_option("--ground", ground);
  mgen->add_option("--k", mk);
  mgen->add_option("--s", ms);
  mgen->add_option("--b", mb);
  mgen->callback(
      [&] { action = [&] { return MatroidGen(g, ground, mk, ms, mb); }; });
  auto* mver = matroid->add_subcommand("verify");
  mver->add_option("matroid", file)->required();
  mver->add_option("--samples", msamples);
  mver->callback(
      [&] { action = [&] { return MatroidVerify(g, file, msamples); }; });

  int threads = 0;
  auto* runx = app.add_subcommand("run", "Run an experiment config");
  runx->add_option("config", file)->required();
  runx->add_option("--threads", threads, "Worker count (MECHLAB_THREADS caps)");
  runx->callback([&] { action = [&] { return RunCmd(g, file, threads); }; });

  auto* describe = app.add_subcommand("describe", "Summarize a JSON artifact");
  describe->add_option("file", file)->required();
  describe->callback([&] {
    action = [&] {
      Emit(g, Describe(ReadJsonFile(file)));
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ExitCodeFor(ErrorKind::kInput);
  }
  try {
    return action ? action() : kOk;
  } catch (const Error& e) {
    std::cerr << "mechlab: " << ErrorKindName(e.kind()) << ": " << e.what()
              << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "mechlab: " << e.what() << "\n";
    return ExitCodeFor(ErrorKind::kInput);
  }
}

}  // namespace
}  // namespace mechlab

int main(int argc, char** argv) { return mechlab::Main(argc, argv); }
