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

#include "mechlab/simultaneous.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "mechlab/errors.h"
#include "mechlab/rng.h"

namespace mechlab {
namespace {

// Nearest integer to m^e, with a note when m^e is not integral.
int RoundedPower(int m, double e, const std::string& what,
                 std::vector<std::string>* notes) {
  const double exact = std::pow(static_cast<double>(m), e);
  const int rounded = static_cast<int>(std::lround(exact));
  if (std::fabs(exact - rounded) > 1e-9) {
    std::ostringstream os;
    os << what << ": m^" << e << " = " << exact << " rounded to " << rounded;
    notes->push_back(os.str());
  }
  return rounded;
}

Valuation InterestValuation(int m, std::vector<Bundle> sets) {
  return Valuation::Function(
      ValuationKind::kParametric, m,
      [sets = std::move(sets)](const Bundle& s) {
        for (const Bundle& a : sets) {
          if (a.IsSubsetOf(s)) return Rat(1);
        }
        return Rat(0);
      },
      "interest-sets");
}

Bundle ItemsOf(int m, const std::vector<int>& pool,
               const std::vector<int>& picks) {
  Bundle b(m);
  for (int p : picks) b.Insert(pool.at(p));
  return b;
}

std::string MaskBits(const Bundle& b) {
  std::string out(b.m(), '0');
  for (int item : b.Items()) out[item] = '1';
  return out;
}

Bundle BitsMask(int m, std::string_view bits) {
  Bundle b(m);
  for (int i = 0; i < m && i < static_cast<int>(bits.size()); ++i) {
    if (bits[i] == '1') b.Insert(i);
  }
  return b;
}

std::vector<Bundle> EmptyBundles(const PublicInfo& info) {
  return std::vector<Bundle>(info.num_bidders, Bundle(info.m));
}

// Depth-first packing over bidders; each bidder takes at most one of its
// sets. Scores are (satisfied, specials holding their block).
struct Packer {
  const AuctionInstance& inst;
  bool skip_blocks;
  std::vector<int> order;  // Bidders with at least one set.
  std::pair<int, int> best{-1, -1};
  std::vector<int> choice, best_choice;

  bool IsBlock(int bidder, const Bundle& set) const {
    const int g = inst.group_of[bidder];
    return inst.special_bidder[g] == bidder && set == inst.special_sets[g];
  }

  void Run(std::size_t pos, Bundle used, int sat, int specials) {
    const int remaining = static_cast<int>(order.size() - pos);
    if (sat + remaining < best.first) return;
    if (pos == order.size()) {
      if (std::make_pair(sat, specials) > best) {
        best = {sat, specials};
        best_choice = choice;
      }
      return;
    }
    const int bidder = order[pos];
    const auto& sets = inst.interests[bidder];
    for (std::size_t k = 0; k < sets.size(); ++k) {
      if (sets[k].Intersects(used)) continue;
      const bool block = IsBlock(bidder, sets[k]);
      if (skip_blocks && block) continue;
      choice[pos] = static_cast<int>(k);
      Run(pos + 1, used.Union(sets[k]), sat + 1, specials + (block ? 1 : 0));
    }
    choice[pos] = -1;
    Run(pos + 1, used, sat, specials);
  }
};

PackingResult Pack(const AuctionInstance& inst, bool skip_blocks) {
  Packer p{inst, skip_blocks, {}, {-1, -1}, {}, {}};
  for (int i = 0; i < inst.num_bidders(); ++i) {
    if (!inst.interests.at(i).empty()) p.order.push_back(i);
  }
  p.choice.assign(p.order.size(), -1);
  p.Run(0, Bundle(inst.m), 0, 0);
  PackingResult r;
  r.welfare = p.best.first;
  r.specials_with_block = p.best.second;
  r.bundles.assign(inst.num_bidders(), Bundle(inst.m));
  for (std::size_t pos = 0; pos < p.order.size(); ++pos) {
    if (p.best_choice[pos] >= 0) {
      r.bundles[p.order[pos]] = inst.interests[p.order[pos]][p.best_choice[pos]];
    }
  }
  return r;
}

struct GroupDraw {
  std::vector<int> owner;  // Per family set.
  int block = 0;           // Family index playing the private block.
};

GroupDraw DrawGroup(const GroupDistribution& dist, std::uint64_t seed,
                    std::uint64_t draw) {
  Rng rng("group-distribution", seed, "draw-" + std::to_string(draw));
  GroupDraw d;
  for (std::size_t k = 0; k < dist.family.size(); ++k) {
    d.owner.push_back(static_cast<int>(rng.Uniform(dist.group_size)));
  }
  d.block = static_cast<int>(rng.Uniform(dist.family.size()));
  return d;
}

}  // namespace

AuctionInstance GenHardGeneral(const HardGeneralParams& params,
                               std::uint64_t seed) {
  AuctionInstance inst;
  inst.generator = "hard-general";
  inst.seed = seed;
  inst.m = params.m;
  const double eps = params.epsilon.ToDouble();
  if (params.m < 2 || !(eps > 0 && eps < 1) || params.t < 2) {
    throw Error(ErrorKind::kParameter,
                "hard-general needs m >= 2, 0 < epsilon < 1, t >= 2");
  }
  const int s = RoundedPower(params.m, eps, "block size", &inst.notes);
  const int ell =
      RoundedPower(params.m, 1 - eps, "group count + 1", &inst.notes) - 1;
  const int group_size = params.group_size > 0 ? params.group_size : params.m;
  if (s < 1 || ell < 1 || s * (ell + 1) != params.m) {
    std::ostringstream os;
    os << "hard-general: block size " << s << " and " << ell
       << " groups do not partition m = " << params.m;
    for (const std::string& n : inst.notes) os << "; " << n;
    throw Error(ErrorKind::kParameter, os.str());
  }
  if (params.group_size > 0) {
    inst.notes.push_back("group size overridden to " +
                         std::to_string(group_size));
  }
  inst.params = {{"m", std::to_string(params.m)},
                 {"epsilon", params.epsilon.ToString()},
                 {"t", std::to_string(params.t)},
                 {"block_size", std::to_string(s)},
                 {"groups", std::to_string(ell)},
                 {"group_size", std::to_string(group_size)}};

  Rng rng("hard-general", seed, "structure");
  std::vector<int> perm(params.m);
  for (int i = 0; i < params.m; ++i) perm[i] = i;
  rng.Shuffle(perm);
  inst.shared = Bundle(params.m);
  for (int i = ell * s; i < params.m; ++i) inst.shared.Insert(perm[i]);
  const int n = ell * group_size;
  inst.interests.assign(n, {});
  for (int j = 0; j < ell; ++j) {
    Bundle block(params.m);
    for (int i = j * s; i < (j + 1) * s; ++i) block.Insert(perm[i]);
    inst.special_sets.push_back(block);
    const std::vector<int> pool = block.Union(inst.shared).Items();
    std::vector<Bundle> family{block};
    while (static_cast<int>(family.size()) < params.t) {
      Bundle a = ItemsOf(params.m, pool, rng.Sample(pool.size(), s));
      if (a != block) family.push_back(a);
    }
    int special = -1;
    for (std::size_t k = 0; k < family.size(); ++k) {
      const int owner =
          j * group_size + static_cast<int>(rng.Uniform(group_size));
      inst.interests[owner].push_back(family[k]);
      if (k == 0) special = owner;
    }
    inst.special_bidder.push_back(special);
    for (int g = 0; g < group_size; ++g) inst.group_of.push_back(j);
  }
  for (int i = 0; i < n; ++i) {
    inst.valuations.push_back(InterestValuation(params.m, inst.interests[i]));
  }
  return inst;
}

HardMatroidParams DeskMatroidParams() {
  HardMatroidParams p;
  p.m = 256;
  p.group_size = 2;
  p.block_size = 4;
  p.k = 8;
  p.b = 2;
  return p;
}

AuctionInstance GenHardMatroid(const HardMatroidParams& params,
                               std::uint64_t seed) {
  AuctionInstance inst;
  inst.generator = "hard-matroid";
  inst.seed = seed;
  inst.m = params.m;
  const int m = params.m;
  if (m < 16) throw Error(ErrorKind::kParameter, "hard-matroid needs m >= 16");
  auto pick = [&](const std::optional<int>& o, int dflt,
                  const std::string& what) {
    if (o.has_value()) {
      inst.notes.push_back(what + " overridden to " + std::to_string(*o) +
                           " (formula gives " + std::to_string(dflt) + ")");
      return *o;
    }
    return dflt;
  };
  const int m34 = RoundedPower(m, 0.75, "m^3/4", &inst.notes);
  const int m12 = RoundedPower(m, 0.5, "m^1/2", &inst.notes);
  const int group_size = pick(params.group_size,
                              RoundedPower(m, 0.125, "group size", &inst.notes),
                              "group size");
  const int a = pick(params.block_size,
                     RoundedPower(m, 0.25, "block size", &inst.notes),
                     "block size");
  const int ell = m34 - m12 + 1;
  const int shared = m - ell * a;
  const int ground = a + shared;
  const double k_formula = std::pow(2.0, std::pow(m, 1.0 / 16));
  const int k = pick(params.k, std::max(8, static_cast<int>(std::lround(k_formula))),
                     "family size k");
  const int b = pick(params.b, DefaultLowRankBudget(k), "low rank b");
  if (ell < 1 || shared < 1 || group_size < 2 || k < 2) {
    throw Error(ErrorKind::kParameter,
                "hard-matroid: parameters leave no shared block or groups");
  }
  if (!(b < a)) {
    std::ostringstream os;
    os << "hard-matroid: low rank b = " << b << " must be below block size "
       << a;
    for (const std::string& n : inst.notes) os << "; " << n;
    throw Error(ErrorKind::kParameter, os.str());
  }
  inst.params = {{"m", std::to_string(m)},
                 {"groups", std::to_string(ell)},
                 {"group_size", std::to_string(group_size)},
                 {"block_size", std::to_string(a)},
                 {"shared_size", std::to_string(shared)},
                 {"ground_size", std::to_string(ground)},
                 {"k", std::to_string(k)},
                 {"b", std::to_string(b)},
                 {"d", std::to_string(a)},
                 {"samples", std::to_string(params.samples)},
                 {"retry_cap", std::to_string(params.retry_cap)}};

  Rng rng("hard-matroid", seed, "structure");
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i;
  rng.Shuffle(perm);
  inst.shared = Bundle(m);
  for (int i = ell * a; i < m; ++i) inst.shared.Insert(perm[i]);
  const std::vector<int> shared_items = inst.shared.Items();

  RankProfileOptions opts;
  opts.ground_size = ground;
  opts.k = k;
  opts.s = a;
  opts.b = b;
  opts.d = a;
  opts.require_near_disjoint = true;
  opts.retry_cap = params.retry_cap;
  opts.samples = params.samples;

  const int n = ell * group_size;
  inst.interests.assign(n, {});
  inst.valuations.resize(n);
  for (int j = 0; j < ell; ++j) {
    Bundle block(m);
    for (int i = j * a; i < (j + 1) * a; ++i) block.Insert(perm[i]);
    inst.special_sets.push_back(block);
    for (int g = 0; g < group_size; ++g) inst.group_of.push_back(j);
    const std::uint64_t group_seed = Mix64(seed * 1000003u + j);
    bool built = false;
    for (int attempt = 0; attempt < params.retry_cap && !built; ++attempt) {
      // The family alone; full-rank sets are assigned per bidder below.
      RankProfileResult base = MakeRankProfileMatroid(
          opts, group_seed + attempt * 7919u, std::vector<int>{});
      const SetFamily& family = base.matroid.family;
      Rng grng("hard-matroid", group_seed, "group-" + std::to_string(attempt));
      const int hidden = static_cast<int>(grng.Uniform(k));
      // Embedding: the hidden set onto the block, the rest onto the shared
      // block.
      std::vector<int> embedding(ground, -1);
      std::vector<int> block_items = block.Items();
      grng.Shuffle(block_items);
      std::vector<int> rest_items = shared_items;
      grng.Shuffle(rest_items);
      const std::vector<int> hidden_elems = family.sets[hidden].Items();
      for (std::size_t e = 0; e < hidden_elems.size(); ++e) {
        embedding[hidden_elems[e]] = block_items[e];
      }
      std::size_t next = 0;
      for (int e = 0; e < ground; ++e) {
        if (embedding[e] < 0) embedding[e] = rest_items[next++];
      }
      std::vector<std::vector<int>> held(group_size);
      std::vector<int> owner(k);
      for (int idx = 0; idx < k; ++idx) {
        owner[idx] = static_cast<int>(grng.Uniform(group_size));
        held[owner[idx]].push_back(idx);
      }
      bool ok = true;
      std::vector<RankProfileMatroid> mats;
      for (int g = 0; g < group_size && ok; ++g) {
        RankProfileMatroid mat{family, held[g], b, a};
        const AxiomReport report = VerifyMatroidAxioms(
            [&](const Bundle& s) { return Rank(mat, s); }, ground,
            SampledMode{params.samples, group_seed + g});
        ok = report.ok;
        mats.push_back(std::move(mat));
      }
      if (!ok) continue;
      for (int g = 0; g < group_size; ++g) {
        const int bidder = j * group_size + g;
        for (int idx : held[g]) {
          Bundle items(m);
          for (int e : family.sets[idx].Items()) items.Insert(embedding[e]);
          inst.interests[bidder].push_back(items);
        }
        inst.valuations[bidder] = MatroidRankValuation(mats[g], m, embedding);
      }
      inst.special_bidder.push_back(j * group_size + owner[hidden]);
      built = true;
    }
    if (!built) {
      throw Error(ErrorKind::kGeneration,
                  "hard-matroid: group " + std::to_string(j) +
                      " failed axiom verification after " +
                      std::to_string(params.retry_cap) + " attempts");
    }
  }
  return inst;
}

std::vector<Bundle> SpecializedAllocation(const AuctionInstance& inst,
                                          int chunk) {
  std::vector<Bundle> bundles(inst.num_bidders(), Bundle(inst.m));
  for (int j = 0; j < inst.num_groups(); ++j) {
    bundles[inst.special_bidder[j]] = inst.special_sets[j];
  }
  if (chunk <= 0) return bundles;
  const std::vector<int> items = inst.shared.Items();
  std::size_t next = 0;
  for (int i = 0; i < inst.num_bidders() && next < items.size(); ++i) {
    if (inst.special_bidder[inst.group_of[i]] == i) continue;
    for (int c = 0; c < chunk && next < items.size(); ++c) {
      bundles[i].Insert(items[next++]);
    }
  }
  if (next < items.size()) {
    throw Error(ErrorKind::kInfeasible,
                "too few non-special bidders for the shared block");
  }
  return bundles;
}

void CheckFeasible(const AuctionInstance& inst,
                   const std::vector<Bundle>& bundles) {
  if (static_cast<int>(bundles.size()) != inst.num_bidders()) {
    throw Error(ErrorKind::kInfeasible, "allocation has " +
                                            std::to_string(bundles.size()) +
                                            " bundles for " +
                                            std::to_string(inst.num_bidders()) +
                                            " bidders");
  }
  Bundle used(inst.m);
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    if (bundles[i].m() != inst.m) {
      throw Error(ErrorKind::kInfeasible,
                  "bundle of bidder " + std::to_string(i) +
                      " is over a different item set");
    }
    if (bundles[i].Intersects(used)) {
      throw Error(ErrorKind::kInfeasible,
                  "bundle of bidder " + std::to_string(i) +
                      " overlaps an earlier bundle");
    }
    used = used.Union(bundles[i]);
  }
}

Rat Welfare(const AuctionInstance& inst, const std::vector<Bundle>& bundles) {
  CheckFeasible(inst, bundles);
  Rat total;
  for (int i = 0; i < inst.num_bidders(); ++i) {
    if (!bundles[i].Empty()) total += inst.valuations[i].Value(bundles[i]);
  }
  return total;
}

PackingResult MaxPacking(const AuctionInstance& inst) {
  return Pack(inst, false);
}

WelfareDecomposition DecomposeWelfare(const AuctionInstance& inst) {
  WelfareDecomposition d;
  const PackingResult best = Pack(inst, false);
  d.opt = best.welfare;
  d.specials_with_block = best.specials_with_block;
  d.other_sets = Pack(inst, true).welfare;
  d.holds = d.opt <= 1 + d.specials_with_block;
  return d;
}

std::vector<BidderView> BidderViews(const AuctionInstance& inst) {
  std::vector<BidderView> views;
  for (int i = 0; i < inst.num_bidders(); ++i) {
    BidderView v;
    v.player = i;
    v.group = inst.group_of[i];
    v.m = inst.m;
    v.valuation = &inst.valuations[i];
    v.interests = &inst.interests[i];
    v.is_special = inst.special_bidder[v.group] == i;
    views.push_back(v);
  }
  return views;
}

SimRun RunSimultaneous(const SimAlgorithm& alg, const AuctionInstance& inst) {
  SimRun run;
  std::map<int, int> group_bits;
  for (const BidderView& view : BidderViews(inst)) {
    Message msg = alg.message(view);
    for (char c : msg) {
      if (c != '0' && c != '1') {
        throw Error(ErrorKind::kInput, "player " + std::to_string(view.player) +
                                           " sent a non-binary message");
      }
    }
    const int bits = static_cast<int>(msg.size());
    run.max_bits = std::max(run.max_bits, bits);
    if (alg.budget_bits >= 0) {
      if (alg.scope == BudgetScope::kPerPlayer && bits > alg.budget_bits) {
        throw Error(ErrorKind::kBudget,
                    "player " + std::to_string(view.player) + " sent " +
                        std::to_string(bits) + " bits, budget " +
                        std::to_string(alg.budget_bits));
      }
      if (alg.scope == BudgetScope::kPerGroup &&
          (group_bits[view.group] += bits) > alg.budget_bits) {
        throw Error(ErrorKind::kBudget,
                    "group " + std::to_string(view.group) +
                        " exceeded its budget of " +
                        std::to_string(alg.budget_bits) + " bits at player " +
                        std::to_string(view.player));
      }
    }
    run.messages.push_back(std::move(msg));
  }
  const PublicInfo info{inst.m, inst.num_bidders(), inst.group_of};
  run.bundles = alg.allocate(run.messages, info);
  run.welfare = Welfare(inst, run.bundles);
  return run;
}

SimAlgorithm SilentAlgorithm() {
  SimAlgorithm a;
  a.name = "silent";
  a.budget_bits = 0;
  a.message = [](const BidderView&) { return Message(); };
  a.allocate = [](const std::vector<Message>&, const PublicInfo& info) {
    return EmptyBundles(info);
  };
  return a;
}

SimAlgorithm TopSetFirstCome(int m) {
  SimAlgorithm a;
  a.name = "top-set-first-come";
  a.budget_bits = m;
  a.message = [](const BidderView& v) {
    if (v.interests->empty()) return Message();
    return MaskBits(v.interests->front());
  };
  a.allocate = [](const std::vector<Message>& msgs, const PublicInfo& info) {
    std::vector<Bundle> out = EmptyBundles(info);
    Bundle used(info.m);
    for (std::size_t i = 0; i < msgs.size(); ++i) {
      if (msgs[i].empty()) continue;
      const Bundle want = BitsMask(info.m, msgs[i]);
      if (want.Intersects(used)) continue;
      out[i] = want;
      used = used.Union(want);
    }
    return out;
  };
  return a;
}

SimAlgorithm TruncatedReport(int bits, BudgetScope scope, int budget) {
  SimAlgorithm a;
  a.name = "truncated-report-" + std::to_string(bits);
  a.budget_bits = budget >= 0 ? budget : bits;
  a.scope = scope;
  a.message = [bits](const BidderView& v) {
    Bundle all(v.m);
    for (const Bundle& s : *v.interests) all = all.Union(s);
    return MaskBits(all).substr(0, std::min(bits, v.m));
  };
  a.allocate = [](const std::vector<Message>&, const PublicInfo& info) {
    return EmptyBundles(info);
  };
  return a;
}

SimAlgorithm ExactReport(int m) {
  SimAlgorithm a;
  a.name = "exact-report";
  a.message = [](const BidderView& v) {
    Message out;
    for (const Bundle& s : *v.interests) out += MaskBits(s);
    return out;
  };
  a.allocate = [m](const std::vector<Message>& msgs, const PublicInfo& info) {
    // Rebuild a bare instance from the reports and pack it.
    AuctionInstance shadow;
    shadow.m = info.m;
    shadow.group_of.assign(info.num_bidders, 0);
    shadow.special_sets.push_back(Bundle(info.m));
    shadow.special_bidder.push_back(-1);
    for (const Message& msg : msgs) {
      std::vector<Bundle> sets;
      for (std::size_t pos = 0; pos + m <= msg.size(); pos += m) {
        sets.push_back(BitsMask(info.m, std::string_view(msg).substr(pos, m)));
      }
      shadow.interests.push_back(std::move(sets));
      shadow.valuations.emplace_back();
    }
    return Pack(shadow, false).bundles;
  };
  return a;
}

SimAlgorithm SpecialCheat(BudgetScope scope, int budget) {
  SimAlgorithm a;
  a.name = "special-cheat";
  a.budget_bits = budget >= 0 ? budget : 1;
  a.scope = scope;
  a.message = [](const BidderView& v) {
    return Message(v.is_special ? "1" : "0");
  };
  a.allocate = [](const std::vector<Message>&, const PublicInfo& info) {
    return EmptyBundles(info);
  };
  return a;
}

GroupDistribution MakeGroupDistribution(int m, int group_size, int t,
                                        int set_size, std::uint64_t seed) {
  if (set_size < 1 || set_size > m || group_size < 1 || t < 1) {
    throw Error(ErrorKind::kParameter, "group distribution parameters");
  }
  GroupDistribution d{m, group_size, {}};
  Rng rng("group-distribution", seed, "family");
  std::set<Bundle> seen;
  std::vector<int> pool(m);
  for (int i = 0; i < m; ++i) pool[i] = i;
  int guard = 0;
  while (static_cast<int>(d.family.size()) < t) {
    Bundle a = ItemsOf(m, pool, rng.Sample(m, set_size));
    if (seen.insert(a).second) d.family.push_back(a);
    if (++guard > 100000) {
      throw Error(ErrorKind::kParameter, "too few distinct sets for the family");
    }
  }
  return d;
}

AuctionInstance SampleGroup(const GroupDistribution& dist, std::uint64_t seed,
                            std::uint64_t draw) {
  const GroupDraw d = DrawGroup(dist, seed, draw);
  AuctionInstance inst;
  inst.generator = "group";
  inst.seed = seed;
  inst.m = dist.m;
  inst.group_of.assign(dist.group_size, 0);
  inst.interests.assign(dist.group_size, {});
  for (std::size_t k = 0; k < dist.family.size(); ++k) {
    inst.interests[d.owner[k]].push_back(dist.family[k]);
  }
  inst.special_sets.push_back(dist.family[d.block]);
  inst.special_bidder.push_back(d.owner[d.block]);
  inst.shared = Bundle::Full(dist.m).Minus(dist.family[d.block]);
  for (int i = 0; i < dist.group_size; ++i) {
    inst.valuations.push_back(InterestValuation(dist.m, inst.interests[i]));
  }
  return inst;
}

const char* TupleClassName(TupleClass c) {
  switch (c) {
    case TupleClass::kFrequent:
      return "frequent";
    case TupleClass::kBorderline:
      return "borderline";
    case TupleClass::kRare:
      return "rare";
  }
  return "?";
}

FrequentStats FrequentMessageStats(const SimAlgorithm& alg,
                                   const GroupDistribution& dist, int samples,
                                   int budget_bits, std::uint64_t seed) {
  if (samples < 1 || budget_bits < 0 || budget_bits > 20) {
    throw Error(ErrorKind::kParameter, "need samples >= 1 and 0 <= L <= 20");
  }
  const int g = dist.group_size;
  const int t = static_cast<int>(dist.family.size());
  FrequentStats out;
  out.samples = samples;
  out.budget_bits = budget_bits;
  out.group_size = g;
  out.bound = budget_bits * g;

  struct Acc {
    std::uint64_t count = 0;
    std::vector<std::vector<std::uint64_t>> member;  // [bidder][set]
    std::vector<std::uint64_t> special;              // [bidder]
  };
  std::map<std::vector<Message>, Acc> acc;
  // (bidder, interest sets) -> first message.
  std::map<std::pair<int, std::vector<Bundle>>, Message> seen;

  SimAlgorithm budgeted = alg;
  budgeted.budget_bits = budget_bits;
  budgeted.scope = BudgetScope::kPerGroup;
  budgeted.allocate = [](const std::vector<Message>&, const PublicInfo& info) {
    return EmptyBundles(info);
  };
  for (int s = 0; s < samples; ++s) {
    const GroupDraw d = DrawGroup(dist, seed, s);
    const AuctionInstance inst = SampleGroup(dist, seed, s);
    const SimRun run = RunSimultaneous(budgeted, inst);
    Acc& a = acc[run.messages];
    if (a.count == 0) {
      a.member.assign(g, std::vector<std::uint64_t>(t, 0));
      a.special.assign(g, 0);
    }
    ++a.count;
    for (int k = 0; k < t; ++k) ++a.member[d.owner[k]][k];
    ++a.special[d.owner[d.block]];
    for (int i = 0; i < g; ++i) {
      auto [it, fresh] =
          seen.emplace(std::make_pair(i, inst.interests[i]), run.messages[i]);
      if (!fresh && it->second != run.messages[i] && !out.inconsistent) {
        out.inconsistent = true;
        out.inconsistency = "bidder " + std::to_string(i) + " sent '" +
                            it->second + "' and '" + run.messages[i] +
                            "' for the same interest sets (sample " +
                            std::to_string(s) + ")";
      }
    }
  }

  // Thresholds in integers: 4^L * count vs N.
  const mpz_class pow4 = mpz_class(1) << (2 * budget_bits);
  const mpz_class n = samples;
  for (auto& [msgs, a] : acc) {
    TupleStat ts;
    ts.messages = msgs;
    ts.count = a.count;
    const mpz_class scaled = pow4 * mpz_class(static_cast<unsigned long>(a.count));
    if (scaled >= 2 * n) {
      ts.cls = TupleClass::kFrequent;
    } else if (2 * scaled < n) {
      ts.cls = TupleClass::kRare;
    } else {
      ts.cls = TupleClass::kBorderline;
    }
    ts.biased.assign(g, 0);
    for (int i = 0; i < g; ++i) {
      for (int k = 0; k < t; ++k) {
        // member / count > 7 / g.
        if (static_cast<std::uint64_t>(g) * a.member[i][k] > 7 * a.count) {
          ++ts.biased[i];
        }
      }
      ts.special_posterior =
          Max(ts.special_posterior,
              Rat(static_cast<long>(a.special[i]), static_cast<long>(a.count)));
    }
    if (ts.cls == TupleClass::kFrequent) {
      for (int i = 0; i < g; ++i) {
        out.max_biased_frequent = std::max(out.max_biased_frequent, ts.biased[i]);
        if (ts.biased[i] >= out.bound) out.within_bound = false;
      }
      out.max_special_posterior =
          Max(out.max_special_posterior, ts.special_posterior);
    }
    out.tuples.push_back(std::move(ts));
  }
  out.flagged = out.inconsistent || !out.within_bound;
  return out;
}

}  // namespace mechlab
