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

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "mechlab/errors.h"

namespace mechlab {
namespace {

NodeId WalkToLeaf(const ProtocolTree& tree,
                  const std::vector<Behavior>& behaviors) {
  NodeId u = tree.root();
  Profile z;
  while (!tree.node(u).is_leaf()) {
    const Node& n = tree.node(u);
    z.resize(n.speakers.size());
    for (std::size_t k = 0; k < n.speakers.size(); ++k) {
      int msg = behaviors[n.speakers[k]][u];
      if (msg < 0) {
        std::ostringstream os;
        os << "player " << n.speakers[k] << " has no message at node " << u;
        throw Error(ErrorKind::kIncompleteStrategy, os.str());
      }
      z[k] = msg;
    }
    u = tree.Child(u, z);
  }
  return u;
}

Rat LeafProfit(const ProtocolTree& tree, NodeId leaf, int player,
               const Valuation& v) {
  return Profit(*tree.node(leaf).outcome, player, v);
}

// Per-valuation state of the subtree-stitching check.
class Stitcher {
 public:
  Stitcher(const ProtocolTree& tree, int player, const Valuation& v,
           const Behavior& honest)
      : tree_(tree),
        player_(player),
        v_(v),
        honest_(honest),
        max_all_(tree.size()),
        max_child_(tree.size(), -1),
        honest_min_(tree.size()),
        min_child_(tree.size(), -1),
        parent_(tree.size(), -1),
        parent_profile_(tree.size(), -1),
        reached_(tree.size(), 0) {
    std::vector<NodeId> order = tree.Subtree(tree.root());
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const Node& n = tree.node(*it);
      if (n.is_leaf()) {
        max_all_[*it] = LeafProfit(tree, *it, player, v);
        continue;
      }
      for (int idx = 0; idx < static_cast<int>(n.children.size()); ++idx) {
        NodeId c = n.children[idx];
        if (max_child_[*it] < 0 || max_all_[c] > max_all_[*it]) {
          max_all_[*it] = max_all_[c];
          max_child_[*it] = idx;
        }
      }
    }
    HonestMin(tree.root());
  }

  // Appends a certificate for the first violation at an honestly reachable
  // node, if any.
  std::optional<ViolationCertificate> Find(int valuation) {
    for (NodeId u = 0; u < tree_.size(); ++u) {
      if (!reached_[u]) continue;
      int k = tree_.SpeakerIndex(u, player_);
      if (k < 0) continue;
      const Node& n = tree_.node(u);
      for (const Profile& others : OtherProfiles(tree_, u, player_)) {
        Profile z = others;
        z.insert(z.begin() + k, honest_[u]);
        NodeId honest_child = tree_.Child(u, z);
        int best = -1;
        NodeId best_child = -1;
        // Among deviations prefer the most profitable, then the highest
        // message.
        for (int d = 0; d < n.alphabet[k]; ++d) {
          if (d == honest_[u]) continue;
          z[k] = d;
          NodeId c = tree_.Child(u, z);
          if (best < 0 || max_all_[c] >= max_all_[best_child]) {
            best = d;
            best_child = c;
          }
        }
        if (best < 0 || honest_min_[honest_child] >= max_all_[best_child]) {
          continue;
        }
        return Build(valuation, u, others, best, honest_child, best_child);
      }
    }
    return std::nullopt;
  }

 private:
  void HonestMin(NodeId u) {
    reached_[u] = 1;
    const Node& n = tree_.node(u);
    if (n.is_leaf()) {
      honest_min_[u] = max_all_[u];
      return;
    }
    int k = tree_.SpeakerIndex(u, player_);
    if (k >= 0 && (u >= static_cast<int>(honest_.size()) || honest_[u] < 0)) {
      std::ostringstream os;
      os << "player " << player_ << " has no message at node " << u;
      throw Error(ErrorKind::kIncompleteStrategy, os.str());
    }
    for (int idx = 0; idx < static_cast<int>(n.children.size()); ++idx) {
      if (k >= 0 && tree_.ProfileAt(u, idx)[k] != honest_[u]) continue;
      NodeId c = n.children[idx];
      parent_[c] = u;
      parent_profile_[c] = idx;
      HonestMin(c);
      if (min_child_[u] < 0 || honest_min_[c] < honest_min_[u]) {
        honest_min_[u] = honest_min_[c];
        min_child_[u] = idx;
      }
    }
  }

  void SetOthers(std::vector<Behavior>& b, NodeId u, const Profile& z) {
    const Node& n = tree_.node(u);
    for (std::size_t k = 0; k < n.speakers.size(); ++k) {
      if (n.speakers[k] != player_) b[n.speakers[k]][u] = z[k];
    }
  }

  ViolationCertificate Build(int valuation, NodeId u, const Profile& others,
                             int deviation, NodeId honest_child,
                             NodeId deviation_child) {
    const int n = tree_.num_players();
    std::vector<Behavior> b(n, Behavior(tree_.size(), -1));
    for (NodeId id = 0; id < tree_.size(); ++id) {
      for (int sp : tree_.node(id).speakers) {
        if (sp != player_) b[sp][id] = 0;
      }
    }
    for (NodeId c = u; parent_[c] >= 0; c = parent_[c]) {
      SetOthers(b, parent_[c], tree_.ProfileAt(parent_[c], parent_profile_[c]));
    }
    int k = tree_.SpeakerIndex(u, player_);
    Profile z = others;
    z.insert(z.begin() + k, honest_[u]);
    SetOthers(b, u, z);
    for (NodeId c = honest_child; !tree_.node(c).is_leaf();
         c = tree_.node(c).children[min_child_[c]]) {
      SetOthers(b, c, tree_.ProfileAt(c, min_child_[c]));
    }
    Behavior dev = honest_;
    dev.resize(tree_.size(), -1);
    dev[u] = deviation;
    for (NodeId c = deviation_child; !tree_.node(c).is_leaf();
         c = tree_.node(c).children[max_child_[c]]) {
      Profile zc = tree_.ProfileAt(c, max_child_[c]);
      SetOthers(b, c, zc);
      int kc = tree_.SpeakerIndex(c, player_);
      if (kc >= 0) dev[c] = zc[kc];
    }
    b[player_] = honest_;
    b[player_].resize(tree_.size(), -1);

    ViolationCertificate cert;
    cert.player = player_;
    cert.valuation = valuation;
    cert.node = u;
    cert.others = others;
    cert.honest_message = honest_[u];
    cert.deviation_message = deviation;
    cert.honest_profit = honest_min_[honest_child];
    cert.deviating_profit = max_all_[deviation_child];
    // Replay both plays against the stitched opponents.
    Rat honest = LeafProfit(tree_, WalkToLeaf(tree_, b), player_, v_);
    std::vector<Behavior> deviating = b;
    deviating[player_] = dev;
    Rat devp = LeafProfit(tree_, WalkToLeaf(tree_, deviating), player_, v_);
    if (honest != cert.honest_profit || devp != cert.deviating_profit) {
      throw std::logic_error("stitched certificate failed to replay");
    }
    cert.deviation = std::move(dev);
    cert.opponents = std::move(b);
    return cert;
  }

  const ProtocolTree& tree_;
  int player_;
  const Valuation& v_;
  const Behavior& honest_;
  std::vector<Rat> max_all_;
  std::vector<int> max_child_;
  std::vector<Rat> honest_min_;
  std::vector<int> min_child_;
  std::vector<NodeId> parent_;
  std::vector<int> parent_profile_;
  std::vector<char> reached_;
};

struct Slot {
  NodeId node;
  int player;
  int alphabet;
};

// Advances a mixed-radix counter; false after the last value.
bool Advance(std::vector<int>& digits, const std::vector<Slot>& slots) {
  for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
    if (++digits[k] < slots[k].alphabet) return true;
    digits[k] = 0;
  }
  return false;
}

long double CountBehaviors(const std::vector<Slot>& slots) {
  long double total = 1;
  for (const Slot& s : slots) total *= s.alphabet;
  return total;
}

std::optional<ViolationCertificate> OracleFind(
    const ProtocolTree& tree, int player, int valuation, const Valuation& v,
    const Behavior& honest_in, std::uint64_t* evaluations) {
  const int n = tree.num_players();
  std::vector<Slot> opp, own;
  for (NodeId id = 0; id < tree.size(); ++id) {
    const Node& node = tree.node(id);
    for (std::size_t k = 0; k < node.speakers.size(); ++k) {
      Slot s{id, node.speakers[k], node.alphabet[k]};
      (s.player == player ? own : opp).push_back(s);
    }
  }
  Behavior honest = honest_in;
  honest.resize(tree.size(), -1);
  std::vector<Behavior> b(n, Behavior(tree.size(), -1));
  std::vector<int> od(opp.size(), 0);
  do {
    for (std::size_t k = 0; k < opp.size(); ++k) {
      b[opp[k].player][opp[k].node] = od[k];
    }
    b[player] = honest;
    Rat honest_profit = LeafProfit(tree, WalkToLeaf(tree, b), player, v);
    ++*evaluations;
    std::vector<int> id(own.size(), 0);
    do {
      for (std::size_t k = 0; k < own.size(); ++k) {
        b[player][own[k].node] = id[k];
      }
      NodeId leaf = WalkToLeaf(tree, b);
      ++*evaluations;
      Rat profit = LeafProfit(tree, leaf, player, v);
      if (profit <= honest_profit) continue;
      ViolationCertificate cert;
      cert.player = player;
      cert.valuation = valuation;
      cert.deviation = b[player];
      cert.honest_profit = honest_profit;
      cert.deviating_profit = profit;
      // The first node on the deviating path where the player departs.
      NodeId u = tree.root();
      while (!tree.node(u).is_leaf()) {
        const Node& node = tree.node(u);
        Profile z(node.speakers.size());
        for (std::size_t k = 0; k < z.size(); ++k) {
          z[k] = b[node.speakers[k]][u];
        }
        int k = tree.SpeakerIndex(u, player);
        if (k >= 0 && z[k] != honest[u]) {
          cert.node = u;
          cert.honest_message = honest[u];
          cert.deviation_message = z[k];
          z.erase(z.begin() + k);
          cert.others = z;
          break;
        }
        u = tree.Child(u, z);
      }
      cert.opponents = b;
      cert.opponents[player] = honest;
      return cert;
    } while (Advance(id, own));
  } while (Advance(od, opp));
  return std::nullopt;
}

std::uint64_t OracleCost(const ProtocolTree& tree, int player,
                         std::size_t domain_size) {
  std::vector<Slot> opp, own;
  for (NodeId id = 0; id < tree.size(); ++id) {
    const Node& node = tree.node(id);
    for (std::size_t k = 0; k < node.speakers.size(); ++k) {
      Slot s{id, node.speakers[k], node.alphabet[k]};
      (s.player == player ? own : opp).push_back(s);
    }
  }
  long double cost =
      CountBehaviors(opp) * (CountBehaviors(own) + 1) * domain_size;
  return cost > 1e18L ? UINT64_MAX : static_cast<std::uint64_t>(cost);
}

}  // namespace

DominanceReport CheckDominant(const ProtocolTree& tree,
                              const StrategyProfile& strategies,
                              const Domains& domains,
                              const DominanceOptions& options) {
  const int n = tree.num_players();
  if (static_cast<int>(domains.size()) != n ||
      static_cast<int>(strategies.strategies.size()) != n) {
    throw Error(ErrorKind::kInput,
                "domains and strategies must cover every player");
  }
  const bool stitch = options.method != DominanceMethod::kOracle;
  const bool oracle = options.method != DominanceMethod::kStitch;
  if (oracle) {
    std::uint64_t cost = 0;
    for (int i = 0; i < n; ++i) {
      std::uint64_t c = OracleCost(tree, i, domains[i].size());
      cost = (c > UINT64_MAX - cost) ? UINT64_MAX : cost + c;
    }
    if (cost > options.oracle_budget) {
      throw Error(ErrorKind::kCapability,
                  "exhaustive dominance check exceeds its evaluation budget");
    }
  }
  DominanceReport report;
  for (int i = 0; i < n; ++i) {
    if (strategies.strategies[i].size() != domains[i].size()) {
      throw Error(ErrorKind::kIncompleteStrategy,
                  "one behavior per domain valuation required");
    }
    for (int k = 0; k < static_cast<int>(domains[i].size()); ++k) {
      const Valuation& v = domains[i][k];
      const Behavior& honest = strategies.strategies[i][k];
      std::optional<ViolationCertificate> s_cert, o_cert;
      if (stitch) s_cert = Stitcher(tree, i, v, honest).Find(k);
      if (oracle) {
        o_cert = OracleFind(tree, i, k, v, honest, &report.oracle_evaluations);
      }
      if (stitch && oracle && s_cert.has_value() != o_cert.has_value()) {
        report.agree = false;
      }
      std::optional<ViolationCertificate>& cert = stitch ? s_cert : o_cert;
      report.verdicts.push_back({i, k, !cert.has_value()});
      if (!cert) continue;
      report.ok = false;
      if (options.collect_all || report.certificates.empty()) {
        report.certificates.push_back(std::move(*cert));
      }
    }
  }
  return report;
}

std::string DescribeCertificate(const ProtocolTree& tree,
                                const ViolationCertificate& c) {
  std::ostringstream os;
  os << "player " << c.player << " with valuation " << c.valuation
     << " gains by sending " << c.deviation_message << " instead of "
     << c.honest_message << " at node " << c.node << ": profit "
     << c.honest_profit.ToString() << " -> " << c.deviating_profit.ToString()
     << "; opponents send 0 except";
  bool any = false;
  for (int j = 0; j < static_cast<int>(c.opponents.size()); ++j) {
    if (j == c.player) continue;
    for (NodeId id = 0; id < static_cast<int>(c.opponents[j].size()); ++id) {
      if (c.opponents[j][id] > 0) {
        os << (any ? "," : "") << " player " << j << " sends "
           << c.opponents[j][id] << " at node " << id;
        any = true;
      }
    }
  }
  if (!any) os << " nowhere";
  (void)tree;
  return os.str();
}

std::size_t SocialChoiceTable::Index(const std::vector<int>& profile) const {
  if (profile.size() != domains.size()) {
    throw Error(ErrorKind::kDimension, "profile arity mismatch");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] < 0 || profile[i] >= static_cast<int>(domains[i].size())) {
      throw Error(ErrorKind::kDimension, "valuation index out of range");
    }
    index = index * domains[i].size() + profile[i];
  }
  return index;
}

SocialChoiceTable TableFromTree(const ProtocolTree& tree,
                                const StrategyProfile& strategies,
                                const Domains& domains) {
  SocialChoiceTable table;
  table.domains = domains;
  for (const auto& profile : AllProfiles(DomainSizes(domains))) {
    table.outcomes.push_back(
        Evaluate(tree, BehaviorsFor(strategies, profile)).outcome);
  }
  return table;
}

ExpostReport CheckExpost(const SocialChoiceTable& table) {
  ExpostReport report;
  const auto sizes = table.sizes();
  const auto profiles = AllProfiles(sizes);
  for (int i = 0; i < static_cast<int>(sizes.size()); ++i) {
    for (int vi = 0; vi < sizes[i]; ++vi) {
      const Valuation& v = table.domains[i][vi];
      for (int wi = 0; wi < sizes[i]; ++wi) {
        if (wi == vi) continue;
        for (const auto& p : profiles) {
          if (p[i] != vi) continue;
          std::vector<int> lie = p;
          lie[i] = wi;
          Rat honest = Profit(table.At(p), i, v);
          Rat deviating = Profit(table.At(lie), i, v);
          if (deviating > honest) {
            report.ok = false;
            report.player = i;
            report.valuation = vi;
            report.misreport = wi;
            report.profile = p;
            report.honest_profit = honest;
            report.deviating_profit = deviating;
            return report;
          }
        }
      }
    }
  }
  return report;
}

TaxationMenu ExtractTaxationMenu(const SocialChoiceTable& table, int player,
                                 std::vector<int> profile) {
  TaxationMenu result;
  const int count = static_cast<int>(table.domains.at(player).size());
  for (int vi = 0; vi < count; ++vi) {
    profile[player] = vi;
    const Outcome& o = table.At(profile);
    const Bundle& s = o.allocation[player];
    auto [it, inserted] = result.menu.emplace(s, o.payments[player]);
    if (!inserted && it->second != o.payments[player]) {
      throw Error(ErrorKind::kTaxation,
                  "bundle " + s.ToString() + " offered at " +
                      it->second.ToString() + " and " +
                      o.payments[player].ToString());
    }
  }
  for (int vi = 0; vi < count && result.consistent; ++vi) {
    profile[player] = vi;
    const Valuation& v = table.domains[player][vi];
    Rat got = Profit(table.At(profile), player, v);
    for (const auto& [s, p] : result.menu) {
      if (v.Value(s) - p > got) {
        result.consistent = false;
        result.failing_valuation = vi;
        break;
      }
    }
  }
  return result;
}

MuOutcome VcgMechanism(const MarginalVector& va, const MarginalVector& vb) {
  MuAllocation opt = BruteOptimum({va, vb});
  TwoPlayerPayments pay = VcgTwoPlayer(va, vb, opt.units[0], opt.units[1]);
  return {opt.units[0], opt.units[1], pay.alice, pay.bob};
}

MarginalVector SketchProbe(const MarginalVector& va, int x) {
  MuFamilyParams p;
  p.family = MuFamily::kP;
  p.m = va.m();
  p.base = va;
  p.t_star = x;
  p.sn = 0;
  return GenMuFamily(p);
}

PaymentsSketchReport PaymentsSketchCheck(
    const TwoPlayerMechanism& mechanism,
    const std::vector<MarginalVector>& slice) {
  PaymentsSketchReport report;
  for (int idx = 0; idx < static_cast<int>(slice.size()); ++idx) {
    const MarginalVector& va = slice[idx];
    const int m = va.m();
    const Rat radius = Rat(1) / Rat(8 * m);
    for (int x = 1; x <= m - 1; ++x) {
      MuOutcome out = mechanism(va, SketchProbe(va, x));
      ++report.checked;
      Rat center = va.value(m) - va.value(m - x);
      std::string reason;
      if (out.bob != x) {
        reason = "probe did not receive exactly the requested units";
      } else if (out.bob_payment < center - radius ||
                 out.bob_payment > center + radius) {
        reason = "price outside the reconstruction interval";
      }
      if (reason.empty()) continue;
      report.ok = false;
      report.failing_member = idx;
      report.failing_x = x;
      report.price = out.bob_payment;
      report.center = center;
      report.reason = reason;
      return report;
    }
  }
  return report;
}

}  // namespace mechlab
