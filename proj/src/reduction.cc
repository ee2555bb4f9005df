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

#include <algorithm>
#include <functional>

#include "mechlab/errors.h"

namespace mechlab {
namespace {

int BitsFor(std::uint64_t values) {
  int bits = 0;
  while ((std::uint64_t{1} << bits) < values) ++bits;
  return bits;
}

void AppendBits(Message* out, std::uint64_t value, int width) {
  for (int b = width - 1; b >= 0; --b) out->push_back((value >> b & 1) ? '1' : '0');
}

std::uint64_t ReadBits(const Message& in, std::size_t* pos, int width) {
  if (*pos + width > in.size()) {
    throw Error(ErrorKind::kInput, "reduction message is truncated");
  }
  std::uint64_t v = 0;
  for (int b = 0; b < width; ++b) v = v << 1 | (in[(*pos)++] == '1' ? 1 : 0);
  return v;
}

std::vector<Bundle> MinimalValuableSets(const Valuation& u) {
  const int m = u.m();
  std::vector<Bundle> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    if (!(u.ValueMask(mask) > Rat(0))) continue;
    bool minimal = true;
    for (int e = 0; e < m && minimal; ++e) {
      if ((mask >> e & 1) &&
          u.ValueMask(mask & ~(std::uint64_t{1} << e)) > Rat(0)) {
        minimal = false;
      }
    }
    if (minimal) out.push_back(Bundle::FromMask(m, mask));
  }
  return out;
}

// Union of the minimal valuable bundles.
Bundle BaseSet(const Valuation& u) {
  Bundle out(u.m());
  for (const Bundle& t : MinimalValuableSets(u)) out = out.Union(t);
  return out;
}

Valuation WantsSet(int m, const Bundle& t) {
  std::vector<Rat> values(std::size_t{1} << m);
  for (std::uint64_t mask = 0; mask < values.size(); ++mask) {
    values[mask] = t.IsSubsetOf(Bundle::FromMask(m, mask)) ? 1 : 0;
  }
  return Valuation::Table(m, std::move(values));
}

bool SameValues(const Valuation& a, const Valuation& b) {
  return a.Materialize() == b.Materialize();
}

bool OnEveryPath(const Mechanism& mech, NodeId x) {
  for (const auto& p : AllProfiles(DomainSizes(mech.domains))) {
    const Evaluation ev =
        Evaluate(mech.tree, BehaviorsFor(mech.strategies, p));
    if (std::find(ev.path.begin(), ev.path.end(), x) == ev.path.end()) {
      return false;
    }
  }
  return true;
}

}  // namespace

Rat NoiseValue(int m, int index) {
  return Rat(index) / Rat::Pow(Rat(4), static_cast<unsigned>(m));
}

int NoiseBits(int m) {
  std::uint64_t top = 1;
  for (int k = 0; k < m; ++k) top *= 3;
  return BitsFor(top + 1);
}

WeightedMechanism ToyWeightedMechanism(int noise_index_a, int noise_index_b) {
  const int m = 4;
  WeightedMechanism wm;
  wm.group_of = {0, 0};
  wm.special_sets = {Bundle(m, {0, 1})};
  const std::vector<Valuation> bases = {WantsSet(m, Bundle(m, {0, 1})),
                                        WantsSet(m, Bundle(m, {1, 2}))};
  wm.bases = {bases, bases};
  const int noise[2] = {noise_index_a, noise_index_b};
  Domains domains(2);
  wm.entries.resize(2);
  for (int i = 0; i < 2; ++i) {
    for (int b = 0; b < 2; ++b) {
      for (int w : {1, 2}) {
        wm.entries[i].push_back({b, Rat(w), noise[i]});
        domains[i].push_back(ScaleShift(bases[b], Rat(w), NoiseValue(m, noise[i])));
      }
    }
  }
  const Domains copy = domains;
  // Welfare-maximizing assignment (first in enumeration order on ties) and
  // VCG payments.
  wm.mech = DirectMechanism(
      "toy-weighted-vcg", m, std::move(domains),
      [copy, m](const std::vector<int>& p) {
        const Valuation& va = copy[0][p[0]];
        const Valuation& vb = copy[1][p[1]];
        Rat best(-1);
        Bundle sa(m), sb(m);
        for (int code = 0; code < 81; ++code) {
          Bundle a(m), b(m);
          int c = code;
          for (int e = 0; e < m; ++e, c /= 3) {
            if (c % 3 == 1) a.Insert(e);
            if (c % 3 == 2) b.Insert(e);
          }
          const Rat w = va(a) + vb(b);
          if (w > best) {
            best = w;
            sa = a;
            sb = b;
          }
        }
        const Bundle full = Bundle::Full(m);
        Outcome o;
        o.allocation = {sa, sb};
        o.payments = {vb(full) - vb(sb), va(full) - va(sa)};
        return o;
      });
  wm.mech.tree.normalized = wm.mech.tree.no_negative_transfers = true;
  return wm;
}

SimultaneousReduction::SimultaneousReduction(const WeightedMechanism& wm,
                                             NodeId x, const Rat& alpha_star)
    : wm_(wm), x_(x), alpha_star_(alpha_star), m_(wm.mech.tree.num_items()) {
  if (x < 0 || x >= wm.mech.tree.size() || wm.mech.tree.node(x).is_leaf()) {
    throw Error(ErrorKind::kParameter, "vertex is not an internal node");
  }
  if (!OnEveryPath(wm.mech, x)) {
    throw Error(ErrorKind::kParameter,
                "vertex " + std::to_string(x) +
                    " is not on the path of every domain profile");
  }
}

int SimultaneousReduction::FindEntry(int player, int base, const Rat& weight,
                                     int noise) const {
  const auto& entries = wm_.entries.at(player);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k].base == base && entries[k].weight == weight &&
        entries[k].noise_index == noise) {
      return static_cast<int>(k);
    }
  }
  return -1;
}

int SimultaneousReduction::MessageAt(int player, int k) const {
  const int idx = wm_.mech.tree.SpeakerIndex(x_, player);
  if (idx < 0) return -1;
  return wm_.mech.strategies.strategies.at(player).at(k).at(x_);
}

int SimultaneousReduction::ZWidth(int player) const {
  const int idx = wm_.mech.tree.SpeakerIndex(x_, player);
  if (idx < 0) return 0;
  return BitsFor(wm_.mech.tree.node(x_).alphabet[idx]);
}

bool SimultaneousReduction::IsCritical(int player, int base,
                                       int noise_index) const {
  const int lo = FindEntry(player, base, alpha_star_, noise_index);
  const int hi = FindEntry(player, base, alpha_star_ * 2, noise_index);
  if (lo < 0 || hi < 0) {
    throw Error(ErrorKind::kInput,
                "domain lacks the weights alpha* and 2 alpha* for player " +
                    std::to_string(player));
  }
  return MessageAt(player, lo) != MessageAt(player, hi);
}

ReductionMessage SimultaneousReduction::EncodeEntry(int player,
                                                    int domain_index) const {
  const WeightedEntry& e = wm_.entries.at(player).at(domain_index);
  ReductionMessage msg;
  msg.domain_index = domain_index;
  msg.z = MessageAt(player, domain_index);
  msg.double_weight = e.weight != alpha_star_;
  msg.critical = IsCritical(player, e.base, e.noise_index);
  msg.base_set = BaseSet(wm_.bases.at(player).at(e.base));
  msg.noise_index = e.noise_index;
  Pack(player, &msg);
  return msg;
}

void SimultaneousReduction::Pack(int player, ReductionMessage* msg) const {
  msg->bits.clear();
  if (msg->z >= 0) AppendBits(&msg->bits, msg->z, ZWidth(player));
  msg->bits.push_back(msg->double_weight ? '1' : '0');
  msg->bits.push_back(msg->critical ? '1' : '0');
  for (int item = 0; item < m_; ++item) {
    msg->bits.push_back(msg->base_set.Contains(item) ? '1' : '0');
  }
  AppendBits(&msg->bits, msg->noise_index, NoiseBits(m_));
}

ReductionMessage SimultaneousReduction::Encode(int player, int base,
                                               int noise_index,
                                               Rng& coins) const {
  if (IsCritical(player, base, noise_index)) {
    const Rat w = coins.Bernoulli(1, 2) ? alpha_star_ * 2 : alpha_star_;
    return EncodeEntry(player, FindEntry(player, base, w, noise_index));
  }
  // Not critical: weight 2 alpha* on one random valuable set.
  const std::vector<Bundle> sets =
      MinimalValuableSets(wm_.bases.at(player).at(base));
  const Bundle t = sets.at(coins.Uniform(sets.size()));
  const Valuation target =
      ScaleShift(WantsSet(m_, t), alpha_star_ * 2, NoiseValue(m_, noise_index));
  const auto& domain = wm_.mech.domains.at(player);
  for (std::size_t k = 0; k < domain.size(); ++k) {
    if (SameValues(domain[k], target)) {
      ReductionMessage msg = EncodeEntry(player, static_cast<int>(k));
      // The blocks describe the drawn base, not the single-set valuation.
      msg.critical = false;
      msg.base_set = BaseSet(wm_.bases.at(player).at(base));
      Pack(player, &msg);
      return msg;
    }
  }
  throw Error(ErrorKind::kInput,
              "single-set valuation for a non-critical weight is outside the "
              "domain of player " +
                  std::to_string(player));
}

ReductionMessage SimultaneousReduction::Decode(int player,
                                               const Message& bits) const {
  ReductionMessage msg;
  msg.bits = bits;
  std::size_t pos = 0;
  const int zw = ZWidth(player);
  msg.z = wm_.mech.tree.SpeakerIndex(x_, player) < 0
              ? -1
              : static_cast<int>(ReadBits(bits, &pos, zw));
  msg.double_weight = ReadBits(bits, &pos, 1) == 1;
  msg.critical = ReadBits(bits, &pos, 1) == 1;
  msg.base_set = Bundle(m_);
  for (int item = 0; item < m_; ++item) {
    if (ReadBits(bits, &pos, 1) == 1) msg.base_set.Insert(item);
  }
  msg.noise_index = static_cast<int>(ReadBits(bits, &pos, NoiseBits(m_)));
  if (pos != bits.size()) {
    throw Error(ErrorKind::kInput, "reduction message has trailing bits");
  }
  return msg;
}

bool SimultaneousReduction::GuaranteesValuableSet(
    int player, int k, const Profile& profile_at_x,
    NodeId* zero_profit_leaf) const {
  const ProtocolTree& tree = wm_.mech.tree;
  const Behavior& own = wm_.mech.strategies.strategies.at(player).at(k);
  const Valuation& v = wm_.mech.domains.at(player).at(k);
  *zero_profit_leaf = -1;
  // Every continuation must end at a valuable leaf.
  std::function<bool(NodeId)> all_valuable = [&](NodeId u) -> bool {
    const Node& n = tree.node(u);
    if (n.is_leaf()) {
      const Bundle& got = n.outcome->allocation.at(player);
      const Rat value = v.Value(got);
      if (!(value > Rat(0))) return false;
      if (!(value - n.outcome->payments.at(player) > Rat(0)) &&
          *zero_profit_leaf < 0) {
        *zero_profit_leaf = u;
      }
      return true;
    }
    const int idx = tree.SpeakerIndex(u, player);
    for (int p = 0; p < tree.NumProfiles(u); ++p) {
      const Profile z = tree.ProfileAt(u, p);
      if (idx >= 0 && z[idx] != own.at(u)) continue;
      if (!all_valuable(n.children[p])) return false;
    }
    return true;
  };
  return all_valuable(tree.Child(x_, profile_at_x));
}

ReductionAllocation SimultaneousReduction::Allocate(
    const std::vector<Message>& messages) const {
  const ProtocolTree& tree = wm_.mech.tree;
  const int n = tree.num_players();
  if (static_cast<int>(messages.size()) != n) {
    throw Error(ErrorKind::kDimension, "one message per bidder required");
  }
  std::vector<ReductionMessage> decoded;
  for (int i = 0; i < n; ++i) decoded.push_back(Decode(i, messages[i]));
  Profile at_x;
  for (int speaker : tree.node(x_).speakers) at_x.push_back(decoded[speaker].z);

  ReductionAllocation out;
  out.bundles.assign(n, Bundle(m_));
  for (int i = 0; i < n; ++i) {
    const ReductionMessage& msg = decoded[i];
    if (msg.double_weight) continue;
    const Bundle& special = wm_.special_sets.at(wm_.group_of.at(i));
    if (!special.IsSubsetOf(msg.base_set)) continue;
    bool grant = false;
    GrantDiagnostic diag;
    const auto& entries = wm_.entries.at(i);
    for (std::size_t k = 0; k < entries.size() && !grant; ++k) {
      if (entries[k].weight != alpha_star_ ||
          entries[k].noise_index != msg.noise_index ||
          MessageAt(i, static_cast<int>(k)) != msg.z) {
        continue;
      }
      NodeId zero_leaf = -1;
      if (!GuaranteesValuableSet(i, static_cast<int>(k), at_x, &zero_leaf)) {
        continue;
      }
      if (zero_leaf >= 0) {
        if (diag.player < 0) {
          const Outcome& o = *tree.node(zero_leaf).outcome;
          diag = {i, static_cast<int>(k), zero_leaf,
                  wm_.mech.domains[i][k].Value(o.allocation[i]) - o.payments[i],
                  "valuable set at non-positive profit"};
        }
        continue;
      }
      grant = true;
    }
    if (grant) {
      out.bundles[i] = special;
    } else if (diag.player >= 0) {
      out.rejected.push_back(diag);
    }
  }
  return out;
}

std::vector<CriticalCandidate> ScanCriticalWeights(
    const WeightedMechanism& wm) {
  std::vector<CriticalCandidate> out;
  const ProtocolTree& tree = wm.mech.tree;
  std::vector<Rat> weights;
  for (const auto& entries : wm.entries) {
    for (const WeightedEntry& e : entries) {
      if (std::find(weights.begin(), weights.end(), e.weight) == weights.end()) {
        weights.push_back(e.weight);
      }
    }
  }
  std::sort(weights.begin(), weights.end());
  for (NodeId x = 0; x < tree.size(); ++x) {
    if (tree.node(x).is_leaf() || !OnEveryPath(wm.mech, x)) continue;
    for (const Rat& alpha : weights) {
      if (std::find(weights.begin(), weights.end(), alpha * 2) == weights.end()) {
        continue;
      }
      CriticalCandidate cand{x, alpha, {}};
      for (int i = 0; i < tree.num_players(); ++i) {
        const int idx = tree.SpeakerIndex(x, i);
        if (idx < 0) continue;
        const auto& entries = wm.entries[i];
        bool critical = false;
        for (std::size_t a = 0; a < entries.size() && !critical; ++a) {
          if (entries[a].weight != alpha) continue;
          for (std::size_t b = 0; b < entries.size(); ++b) {
            if (entries[b].weight == alpha * 2 &&
                entries[b].base == entries[a].base &&
                entries[b].noise_index == entries[a].noise_index &&
                wm.mech.strategies.strategies[i][a][x] !=
                    wm.mech.strategies.strategies[i][b][x]) {
              critical = true;
              break;
            }
          }
        }
        if (critical) cand.players.push_back(i);
      }
      if (!cand.players.empty()) out.push_back(std::move(cand));
    }
  }
  return out;
}

}  // namespace mechlab
