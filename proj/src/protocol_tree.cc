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

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "mechlab/errors.h"

namespace mechlab {
namespace {

[[noreturn]] void Fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

int CeilLog2(int a) {
  int bits = 0;
  while ((1LL << bits) < a) ++bits;
  return bits;
}

// Valuation indices of each player consistent with the path to a node.
using Reach = std::vector<std::vector<int>>;

// Distinct messages sent at `u` by the player's valuations in `reach`, in
// increasing order.
std::vector<int> SentMessages(const StrategyProfile& s, int player, NodeId u,
                              const std::vector<int>& reach) {
  std::set<int> sent;
  for (int k : reach) {
    const Behavior& b = s.strategies.at(player).at(k);
    if (u >= static_cast<int>(b.size()) || b[u] < 0) {
      std::ostringstream os;
      os << "player " << player << " valuation " << k
         << " has no message at node " << u;
      Fail(ErrorKind::kIncompleteStrategy, os.str());
    }
    sent.insert(b[u]);
  }
  return {sent.begin(), sent.end()};
}

std::vector<int> Narrow(const StrategyProfile& s, int player, NodeId u,
                        const std::vector<int>& reach, int message) {
  std::vector<int> out;
  for (int k : reach) {
    if (s.strategies[player][k][u] == message) out.push_back(k);
  }
  return out;
}

}  // namespace

NodeId ProtocolTree::AddLeaf(Outcome outcome) {
  if (size() >= kMaxTreeNodes) {
    Fail(ErrorKind::kCapability, "protocol tree exceeds the node cap");
  }
  Node n;
  n.outcome = std::move(outcome);
  nodes_.push_back(std::move(n));
  return size() - 1;
}

NodeId ProtocolTree::AddInternal(std::vector<int> speakers,
                                 std::vector<int> alphabet) {
  if (size() >= kMaxTreeNodes) {
    Fail(ErrorKind::kCapability, "protocol tree exceeds the node cap");
  }
  if (speakers.empty() || speakers.size() != alphabet.size()) {
    Fail(ErrorKind::kInput, "internal node needs one alphabet per speaker");
  }
  long long total = 1;
  for (int a : alphabet) {
    if (a < 1) Fail(ErrorKind::kInput, "alphabet sizes must be positive");
    total *= a;
    if (total > kMaxTreeNodes) {
      Fail(ErrorKind::kCapability, "node fan-out exceeds the node cap");
    }
  }
  Node n;
  n.speakers = std::move(speakers);
  n.alphabet = std::move(alphabet);
  n.children.assign(static_cast<std::size_t>(total), -1);
  nodes_.push_back(std::move(n));
  return size() - 1;
}

void ProtocolTree::SetChild(NodeId node, const Profile& profile,
                            NodeId child) {
  nodes_.at(node).children.at(ProfileIndex(node, profile)) = child;
}

int ProtocolTree::SpeakerIndex(NodeId id, int player) const {
  const auto& sp = node(id).speakers;
  auto it = std::find(sp.begin(), sp.end(), player);
  return it == sp.end() ? -1 : static_cast<int>(it - sp.begin());
}

int ProtocolTree::ProfileIndex(NodeId id, const Profile& profile) const {
  const Node& n = node(id);
  if (profile.size() != n.alphabet.size()) {
    Fail(ErrorKind::kInput, "message profile has the wrong arity");
  }
  int index = 0;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    if (profile[k] < 0 || profile[k] >= n.alphabet[k]) {
      std::ostringstream os;
      os << "message " << profile[k] << " outside the alphabet of player "
         << n.speakers[k] << " at node " << id;
      Fail(ErrorKind::kInput, os.str());
    }
    index = index * n.alphabet[k] + profile[k];
  }
  return index;
}

Profile ProtocolTree::ProfileAt(NodeId id, int index) const {
  const Node& n = node(id);
  Profile p(n.alphabet.size());
  for (int k = static_cast<int>(n.alphabet.size()) - 1; k >= 0; --k) {
    p[k] = index % n.alphabet[k];
    index /= n.alphabet[k];
  }
  return p;
}

int ProtocolTree::NumProfiles(NodeId id) const {
  return static_cast<int>(node(id).children.size());
}

NodeId ProtocolTree::Child(NodeId id, const Profile& profile) const {
  return node(id).children.at(ProfileIndex(id, profile));
}

int ProtocolTree::NodeBits(NodeId id) const {
  int bits = 0;
  for (int a : node(id).alphabet) bits += CeilLog2(a);
  return bits;
}

int ProtocolTree::MaxPathBits() const {
  std::vector<NodeId> order = Subtree(root_);
  std::vector<int> best(nodes_.size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node& n = nodes_[*it];
    if (n.is_leaf()) continue;
    int deepest = 0;
    for (NodeId c : n.children) deepest = std::max(deepest, best[c]);
    best[*it] = NodeBits(*it) + deepest;
  }
  return best[root_];
}

int ProtocolTree::NumLeaves() const {
  int count = 0;
  for (NodeId id : Subtree(root_)) count += node(id).is_leaf();
  return count;
}

std::vector<NodeId> ProtocolTree::Subtree(NodeId id) const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack = {id};
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    out.push_back(u);
    const auto& ch = node(u).children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

void ProtocolTree::Validate() const {
  if (nodes_.empty()) Fail(ErrorKind::kInput, "empty protocol tree");
  if (size() > kMaxTreeNodes) {
    Fail(ErrorKind::kCapability, "protocol tree exceeds the node cap");
  }
  if (root_ < 0 || root_ >= size()) Fail(ErrorKind::kInput, "bad root id");
  std::vector<int> parents(nodes_.size(), 0);
  for (NodeId id = 0; id < size(); ++id) {
    const Node& n = nodes_[id];
    std::ostringstream where;
    where << "node " << id << ": ";
    if (n.is_leaf()) {
      if (!n.outcome) Fail(ErrorKind::kInput, where.str() + "leaf without outcome");
      const Outcome& o = *n.outcome;
      if (static_cast<int>(o.allocation.size()) != num_players_ ||
          static_cast<int>(o.payments.size()) != num_players_) {
        Fail(ErrorKind::kInput, where.str() + "outcome arity mismatch");
      }
      Bundle used(num_items_);
      for (int i = 0; i < num_players_; ++i) {
        const Bundle& b = o.allocation[i];
        if (b.m() != num_items_) {
          Fail(ErrorKind::kInput, where.str() + "bundle universe mismatch");
        }
        if (b.Intersects(used)) {
          Fail(ErrorKind::kInput, where.str() + "infeasible allocation");
        }
        used = used.Union(b);
        if (normalized && b.Empty() && o.payments[i] != Rat(0)) {
          Fail(ErrorKind::kInput,
               where.str() + "empty bundle charged in a normalized mechanism");
        }
        if (no_negative_transfers && o.payments[i].sign() < 0) {
          Fail(ErrorKind::kInput, where.str() + "negative payment");
        }
      }
      continue;
    }
    if (n.outcome) Fail(ErrorKind::kInput, where.str() + "internal node with outcome");
    for (std::size_t k = 0; k < n.speakers.size(); ++k) {
      if (n.speakers[k] < 0 || n.speakers[k] >= num_players_ ||
          (k > 0 && n.speakers[k] <= n.speakers[k - 1])) {
        Fail(ErrorKind::kInput, where.str() + "speakers must be sorted ids");
      }
    }
    for (NodeId c : n.children) {
      if (c < 0 || c >= size()) {
        Fail(ErrorKind::kInput, where.str() + "children map is not total");
      }
      if (c == root_) Fail(ErrorKind::kInput, where.str() + "edge into root");
      ++parents[c];
    }
  }
  for (NodeId id = 0; id < size(); ++id) {
    if (id != root_ && parents[id] != 1) {
      std::ostringstream os;
      os << "node " << id << " has " << parents[id] << " parents";
      Fail(ErrorKind::kInput, os.str());
    }
  }
  // With one parent per non-root node, full reachability rules out cycles.
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<NodeId> stack = {root_};
  int visited = 0;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    if (seen[u]) Fail(ErrorKind::kInput, "cycle in protocol tree");
    seen[u] = 1;
    ++visited;
    for (NodeId c : nodes_[u].children) stack.push_back(c);
  }
  if (visited != size()) {
    Fail(ErrorKind::kInput, "unreachable nodes in protocol tree");
  }
}

bool StructurallyEqual(const ProtocolTree& a, const ProtocolTree& b) {
  if (a.num_players() != b.num_players() || a.num_items() != b.num_items() ||
      a.normalized != b.normalized ||
      a.no_negative_transfers != b.no_negative_transfers) {
    return false;
  }
  std::vector<std::pair<NodeId, NodeId>> stack = {{a.root(), b.root()}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    const Node& nx = a.node(x);
    const Node& ny = b.node(y);
    if (nx.speakers != ny.speakers || nx.alphabet != ny.alphabet ||
        nx.outcome != ny.outcome || nx.children.size() != ny.children.size()) {
      return false;
    }
    for (std::size_t k = 0; k < nx.children.size(); ++k) {
      stack.push_back({nx.children[k], ny.children[k]});
    }
  }
  return true;
}

Evaluation Evaluate(const ProtocolTree& tree,
                    const std::vector<Behavior>& behaviors) {
  if (static_cast<int>(behaviors.size()) != tree.num_players()) {
    Fail(ErrorKind::kInput, "one behavior per player required");
  }
  Evaluation ev;
  NodeId u = tree.root();
  while (true) {
    ev.path.push_back(u);
    const Node& n = tree.node(u);
    if (n.is_leaf()) break;
    Profile z(n.speakers.size());
    for (std::size_t k = 0; k < n.speakers.size(); ++k) {
      const Behavior& b = behaviors[n.speakers[k]];
      if (u >= static_cast<int>(b.size()) || b[u] < 0) {
        std::ostringstream os;
        os << "player " << n.speakers[k] << " has no message at node " << u;
        Fail(ErrorKind::kIncompleteStrategy, os.str());
      }
      z[k] = b[u];
    }
    ev.bits += tree.NodeBits(u);
    u = tree.Child(u, z);
  }
  ev.leaf = u;
  ev.outcome = *tree.node(u).outcome;
  return ev;
}

std::vector<Behavior> BehaviorsFor(const StrategyProfile& s,
                                   const std::vector<int>& profile) {
  std::vector<Behavior> out;
  out.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out.push_back(s.strategies.at(i).at(profile[i]));
  }
  return out;
}

std::vector<std::vector<int>> AllProfiles(const std::vector<int>& sizes) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(sizes.size(), 0);
  for (int s : sizes) {
    if (s <= 0) return out;
  }
  while (true) {
    out.push_back(cur);
    int k = static_cast<int>(sizes.size()) - 1;
    while (k >= 0 && ++cur[k] == sizes[k]) cur[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

std::vector<int> DomainSizes(const Domains& domains) {
  std::vector<int> sizes;
  for (const auto& d : domains) sizes.push_back(static_cast<int>(d.size()));
  return sizes;
}

Rat Profit(const Outcome& outcome, int player, const Valuation& v) {
  return v.Value(outcome.allocation.at(player)) - outcome.payments.at(player);
}

namespace {

struct Minimizer {
  const ProtocolTree& in;
  const StrategyProfile& s;
  ProtocolTree out;
  // new node -> (old node, kept messages per speaker)
  std::vector<std::pair<NodeId, std::vector<std::vector<int>>>> origin;

  NodeId Build(NodeId u, const Reach& reach) {
    const Node& n = in.node(u);
    if (n.is_leaf()) {
      NodeId id = out.AddLeaf(*n.outcome);
      origin.push_back({u, {}});
      return id;
    }
    std::vector<std::vector<int>> kept;
    std::vector<int> sizes;
    for (int sp : n.speakers) {
      kept.push_back(SentMessages(s, sp, u, reach[sp]));
      sizes.push_back(static_cast<int>(kept.back().size()));
    }
    auto combos = AllProfiles(sizes);
    if (combos.size() == 1) {
      Profile z;
      for (const auto& k : kept) z.push_back(k[0]);
      return Build(in.Child(u, z), reach);
    }
    NodeId id = out.AddInternal(n.speakers, sizes);
    origin.push_back({u, kept});
    for (const auto& c : combos) {
      Profile z(c.size());
      Reach next = reach;
      for (std::size_t k = 0; k < c.size(); ++k) {
        z[k] = kept[k][c[k]];
        int sp = n.speakers[k];
        next[sp] = Narrow(s, sp, u, reach[sp], z[k]);
      }
      NodeId child = Build(in.Child(u, z), next);
      out.SetChild(id, c, child);
    }
    return id;
  }
};

}  // namespace

MinimizeResult Minimize(const ProtocolTree& tree,
                        const StrategyProfile& strategies,
                        const Domains& domains) {
  const int n = tree.num_players();
  if (static_cast<int>(domains.size()) != n ||
      static_cast<int>(strategies.strategies.size()) != n) {
    Fail(ErrorKind::kInput, "domains and strategies must cover every player");
  }
  Reach reach(n);
  for (int i = 0; i < n; ++i) {
    if (strategies.strategies[i].size() != domains[i].size()) {
      Fail(ErrorKind::kIncompleteStrategy,
           "one behavior per domain valuation required");
    }
    for (int k = 0; k < static_cast<int>(domains[i].size()); ++k) {
      reach[i].push_back(k);
    }
  }
  Minimizer mz{tree, strategies, ProtocolTree(n, tree.num_items()), {}};
  NodeId root = mz.Build(tree.root(), reach);
  mz.out.set_root(root);
  mz.out.normalized = tree.normalized;
  mz.out.no_negative_transfers = tree.no_negative_transfers;

  MinimizeResult result;
  result.strategies.strategies.resize(n);
  for (int i = 0; i < n; ++i) {
    for (const Behavior& old : strategies.strategies[i]) {
      Behavior b(mz.out.size(), -1);
      for (NodeId id = 0; id < mz.out.size(); ++id) {
        const auto& [u, kept] = mz.origin[id];
        int k = mz.out.SpeakerIndex(id, i);
        if (k < 0 || u >= static_cast<int>(old.size())) continue;
        const auto& msgs = kept[k];
        auto it = std::find(msgs.begin(), msgs.end(), old[u]);
        if (it != msgs.end()) b[id] = static_cast<int>(it - msgs.begin());
      }
      result.strategies.strategies[i].push_back(std::move(b));
    }
  }
  result.tree = std::move(mz.out);
  return result;
}

InducedTree MakeInducedTree(const ProtocolTree& tree, NodeId u, int player,
                            const Profile& others) {
  const Node& n = tree.node(u);
  int k = tree.SpeakerIndex(u, player);
  if (n.is_leaf() || k < 0) {
    std::ostringstream os;
    os << "player " << player << " does not speak at node " << u;
    Fail(ErrorKind::kNotASpeaker, os.str());
  }
  if (others.size() + 1 != n.speakers.size()) {
    Fail(ErrorKind::kInput, "opponent profile has the wrong arity");
  }
  InducedTree it;
  it.tree = &tree;
  it.base = u;
  it.player = player;
  it.others = others;
  Profile z = others;
  z.insert(z.begin() + k, 0);
  for (int m = 0; m < n.alphabet[k]; ++m) {
    z[k] = m;
    it.subtrees.push_back(tree.Child(u, z));
  }
  return it;
}

std::vector<LeafView> InducedLeaves(const InducedTree& it) {
  std::vector<LeafView> out;
  for (int z = 0; z < static_cast<int>(it.subtrees.size()); ++z) {
    for (NodeId id : it.tree->Subtree(it.subtrees[z])) {
      const Node& n = it.tree->node(id);
      if (!n.is_leaf()) continue;
      out.push_back({id, z, n.outcome->allocation[it.player],
                     n.outcome->payments[it.player]});
    }
  }
  return out;
}

std::vector<Profile> OtherProfiles(const ProtocolTree& tree, NodeId u,
                                   int player) {
  const Node& n = tree.node(u);
  std::vector<int> sizes;
  for (std::size_t k = 0; k < n.speakers.size(); ++k) {
    if (n.speakers[k] != player) sizes.push_back(n.alphabet[k]);
  }
  return AllProfiles(sizes);
}

PaymentUniquenessReport CheckPaymentUniqueness(const InducedTree& it) {
  PaymentUniquenessReport report;
  std::vector<LeafView> leaves = InducedLeaves(it);
  std::map<Bundle, std::vector<const LeafView*>> by_bundle;
  for (const LeafView& l : leaves) by_bundle[l.bundle].push_back(&l);
  for (const LeafView& first : leaves) {
    const auto& group = by_bundle[first.bundle];
    if (group.front() != &first) continue;
    bool spread = std::any_of(group.begin(), group.end(),
                              [&](const LeafView* l) {
                                return l->subtree != first.subtree;
                              });
    if (!spread) continue;
    for (const LeafView* l : group) {
      if (l->payment != first.payment) {
        report.ok = false;
        report.bundle = first.bundle;
        report.leaf_a = first.leaf;
        report.leaf_b = l->leaf;
        report.price_a = first.payment;
        report.price_b = l->payment;
        return report;
      }
    }
  }
  return report;
}

std::optional<Rat> MinimalPrice(const InducedTree& it, const Bundle& s) {
  std::optional<Rat> best;
  for (const LeafView& l : InducedLeaves(it)) {
    if (!s.IsSubsetOf(l.bundle)) continue;
    if (!best || l.payment < *best) best = l.payment;
  }
  return best;
}

ContainmentReport CheckContainmentMonotone(const InducedTree& it) {
  ContainmentReport report;
  std::vector<LeafView> leaves = InducedLeaves(it);
  for (const LeafView& a : leaves) {
    for (const LeafView& b : leaves) {
      if (a.subtree == b.subtree || !a.bundle.IsSubsetOf(b.bundle)) continue;
      if (b.payment < a.payment) {
        report.ok = false;
        report.smaller_leaf = a.leaf;
        report.larger_leaf = b.leaf;
        report.smaller_price = a.payment;
        report.larger_price = b.payment;
        return report;
      }
    }
  }
  return report;
}

namespace {

// Whether the player can force a leaf with a bundle containing s at a
// payment of at most p from node u.
bool CanForce(const ProtocolTree& tree, NodeId u, int player, const Bundle& s,
              const Rat& p) {
  const Node& n = tree.node(u);
  if (n.is_leaf()) {
    return s.IsSubsetOf(n.outcome->allocation[player]) &&
           n.outcome->payments[player] <= p;
  }
  int k = tree.SpeakerIndex(u, player);
  if (k < 0) {
    return std::all_of(n.children.begin(), n.children.end(), [&](NodeId c) {
      return CanForce(tree, c, player, s, p);
    });
  }
  for (int z = 0; z < n.alphabet[k]; ++z) {
    bool all = true;
    for (int idx = 0; idx < tree.NumProfiles(u) && all; ++idx) {
      if (tree.ProfileAt(u, idx)[k] != z) continue;
      all = CanForce(tree, n.children[idx], player, s, p);
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

bool IsDecisive(const InducedTree& it, const Bundle& s, const Rat& p) {
  for (NodeId c : it.subtrees) {
    if (CanForce(*it.tree, c, it.player, s, p)) return true;
  }
  return false;
}

std::optional<Rat> GuaranteedProfit(const InducedTree& it,
                                    const Valuation& v) {
  std::vector<LeafView> leaves = InducedLeaves(it);
  std::set<Bundle> candidates;
  Bundle seen(it.tree->num_items());
  for (const LeafView& l : leaves) {
    candidates.insert(l.bundle);
    seen = seen.Union(l.bundle);
  }
  candidates.insert(Bundle(it.tree->num_items()));
  // Sub-bundles can be decisive at a lower minimal price than any label.
  std::vector<int> items = seen.Items();
  if (items.size() <= 16) {
    for (std::uint32_t mask = 0; mask < (1u << items.size()); ++mask) {
      Bundle b(it.tree->num_items());
      for (std::size_t j = 0; j < items.size(); ++j) {
        if (mask >> j & 1) b.Insert(items[j]);
      }
      candidates.insert(b);
    }
  }
  std::optional<Rat> best;
  for (const Bundle& s : candidates) {
    std::optional<Rat> p = MinimalPrice(it, s);
    if (!p || !IsDecisive(it, s, *p)) continue;
    Rat profit = v.Value(s) - *p;
    if (!best || profit > *best) best = profit;
  }
  return best;
}

std::vector<NodeId> FirstNonTrivialVertices(const ProtocolTree& tree,
                                            const StrategyProfile& strategies,
                                            const Domains& domains,
                                            int player) {
  std::vector<NodeId> found;
  Reach reach(tree.num_players());
  for (int i = 0; i < tree.num_players(); ++i) {
    for (int k = 0; k < static_cast<int>(domains.at(i).size()); ++k) {
      reach[i].push_back(k);
    }
  }
  std::vector<std::pair<NodeId, Reach>> stack = {{tree.root(), reach}};
  while (!stack.empty()) {
    auto [u, r] = std::move(stack.back());
    stack.pop_back();
    const Node& n = tree.node(u);
    if (n.is_leaf()) continue;
    std::vector<std::vector<int>> sent;
    std::vector<int> sizes;
    bool split = false;
    for (int sp : n.speakers) {
      sent.push_back(SentMessages(strategies, sp, u, r[sp]));
      sizes.push_back(static_cast<int>(sent.back().size()));
      if (sp == player && sent.back().size() > 1) split = true;
    }
    if (split) {
      found.push_back(u);
      continue;
    }
    auto combos = AllProfiles(sizes);
    for (auto c = combos.rbegin(); c != combos.rend(); ++c) {
      Profile z(c->size());
      Reach next = r;
      for (std::size_t k = 0; k < c->size(); ++k) {
        z[k] = sent[k][(*c)[k]];
        int sp = n.speakers[k];
        next[sp] = Narrow(strategies, sp, u, r[sp], z[k]);
      }
      stack.push_back({tree.Child(u, z), std::move(next)});
    }
  }
  return found;
}

SemiSimultaneousReport CheckSemiSimultaneous(const ProtocolTree& tree,
                                             const StrategyProfile& strategies,
                                             const Domains& domains) {
  SemiSimultaneousReport report;
  for (int i = 0; i < tree.num_players(); ++i) {
    for (NodeId u : FirstNonTrivialVertices(tree, strategies, domains, i)) {
      for (const Profile& others : OtherProfiles(tree, u, i)) {
        InducedTree it = MakeInducedTree(tree, u, i, others);
        std::map<Bundle, bool> decisive;
        // First non-decisive leaf per subtree, -1 when none.
        std::vector<NodeId> bad(it.subtrees.size(), -1);
        for (const LeafView& l : InducedLeaves(it)) {
          auto found = decisive.find(l.bundle);
          if (found == decisive.end()) {
            std::optional<Rat> p = MinimalPrice(it, l.bundle);
            found = decisive.emplace(l.bundle, IsDecisive(it, l.bundle, *p))
                        .first;
          }
          if (!found->second && bad[l.subtree] < 0) bad[l.subtree] = l.leaf;
        }
        std::vector<int> special;
        for (int z = 0; z < static_cast<int>(bad.size()); ++z) {
          if (bad[z] >= 0) special.push_back(z);
        }
        if (special.size() > 1) {
          report.ok = false;
          report.player = i;
          report.vertex = u;
          report.others = others;
          report.subtree_a = special[0];
          report.subtree_b = special[1];
          report.leaf_a = bad[special[0]];
          report.leaf_b = bad[special[1]];
          return report;
        }
        report.special.push_back(
            {i, u, others, special.empty() ? -1 : special[0]});
      }
    }
  }
  return report;
}

}  // namespace mechlab
