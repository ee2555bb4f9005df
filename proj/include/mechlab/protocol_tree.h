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

#ifndef MECHLAB_PROTOCOL_TREE_H_
#define MECHLAB_PROTOCOL_TREE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mechlab/bundle.h"
#include "mechlab/rat.h"
#include "mechlab/valuation.h"

namespace mechlab {

using NodeId = int;

inline constexpr int kMaxTreeNodes = 1 << 18;

struct Outcome {
  std::vector<Bundle> allocation;  // One bundle per player.
  std::vector<Rat> payments;

  friend bool operator==(const Outcome& a, const Outcome& b) {
    return a.allocation == b.allocation && a.payments == b.payments;
  }
};

struct Node {
  // Sorted player ids; empty for leaves.
  std::vector<int> speakers;
  // alphabet[k] is the alphabet size of speakers[k].
  std::vector<int> alphabet;
  // Children in mixed-radix profile order, first speaker most significant.
  std::vector<NodeId> children;
  std::optional<Outcome> outcome;

  bool is_leaf() const { return speakers.empty(); }
};

// A message profile at a node lists one message per speaker, in speaker
// order.
using Profile = std::vector<int>;

class ProtocolTree {
 public:
  ProtocolTree() = default;
  ProtocolTree(int num_players, int num_items)
      : num_players_(num_players), num_items_(num_items) {}

  NodeId AddLeaf(Outcome outcome);
  // Children may be filled in later with SetChild.
  NodeId AddInternal(std::vector<int> speakers, std::vector<int> alphabet);
  void SetChild(NodeId node, const Profile& profile, NodeId child);
  void set_root(NodeId root) { root_ = root; }

  int num_players() const { return num_players_; }
  int num_items() const { return num_items_; }
  NodeId root() const { return root_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const Node& node(NodeId id) const { return nodes_.at(id); }

  // Position of `player` among the speakers of `id`, or -1.
  int SpeakerIndex(NodeId id, int player) const;
  int ProfileIndex(NodeId id, const Profile& profile) const;
  Profile ProfileAt(NodeId id, int index) const;
  int NumProfiles(NodeId id) const;
  NodeId Child(NodeId id, const Profile& profile) const;
  // Bits spent at a node: sum over speakers of ceil(log2 |alphabet|).
  int NodeBits(NodeId id) const;
  // Largest root-to-leaf bit cost.
  int MaxPathBits() const;
  int NumLeaves() const;
  // Nodes of the subtree rooted at id, in preorder.
  std::vector<NodeId> Subtree(NodeId id) const;

  bool normalized = false;
  bool no_negative_transfers = false;

  // Throws an input error describing the first broken invariant: totality,
  // single root, reachability, acyclicity, feasibility of leaves, declared
  // flags, node cap.
  void Validate() const;

 private:
  int num_players_ = 0;
  int num_items_ = 0;
  NodeId root_ = 0;
  std::vector<Node> nodes_;
};

// Equal shape, speakers, alphabets, outcomes and flags, ignoring node ids.
bool StructurallyEqual(const ProtocolTree& a, const ProtocolTree& b);

// behavior[node] is the message sent at that node, -1 where unspecified.
using Behavior = std::vector<int>;

struct StrategyProfile {
  // strategies[i][k]: behavior of player i with its k-th domain valuation.
  std::vector<std::vector<Behavior>> strategies;
};

// domains[i] is player i's finite valuation domain.
using Domains = std::vector<std::vector<Valuation>>;

struct Evaluation {
  NodeId leaf = 0;
  Outcome outcome;
  int bits = 0;
  std::vector<NodeId> path;  // Root to leaf.
};

// One behavior per player.
Evaluation Evaluate(const ProtocolTree& tree,
                    const std::vector<Behavior>& behaviors);

// Behaviors of a valuation profile (one domain index per player).
std::vector<Behavior> BehaviorsFor(const StrategyProfile& s,
                                   const std::vector<int>& profile);

// All valuation-index profiles of a product domain, last player fastest.
std::vector<std::vector<int>> AllProfiles(const std::vector<int>& sizes);
std::vector<int> DomainSizes(const Domains& domains);

Rat Profit(const Outcome& outcome, int player, const Valuation& v);

struct MinimizeResult {
  ProtocolTree tree;
  StrategyProfile strategies;
};

// Prunes messages never sent at reachable nodes and collapses nodes where
// only one message profile remains.
MinimizeResult Minimize(const ProtocolTree& tree,
                        const StrategyProfile& strategies,
                        const Domains& domains);

struct InducedTree {
  const ProtocolTree* tree = nullptr;
  NodeId base = 0;
  int player = 0;
  // Messages of the other speakers at base, in speaker order without player.
  Profile others;
  // subtrees[z] is the child reached when the player sends z.
  std::vector<NodeId> subtrees;
};

struct LeafView {
  NodeId leaf;
  int subtree;  // Index z of the subtree holding the leaf.
  Bundle bundle;
  Rat payment;
};

InducedTree MakeInducedTree(const ProtocolTree& tree, NodeId u, int player,
                            const Profile& others);
// The player's (bundle, payment) projection of every leaf.
std::vector<LeafView> InducedLeaves(const InducedTree& it);
// Every opponent profile at u for the player, in index order.
std::vector<Profile> OtherProfiles(const ProtocolTree& tree, NodeId u,
                                   int player);

struct PaymentUniquenessReport {
  bool ok = true;
  Bundle bundle;
  NodeId leaf_a = -1;
  NodeId leaf_b = -1;
  Rat price_a;
  Rat price_b;
};

PaymentUniquenessReport CheckPaymentUniqueness(const InducedTree& it);

std::optional<Rat> MinimalPrice(const InducedTree& it, const Bundle& s);

struct ContainmentReport {
  bool ok = true;
  NodeId smaller_leaf = -1;  // Leaf with bundle S.
  NodeId larger_leaf = -1;   // Leaf in another subtree with a superset of S.
  Rat smaller_price;
  Rat larger_price;
};

// Leaves in different subtrees with bundles S and T containing S must have
// price(T) >= price(S).
ContainmentReport CheckContainmentMonotone(const InducedTree& it);

bool IsDecisive(const InducedTree& it, const Bundle& s, const Rat& p);

// Best v(S) - p_S over bundles S decisive at their minimal price; none when
// no bundle is decisive.
std::optional<Rat> GuaranteedProfit(const InducedTree& it, const Valuation& v);

struct SemiSimultaneousEntry {
  int player;
  NodeId vertex;
  Profile others;
  // Index of the special subtree, -1 when every leaf is decisive.
  int special = -1;
};

struct SemiSimultaneousReport {
  bool ok = true;
  std::vector<SemiSimultaneousEntry> special;
  // Witness: two subtrees that each hold a non-decisive leaf.
  int player = -1;
  NodeId vertex = -1;
  Profile others;
  NodeId leaf_a = -1;
  NodeId leaf_b = -1;
  int subtree_a = -1;
  int subtree_b = -1;
};

SemiSimultaneousReport CheckSemiSimultaneous(const ProtocolTree& tree,
                                             const StrategyProfile& strategies,
                                             const Domains& domains);

// Vertices where the player's strategies first disagree across its domain,
// over the paths reachable under the domain.
std::vector<NodeId> FirstNonTrivialVertices(const ProtocolTree& tree,
                                            const StrategyProfile& strategies,
                                            const Domains& domains,
                                            int player);

}  // namespace mechlab

#endif  // MECHLAB_PROTOCOL_TREE_H_
