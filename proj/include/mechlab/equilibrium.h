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

#ifndef MECHLAB_EQUILIBRIUM_H_
#define MECHLAB_EQUILIBRIUM_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mechlab/bundle.h"
#include "mechlab/multiunit.h"
#include "mechlab/protocol_tree.h"
#include "mechlab/rat.h"

namespace mechlab {

enum class DominanceMethod { kStitch, kOracle, kBoth };

struct ViolationCertificate {
  int player = -1;
  int valuation = -1;
  // Node where the deviation first departs from the honest behavior.
  NodeId node = -1;
  // Messages of the other speakers at that node.
  Profile others;
  int honest_message = -1;
  int deviation_message = -1;
  // Full behavior of the deviating player.
  Behavior deviation;
  // One behavior per player; the deviating player's entry is its honest
  // behavior.
  std::vector<Behavior> opponents;
  Rat honest_profit;
  Rat deviating_profit;
};

struct DominanceVerdict {
  int player;
  int valuation;
  bool ok;
};

struct DominanceOptions {
  DominanceMethod method = DominanceMethod::kStitch;
  // Largest number of tree evaluations the exhaustive method may spend.
  std::uint64_t oracle_budget = 20'000'000;
  // Keep one certificate per violating (player, valuation) instead of the
  // first only.
  bool collect_all = false;
};

struct DominanceReport {
  bool ok = true;
  std::vector<DominanceVerdict> verdicts;
  // Ordered by (player, valuation, node).
  std::vector<ViolationCertificate> certificates;
  // Both methods ran and reached the same verdict for every valuation.
  bool agree = true;
  std::uint64_t oracle_evaluations = 0;
};

// Throws a capability error when the exhaustive method exceeds its budget.
DominanceReport CheckDominant(const ProtocolTree& tree,
                              const StrategyProfile& strategies,
                              const Domains& domains,
                              const DominanceOptions& options = {});

std::string DescribeCertificate(const ProtocolTree& tree,
                                const ViolationCertificate& c);

// Outcomes over the product domain, last player fastest.
struct SocialChoiceTable {
  Domains domains;
  std::vector<Outcome> outcomes;

  std::vector<int> sizes() const { return DomainSizes(domains); }
  std::size_t Index(const std::vector<int>& profile) const;
  const Outcome& At(const std::vector<int>& profile) const {
    return outcomes.at(Index(profile));
  }
};

SocialChoiceTable TableFromTree(const ProtocolTree& tree,
                                const StrategyProfile& strategies,
                                const Domains& domains);

struct ExpostReport {
  bool ok = true;
  int player = -1;
  int valuation = -1;
  int misreport = -1;
  std::vector<int> profile;  // True profile; the player's entry is valuation.
  Rat honest_profit;
  Rat deviating_profit;
};

// First violation in (player, valuation, misreport, others) order.
ExpostReport CheckExpost(const SocialChoiceTable& table);

struct TaxationMenu {
  std::map<Bundle, Rat> menu;
  // Every report's outcome maximizes profit over the menu.
  bool consistent = true;
  int failing_valuation = -1;
};

// Prices the player faces when the others report `profile` (the player's own
// entry is ignored). Throws a taxation error when one bundle gets two prices.
TaxationMenu ExtractTaxationMenu(const SocialChoiceTable& table, int player,
                                 std::vector<int> profile);

struct MuOutcome {
  int alice = 0;
  int bob = 0;
  Rat alice_payment;
  Rat bob_payment;
};

using TwoPlayerMechanism =
    std::function<MuOutcome(const MarginalVector&, const MarginalVector&)>;

// Exact-optimum allocation with VCG payments.
MuOutcome VcgMechanism(const MarginalVector& va, const MarginalVector& vb);

struct PaymentsSketchReport {
  bool ok = true;
  std::size_t checked = 0;
  int failing_member = -1;
  int failing_x = -1;
  Rat price;
  Rat center;
  std::string reason;
};

// For every first-player valuation in the slice and x in 1..m-1, reads the
// price of x units to the second player by probing with a valuation that
// wins exactly x units, and checks it is within 1/(8m) of the VCG price.
PaymentsSketchReport PaymentsSketchCheck(
    const TwoPlayerMechanism& mechanism,
    const std::vector<MarginalVector>& slice);

// The probe used above: huge marginals for the first x - 1 units, then just
// above the first player's matching marginal, then nothing.
MarginalVector SketchProbe(const MarginalVector& va, int x);

}  // namespace mechlab

#endif  // MECHLAB_EQUILIBRIUM_H_
