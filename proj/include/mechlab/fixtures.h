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

#ifndef MECHLAB_FIXTURES_H_
#define MECHLAB_FIXTURES_H_

#include <functional>
#include <string>
#include <vector>

#include "mechlab/equilibrium.h"
#include "mechlab/multiunit.h"
#include "mechlab/protocol_tree.h"

namespace mechlab {

// A protocol tree together with a finite domain and the strategies each
// domain valuation follows.
struct Mechanism {
  std::string name;
  ProtocolTree tree;
  StrategyProfile strategies;
  Domains domains;
};

// Single-item valuation worth `value` for the item (item 0 of m).
Valuation SingleItem(int m, int value);

// Two bidders bid in 0..levels-1 at once; the higher bid wins the item and
// pays the other bid, ties going to the first bidder. Domain: values
// 0..levels-1 with truthful bids.
Mechanism SealedBidSecondPrice(int levels);

// The first bidder bids in 0..first_levels-1, then the second bidder, having
// seen it, bids in 0..second_levels-1. Same winner and price rule. The first
// bidder's domain is `first_values`; the second bidder's is
// 0..second_levels-1. Both bid truthfully.
Mechanism SerialSecondPrice(const std::vector<int>& first_values,
                            int first_levels, int second_levels);

// SealedBidSecondPrice behind an extra round in which the first bidder has
// two messages but always sends the first.
Mechanism PaddedSealedBid(int levels);

// Two players each choose between two messages at the root; two of the four
// children are internal nodes whose leaves give player 0 different bundles.
Mechanism FigureOneTree();

// One bidder picks between two leaves that both grant item 0, at prices 1
// and 2.
ProtocolTree PriceConflictTree();

// Ascending clock auction for the grand bundle of m items. Each round
// k = 0..top both bidders say stay (1) or drop (0); a lone stayer wins at
// price k; two drops leave the bundle unsold; if both stay at the top price
// the first bidder wins. Domain: bundle values 0..top, stay iff value > k.
Mechanism AscendingAuction(int m, int top);

// Player 0 picks one of two subtrees; in each, player 1 either sells item 0
// to player 0 at price 1 or gives nothing. Both players have two valuations
// that send different messages, so the tree is minimal.
Mechanism NonSemiSimultaneousTree();

// A single bidder accepts item 0 at `price` (message 1) or declines.
// Domain: `values`, accepting iff value >= price.
Mechanism PostedPrice(int price, const std::vector<int>& values);

using DirectRule = std::function<Outcome(const std::vector<int>& profile)>;

// One simultaneous round in which every player names its domain index;
// leaves are given by the rule. Truthful strategies.
Mechanism DirectMechanism(std::string name, int num_items, Domains domains,
                          const DirectRule& rule);

// Gives each player a consecutive range of items, in player order.
Outcome LiftUnits(int m, const std::vector<int>& units,
                  const std::vector<Rat>& payments);

// Two-player direct mechanism over count valuations with the given
// mechanism's allocation and payments.
Mechanism MultiUnitDirect(std::string name,
                          const std::vector<MarginalVector>& alice,
                          const std::vector<MarginalVector>& bob,
                          const TwoPlayerMechanism& mechanism);

// Direct mechanism for n bidders over count valuations: block-range optimum
// with block size q, charged range VCG payments.
Mechanism RangeVcgDirect(const std::vector<std::vector<MarginalVector>>& domains,
                         int q);

// Social-choice table of a two-player count mechanism.
SocialChoiceTable MultiUnitTable(const std::vector<MarginalVector>& alice,
                                 const std::vector<MarginalVector>& bob,
                                 const TwoPlayerMechanism& mechanism);

// Every count valuation over m units whose marginals are non-increasing and
// drawn from `levels`.
std::vector<MarginalVector> MarginalLevelDomain(int m,
                                                const std::vector<int>& levels);

// The truthful, dominant-strategy fixtures used by corpus-wide checks.
std::vector<Mechanism> DominantCorpus();

}  // namespace mechlab

#endif  // MECHLAB_FIXTURES_H_
