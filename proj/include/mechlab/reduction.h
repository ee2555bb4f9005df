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

#ifndef MECHLAB_REDUCTION_H_
#define MECHLAB_REDUCTION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mechlab/bundle.h"
#include "mechlab/fixtures.h"
#include "mechlab/protocol_tree.h"
#include "mechlab/rat.h"
#include "mechlab/rng.h"
#include "mechlab/simultaneous.h"
#include "mechlab/valuation.h"

namespace mechlab {

// Domain entry weight * (1 + noise_index / 4^m) * base.
struct WeightedEntry {
  int base = 0;
  Rat weight;
  int noise_index = 0;
};

// A mechanism whose domains are scaled, noisy copies of base valuations,
// together with the group structure of the bidders.
struct WeightedMechanism {
  Mechanism mech;
  // bases[i][b]: player i's base valuations, each with a valuable set.
  std::vector<std::vector<Valuation>> bases;
  // entries[i][k] describes mech.domains[i][k].
  std::vector<std::vector<WeightedEntry>> entries;
  std::vector<int> group_of;
  std::vector<Bundle> special_sets;  // One per group.
};

// Noise lattice point k / 4^m; k in 0..3^m.
Rat NoiseValue(int m, int index);
int NoiseBits(int m);

// Two bidders in one group over four items with private block {0, 1}. Base
// valuations: wants {0, 1}, or wants {1, 2}. Weights 1 and 2, one fixed
// noise per bidder. Direct mechanism with welfare-maximizing allocation and
// VCG payments.
WeightedMechanism ToyWeightedMechanism(int noise_index_a = 2,
                                       int noise_index_b = 1);

struct ReductionMessage {
  Message bits;
  int domain_index = -1;  // The valuation the bidder built.
  // Decoded blocks.
  int z = -1;  // -1 when the bidder does not speak at the vertex.
  bool double_weight = false;
  bool critical = false;
  Bundle base_set;
  int noise_index = 0;
};

struct GrantDiagnostic {
  int player = -1;
  int witness = -1;  // Domain index of the consistent valuation.
  NodeId leaf = -1;
  Rat profit;
  std::string reason;
};

struct ReductionAllocation {
  std::vector<Bundle> bundles;
  // Grants refused because a reached leaf gives a valuable set at zero
  // profit.
  std::vector<GrantDiagnostic> rejected;
};

class SimultaneousReduction {
 public:
  // Throws a parameter error unless every profile of the domain passes
  // through x.
  SimultaneousReduction(const WeightedMechanism& wm, NodeId x,
                        const Rat& alpha_star);

  NodeId vertex() const { return x_; }
  const Rat& alpha_star() const { return alpha_star_; }

  // Whether the bidder sends different messages at x with weights alpha*
  // and 2 alpha*, for a base and noise.
  bool IsCritical(int player, int base, int noise_index) const;

  // Builds the bidder's valuation (drawing the weight, or a valuable set
  // when the weight is not critical) and encodes the five blocks.
  ReductionMessage Encode(int player, int base, int noise_index,
                          Rng& coins) const;
  // Encodes a given domain valuation as if it had been drawn.
  ReductionMessage EncodeEntry(int player, int domain_index) const;
  ReductionMessage Decode(int player, const Message& bits) const;

  ReductionAllocation Allocate(const std::vector<Message>& messages) const;

  // Whether the bidder, following valuation k's strategy after the vertex
  // with the others' vertex messages fixed, ends at a leaf where it wins a
  // valuable set against every continuation. zero_profit_leaf is set to a
  // reached valuable leaf with non-positive profit, or -1.
  bool GuaranteesValuableSet(int player, int k, const Profile& profile_at_x,
                             NodeId* zero_profit_leaf) const;

 private:
  int FindEntry(int player, int base, const Rat& weight, int noise) const;
  int ZWidth(int player) const;
  int MessageAt(int player, int k) const;
  void Pack(int player, ReductionMessage* msg) const;

  const WeightedMechanism& wm_;
  NodeId x_;
  Rat alpha_star_;
  int m_;
};

struct CriticalCandidate {
  NodeId vertex;
  Rat alpha;
  // Bidders with some base and noise for which alpha is critical.
  std::vector<int> players;
};

// Exhaustive search for tiny mechanisms: every common-prefix vertex and
// domain weight alpha with 2 alpha also in the domain.
std::vector<CriticalCandidate> ScanCriticalWeights(const WeightedMechanism& wm);

}  // namespace mechlab

#endif  // MECHLAB_REDUCTION_H_
