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

#ifndef MECHLAB_SIMULTANEOUS_H_
#define MECHLAB_SIMULTANEOUS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mechlab/bundle.h"
#include "mechlab/matroid.h"
#include "mechlab/rat.h"
#include "mechlab/valuation.h"

namespace mechlab {

// A generated auction: bidders are split into groups, each group has a
// private block of items and every group shares one central block.
struct AuctionInstance {
  std::string generator;
  std::uint64_t seed = 0;
  int m = 0;
  std::vector<Valuation> valuations;
  std::vector<int> group_of;
  std::vector<Bundle> special_sets;  // One per group.
  Bundle shared;
  std::vector<int> special_bidder;  // One per group.
  // The sets each bidder is interested in, as item bundles.
  std::vector<std::vector<Bundle>> interests;
  // Resolved parameters, as decimal strings.
  std::map<std::string, std::string> params;
  // Rounding and overrides applied while resolving parameters.
  std::vector<std::string> notes;

  int num_bidders() const { return static_cast<int>(valuations.size()); }
  int num_groups() const { return static_cast<int>(special_sets.size()); }
};

struct HardGeneralParams {
  int m = 16;
  Rat epsilon{1, 2};
  int t = 8;                // Sets per group family.
  int group_size = 0;       // 0 selects m.
};

// Binary valuations: a bidder is satisfied by any superset of one of its
// interest sets. Each group family holds the group's private block and t - 1
// uniform sets of the same size over the private and shared blocks; every
// set is given to a uniform bidder of the group.
AuctionInstance GenHardGeneral(const HardGeneralParams& params,
                               std::uint64_t seed);

struct HardMatroidParams {
  int m = 256;
  // Each override replaces the corresponding default formula in m.
  std::optional<int> group_size;
  std::optional<int> block_size;  // Size of each private block.
  std::optional<int> k;           // Sets per group family.
  std::optional<int> b;           // Rank of a set the bidder does not hold.
  int samples = 200;              // Sampled axiom checks per bidder.
  int retry_cap = 64;
};

// Overrides that make m = 256 tractable: groups of 2, blocks of 4, k = 8,
// b = 2.
HardMatroidParams DeskMatroidParams();

// Matroid-rank valuations over rank profiles sharing one family per group;
// one random family set is embedded onto the group's private block and the
// rest of the ground set onto the shared block.
AuctionInstance GenHardMatroid(const HardMatroidParams& params,
                               std::uint64_t seed);

// Private blocks to their special bidders, then the shared block handed
// out in chunks of `chunk` items to the other bidders in order (chunk 0
// leaves it unassigned).
std::vector<Bundle> SpecializedAllocation(const AuctionInstance& inst,
                                          int chunk);

Rat Welfare(const AuctionInstance& inst, const std::vector<Bundle>& bundles);

// Throws an infeasibility error unless the bundles are pairwise disjoint,
// one per bidder, over the instance's items.
void CheckFeasible(const AuctionInstance& inst,
                   const std::vector<Bundle>& bundles);

struct PackingResult {
  int welfare = 0;
  // Special bidders holding their group's private block, maximized among
  // optimal packings.
  int specials_with_block = 0;
  std::vector<Bundle> bundles;
};

// Largest number of bidders satisfied by disjoint interest sets.
PackingResult MaxPacking(const AuctionInstance& inst);

struct WelfareDecomposition {
  int opt = 0;
  int specials_with_block = 0;
  // Largest packing that uses no private block.
  int other_sets = 0;
  bool holds = false;  // opt <= 1 + specials_with_block.
};

WelfareDecomposition DecomposeWelfare(const AuctionInstance& inst);

// A bidder's private view during a simultaneous round.
struct BidderView {
  int player = 0;
  int group = 0;
  int m = 0;
  const Valuation* valuation = nullptr;
  const std::vector<Bundle>* interests = nullptr;
  // Hidden ground truth; only the diagnostic cheat reads it.
  bool is_special = false;
};

// What the allocator may see besides the messages.
struct PublicInfo {
  int m = 0;
  int num_bidders = 0;
  std::vector<int> group_of;
};

using Message = std::string;  // Characters '0' and '1'.

enum class BudgetScope { kPerPlayer, kPerGroup };

struct SimAlgorithm {
  std::string name;
  int budget_bits = -1;  // -1 for unbounded.
  BudgetScope scope = BudgetScope::kPerPlayer;
  std::function<Message(const BidderView&)> message;
  std::function<std::vector<Bundle>(const std::vector<Message>&,
                                    const PublicInfo&)>
      allocate;
};

struct SimRun {
  std::vector<Message> messages;
  std::vector<Bundle> bundles;
  Rat welfare;
  int max_bits = 0;
};

std::vector<BidderView> BidderViews(const AuctionInstance& inst);

// Throws a budget error naming the first player (or group) over budget and
// an infeasibility error on an infeasible allocation.
SimRun RunSimultaneous(const SimAlgorithm& alg, const AuctionInstance& inst);

SimAlgorithm SilentAlgorithm();
// Each bidder sends its first interest set as an m-bit mask (nothing when it
// has none); requests are granted in player order while they stay disjoint.
SimAlgorithm TopSetFirstCome(int m);
// Each bidder sends the first `bits` bits of the union of its interest sets;
// the allocator grants nothing.
SimAlgorithm TruncatedReport(int bits, BudgetScope scope = BudgetScope::kPerPlayer,
                             int budget = -1);
// Every interest set as consecutive m-bit masks; the allocator packs them
// optimally. Tiny instances only.
SimAlgorithm ExactReport(int m);
// One bit saying whether the bidder is special. Reads hidden state, so it is
// not a legitimate algorithm.
SimAlgorithm SpecialCheat(BudgetScope scope = BudgetScope::kPerGroup,
                          int budget = -1);

// One group of the general distribution with a fixed family. Each draw picks
// the owner of every set and which set plays the private block.
struct GroupDistribution {
  int m = 8;  // Items of the group: private and shared blocks.
  int group_size = 4;
  std::vector<Bundle> family;
};

GroupDistribution MakeGroupDistribution(int m, int group_size, int t,
                                        int set_size, std::uint64_t seed);
AuctionInstance SampleGroup(const GroupDistribution& dist, std::uint64_t seed,
                            std::uint64_t draw);

enum class TupleClass { kFrequent, kBorderline, kRare };
const char* TupleClassName(TupleClass c);

struct TupleStat {
  std::vector<Message> messages;
  std::uint64_t count = 0;
  TupleClass cls = TupleClass::kRare;
  // biased[i]: family sets whose conditional membership for bidder i
  // exceeds 7 / |group|.
  std::vector<int> biased;
  // Largest conditional probability that a bidder is special.
  Rat special_posterior;
};

struct FrequentStats {
  int samples = 0;
  int budget_bits = 0;
  int group_size = 0;
  int bound = 0;  // budget_bits * group_size.
  std::vector<TupleStat> tuples;  // In message order.
  int max_biased_frequent = 0;
  bool within_bound = true;
  // Some bidder sent two messages for the same interest sets.
  bool inconsistent = false;
  std::string inconsistency;
  Rat max_special_posterior;  // Over frequent tuples.
  bool flagged = false;       // inconsistent or bound exceeded.
};

// Frequent: count >= 2N / 4^L. Rare: count < N / (2 * 4^L). Otherwise
// borderline.
FrequentStats FrequentMessageStats(const SimAlgorithm& alg,
                                   const GroupDistribution& dist, int samples,
                                   int budget_bits, std::uint64_t seed);

}  // namespace mechlab

#endif  // MECHLAB_SIMULTANEOUS_H_
