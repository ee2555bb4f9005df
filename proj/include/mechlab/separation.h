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

#ifndef MECHLAB_SEPARATION_H_
#define MECHLAB_SEPARATION_H_

#include <cstdint>
#include <vector>

#include "mechlab/bundle.h"
#include "mechlab/fixtures.h"
#include "mechlab/protocol_tree.h"
#include "mechlab/valuation.h"

namespace mechlab {

// Three players (0, 1, 2) over m items with fixed items a = 0, b = 1,
// c = 2. Each player holds a key item: player 0 keys on c, player 1 on a,
// player 2 on b. The key value indexes a half-size bundle whose value for
// the next player decides whether the key item's owner gets it.
class SeparationF {
 public:
  static constexpr int kItemA = 0;
  static constexpr int kItemB = 1;
  static constexpr int kItemC = 2;

  // m even, 4 <= m <= 20.
  explicit SeparationF(int m);

  int m() const { return m_; }
  // Number of half-size bundles.
  int num_sets() const { return static_cast<int>(sets_.size()); }
  // Half-size bundle with 1-based index, in lexicographic order of sorted
  // item lists.
  const Bundle& Set(int index) const { return sets_.at(index - 1); }
  int IndexOf(const Bundle& s) const;

  // Zero payments. A key value outside 1..num_sets() leaves its item unsold.
  Outcome Apply(const Valuation& va, const Valuation& vb,
                const Valuation& vc) const;

 private:
  int m_;
  std::vector<Bundle> sets_;
};

// The two-phase protocol: all players announce their key value (alphabet
// 0..2^m), then each sends one bit saying whether its value for the bundle
// indexed by the previous player's key is below 1. Truthful strategies for
// the given domains.
Mechanism SeparationProtocol(int m, Domains domains);

// ceil(log2(2^m + 1)) bits per key, one bit per player afterwards.
int SeparationBitBound(int m);

// A random domain of `count` valuations per player with values in 0..max,
// whose key values cycle through `keys`.
Domains SeparationDomain(int m, int count, int max_value,
                         const std::vector<int>& keys, std::uint64_t seed);

struct IndexInstance {
  Valuation alice;
  Valuation bob;
  Valuation charlie;
};

// Charlie encodes the array on half-size bundles (0 below half size, 1
// above); Bob's key value is j, 1-based. Alice is the all-ones valuation.
// Throws a parameter error for a bad array length or index.
IndexInstance IndexReduction(const SeparationF& f,
                             const std::vector<int>& arr, int j);

}  // namespace mechlab

#endif  // MECHLAB_SEPARATION_H_
