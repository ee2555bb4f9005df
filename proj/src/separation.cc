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

#include "mechlab/separation.h"

#include <algorithm>

#include "mechlab/errors.h"
#include "mechlab/rng.h"

namespace mechlab {
namespace {

// Player p keys on item kKeyItem[p] and tests the bundle indexed by the key
// of player kSource[p]; a pass awards item kPrize[p] to player kWinner[p].
constexpr int kKeyItem[3] = {SeparationF::kItemC, SeparationF::kItemA,
                             SeparationF::kItemB};
constexpr int kSource[3] = {2, 0, 1};
constexpr int kPrize[3] = {SeparationF::kItemB, SeparationF::kItemC,
                           SeparationF::kItemA};
constexpr int kWinner[3] = {1, 2, 0};

int IntValue(const Valuation& v, const Bundle& s) {
  const Rat r = v.Value(s);
  if (!r.is_integer() || r.sign() < 0) {
    throw Error(ErrorKind::kInput, "separation values must be non-negative "
                                   "integers");
  }
  const mpz_class z = r.num();
  return z.fits_sint_p() ? static_cast<int>(z.get_si()) : INT32_MAX;
}

int Key(const Valuation& v, int player, int m) {
  return IntValue(v, Bundle(m, {kKeyItem[player]}));
}

// The bit player p sends given the key it reads.
int TestBit(const SeparationF& f, const Valuation& v, int key) {
  if (key < 1 || key > f.num_sets()) return 0;
  return v.Value(f.Set(key)) < Rat(1) ? 1 : 0;
}

Outcome LeafOutcome(int m, const std::vector<int>& keys,
                    const std::vector<int>& bits, int num_sets) {
  Outcome o;
  o.allocation.assign(3, Bundle(m));
  o.payments.assign(3, Rat(0));
  for (int p = 0; p < 3; ++p) {
    const int key = keys[kSource[p]];
    if (key >= 1 && key <= num_sets && bits[p] == 1) {
      o.allocation[kWinner[p]].Insert(kPrize[p]);
    }
  }
  return o;
}

}  // namespace

SeparationF::SeparationF(int m) : m_(m) {
  if (m < 4 || m > 20 || m % 2 != 0) {
    throw Error(ErrorKind::kParameter, "separation needs even m in [4, 20]");
  }
  std::vector<int> pick(m, 0);
  std::fill(pick.begin(), pick.begin() + m / 2, 1);
  // prev_permutation over a descending 1/0 pattern walks subsets in
  // lexicographic order of their sorted item lists.
  do {
    Bundle s(m);
    for (int i = 0; i < m; ++i) {
      if (pick[i]) s.Insert(i);
    }
    sets_.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

int SeparationF::IndexOf(const Bundle& s) const {
  const auto it = std::find(sets_.begin(), sets_.end(), s);
  if (it == sets_.end()) return -1;
  return static_cast<int>(it - sets_.begin()) + 1;
}

Outcome SeparationF::Apply(const Valuation& va, const Valuation& vb,
                           const Valuation& vc) const {
  const Valuation* v[3] = {&va, &vb, &vc};
  std::vector<int> keys(3), bits(3);
  for (int p = 0; p < 3; ++p) keys[p] = Key(*v[p], p, m_);
  for (int p = 0; p < 3; ++p) bits[p] = TestBit(*this, *v[p], keys[kSource[p]]);
  return LeafOutcome(m_, keys, bits, num_sets());
}

int SeparationBitBound(int m) {
  int bits = 0;
  while ((std::uint64_t{1} << bits) < (std::uint64_t{1} << m) + 1) ++bits;
  return 3 * bits + 3;
}

Mechanism SeparationProtocol(int m, Domains domains) {
  const SeparationF f(m);
  if (domains.size() != 3) {
    throw Error(ErrorKind::kDimension, "separation needs three domains");
  }
  const long k = (1L << m) + 1;
  if (k * k * k * 9 + 1 > kMaxTreeNodes) {
    throw Error(ErrorKind::kCapability,
                "separation tree for m = " + std::to_string(m) +
                    " exceeds the node cap");
  }
  Mechanism mech;
  mech.name = "separation-" + std::to_string(m);
  ProtocolTree& t = mech.tree;
  t = ProtocolTree(3, m);
  const int alpha = static_cast<int>(k);
  const NodeId root = t.AddInternal({0, 1, 2}, {alpha, alpha, alpha});
  // second[index of key profile] = the bit node.
  std::vector<NodeId> second;
  for (int idx = 0; idx < t.NumProfiles(root); ++idx) {
    const Profile keys = t.ProfileAt(root, idx);
    const NodeId node = t.AddInternal({0, 1, 2}, {2, 2, 2});
    t.SetChild(root, keys, node);
    for (int b = 0; b < 8; ++b) {
      const Profile bits = t.ProfileAt(node, b);
      t.SetChild(node, bits,
                 t.AddLeaf(LeafOutcome(m, keys, bits, f.num_sets())));
    }
    second.push_back(node);
  }
  t.set_root(root);
  t.normalized = t.no_negative_transfers = true;
  mech.strategies.strategies.resize(3);
  for (int p = 0; p < 3; ++p) {
    for (const Valuation& v : domains[p]) {
      Behavior b(t.size(), -1);
      b[root] = std::min(Key(v, p, m), alpha - 1);
      for (int idx = 0; idx < t.NumProfiles(root); ++idx) {
        const Profile keys = t.ProfileAt(root, idx);
        b[second[idx]] = TestBit(f, v, keys[kSource[p]]);
      }
      mech.strategies.strategies[p].push_back(std::move(b));
    }
  }
  mech.domains = std::move(domains);
  return mech;
}

Domains SeparationDomain(int m, int count, int max_value,
                         const std::vector<int>& keys, std::uint64_t seed) {
  if (keys.empty() || count < 1) {
    throw Error(ErrorKind::kParameter, "separation domain needs keys");
  }
  const std::uint64_t n = std::uint64_t{1} << m;
  Domains domains(3);
  for (int p = 0; p < 3; ++p) {
    Rng rng("separation-domain", seed, "player-" + std::to_string(p));
    for (int c = 0; c < count; ++c) {
      std::vector<Rat> values(n);
      for (std::uint64_t mask = 1; mask < n; ++mask) {
        values[mask] = Rat(static_cast<long>(rng.Range(0, max_value)));
      }
      values[std::uint64_t{1} << kKeyItem[p]] =
          Rat(keys[(c + p) % keys.size()]);
      domains[p].push_back(Valuation::Table(m, std::move(values)));
    }
  }
  return domains;
}

IndexInstance IndexReduction(const SeparationF& f, const std::vector<int>& arr,
                             int j) {
  const int m = f.m();
  if (static_cast<int>(arr.size()) != f.num_sets()) {
    throw Error(ErrorKind::kParameter,
                "array length must equal the number of half-size bundles");
  }
  if (j < 1 || j > f.num_sets()) {
    throw Error(ErrorKind::kParameter, "index out of range");
  }
  const std::uint64_t n = std::uint64_t{1} << m;
  std::vector<Rat> charlie(n), bob(n, Rat(1)), alice(n, Rat(1));
  for (std::uint64_t mask = 0; mask < n; ++mask) {
    const Bundle s = Bundle::FromMask(m, mask);
    const int size = s.Size();
    if (size < m / 2) {
      charlie[mask] = 0;
    } else if (size > m / 2) {
      charlie[mask] = 1;
    } else {
      // A one in the array must let the first player win, and the rule
      // awards on a value below 1, so the bit is stored complemented.
      charlie[mask] = 1 - arr[f.IndexOf(s) - 1];
    }
  }
  bob[0] = alice[0] = 0;
  bob[std::uint64_t{1} << SeparationF::kItemA] = j;
  return {Valuation::Table(m, std::move(alice)), Valuation::Table(m, std::move(bob)),
          Valuation::Table(m, std::move(charlie))};
}

}  // namespace mechlab
