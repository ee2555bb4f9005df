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

#include "mechlab/fixtures.h"

#include <algorithm>
#include <functional>
#include <utility>

#include "mechlab/errors.h"

namespace mechlab {
namespace {

Outcome Unsold(int n, int m) {
  return {std::vector<Bundle>(n, Bundle(m)), std::vector<Rat>(n, Rat(0))};
}

Outcome Sale(int n, int m, int winner, const Bundle& bundle, const Rat& price) {
  Outcome o = Unsold(n, m);
  o.allocation[winner] = bundle;
  o.payments[winner] = price;
  return o;
}

Outcome SecondPriceLeaf(int b0, int b1) {
  Bundle item(1, {0});
  return b0 >= b1 ? Sale(2, 1, 0, item, Rat(b1))
                  : Sale(2, 1, 1, item, Rat(b0));
}

// Adds a one-round second-price auction and returns its root.
NodeId AddSealedBid(ProtocolTree& tree, int levels) {
  NodeId root = tree.AddInternal({0, 1}, {levels, levels});
  for (int b0 = 0; b0 < levels; ++b0) {
    for (int b1 = 0; b1 < levels; ++b1) {
      tree.SetChild(root, {b0, b1}, tree.AddLeaf(SecondPriceLeaf(b0, b1)));
    }
  }
  return root;
}

std::vector<Valuation> ValueRange(int m, int levels) {
  std::vector<Valuation> out;
  for (int v = 0; v < levels; ++v) out.push_back(SingleItem(m, v));
  return out;
}

Valuation GrandBundle(int m, int value) {
  std::vector<Rat> table(std::size_t{1} << m, Rat(0));
  table.back() = Rat(value);
  return Valuation::Table(m, std::move(table));
}

}  // namespace

Valuation SingleItem(int m, int value) {
  std::vector<Rat> items(m, Rat(0));
  items.at(0) = Rat(value);
  return Valuation::Additive(std::move(items));
}

Mechanism SealedBidSecondPrice(int levels) {
  Mechanism mech;
  mech.name = "sealed-bid-" + std::to_string(levels);
  mech.tree = ProtocolTree(2, 1);
  NodeId root = AddSealedBid(mech.tree, levels);
  mech.tree.set_root(root);
  mech.tree.normalized = mech.tree.no_negative_transfers = true;
  mech.domains = {ValueRange(1, levels), ValueRange(1, levels)};
  mech.strategies.strategies.resize(2);
  for (int i = 0; i < 2; ++i) {
    for (int v = 0; v < levels; ++v) {
      Behavior b(mech.tree.size(), -1);
      b[root] = v;
      mech.strategies.strategies[i].push_back(b);
    }
  }
  return mech;
}

Mechanism SerialSecondPrice(const std::vector<int>& first_values,
                            int first_levels, int second_levels) {
  Mechanism mech;
  mech.name = "serial-second-price";
  ProtocolTree& t = mech.tree;
  t = ProtocolTree(2, 1);
  NodeId root = t.AddInternal({0}, {first_levels});
  std::vector<NodeId> second(first_levels);
  for (int b0 = 0; b0 < first_levels; ++b0) {
    second[b0] = t.AddInternal({1}, {second_levels});
    t.SetChild(root, {b0}, second[b0]);
    for (int b1 = 0; b1 < second_levels; ++b1) {
      t.SetChild(second[b0], {b1}, t.AddLeaf(SecondPriceLeaf(b0, b1)));
    }
  }
  t.set_root(root);
  t.normalized = t.no_negative_transfers = true;
  mech.strategies.strategies.resize(2);
  for (int v : first_values) {
    if (v < 0 || v >= first_levels) {
      throw Error(ErrorKind::kParameter, "first bidder value outside bids");
    }
    mech.domains.resize(1);
    mech.domains[0].push_back(SingleItem(1, v));
    Behavior b(t.size(), -1);
    b[root] = v;
    mech.strategies.strategies[0].push_back(b);
  }
  mech.domains.push_back(ValueRange(1, second_levels));
  for (int w = 0; w < second_levels; ++w) {
    Behavior b(t.size(), -1);
    for (NodeId u : second) b[u] = w;
    mech.strategies.strategies[1].push_back(b);
  }
  return mech;
}

Mechanism PaddedSealedBid(int levels) {
  Mechanism mech;
  mech.name = "padded-sealed-bid-" + std::to_string(levels);
  ProtocolTree& t = mech.tree;
  t = ProtocolTree(2, 1);
  NodeId root = t.AddInternal({0}, {2});
  NodeId inner = AddSealedBid(t, levels);
  t.SetChild(root, {0}, inner);
  t.SetChild(root, {1}, t.AddLeaf(Unsold(2, 1)));
  t.set_root(root);
  t.normalized = t.no_negative_transfers = true;
  mech.domains = {ValueRange(1, levels), ValueRange(1, levels)};
  mech.strategies.strategies.resize(2);
  for (int i = 0; i < 2; ++i) {
    for (int v = 0; v < levels; ++v) {
      Behavior b(t.size(), -1);
      if (i == 0) b[root] = 0;
      b[inner] = v;
      mech.strategies.strategies[i].push_back(b);
    }
  }
  return mech;
}

Mechanism FigureOneTree() {
  Mechanism mech;
  mech.name = "figure-one";
  ProtocolTree& t = mech.tree;
  t = ProtocolTree(2, 2);
  NodeId u = t.AddInternal({0, 1}, {2, 2});
  std::vector<NodeId> followups;
  for (int z0 = 0; z0 < 2; ++z0) {
    for (int z1 = 0; z1 < 2; ++z1) {
      if (z1 == 0) {
        // The first player's two messages lead to two different offers.
        NodeId v = t.AddInternal({1}, {2});
        t.SetChild(u, {z0, z1}, v);
        Bundle offered(2, {z0});
        t.SetChild(v, {0},
                   t.AddLeaf(Sale(2, 2, 0, offered, Rat(1 + z0))));
        t.SetChild(v, {1}, t.AddLeaf(Unsold(2, 2)));
        followups.push_back(v);
      } else {
        t.SetChild(u, {z0, z1}, t.AddLeaf(Unsold(2, 2)));
      }
    }
  }
  t.set_root(u);
  t.normalized = t.no_negative_transfers = true;
  mech.strategies.strategies.resize(2);
  mech.domains.resize(2);
  for (int k = 0; k < 2; ++k) {
    mech.domains[0].push_back(Valuation::Additive({Rat(3 + k), Rat(3 - k)}));
    Behavior b0(t.size(), -1);
    b0[u] = k;
    mech.strategies.strategies[0].push_back(b0);
    mech.domains[1].push_back(Valuation::Additive({Rat(k), Rat(k)}));
    Behavior b1(t.size(), -1);
    b1[u] = k;
    for (NodeId v : followups) b1[v] = k;
    mech.strategies.strategies[1].push_back(b1);
  }
  return mech;
}

ProtocolTree PriceConflictTree() {
  ProtocolTree t(2, 1);
  NodeId root = t.AddInternal({0}, {2});
  Bundle item(1, {0});
  t.SetChild(root, {0}, t.AddLeaf(Sale(2, 1, 0, item, Rat(1))));
  t.SetChild(root, {1}, t.AddLeaf(Sale(2, 1, 0, item, Rat(2))));
  t.set_root(root);
  return t;
}

Mechanism AscendingAuction(int m, int top) {
  if (m < 1 || m > 10 || top < 1) {
    throw Error(ErrorKind::kParameter, "ascending auction needs 1 <= m <= 10");
  }
  Mechanism mech;
  mech.name = "ascending-" + std::to_string(top);
  ProtocolTree& t = mech.tree;
  t = ProtocolTree(2, m);
  const Bundle grand = Bundle::Full(m);
  std::vector<NodeId> level(top + 1);
  NodeId parent = -1;
  for (int k = 0; k <= top; ++k) {
    level[k] = t.AddInternal({0, 1}, {2, 2});
    if (parent >= 0) t.SetChild(parent, {1, 1}, level[k]);
    t.SetChild(level[k], {0, 0}, t.AddLeaf(Unsold(2, m)));
    t.SetChild(level[k], {0, 1}, t.AddLeaf(Sale(2, m, 1, grand, Rat(k))));
    t.SetChild(level[k], {1, 0}, t.AddLeaf(Sale(2, m, 0, grand, Rat(k))));
    parent = level[k];
  }
  t.SetChild(parent, {1, 1}, t.AddLeaf(Sale(2, m, 0, grand, Rat(top))));
  t.set_root(level[0]);
  t.normalized = t.no_negative_transfers = true;
  mech.domains.resize(2);
  mech.strategies.strategies.resize(2);
  for (int i = 0; i < 2; ++i) {
    for (int v = 0; v <= top; ++v) {
      mech.domains[i].push_back(GrandBundle(m, v));
      Behavior b(t.size(), -1);
      for (int k = 0; k <= top; ++k) b[level[k]] = v > k ? 1 : 0;
      mech.strategies.strategies[i].push_back(b);
    }
  }
  return mech;
}

Mechanism NonSemiSimultaneousTree() {
  Mechanism mech;
  mech.name = "non-semi-simultaneous";
  ProtocolTree& t = mech.tree;
  t = ProtocolTree(2, 1);
  NodeId root = t.AddInternal({0}, {2});
  std::vector<NodeId> offers;
  for (int z = 0; z < 2; ++z) {
    NodeId v = t.AddInternal({1}, {2});
    t.SetChild(root, {z}, v);
    t.SetChild(v, {0}, t.AddLeaf(Sale(2, 1, 0, Bundle(1, {0}), Rat(1))));
    t.SetChild(v, {1}, t.AddLeaf(Unsold(2, 1)));
    offers.push_back(v);
  }
  t.set_root(root);
  t.normalized = t.no_negative_transfers = true;
  mech.domains.resize(2);
  mech.strategies.strategies.resize(2);
  for (int k = 0; k < 2; ++k) {
    mech.domains[0].push_back(SingleItem(1, 3 + k));
    Behavior b0(t.size(), -1);
    b0[root] = k;
    mech.strategies.strategies[0].push_back(b0);
    mech.domains[1].push_back(SingleItem(1, k));
    Behavior b1(t.size(), -1);
    for (NodeId v : offers) b1[v] = k;
    mech.strategies.strategies[1].push_back(b1);
  }
  return mech;
}

Mechanism PostedPrice(int price, const std::vector<int>& values) {
  Mechanism mech;
  mech.name = "posted-price-" + std::to_string(price);
  ProtocolTree& t = mech.tree;
  t = ProtocolTree(1, 1);
  NodeId root = t.AddInternal({0}, {2});
  t.SetChild(root, {0}, t.AddLeaf(Unsold(1, 1)));
  t.SetChild(root, {1}, t.AddLeaf(Sale(1, 1, 0, Bundle(1, {0}), Rat(price))));
  t.set_root(root);
  t.normalized = t.no_negative_transfers = true;
  mech.domains.resize(1);
  mech.strategies.strategies.resize(1);
  for (int v : values) {
    mech.domains[0].push_back(SingleItem(1, v));
    Behavior b(t.size(), -1);
    b[root] = v >= price ? 1 : 0;
    mech.strategies.strategies[0].push_back(b);
  }
  return mech;
}

Mechanism DirectMechanism(std::string name, int num_items, Domains domains,
                          const DirectRule& rule) {
  Mechanism mech;
  mech.name = std::move(name);
  const int n = static_cast<int>(domains.size());
  ProtocolTree& t = mech.tree;
  t = ProtocolTree(n, num_items);
  std::vector<int> speakers(n);
  for (int i = 0; i < n; ++i) speakers[i] = i;
  const std::vector<int> sizes = DomainSizes(domains);
  NodeId root = t.AddInternal(speakers, sizes);
  for (const auto& profile : AllProfiles(sizes)) {
    t.SetChild(root, profile, t.AddLeaf(rule(profile)));
  }
  t.set_root(root);
  mech.strategies.strategies.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < sizes[i]; ++k) {
      Behavior b(t.size(), -1);
      b[root] = k;
      mech.strategies.strategies[i].push_back(b);
    }
  }
  mech.domains = std::move(domains);
  return mech;
}

Outcome LiftUnits(int m, const std::vector<int>& units,
                  const std::vector<Rat>& payments) {
  Outcome o;
  int next = 0;
  for (int u : units) {
    Bundle b(m);
    for (int k = 0; k < u; ++k) b.Insert(next++);
    o.allocation.push_back(b);
  }
  if (next > m) throw Error(ErrorKind::kInfeasible, "more units than items");
  o.payments = payments;
  return o;
}

namespace {

Domains LiftDomains(const std::vector<std::vector<MarginalVector>>& counts) {
  Domains out;
  for (const auto& d : counts) {
    out.emplace_back();
    for (const MarginalVector& v : d) out.back().push_back(v.Lift());
  }
  return out;
}

}  // namespace

Mechanism MultiUnitDirect(std::string name,
                          const std::vector<MarginalVector>& alice,
                          const std::vector<MarginalVector>& bob,
                          const TwoPlayerMechanism& mechanism) {
  const int m = alice.at(0).m();
  return DirectMechanism(
      std::move(name), m, LiftDomains({alice, bob}),
      [&](const std::vector<int>& p) {
        MuOutcome o = mechanism(alice[p[0]], bob[p[1]]);
        return LiftUnits(m, {o.alice, o.bob},
                         {o.alice_payment, o.bob_payment});
      });
}

Mechanism RangeVcgDirect(const std::vector<std::vector<MarginalVector>>& domains,
                         int q) {
  const int m = domains.at(0).at(0).m();
  return DirectMechanism(
      "range-vcg-q" + std::to_string(q), m, LiftDomains(domains),
      [&](const std::vector<int>& p) {
        std::vector<MarginalVector> vals;
        for (std::size_t i = 0; i < p.size(); ++i) {
          vals.push_back(domains[i][p[i]]);
        }
        auto optimizer = [&](const std::vector<bool>& active) {
          return RangeOptimum(vals, q, active);
        };
        MuAllocation chosen = optimizer(std::vector<bool>(vals.size(), true));
        return LiftUnits(m, chosen.units, VcgForRange(vals, optimizer));
      });
}

SocialChoiceTable MultiUnitTable(const std::vector<MarginalVector>& alice,
                                 const std::vector<MarginalVector>& bob,
                                 const TwoPlayerMechanism& mechanism) {
  const int m = alice.at(0).m();
  SocialChoiceTable table;
  table.domains = LiftDomains({alice, bob});
  for (const auto& p : AllProfiles(table.sizes())) {
    MuOutcome o = mechanism(alice[p[0]], bob[p[1]]);
    table.outcomes.push_back(
        LiftUnits(m, {o.alice, o.bob}, {o.alice_payment, o.bob_payment}));
  }
  return table;
}

std::vector<MarginalVector> MarginalLevelDomain(
    int m, const std::vector<int>& levels) {
  std::vector<int> sorted = levels;
  std::sort(sorted.rbegin(), sorted.rend());
  std::vector<MarginalVector> out;
  std::vector<Rat> marg;
  // Marginals are chosen as non-increasing sequences over the levels.
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    if (static_cast<int>(marg.size()) == m) {
      out.push_back(MarginalVector::FromMarginals(marg));
      return;
    }
    for (std::size_t k = from; k < sorted.size(); ++k) {
      marg.push_back(Rat(sorted[k]));
      extend(k);
      marg.pop_back();
    }
  };
  extend(0);
  return out;
}

std::vector<Mechanism> DominantCorpus() {
  std::vector<Mechanism> corpus;
  corpus.push_back(SealedBidSecondPrice(3));
  corpus.push_back(SealedBidSecondPrice(4));
  corpus.push_back(PaddedSealedBid(3));
  corpus.push_back(AscendingAuction(2, 3));
  corpus.push_back(PostedPrice(2, {0, 1, 2, 3}));
  std::vector<MarginalVector> dom = MarginalLevelDomain(3, {1, 3});
  corpus.push_back(MultiUnitDirect("multi-unit-vcg", dom, dom, VcgMechanism));
  corpus.push_back(RangeVcgDirect({dom, dom}, 2));
  return corpus;
}

}  // namespace mechlab
