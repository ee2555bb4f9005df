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

#include "mechlab/gs.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mechlab/errors.h"
#include "mechlab/rng.h"

namespace mechlab {
namespace {

using Wide = __int128;

// Values of a valuation rescaled to integers by a common factor.
struct ScaledTable {
  int m = 0;
  std::vector<Wide> values;
  mpz_class scale;  // values[mask] = scale * v(mask).
};

Wide ToWide(const mpz_class& z) {
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 100) {
    throw Error(ErrorKind::kCapability, "values too large for scaled check");
  }
  const bool neg = z < 0;
  mpz_class a = abs(z);
  Wide out = 0;
  // Assemble from 32-bit limbs, most significant first.
  std::vector<unsigned long> parts;
  while (a > 0) {
    mpz_class r = a % 4294967296UL;
    parts.push_back(r.get_ui());
    a /= 4294967296UL;
  }
  for (std::size_t i = parts.size(); i-- > 0;) {
    out = (out << 32) | static_cast<Wide>(parts[i]);
  }
  return neg ? -out : out;
}

Rat FromWide(Wide w, const mpz_class& scale) {
  const bool neg = w < 0;
  if (neg) w = -w;
  mpz_class z = 0;
  int shift = 0;
  while (w > 0) {
    mpz_class part = static_cast<unsigned long>(w & 0xffffffffu);
    mpz_mul_2exp(part.get_mpz_t(), part.get_mpz_t(), shift);
    z += part;
    w >>= 32;
    shift += 32;
  }
  if (neg) z = -z;
  return Rat(mpq_class(z, scale));
}

ScaledTable Scale(const std::vector<Rat>& values, int m,
                  const mpz_class& extra) {
  mpz_class l = 1;
  for (const Rat& r : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.den().get_mpz_t());
  }
  ScaledTable t;
  t.m = m;
  t.scale = l * extra;
  t.values.reserve(values.size());
  for (const Rat& r : values) {
    mpz_class z = r.num() * (t.scale / r.den());
    t.values.push_back(ToWide(z));
  }
  return t;
}

std::vector<std::uint64_t> DemandMasks(const ScaledTable& t,
                                       const std::vector<Wide>& p) {
  const std::uint64_t n = std::uint64_t{1} << t.m;
  std::vector<Wide> cost(n, 0);
  for (std::uint64_t mask = 1; mask < n; ++mask) {
    const int low = std::countr_zero(mask);
    cost[mask] = cost[mask & (mask - 1)] + p[low];
  }
  Wide best = t.values[0];
  std::vector<std::uint64_t> out{0};
  for (std::uint64_t mask = 1; mask < n; ++mask) {
    const Wide profit = t.values[mask] - cost[mask];
    if (profit > best) {
      best = profit;
      out.assign(1, mask);
    } else if (profit == best) {
      out.push_back(mask);
    }
  }
  return out;
}

std::string MaskString(int m, std::uint64_t mask) {
  return Bundle::FromMask(m, mask).ToString();
}

// Local exchange conditions on pairs and triples; empty string when they
// all hold.
std::string LocalExchangeViolation(const ScaledTable& t) {
  const int m = t.m;
  const auto& v = t.values;
  const std::uint64_t n = std::uint64_t{1} << m;
  auto bit = [](int i) { return std::uint64_t{1} << i; };
  for (std::uint64_t s = 0; s < n; ++s) {
    for (int i = 0; i < m; ++i) {
      if (s & bit(i)) continue;
      for (int j = i + 1; j < m; ++j) {
        if (s & bit(j)) continue;
        if (v[s | bit(i) | bit(j)] + v[s] > v[s | bit(i)] + v[s | bit(j)]) {
          std::ostringstream os;
          os << "pair S=" << MaskString(m, s) << " i=" << i << " j=" << j;
          return os.str();
        }
        for (int k = 0; k < m; ++k) {
          if (k == i || k == j || (s & bit(k))) continue;
          const Wide lhs = v[s | bit(i) | bit(j)] + v[s | bit(k)];
          const Wide r1 = v[s | bit(i) | bit(k)] + v[s | bit(j)];
          const Wide r2 = v[s | bit(j) | bit(k)] + v[s | bit(i)];
          if (lhs > std::max(r1, r2)) {
            std::ostringstream os;
            os << "triple S=" << MaskString(m, s) << " i=" << i << " j=" << j
               << " k=" << k;
            return os.str();
          }
        }
      }
    }
  }
  return "";
}

// Candidate prices per coordinate: 0, every non-negative marginal value,
// midpoints between neighbours, and one tick above the largest.
std::vector<std::vector<Wide>> CriticalGrid(const ScaledTable& t) {
  const int m = t.m;
  const std::uint64_t n = std::uint64_t{1} << m;
  std::vector<std::vector<Wide>> grid(m);
  for (int j = 0; j < m; ++j) {
    std::vector<Wide> marg{0};
    for (std::uint64_t s = 0; s < n; ++s) {
      if (s >> j & 1) continue;
      const Wide d = t.values[s | (std::uint64_t{1} << j)] - t.values[s];
      if (d > 0) marg.push_back(d);
    }
    std::sort(marg.begin(), marg.end());
    marg.erase(std::unique(marg.begin(), marg.end()), marg.end());
    std::vector<Wide> g = marg;
    for (std::size_t k = 0; k + 1 < marg.size(); ++k) {
      g.push_back((marg[k] + marg[k + 1]) / 2);
    }
    g.push_back(marg.back() + 2);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    grid[j] = std::move(g);
  }
  return grid;
}

PriceVector ToPrices(const std::vector<Wide>& p, const mpz_class& scale) {
  PriceVector out;
  for (Wide w : p) out.push_back(FromWide(w, scale));
  return out;
}

}  // namespace

std::vector<Bundle> DemandSet(const Valuation& v, const PriceVector& p) {
  if (v.m() > 20) {
    throw Error(ErrorKind::kCapability, "demand sets need m <= 20");
  }
  if (static_cast<int>(p.size()) != v.m()) {
    throw Error(ErrorKind::kDimension, "price vector length differs from m");
  }
  for (const Rat& r : p) {
    if (r < Rat(0)) throw Error(ErrorKind::kParameter, "negative price");
  }
  const std::vector<Rat> values = v.Materialize();
  const std::uint64_t n = values.size();
  std::vector<Rat> cost(n);
  Rat best;
  std::vector<Bundle> out;
  for (std::uint64_t mask = 0; mask < n; ++mask) {
    if (mask != 0) {
      cost[mask] = cost[mask & (mask - 1)] + p[std::countr_zero(mask)];
    }
    const Rat profit = values[mask] - cost[mask];
    if (mask == 0 || profit > best) {
      best = profit;
      out.assign(1, Bundle::FromMask(v.m(), mask));
    } else if (profit == best) {
      out.push_back(Bundle::FromMask(v.m(), mask));
    }
  }
  return out;
}

GsReport IsGrossSubstitutes(const Valuation& v, const GsCheckOptions& options) {
  if (v.m() > 12) {
    throw Error(ErrorKind::kCapability, "gross substitutes check needs m <= 12");
  }
  const int m = v.m();
  GsReport report;
  const ScaledTable t = Scale(v.Materialize(), m, 2);
  report.local_violation = LocalExchangeViolation(t);
  report.local_ok = report.local_violation.empty();

  const auto grid = CriticalGrid(t);
  double product = 1;
  for (const auto& g : grid) product *= static_cast<double>(g.size());
  report.grid_exhaustive = product <= static_cast<double>(options.grid_budget);
  const std::uint64_t points =
      report.grid_exhaustive ? static_cast<std::uint64_t>(product)
                             : options.grid_budget;
  Rng rng("gs-grid", options.seed, "points");
  std::vector<std::size_t> idx(m, 0);
  std::vector<Wide> p(m);
  for (std::uint64_t point = 0; point < points && report.grid_ok; ++point) {
    if (report.grid_exhaustive) {
      std::uint64_t rest = point;
      for (int j = 0; j < m; ++j) {
        idx[j] = rest % grid[j].size();
        rest /= grid[j].size();
      }
    } else {
      for (int j = 0; j < m; ++j) idx[j] = rng.Uniform(grid[j].size());
    }
    for (int j = 0; j < m; ++j) p[j] = grid[j][idx[j]];
    ++report.grid_points;
    const auto demand = DemandMasks(t, p);
    for (int k = 0; k < m && report.grid_ok; ++k) {
      const std::size_t higher = grid[k].size() - idx[k] - 1;
      if (higher == 0) continue;
      // Next tick, top tick, and (sampled mode) one random tick in between.
      std::vector<std::size_t> raises{idx[k] + 1, grid[k].size() - 1};
      if (report.grid_exhaustive) {
        raises.clear();
        for (std::size_t r = idx[k] + 1; r < grid[k].size(); ++r) {
          raises.push_back(r);
        }
      } else if (higher > 2) {
        raises.push_back(idx[k] + 1 + rng.Uniform(higher));
      }
      for (std::size_t r : raises) {
        std::vector<Wide> q = p;
        q[k] = grid[k][r];
        const auto raised = DemandMasks(t, q);
        const std::uint64_t frozen = ~(std::uint64_t{1} << k);
        for (std::uint64_t s : demand) {
          const std::uint64_t keep = s & frozen;
          const bool kept = std::any_of(
              raised.begin(), raised.end(),
              [keep](std::uint64_t s2) { return (keep & ~s2) == 0; });
          if (!kept) {
            report.grid_ok = false;
            report.witness = GsWitness{ToPrices(p, t.scale),
                                       ToPrices(q, t.scale),
                                       Bundle::FromMask(m, s)};
            break;
          }
        }
        if (!report.grid_ok) break;
      }
    }
  }
  report.ok = report.grid_ok && report.local_ok;
  report.agree = report.grid_ok == report.local_ok;
  return report;
}

Valuation GsExtend(const Valuation& v, const Rat& c) {
  if (c < Rat(0)) {
    throw Error(ErrorKind::kParameter, "extension value must be >= 0");
  }
  const int m = v.m();
  return Valuation::Function(
      ValuationKind::kParametric, m + 1,
      [v, c, m](const Bundle& s) {
        Bundle inner(m);
        for (int item : s.Items()) {
          if (item < m) inner.Insert(item);
        }
        Rat out = v(inner);
        if (s.Contains(m)) out += c;
        return out;
      },
      "gs-extend");
}

std::vector<int> OrdinaryItems(int m, int a, int b) {
  std::vector<int> out;
  for (int j = 0; j < m; ++j) {
    if (j != a && j != b) out.push_back(j);
  }
  return out;
}

Valuation GenGsFamily(const GsFamilySpec& spec) {
  const int m = spec.m;
  const int a = spec.a, b = spec.b;
  if (m < 3 || a == b || a < 0 || b < 0 || a >= m || b >= m) {
    throw Error(ErrorKind::kParameter, "family needs m >= 3 and a != b");
  }
  const Rat mm(m);
  const Rat m8 = Rat::Pow(mm, 8);
  switch (spec.role) {
    case GsRole::kAliceD:
    case GsRole::kBobD: {
      if (spec.s.m() != m) {
        throw Error(ErrorKind::kParameter, "boosted set over wrong universe");
      }
      if (spec.s.Contains(a) || spec.s.Contains(b)) {
        throw Error(ErrorKind::kParameter, "boosted set touches {a, b}");
      }
      const bool alice = spec.role == GsRole::kAliceD;
      std::vector<Rat> item(m);
      for (int j = 0; j < m; ++j) {
        if (j == (alice ? a : b)) {
          item[j] = m8;
        } else if (j == (alice ? b : a)) {
          item[j] = spec.eta;
        } else if (spec.s.Contains(j)) {
          item[j] = spec.gamma * Rat(m + 2);
        } else {
          item[j] = spec.gamma / Rat(2);
        }
      }
      return Valuation::Additive(std::move(item));
    }
    case GsRole::kAliceND:
    case GsRole::kBobND: {
      if (!spec.base.valid() || spec.base.m() != m - 2) {
        throw Error(ErrorKind::kParameter, "base valuation must cover m - 2");
      }
      const bool alice = spec.role == GsRole::kAliceND;
      const int own = alice ? a : b;
      const int other = alice ? b : a;
      const std::vector<int> ordinary = OrdinaryItems(m, a, b);
      Valuation base = spec.base;
      const Rat gamma = spec.gamma, eta = spec.eta;
      return Valuation::Function(
          ValuationKind::kParametric, m,
          [=](const Bundle& s) {
            Bundle inner(m - 2);
            for (std::size_t k = 0; k < ordinary.size(); ++k) {
              if (s.Contains(ordinary[k])) inner.Insert(static_cast<int>(k));
            }
            Rat out = gamma * base(inner) + gamma * Rat(s.Size());
            if (s.Contains(own)) out += m8;
            if (s.Contains(other)) out += eta;
            return out;
          },
          alice ? "alice-nd" : "bob-nd");
    }
    case GsRole::kP: {
      if (!spec.reference.valid() || spec.reference.m() != m) {
        throw Error(ErrorKind::kParameter, "P needs a reference valuation");
      }
      if (spec.s_star.m() != m || spec.x_star < 0 || spec.x_star >= m ||
          spec.s_star.Contains(spec.x_star)) {
        throw Error(ErrorKind::kParameter, "P needs x* outside S*");
      }
      if (spec.sn != 0 && spec.sn != 1) {
        throw Error(ErrorKind::kParameter, "sign must be 0 or 1");
      }
      const Bundle rest = Bundle::Full(m).Minus(spec.s_star);
      const Rat eps = Rat(1) / (Rat(8) * mm * mm);
      // Marginal of x* within M - S*, which already contains x*.
      Rat special = spec.reference(rest) -
                    spec.reference(rest.Without(spec.x_star)) +
                    (spec.sn == 0 ? eps : -eps);
      if (special < Rat(0)) {
        throw Error(ErrorKind::kParameter, "P special item value negative");
      }
      const Rat m15 = Rat::Pow(mm, 15);
      std::vector<Rat> item(m);
      for (int j = 0; j < m; ++j) {
        if (spec.s_star.Contains(j)) {
          item[j] = m15;
        } else if (j == spec.x_star) {
          item[j] = special;
        }
      }
      return Valuation::Additive(std::move(item));
    }
  }
  throw Error(ErrorKind::kParameter, "unknown family role");
}

Allocation GsWelfareMax(const std::vector<Valuation>& valuations,
                        WdpMode mode) {
  const int n = static_cast<int>(valuations.size());
  if (n == 0) throw Error(ErrorKind::kParameter, "no bidders");
  const int m = valuations[0].m();
  for (const auto& v : valuations) {
    if (v.m() != m) throw Error(ErrorKind::kDimension, "mixed universes");
  }
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  Allocation out;
  if (mode == WdpMode::kBrute) {
    if (m > 12 || n > 6) {
      throw Error(ErrorKind::kCapability, "brute WDP needs m <= 12, n <= 6");
    }
    const std::uint64_t size = full + 1;
    // best[k][mask]: max welfare of bidders 0..k-1 using items in mask.
    std::vector<std::vector<Rat>> best(n + 1, std::vector<Rat>(size));
    std::vector<std::vector<std::uint64_t>> pick(
        n, std::vector<std::uint64_t>(size, 0));
    for (int k = 0; k < n; ++k) {
      const std::vector<Rat> values = valuations[k].Materialize();
      for (std::uint64_t mask = 0; mask < size; ++mask) {
        // Enumerate sub in increasing order so ties keep the smallest.
        Rat top = best[k][mask] + values[0];
        std::uint64_t arg = 0;
        for (std::uint64_t sub = 1; sub <= mask; ++sub) {
          if ((sub & ~mask) != 0) continue;
          const Rat w = best[k][mask & ~sub] + values[sub];
          if (w > top) {
            top = w;
            arg = sub;
          }
        }
        best[k + 1][mask] = top;
        pick[k][mask] = arg;
      }
    }
    out.welfare = best[n][full];
    out.bundles.assign(n, Bundle(m));
    std::uint64_t mask = full;
    for (int k = n - 1; k >= 0; --k) {
      out.bundles[k] = Bundle::FromMask(m, pick[k][mask]);
      mask &= ~pick[k][mask];
    }
    return out;
  }

  // Ascending item-price auction with bidder-specific tick for unheld items.
  std::vector<std::vector<Rat>> raw;
  for (const auto& v : valuations) raw.push_back(v.Materialize());
  mpz_class l = 1;
  for (const auto& r : raw) {
    for (const Rat& x : r) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
    }
  }
  // One price unit is granularity / (2mn).
  const mpz_class extra = mpz_class(2 * m * n);
  std::vector<ScaledTable> tables;
  for (const auto& r : raw) {
    ScaledTable t = Scale(r, m, 1);
    // Re-scale to the common factor l * 2mn.
    mpz_class factor = l * extra / t.scale;
    for (Wide& w : t.values) w *= ToWide(factor);
    t.scale = l * extra;
    if (!LocalExchangeViolation(t).empty()) {
      throw Error(ErrorKind::kMode,
                  "ascending mode needs gross substitutes valuations");
    }
    tables.push_back(std::move(t));
  }
  std::vector<Wide> price(m, 0);
  std::vector<std::uint64_t> held(n, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      std::vector<Wide> q(m);
      for (int j = 0; j < m; ++j) {
        q[j] = price[j] + ((held[i] >> j & 1) ? 0 : 1);
      }
      const auto demand = DemandMasks(tables[i], q);
      std::uint64_t choice = ~std::uint64_t{0};
      for (std::uint64_t s : demand) {
        if ((held[i] & ~s) == 0) {
          choice = s;
          break;
        }
      }
      if (choice == ~std::uint64_t{0}) {
        throw Error(ErrorKind::kMode,
                    "bidder dropped held items: input is not gross substitutes");
      }
      const std::uint64_t gained = choice & ~held[i];
      if (gained == 0) continue;
      changed = true;
      for (int j = 0; j < m; ++j) {
        if (!(gained >> j & 1)) continue;
        price[j] += 1;
        for (int k = 0; k < n; ++k) held[k] &= ~(std::uint64_t{1} << j);
      }
      held[i] |= choice;
    }
  }
  out.bundles.clear();
  Rat welfare;
  for (int i = 0; i < n; ++i) {
    out.bundles.push_back(Bundle::FromMask(m, held[i]));
    welfare += raw[i][held[i]];
  }
  out.welfare = welfare;
  return out;
}

std::vector<Allocation> AllOptimalAllocations(
    const std::vector<Valuation>& valuations) {
  const int n = static_cast<int>(valuations.size());
  const int m = valuations.at(0).m();
  double count = std::pow(n + 1.0, m);
  if (count > 4194304.0) {
    throw Error(ErrorKind::kCapability, "too many assignments to enumerate");
  }
  std::vector<std::vector<Rat>> values;
  for (const auto& v : valuations) values.push_back(v.Materialize());
  std::vector<int> owner(m, 0);  // 0 = unassigned, else bidder + 1.
  std::vector<Allocation> best;
  Rat top;
  const std::uint64_t total = static_cast<std::uint64_t>(count);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    std::vector<std::uint64_t> masks(n, 0);
    for (int j = 0; j < m; ++j) {
      const int o = static_cast<int>(rest % (n + 1));
      rest /= (n + 1);
      if (o > 0) masks[o - 1] |= std::uint64_t{1} << j;
    }
    Rat w;
    for (int i = 0; i < n; ++i) w += values[i][masks[i]];
    if (best.empty() || w > top) {
      top = w;
      best.clear();
    }
    if (w == top) {
      Allocation a;
      for (int i = 0; i < n; ++i) a.bundles.push_back(Bundle::FromMask(m, masks[i]));
      a.welfare = w;
      best.push_back(std::move(a));
    }
  }
  return best;
}

Valuation RandomOxsValuation(int m, int slots, int max_weight,
                             std::uint64_t seed) {
  if (m > kMaxTableItems || slots < 1 || slots > 8) {
    throw Error(ErrorKind::kParameter, "OXS needs m <= 24 and 1..8 slots");
  }
  Rng rng("oxs", seed, "weights");
  std::vector<std::vector<int>> w(slots, std::vector<int>(m));
  for (auto& row : w) {
    for (int& x : row) x = static_cast<int>(rng.Range(0, max_weight));
  }
  const std::uint64_t n = std::uint64_t{1} << m;
  const int slot_states = 1 << slots;
  std::vector<Rat> table(n);
  std::vector<int> dp(slot_states), next(slot_states);
  for (std::uint64_t mask = 0; mask < n; ++mask) {
    std::fill(dp.begin(), dp.end(), -1);
    dp[0] = 0;
    for (int j = 0; j < m; ++j) {
      if (!(mask >> j & 1)) continue;
      next = dp;
      for (int st = 0; st < slot_states; ++st) {
        if (dp[st] < 0) continue;
        for (int k = 0; k < slots; ++k) {
          if (st >> k & 1) continue;
          next[st | (1 << k)] = std::max(next[st | (1 << k)], dp[st] + w[k][j]);
        }
      }
      dp = next;
    }
    table[mask] = Rat(*std::max_element(dp.begin(), dp.end()));
  }
  return Valuation::Table(m, std::move(table));
}

Valuation UnitDemand(std::vector<Rat> weights) {
  const int m = static_cast<int>(weights.size());
  return Valuation::Function(
      ValuationKind::kParametric, m,
      [weights](const Bundle& s) {
        Rat best;
        for (int item : s.Items()) best = Max(best, weights[item]);
        return best;
      },
      "unit-demand");
}

std::vector<GsFamilyMember> GsFamilySample(int m, int nd_bases,
                                           std::uint64_t seed) {
  if (m < 3 || m > 10) throw Error(ErrorKind::kParameter, "need 3 <= m <= 10");
  const int a = 0, b = 1;
  const std::vector<int> ordinary = OrdinaryItems(m, a, b);
  const int k = static_cast<int>(ordinary.size());
  const Rat etas[] = {Rat(0), Rat(1, 2)};
  std::vector<GsFamilyMember> out;
  for (GsRole role : {GsRole::kAliceD, GsRole::kBobD}) {
    for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
      for (const Rat& eta : etas) {
        GsFamilySpec spec;
        spec.role = role;
        spec.m = m;
        spec.eta = eta;
        spec.s = Bundle(m);
        for (int t = 0; t < k; ++t) {
          if (mask >> t & 1) spec.s.Insert(ordinary[t]);
        }
        out.push_back({std::string(role == GsRole::kAliceD ? "alice-d" : "bob-d") +
                           " S=" + spec.s.ToString() + " eta=" + eta.ToString(),
                       GenGsFamily(spec)});
      }
    }
  }
  Rng rng("gs-family", seed, "members");
  std::vector<Valuation> references;
  for (int r = 0; r < nd_bases; ++r) {
    const Valuation base = RandomOxsValuation(
        m - 2, static_cast<int>(rng.Range(1, m - 2)), m, rng.Next());
    for (GsRole role : {GsRole::kAliceND, GsRole::kBobND}) {
      for (const Rat& eta : etas) {
        GsFamilySpec spec;
        spec.role = role;
        spec.m = m;
        spec.eta = eta;
        spec.base = base;
        Valuation v = GenGsFamily(spec);
        references.push_back(v);
        out.push_back({std::string(role == GsRole::kAliceND ? "alice-nd"
                                                            : "bob-nd") +
                           " base#" + std::to_string(r) +
                           " eta=" + eta.ToString(),
                       std::move(v)});
      }
    }
  }
  for (std::size_t r = 0; r < references.size(); ++r) {
    GsFamilySpec spec;
    spec.role = GsRole::kP;
    spec.m = m;
    spec.reference = references[r];
    spec.x_star = static_cast<int>(rng.Uniform(m));
    spec.s_star = Bundle(m);
    for (int j = 0; j < m; ++j) {
      if (j != spec.x_star && rng.Bernoulli(1, 2)) spec.s_star.Insert(j);
    }
    spec.sn = static_cast<int>(rng.Uniform(2));
    out.push_back({"p ref#" + std::to_string(r) + " S*=" +
                       spec.s_star.ToString() + " x*=" +
                       std::to_string(spec.x_star) +
                       " sn=" + std::to_string(spec.sn),
                   GenGsFamily(spec)});
  }
  return out;
}

}  // namespace mechlab
