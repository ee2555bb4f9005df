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

#include "mechlab/matroid.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "mechlab/errors.h"
#include "mechlab/rng.h"

namespace mechlab {
namespace {

std::vector<Bundle> LowRankSets(const RankProfileMatroid& matroid) {
  std::vector<bool> full(matroid.family.sets.size(), false);
  for (int idx : matroid.full_rank) full.at(idx) = true;
  std::vector<Bundle> low;
  for (std::size_t i = 0; i < matroid.family.sets.size(); ++i) {
    if (!full[i]) low.push_back(matroid.family.sets[i]);
  }
  return low;
}

int CoveringRank(const std::vector<Bundle>& low, int b, int d,
                 const Bundle& s) {
  std::vector<const Bundle*> touching;
  for (const Bundle& a : low) {
    if (a.Intersects(s)) touching.push_back(&a);
  }
  int best = s.Size();
  const std::size_t n = touching.size();
  if (n > 20) throw Error(ErrorKind::kCapability, "too many low-rank sets");
  for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << n); ++pick) {
    Bundle rest = s;
    int count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (pick >> j & 1) {
        rest = rest.Minus(*touching[j]);
        ++count;
      }
    }
    best = std::min(best, b * count + rest.Size());
  }
  return std::min(best, d);
}

}  // namespace

int Rank(const RankProfileMatroid& matroid, const Bundle& s) {
  if (s.m() != matroid.family.ground_size) {
    throw Error(ErrorKind::kDimension, "rank query outside the ground set");
  }
  return CoveringRank(LowRankSets(matroid), matroid.b, matroid.d, s);
}

std::vector<int> RankTable(const RankProfileMatroid& matroid) {
  const int g = matroid.family.ground_size;
  if (g > kMaxTableItems) {
    throw Error(ErrorKind::kCapability, "rank table needs ground size <= 24");
  }
  const std::vector<Bundle> low = LowRankSets(matroid);
  std::vector<std::uint64_t> low_masks;
  for (const Bundle& a : low) low_masks.push_back(a.Mask());
  const std::size_t n = low_masks.size();
  // Union of every subfamily and its cost, then minimize per subset.
  std::vector<std::pair<std::uint64_t, int>> covers;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << n); ++pick) {
    std::uint64_t u = 0;
    int count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (pick >> j & 1) {
        u |= low_masks[j];
        ++count;
      }
    }
    covers.emplace_back(u, matroid.b * count);
  }
  std::vector<int> table(std::size_t{1} << g);
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    int best = matroid.d;
    for (const auto& [u, cost] : covers) {
      best = std::min(best, cost + std::popcount(mask & ~u));
    }
    table[mask] = best;
  }
  return table;
}

std::string AxiomReport::ToString() const {
  if (ok) return "ok";
  std::ostringstream os;
  os << violation << " S=" << s.ToString() << " T=" << t.ToString();
  if (x >= 0) os << " x=" << x;
  return os.str();
}

AxiomReport VerifyMatroidAxioms(const RankFn& rank, int ground_size,
                                std::optional<SampledMode> sampled) {
  AxiomReport report;
  const Bundle empty(ground_size);
  if (rank(empty) != 0) {
    report.ok = false;
    report.violation = "not-normalized";
    report.s = report.t = empty;
    return report;
  }
  auto fail = [&](const char* what, const Bundle& s, const Bundle& t, int x) {
    report.ok = false;
    report.violation = what;
    report.s = s;
    report.t = t;
    report.x = x;
    return report;
  };
  if (!sampled.has_value()) {
    if (ground_size > 12) {
      throw Error(ErrorKind::kCapability,
                  "exhaustive axiom check needs ground size <= 12");
    }
    const std::uint64_t n = std::uint64_t{1} << ground_size;
    std::vector<int> r(n);
    for (std::uint64_t mask = 0; mask < n; ++mask) {
      r[mask] = rank(Bundle::FromMask(ground_size, mask));
    }
    auto b = [&](std::uint64_t mask) {
      return Bundle::FromMask(ground_size, mask);
    };
    for (std::uint64_t mask = 0; mask < n; ++mask) {
      for (int x = 0; x < ground_size; ++x) {
        if (mask >> x & 1) continue;
        const std::uint64_t sx = mask | (std::uint64_t{1} << x);
        const int step = r[sx] - r[mask];
        if (step < 0) return fail("not-monotone", b(mask), b(sx), x);
        if (step > 1) return fail("unit-step", b(mask), b(sx), x);
      }
    }
    // Local form of submodularity: r(S+x) + r(S+y) >= r(S+x+y) + r(S).
    for (std::uint64_t mask = 0; mask < n; ++mask) {
      for (int x = 0; x < ground_size; ++x) {
        if (mask >> x & 1) continue;
        for (int y = x + 1; y < ground_size; ++y) {
          if (mask >> y & 1) continue;
          const std::uint64_t sx = mask | (std::uint64_t{1} << x);
          const std::uint64_t sy = mask | (std::uint64_t{1} << y);
          const std::uint64_t sxy = sx | sy;
          if (r[sx] + r[sy] < r[sxy] + r[mask]) {
            return fail("not-submodular", b(mask), b(sy), x);
          }
        }
      }
    }
    return report;
  }
  Rng rng("matroid-axioms", sampled->seed, "subsets");
  for (int k = 0; k < sampled->samples; ++k) {
    Bundle s(ground_size);
    Bundle t(ground_size);
    for (int e = 0; e < ground_size; ++e) {
      const auto roll = rng.Uniform(4);
      if (roll == 0) s.Insert(e);
      if (roll <= 1) t.Insert(e);
    }
    const int x = static_cast<int>(rng.Uniform(ground_size));
    if (t.Contains(x)) continue;
    const int rs = rank(s), rt = rank(t);
    const int rsx = rank(s.With(x)), rtx = rank(t.With(x));
    if (rsx - rs < 0) return fail("not-monotone", s, s.With(x), x);
    if (rsx - rs > 1) return fail("unit-step", s, s.With(x), x);
    if (rs > rt) return fail("not-monotone", s, t, -1);
    if (rsx - rs < rtx - rt) return fail("not-submodular", s, t, x);
  }
  return report;
}

SetFamily RandomSetFamily(int ground_size, int k, int s,
                             std::uint64_t seed) {
  if (s > ground_size || s < 0) {
    throw Error(ErrorKind::kParameter, "set size exceeds ground size");
  }
  if (k < 1) throw Error(ErrorKind::kParameter, "family needs k >= 1");
  Rng rng("set-family", seed, "sets");
  SetFamily family{ground_size, {}};
  for (int i = 0; i < k; ++i) {
    family.sets.emplace_back(ground_size, rng.Sample(ground_size, s));
  }
  return family;
}

int DefaultLowRankBudget(int k, double log_base) {
  if (k <= 1) return 1;
  const double v = 8.0 * std::log(static_cast<double>(k)) / std::log(log_base);
  return std::max(1, static_cast<int>(std::ceil(v - 1e-9)));
}

int MaxPairwiseIntersection(const SetFamily& family) {
  int best = 0;
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    for (std::size_t j = i + 1; j < family.sets.size(); ++j) {
      best = std::max(best,
                      family.sets[i].Intersect(family.sets[j]).Size());
    }
  }
  return best;
}

RankProfileResult MakeRankProfileMatroid(
    const RankProfileOptions& options, std::uint64_t seed,
    std::optional<std::vector<int>> full_rank) {
  const int b = options.b > 0 ? options.b : DefaultLowRankBudget(options.k);
  const int d = options.d > 0 ? options.d : options.s;
  if (!(b < options.s && options.s <= d)) {
    throw Error(ErrorKind::kParameter, "rank profile needs b < s <= d");
  }
  Rng rng("rank-profile", seed, "full-rank");
  for (int attempt = 1; attempt <= options.retry_cap; ++attempt) {
    RankProfileMatroid matroid;
    matroid.family =
        RandomSetFamily(options.ground_size, options.k, options.s,
                           Mix64(seed) + static_cast<std::uint64_t>(attempt));
    matroid.b = b;
    matroid.d = d;
    if (full_rank.has_value()) {
      matroid.full_rank = *full_rank;
    } else {
      for (int i = 0; i < options.k; ++i) {
        if (rng.Bernoulli(1, 2)) matroid.full_rank.push_back(i);
      }
    }
    if (options.require_near_disjoint &&
        2 * MaxPairwiseIntersection(matroid.family) > b) {
      continue;
    }
    AxiomReport report;
    if (options.ground_size <= 12) {
      const std::vector<int> table = RankTable(matroid);
      report = VerifyMatroidAxioms(
          [&](const Bundle& s) { return table[s.Mask()]; },
          options.ground_size);
    } else {
      report = VerifyMatroidAxioms(
          [&](const Bundle& s) { return Rank(matroid, s); },
          options.ground_size,
          SampledMode{options.samples, seed + static_cast<std::uint64_t>(attempt)});
    }
    if (report.ok) return {std::move(matroid), attempt};
  }
  throw Error(ErrorKind::kGeneration,
              "rank profile failed axiom verification after " +
                  std::to_string(options.retry_cap) + " attempts");
}

Valuation MatroidRankValuation(const RankProfileMatroid& matroid, int m,
                               std::vector<int> embedding) {
  if (static_cast<int>(embedding.size()) != matroid.family.ground_size) {
    throw Error(ErrorKind::kDimension, "embedding must cover the ground set");
  }
  std::vector<int> local(m, -1);
  for (std::size_t e = 0; e < embedding.size(); ++e) {
    local.at(embedding[e]) = static_cast<int>(e);
  }
  const int g = matroid.family.ground_size;
  return Valuation::Function(
      ValuationKind::kMatroidRank, m,
      [matroid, local, g](const Bundle& s) {
        Bundle inner(g);
        for (int item : s.Items()) {
          if (local[item] >= 0) inner.Insert(local[item]);
        }
        return Rat(Rank(matroid, inner));
      },
      "matroid-rank");
}

}  // namespace mechlab
