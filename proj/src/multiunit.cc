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

#include "mechlab/multiunit.h"

#include <algorithm>
#include <cmath>

#include "mechlab/errors.h"

namespace mechlab {

MarginalVector MarginalVector::FromValues(std::vector<Rat> values) {
  if (values.empty() || values[0] != Rat(0)) {
    throw Error(ErrorKind::kParameter, "count valuation needs v(0) = 0");
  }
  MarginalVector v;
  v.values_ = std::move(values);
  return v;
}

MarginalVector MarginalVector::FromMarginals(const std::vector<Rat>& marginals) {
  std::vector<Rat> values{Rat(0)};
  for (const Rat& d : marginals) values.push_back(values.back() + d);
  return FromValues(std::move(values));
}

bool MarginalVector::HasDecreasingMarginals() const {
  for (int x = 2; x <= m(); ++x) {
    if (marginal(x) > marginal(x - 1)) return false;
  }
  return true;
}

bool MarginalVector::IsMonotone() const {
  for (int x = 1; x <= m(); ++x) {
    if (marginal(x) < Rat(0)) return false;
  }
  return true;
}

std::size_t MarginalVector::MaxBitLength() const {
  std::size_t best = 0;
  for (const Rat& r : values_) best = std::max(best, r.BitLength());
  return best;
}

Valuation MarginalVector::Lift() const {
  return Valuation::FromCounts(m(), values_);
}

bool operator<(const MarginalVector& a, const MarginalVector& b) {
  return std::lexicographical_compare(a.values_.begin(), a.values_.end(),
                                      b.values_.begin(), b.values_.end());
}

Rat QueryCounter::Ask(int player, const MarginalVector& v, int x) {
  // v(0) = 0 is known without asking.
  if (x == 0) return Rat(0);
  auto [it, inserted] = seen_.try_emplace({player, x});
  if (inserted) it->second = v.value(x);
  return it->second;
}

CrossingResult CrossingOptimum(const MarginalVector& va,
                               const MarginalVector& vb) {
  const int m = va.m();
  if (vb.m() != m) throw Error(ErrorKind::kDimension, "unit counts differ");
  if (!va.HasDecreasingMarginals() || !vb.HasDecreasingMarginals()) {
    throw Error(ErrorKind::kParameter, "crossing needs decreasing marginals");
  }
  QueryCounter counter;
  // gain(s) = W(s + 1) - W(s); non-increasing in s.
  auto gain_positive = [&](int s) {
    const Rat a = counter.Ask(0, va, s + 1) - counter.Ask(0, va, s);
    const Rat b = counter.Ask(1, vb, m - s) - counter.Ask(1, vb, m - s - 1);
    return a > b;
  };
  int lo = 0, hi = m;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (gain_positive(mid)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  CrossingResult out;
  out.alice = lo;
  out.bob = m - lo;
  out.welfare = counter.Ask(0, va, lo) + counter.Ask(1, vb, m - lo);
  out.queries = counter.count();
  return out;
}

TwoPlayerPayments VcgTwoPlayer(const MarginalVector& va,
                               const MarginalVector& vb, int oa, int ob) {
  const int m = va.m();
  if (vb.m() != m || oa < 0 || ob < 0 || oa + ob != m) {
    throw Error(ErrorKind::kInfeasible, "allocation must split all m units");
  }
  return {vb.value(m) - vb.value(ob), va.value(m) - va.value(oa)};
}

CrossingVerdict CheckCrossingConditions(const MarginalVector& va,
                                        const MarginalVector& vb, int s) {
  const int m = va.m();
  if (s < 0 || s > m) throw Error(ErrorKind::kParameter, "split out of range");
  bool unique;
  if (s == 0) {
    unique = vb.marginal(m) > va.marginal(1);
  } else if (s == m) {
    unique = va.marginal(m) > vb.marginal(1);
  } else {
    unique = vb.marginal(m - s) > va.marginal(s + 1) &&
             va.marginal(s) > vb.marginal(m - s + 1);
  }
  return unique ? CrossingVerdict::kUniqueOptimum
                : CrossingVerdict::kInconclusive;
}

MuAllocation BruteOptimum(const std::vector<MarginalVector>& valuations) {
  const int n = static_cast<int>(valuations.size());
  if (n == 0) throw Error(ErrorKind::kParameter, "no bidders");
  const int m = valuations[0].m();
  MuAllocation out;
  if (n == 1) {
    out.units = {m};
    out.welfare = valuations[0].value(m);
    return out;
  }
  if (n == 2) {
    int best_s = 0;
    Rat best = valuations[0].value(0) + valuations[1].value(m);
    for (int s = 1; s <= m; ++s) {
      const Rat w = valuations[0].value(s) + valuations[1].value(m - s);
      if (w > best) {
        best = w;
        best_s = s;
      }
    }
    out.units = {best_s, m - best_s};
    out.welfare = best;
    return out;
  }
  if (static_cast<long>(n) * m > 10000) {
    throw Error(ErrorKind::kCapability, "brute optimum needs n * m <= 10^4");
  }
  // f[i][x]: best welfare of bidders 0..i-1 using at most x units.
  std::vector<std::vector<Rat>> f(n + 1, std::vector<Rat>(m + 1));
  std::vector<std::vector<int>> choice(n, std::vector<int>(m + 1, 0));
  for (int i = 0; i < n; ++i) {
    for (int x = 0; x <= m; ++x) {
      Rat top = f[i][x];
      int arg = 0;
      for (int y = 1; y <= x; ++y) {
        const Rat w = f[i][x - y] + valuations[i].value(y);
        if (w > top) {
          top = w;
          arg = y;
        }
      }
      f[i + 1][x] = top;
      choice[i][x] = arg;
    }
  }
  out.welfare = f[n][m];
  out.units.assign(n, 0);
  int x = m;
  for (int i = n - 1; i >= 0; --i) {
    out.units[i] = choice[i][x];
    x -= choice[i][x];
  }
  return out;
}

MuAllocation RangeOptimum(const std::vector<MarginalVector>& valuations,
                          int q, const std::vector<bool>& active,
                          QueryCounter* counter) {
  const int n = static_cast<int>(valuations.size());
  const int m = valuations.at(0).m();
  if (q < 1 || q > m) throw Error(ErrorKind::kParameter, "block size range");
  const int t = m / q;
  const int l = m - t * q;
  QueryCounter local;
  QueryCounter& qc = counter ? *counter : local;
  // best[z][r]: welfare using z blocks, r = 1 once the remainder is taken.
  struct Cell {
    bool ok = false;
    Rat w;
  };
  std::vector<std::vector<std::vector<Cell>>> f(
      n + 1, std::vector<std::vector<Cell>>(t + 1, std::vector<Cell>(2)));
  std::vector<std::vector<std::vector<std::pair<int, int>>>> pick(
      n, std::vector<std::vector<std::pair<int, int>>>(
             t + 1, std::vector<std::pair<int, int>>(2, {0, 0})));
  f[0][0][0] = {true, Rat(0)};
  for (int i = 0; i < n; ++i) {
    for (int z = 0; z <= t; ++z) {
      for (int r = 0; r < 2; ++r) {
        if (!f[i][z][r].ok) continue;
        const int max_blocks = active[i] ? t - z : 0;
        for (int y = 0; y <= max_blocks; ++y) {
          for (int extra = 0; extra < 2; ++extra) {
            if (extra == 1 && (r == 1 || l == 0 || !active[i])) continue;
            const int units = y * q + extra * l;
            const Rat w = f[i][z][r].w +
                          (units == 0 ? Rat(0)
                                      : qc.Ask(i, valuations[i], units));
            Cell& dst = f[i + 1][z + y][r + extra];
            if (!dst.ok || w > dst.w) {
              dst = {true, w};
              pick[i][z + y][r + extra] = {y, extra};
            }
          }
        }
      }
    }
  }
  int bz = -1, br = 0;
  for (int z = 0; z <= t; ++z) {
    for (int r = 0; r < 2; ++r) {
      if (!f[n][z][r].ok) continue;
      if (bz < 0 || f[n][z][r].w > f[n][bz][br].w) {
        bz = z;
        br = r;
      }
    }
  }
  MuAllocation out;
  out.welfare = f[n][bz][br].w;
  out.units.assign(n, 0);
  int z = bz, r = br;
  for (int i = n - 1; i >= 0; --i) {
    // Recover the predecessor state whose choice produced (z, r).
    auto [y, extra] = pick[i][z][r];
    out.units[i] = y * q + extra * l;
    z -= y;
    r -= extra;
  }
  return out;
}

FptasResult FptasAllocate(const std::vector<MarginalVector>& valuations,
                          const FptasOptions& options) {
  const int n = static_cast<int>(valuations.size());
  if (n == 0) throw Error(ErrorKind::kParameter, "no bidders");
  if (options.epsilon <= Rat(0)) {
    throw Error(ErrorKind::kParameter, "epsilon must be positive");
  }
  const int m = valuations[0].m();
  FptasResult out;
  if (options.block_size.has_value()) {
    out.q = *options.block_size;
  } else {
    const mpz_class q = (options.epsilon * Rat(m) / Rat(n * n)).Floor();
    out.q = static_cast<int>(q.get_si());
  }
  int q = out.q;
  if (q <= 0) {
    out.exact_fallback = true;
    q = 1;
  }
  if (q > m) q = m;
  out.t = m / q;
  out.l = m - out.t * q;
  QueryCounter counter;
  out.allocation =
      RangeOptimum(valuations, q, std::vector<bool>(n, true), &counter);
  out.queries = counter.count();
  return out;
}

std::vector<Rat> VcgForRange(
    const std::vector<MarginalVector>& valuations,
    const std::function<MuAllocation(const std::vector<bool>&)>& optimizer) {
  const int n = static_cast<int>(valuations.size());
  const MuAllocation chosen = optimizer(std::vector<bool>(n, true));
  std::vector<Rat> payments(n);
  for (int i = 0; i < n; ++i) {
    std::vector<bool> others(n, true);
    others[i] = false;
    const MuAllocation without = optimizer(others);
    Rat others_now;
    for (int j = 0; j < n; ++j) {
      if (j != i) others_now += valuations[j].value(chosen.units[j]);
    }
    payments[i] = without.welfare - others_now;
  }
  return payments;
}

bool WithinBitBudget(const MarginalVector& v, int factor) {
  const double limit = factor * std::log2(std::max(2, v.m()));
  return static_cast<double>(v.MaxBitLength()) <= limit;
}

MarginalVector GenMuFamily(const MuFamilyParams& p) {
  const int m = p.m;
  const Rat mm(m);
  const Rat m2 = mm * mm;
  const Rat gamma_max = Rat::Pow(mm, 5);
  auto check_weight = [&] {
    if (!p.gamma.is_integer() || p.gamma < Rat(1) || p.gamma > gamma_max) {
      throw Error(ErrorKind::kParameter, "weight must be an integer in 1..m^5");
    }
    if (p.d_m != Rat(1) && p.d_m != Rat(1, 2)) {
      throw Error(ErrorKind::kParameter, "last margin must be 1/2 or 1");
    }
  };
  std::vector<Rat> marg;
  switch (p.family) {
    case MuFamily::kD: {
      if (m < 4) throw Error(ErrorKind::kParameter, "D family needs m >= 4");
      check_weight();
      if (p.x_star < 2 || p.x_star > m - 2) {
        throw Error(ErrorKind::kParameter, "special bundle must be in 2..m-2");
      }
      marg.push_back(p.gamma * Rat(3) * Rat::Pow(mm, 8));
      for (int x = 2; x <= m - 1; ++x) {
        marg.push_back(x <= p.x_star ? p.gamma * (m2 - mm + Rat(1)) : p.gamma);
      }
      marg.push_back(p.d_m);
      break;
    }
    case MuFamily::kND: {
      if (m < 3) throw Error(ErrorKind::kParameter, "ND family needs m >= 3");
      check_weight();
      if (static_cast<int>(p.d.size()) != m - 2) {
        throw Error(ErrorKind::kParameter, "ND needs d_2..d_{m-1}");
      }
      marg.push_back(p.gamma * Rat(3) * Rat::Pow(mm, 8));
      for (int x = 2; x <= m - 1; ++x) {
        const Rat& dx = p.d[x - 2];
        const Rat lo = m2 - mm * Rat(x), hi = m2 - mm * Rat(x - 1);
        if (!dx.is_integer() || dx < lo || dx > hi) {
          throw Error(ErrorKind::kParameter,
                      "d_" + std::to_string(x) + " outside its range");
        }
        marg.push_back(p.gamma * dx);
      }
      marg.push_back(p.d_m);
      break;
    }
    case MuFamily::kP: {
      if (p.base.m() != m) {
        throw Error(ErrorKind::kParameter, "P base over a different m");
      }
      if (p.t_star < 1 || p.t_star > m || (p.sn != 0 && p.sn != 1)) {
        throw Error(ErrorKind::kParameter, "P needs t* in 1..m, sn in {0,1}");
      }
      const Rat m15 = Rat::Pow(mm, 15);
      const Rat eps = Rat(1) / (Rat(8) * m2);
      for (int x = 1; x <= m; ++x) {
        if (x < p.t_star) {
          marg.push_back(m15);
        } else if (x == p.t_star) {
          marg.push_back(p.base.value(m - x + 1) - p.base.value(m - x) +
                         (p.sn == 0 ? eps : -eps));
        } else {
          marg.push_back(Rat(0));
        }
      }
      const MarginalVector v = MarginalVector::FromMarginals(marg);
      if (!v.IsMonotone()) {
        throw Error(ErrorKind::kParameter, "P member not monotone");
      }
      return v;
    }
  }
  MarginalVector v = MarginalVector::FromMarginals(marg);
  if (!v.HasDecreasingMarginals()) {
    throw Error(ErrorKind::kParameter, "family member marginals increase");
  }
  if (!WithinBitBudget(v)) {
    throw Error(ErrorKind::kParameter, "family member exceeds bit budget");
  }
  return v;
}

std::vector<MarginalVector> EnumerateNdFamily(int m, const Rat& gamma) {
  std::vector<MarginalVector> out;
  const int coords = m - 2;
  std::vector<int> offset(coords, 0);  // d_x = m^2 - m x + offset.
  while (true) {
    for (int last = 0; last < 2; ++last) {
      MuFamilyParams p;
      p.family = MuFamily::kND;
      p.m = m;
      p.gamma = gamma;
      p.d_m = last == 0 ? Rat(1, 2) : Rat(1);
      for (int k = 0; k < coords; ++k) {
        const int x = k + 2;
        p.d.push_back(Rat(m * m - m * x + offset[k]));
      }
      out.push_back(GenMuFamily(p));
    }
    int k = coords - 1;
    while (k >= 0 && offset[k] == m) offset[k--] = 0;
    if (k < 0) break;
    ++offset[k];
  }
  return out;
}

std::vector<MarginalVector> EnumerateDFamily(int m, const Rat& gamma) {
  std::vector<MarginalVector> out;
  for (int x = 2; x <= m - 2; ++x) {
    for (int last = 0; last < 2; ++last) {
      MuFamilyParams p;
      p.family = MuFamily::kD;
      p.m = m;
      p.gamma = gamma;
      p.x_star = x;
      p.d_m = last == 0 ? Rat(1, 2) : Rat(1);
      out.push_back(GenMuFamily(p));
    }
  }
  return out;
}

Rat ReconstructValue(const Rat& p, const Rat& v_m, int m) {
  const Rat center = v_m - p;
  const Rat radius = Rat(1) / Rat(8 * m);
  const Rat lo = center - radius, hi = center + radius;
  // Smallest integer >= lo.
  mpz_class first = lo.Floor();
  if (Rat(first) < lo) first += 1;
  if (Rat(first) > hi) {
    throw Error(ErrorKind::kReconstruction,
                "no integer within 1/(8m) of " + center.ToString());
  }
  if (Rat(mpz_class(first + 1)) <= hi) {
    throw Error(ErrorKind::kReconstruction,
                "several integers within 1/(8m) of " + center.ToString());
  }
  return Rat(first);
}


MarginalVector RandomDecreasing(int m, int max_marginal, Rng& rng) {
  std::vector<long> draws(m);
  for (long& d : draws) d = rng.Range(0, max_marginal);
  std::sort(draws.rbegin(), draws.rend());
  std::vector<Rat> marginals(draws.begin(), draws.end());
  return MarginalVector::FromMarginals(marginals);
}

std::pair<MarginalVector, MarginalVector> RandomStrictCrossing(
    int m, int max_marginal, Rng& rng) {
  if (max_marginal < 2 * m) {
    throw Error(ErrorKind::kParameter, "need max_marginal >= 2m");
  }
  // 2m distinct values split at random between the players; with no ties
  // the optimum is unique and sits where the marginals cross.
  const std::vector<int> pool = rng.Sample(max_marginal, 2 * m);
  std::vector<int> order(2 * m);
  for (int k = 0; k < 2 * m; ++k) order[k] = k;
  rng.Shuffle(order);
  std::vector<long> a, b;
  for (int k = 0; k < 2 * m; ++k) {
    (k < m ? a : b).push_back(pool[order[k]] + 1);
  }
  std::sort(a.rbegin(), a.rend());
  std::sort(b.rbegin(), b.rend());
  return {MarginalVector::FromMarginals(std::vector<Rat>(a.begin(), a.end())),
          MarginalVector::FromMarginals(std::vector<Rat>(b.begin(), b.end()))};
}

}  // namespace mechlab
