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

#include "mechlab/rng.h"

#include <algorithm>

#include "mechlab/errors.h"

namespace mechlab {

std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t HashString(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return Mix64(h);
}

Rng::Rng(std::string_view experiment, std::uint64_t seed,
         std::string_view stream)
    : key_(Mix64(HashString(experiment) ^ Mix64(seed ^ HashString(stream)))) {}

std::uint64_t Rng::Next() {
  return Mix64(key_ ^ Mix64(counter_++));
}

std::uint64_t Rng::Uniform(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::kParameter, "Uniform(0)");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = Next();
  } while (x >= limit);
  return x % n;
}

std::int64_t Rng::Range(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error(ErrorKind::kParameter, "empty range");
  return lo + static_cast<std::int64_t>(
                  Uniform(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool Rng::Bernoulli(std::uint64_t num, std::uint64_t den) {
  return Uniform(den) < num;
}

std::vector<int> Rng::Sample(int n, int k) {
  if (k < 0 || k > n) throw Error(ErrorKind::kParameter, "sample size > n");
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + Uniform(n - i)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace mechlab
