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

#ifndef MECHLAB_RNG_H_
#define MECHLAB_RNG_H_

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace mechlab {

// Counter-based generator keyed by (experiment, seed, stream). Draw k of a
// stream is a pure function of the key and k, so workers that own distinct
// streams never interfere and results do not depend on scheduling.
class Rng {
 public:
  Rng(std::string_view experiment, std::uint64_t seed, std::string_view stream);

  std::uint64_t Next();
  // Uniform in [0, n); n > 0. Rejection sampling, no modulo bias.
  std::uint64_t Uniform(std::uint64_t n);
  // Uniform in [lo, hi].
  std::int64_t Range(std::int64_t lo, std::int64_t hi);
  bool Bernoulli(std::uint64_t num, std::uint64_t den);

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[Uniform(i)]);
    }
  }

  // k distinct values from [0, n), in increasing order.
  std::vector<int> Sample(int n, int k);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t Mix64(std::uint64_t x);
std::uint64_t HashString(std::string_view s);

}  // namespace mechlab

#endif  // MECHLAB_RNG_H_
