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

#include "mechlab/bundle.h"

#include <bit>
#include <string>

#include "mechlab/errors.h"

namespace mechlab {

Bundle::Bundle(int m) : m_(m), words_((m + 63) / 64, 0) {
  if (m < 0) throw Error(ErrorKind::kDimension, "negative item universe");
}

Bundle::Bundle(int m, std::initializer_list<int> items) : Bundle(m) {
  for (int item : items) Insert(item);
}

Bundle::Bundle(int m, const std::vector<int>& items) : Bundle(m) {
  for (int item : items) Insert(item);
}

Bundle Bundle::Full(int m) {
  Bundle b(m);
  for (int i = 0; i < m; ++i) b.Insert(i);
  return b;
}

Bundle Bundle::FromMask(int m, std::uint64_t mask) {
  if (m > 64) throw Error(ErrorKind::kDimension, "mask form needs m <= 64");
  if (m < 64 && (mask >> m) != 0) {
    throw Error(ErrorKind::kDimension, "mask has bits outside the universe");
  }
  Bundle b(m);
  if (m > 0) b.words_[0] = mask;
  return b;
}

void Bundle::CheckItem(int item) const {
  if (item < 0 || item >= m_) {
    throw Error(ErrorKind::kDimension, "item " + std::to_string(item) +
                                           " outside [0, " +
                                           std::to_string(m_) + ")");
  }
}

void Bundle::CheckSameUniverse(const Bundle& other) const {
  if (other.m_ != m_) {
    throw Error(ErrorKind::kDimension, "bundles over different universes");
  }
}

bool Bundle::Contains(int item) const {
  CheckItem(item);
  return (words_[item >> 6] >> (item & 63)) & 1;
}

void Bundle::Insert(int item) {
  CheckItem(item);
  words_[item >> 6] |= std::uint64_t{1} << (item & 63);
}

void Bundle::Erase(int item) {
  CheckItem(item);
  words_[item >> 6] &= ~(std::uint64_t{1} << (item & 63));
}

int Bundle::Size() const {
  int n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

bool Bundle::Empty() const {
  for (std::uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::vector<int> Bundle::Items() const {
  std::vector<int> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      out.push_back(static_cast<int>(w * 64) + std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
  return out;
}

std::uint64_t Bundle::Mask() const {
  if (m_ > 64) throw Error(ErrorKind::kDimension, "mask form needs m <= 64");
  return words_.empty() ? 0 : words_[0];
}

bool Bundle::IsSubsetOf(const Bundle& other) const {
  CheckSameUniverse(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & ~other.words_[w]) return false;
  }
  return true;
}

bool Bundle::Intersects(const Bundle& other) const {
  CheckSameUniverse(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & other.words_[w]) return true;
  }
  return false;
}

Bundle Bundle::Union(const Bundle& other) const {
  CheckSameUniverse(other);
  Bundle out = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] |= other.words_[w];
  return out;
}

Bundle Bundle::Intersect(const Bundle& other) const {
  CheckSameUniverse(other);
  Bundle out = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] &= other.words_[w];
  return out;
}

Bundle Bundle::Minus(const Bundle& other) const {
  CheckSameUniverse(other);
  Bundle out = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    out.words_[w] &= ~other.words_[w];
  }
  return out;
}

Bundle Bundle::With(int item) const {
  Bundle out = *this;
  out.Insert(item);
  return out;
}

Bundle Bundle::Without(int item) const {
  Bundle out = *this;
  out.Erase(item);
  return out;
}

std::string Bundle::ToString() const {
  std::string s = "{";
  bool first = true;
  for (int item : Items()) {
    if (!first) s += ",";
    s += std::to_string(item);
    first = false;
  }
  return s + "}";
}

bool operator<(const Bundle& a, const Bundle& b) {
  if (a.m_ != b.m_) return a.m_ < b.m_;
  for (std::size_t w = a.words_.size(); w-- > 0;) {
    if (a.words_[w] != b.words_[w]) return a.words_[w] < b.words_[w];
  }
  return false;
}

}  // namespace mechlab
