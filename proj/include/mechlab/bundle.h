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

#ifndef MECHLAB_BUNDLE_H_
#define MECHLAB_BUNDLE_H_

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace mechlab {

// A subset of the item universe [0, m), stored as a packed bitset so that
// equality and ordering are structural.
class Bundle {
 public:
  Bundle() : m_(0) {}
  explicit Bundle(int m);
  Bundle(int m, std::initializer_list<int> items);
  Bundle(int m, const std::vector<int>& items);

  static Bundle Full(int m);
  static Bundle FromMask(int m, std::uint64_t mask);

  int m() const { return m_; }
  bool Contains(int item) const;
  void Insert(int item);
  void Erase(int item);
  int Size() const;
  bool Empty() const;
  std::vector<int> Items() const;
  // Requires m <= 64.
  std::uint64_t Mask() const;

  bool IsSubsetOf(const Bundle& other) const;
  bool Intersects(const Bundle& other) const;
  Bundle Union(const Bundle& other) const;
  Bundle Intersect(const Bundle& other) const;
  Bundle Minus(const Bundle& other) const;
  Bundle With(int item) const;
  Bundle Without(int item) const;

  std::string ToString() const;

  friend bool operator==(const Bundle& a, const Bundle& b) {
    return a.m_ == b.m_ && a.words_ == b.words_;
  }
  friend bool operator!=(const Bundle& a, const Bundle& b) { return !(a == b); }
  friend bool operator<(const Bundle& a, const Bundle& b);

 private:
  void CheckItem(int item) const;
  void CheckSameUniverse(const Bundle& other) const;

  int m_;
  std::vector<std::uint64_t> words_;
};

}  // namespace mechlab

#endif  // MECHLAB_BUNDLE_H_
