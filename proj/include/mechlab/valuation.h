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

#ifndef MECHLAB_VALUATION_H_
#define MECHLAB_VALUATION_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mechlab/bundle.h"
#include "mechlab/rat.h"

namespace mechlab {

enum class ValuationKind {
  kTable,
  kAdditive,
  kMarginalVector,
  kMatroidRank,
  kParametric,
  kScaledShifted,
};

const char* ValuationKindName(ValuationKind kind);

inline constexpr int kMaxTableItems = 24;

class ValuationImpl {
 public:
  explicit ValuationImpl(int m) : m_(m) {}
  virtual ~ValuationImpl() = default;
  virtual ValuationKind kind() const = 0;
  virtual Rat Value(const Bundle& s) const = 0;
  virtual std::string Label() const { return ValuationKindName(kind()); }
  int m() const { return m_; }

 private:
  int m_;
};

// Immutable, cheaply copyable handle to a valuation oracle.
class Valuation {
 public:
  Valuation() = default;
  explicit Valuation(std::shared_ptr<const ValuationImpl> impl)
      : impl_(std::move(impl)) {}

  // values[mask] is v of the bundle encoded by mask.
  static Valuation Table(int m, std::vector<Rat> values);
  static Valuation Additive(std::vector<Rat> item_values);
  // Symmetric valuation v(S) = counts[|S|]; counts has m + 1 entries.
  static Valuation FromCounts(int m, std::vector<Rat> counts);
  static Valuation Function(ValuationKind kind, int m,
                            std::function<Rat(const Bundle&)> f,
                            std::string label);

  bool valid() const { return impl_ != nullptr; }
  int m() const { return impl_->m(); }
  ValuationKind kind() const { return impl_->kind(); }
  std::string Label() const { return impl_->Label(); }
  const ValuationImpl& impl() const { return *impl_; }

  // Throws a dimension error when s is over a different universe.
  Rat Value(const Bundle& s) const;
  Rat operator()(const Bundle& s) const { return Value(s); }
  Rat ValueMask(std::uint64_t mask) const;
  // All 2^m values indexed by mask; m must not exceed kMaxTableItems.
  std::vector<Rat> Materialize() const;

  // Payload views; empty unless the kind matches.
  const std::vector<Rat>* table_values() const;
  const std::vector<Rat>* additive_values() const;
  const std::vector<Rat>* count_values() const;

 private:
  std::shared_ptr<const ValuationImpl> impl_;
};

inline Rat Value(const Valuation& v, const Bundle& s) { return v.Value(s); }

struct MonotoneReport {
  bool ok = true;
  // "not-normalized" or "not-monotone" when !ok.
  std::string violation;
  Bundle smaller;
  Bundle larger;
  Rat smaller_value;
  Rat larger_value;
};

struct SampledMode {
  int samples;
  std::uint64_t seed;
};

// Exhaustive for m <= 20 unless a sampled mode is given.
MonotoneReport CheckMonotoneNormalized(
    const Valuation& v, std::optional<SampledMode> sampled = std::nullopt);

// w(S) = weight * (1 + noise) * v(S).
Valuation ScaleShift(const Valuation& v, const Rat& weight, const Rat& noise);

// Sum of two valuations over the same universe.
Valuation Sum(const Valuation& a, const Valuation& b);

}  // namespace mechlab

#endif  // MECHLAB_VALUATION_H_
