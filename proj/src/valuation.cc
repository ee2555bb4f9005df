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

#include "mechlab/valuation.h"

#include <string>
#include <utility>

#include "mechlab/errors.h"
#include "mechlab/rng.h"

namespace mechlab {
namespace {

class TableImpl : public ValuationImpl {
 public:
  TableImpl(int m, std::vector<Rat> values)
      : ValuationImpl(m), values_(std::move(values)) {}
  ValuationKind kind() const override { return ValuationKind::kTable; }
  Rat Value(const Bundle& s) const override { return values_[s.Mask()]; }
  const std::vector<Rat>& values() const { return values_; }

 private:
  std::vector<Rat> values_;
};

class AdditiveImpl : public ValuationImpl {
 public:
  explicit AdditiveImpl(std::vector<Rat> values)
      : ValuationImpl(static_cast<int>(values.size())),
        values_(std::move(values)) {}
  ValuationKind kind() const override { return ValuationKind::kAdditive; }
  Rat Value(const Bundle& s) const override {
    Rat total;
    for (int item : s.Items()) total += values_[item];
    return total;
  }
  const std::vector<Rat>& values() const { return values_; }

 private:
  std::vector<Rat> values_;
};

class CountImpl : public ValuationImpl {
 public:
  CountImpl(int m, std::vector<Rat> counts)
      : ValuationImpl(m), counts_(std::move(counts)) {}
  ValuationKind kind() const override {
    return ValuationKind::kMarginalVector;
  }
  Rat Value(const Bundle& s) const override { return counts_[s.Size()]; }
  const std::vector<Rat>& counts() const { return counts_; }

 private:
  std::vector<Rat> counts_;
};

class FunctionImpl : public ValuationImpl {
 public:
  FunctionImpl(ValuationKind kind, int m, std::function<Rat(const Bundle&)> f,
               std::string label)
      : ValuationImpl(m), kind_(kind), f_(std::move(f)),
        label_(std::move(label)) {}
  ValuationKind kind() const override { return kind_; }
  Rat Value(const Bundle& s) const override { return f_(s); }
  std::string Label() const override { return label_; }

 private:
  ValuationKind kind_;
  std::function<Rat(const Bundle&)> f_;
  std::string label_;
};

class ScaledImpl : public ValuationImpl {
 public:
  ScaledImpl(Valuation base, Rat factor)
      : ValuationImpl(base.m()), base_(std::move(base)),
        factor_(std::move(factor)) {}
  ValuationKind kind() const override {
    return ValuationKind::kScaledShifted;
  }
  Rat Value(const Bundle& s) const override { return factor_ * base_(s); }

 private:
  Valuation base_;
  Rat factor_;
};

}  // namespace

const char* ValuationKindName(ValuationKind kind) {
  switch (kind) {
    case ValuationKind::kTable: return "table";
    case ValuationKind::kAdditive: return "additive";
    case ValuationKind::kMarginalVector: return "marginal-vector";
    case ValuationKind::kMatroidRank: return "matroid-rank";
    case ValuationKind::kParametric: return "parametric";
    case ValuationKind::kScaledShifted: return "scaled-shifted";
  }
  return "unknown";
}

Valuation Valuation::Table(int m, std::vector<Rat> values) {
  if (m < 0 || m > kMaxTableItems) {
    throw Error(ErrorKind::kCapability,
                "table valuations support at most 24 items");
  }
  if (values.size() != (std::size_t{1} << m)) {
    throw Error(ErrorKind::kDimension, "table needs 2^m entries");
  }
  return Valuation(std::make_shared<TableImpl>(m, std::move(values)));
}

Valuation Valuation::Additive(std::vector<Rat> item_values) {
  return Valuation(std::make_shared<AdditiveImpl>(std::move(item_values)));
}

Valuation Valuation::FromCounts(int m, std::vector<Rat> counts) {
  if (counts.size() != static_cast<std::size_t>(m) + 1) {
    throw Error(ErrorKind::kDimension, "count valuation needs m + 1 entries");
  }
  return Valuation(std::make_shared<CountImpl>(m, std::move(counts)));
}

Valuation Valuation::Function(ValuationKind kind, int m,
                              std::function<Rat(const Bundle&)> f,
                              std::string label) {
  return Valuation(
      std::make_shared<FunctionImpl>(kind, m, std::move(f), std::move(label)));
}

Rat Valuation::Value(const Bundle& s) const {
  if (s.m() != m()) {
    throw Error(ErrorKind::kDimension,
                "bundle over " + std::to_string(s.m()) +
                    " items queried on a valuation over " +
                    std::to_string(m()));
  }
  return impl_->Value(s);
}

Rat Valuation::ValueMask(std::uint64_t mask) const {
  if (auto* t = table_values()) return (*t)[mask];
  return impl_->Value(Bundle::FromMask(m(), mask));
}

std::vector<Rat> Valuation::Materialize() const {
  if (m() > kMaxTableItems) {
    throw Error(ErrorKind::kCapability, "cannot tabulate more than 24 items");
  }
  if (auto* t = table_values()) return *t;
  const std::uint64_t n = std::uint64_t{1} << m();
  std::vector<Rat> out(n);
  for (std::uint64_t mask = 0; mask < n; ++mask) out[mask] = ValueMask(mask);
  return out;
}

const std::vector<Rat>* Valuation::table_values() const {
  auto* p = dynamic_cast<const TableImpl*>(impl_.get());
  return p ? &p->values() : nullptr;
}

const std::vector<Rat>* Valuation::additive_values() const {
  auto* p = dynamic_cast<const AdditiveImpl*>(impl_.get());
  return p ? &p->values() : nullptr;
}

const std::vector<Rat>* Valuation::count_values() const {
  auto* p = dynamic_cast<const CountImpl*>(impl_.get());
  return p ? &p->counts() : nullptr;
}

MonotoneReport CheckMonotoneNormalized(const Valuation& v,
                                       std::optional<SampledMode> sampled) {
  MonotoneReport report;
  const int m = v.m();
  const Bundle empty(m);
  const Rat at_empty = v(empty);
  if (at_empty != Rat(0)) {
    report.ok = false;
    report.violation = "not-normalized";
    report.smaller = empty;
    report.larger = empty;
    report.smaller_value = at_empty;
    report.larger_value = at_empty;
    return report;
  }
  auto check_step = [&](const Bundle& s, const Rat& vs, int j) {
    Bundle t = s.With(j);
    Rat vt = v(t);
    if (vs > vt) {
      report.ok = false;
      report.violation = "not-monotone";
      report.smaller = s;
      report.larger = t;
      report.smaller_value = vs;
      report.larger_value = vt;
      return false;
    }
    return true;
  };
  if (!sampled.has_value()) {
    if (m > 20) {
      throw Error(ErrorKind::kCapability,
                  "exhaustive monotonicity check needs m <= 20");
    }
    // Single-item steps suffice by transitivity.
    const std::uint64_t n = std::uint64_t{1} << m;
    std::vector<Rat> values;
    if (m <= kMaxTableItems) values = v.Materialize();
    for (std::uint64_t mask = 0; mask < n; ++mask) {
      for (int j = 0; j < m; ++j) {
        if (mask >> j & 1) continue;
        const std::uint64_t up = mask | (std::uint64_t{1} << j);
        if (values[mask] > values[up]) {
          report.ok = false;
          report.violation = "not-monotone";
          report.smaller = Bundle::FromMask(m, mask);
          report.larger = Bundle::FromMask(m, up);
          report.smaller_value = values[mask];
          report.larger_value = values[up];
          return report;
        }
      }
    }
    return report;
  }
  Rng rng("monotone-check", sampled->seed, "bundles");
  for (int k = 0; k < sampled->samples; ++k) {
    Bundle s(m);
    for (int j = 0; j < m; ++j) {
      if (rng.Bernoulli(1, 2)) s.Insert(j);
    }
    const Rat vs = v(s);
    for (int j = 0; j < m; ++j) {
      if (s.Contains(j)) continue;
      if (!check_step(s, vs, j)) return report;
    }
  }
  return report;
}

Valuation ScaleShift(const Valuation& v, const Rat& weight, const Rat& noise) {
  if (weight <= Rat(0)) {
    throw Error(ErrorKind::kParameter, "scale_shift weight must be positive");
  }
  if (noise < Rat(0)) {
    throw Error(ErrorKind::kParameter, "scale_shift noise must be >= 0");
  }
  return Valuation(
      std::make_shared<ScaledImpl>(v, weight * (Rat(1) + noise)));
}

Valuation Sum(const Valuation& a, const Valuation& b) {
  if (a.m() != b.m()) {
    throw Error(ErrorKind::kDimension, "sum of valuations over different m");
  }
  return Valuation::Function(
      ValuationKind::kParametric, a.m(),
      [a, b](const Bundle& s) { return a(s) + b(s); }, "sum");
}

}  // namespace mechlab
