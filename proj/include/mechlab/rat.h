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

#ifndef MECHLAB_RAT_H_
#define MECHLAB_RAT_H_

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace mechlab {

// Exact rational number in canonical (reduced, positive denominator) form.
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(long v) : q_(v) {}  // NOLINT: implicit from integers is intended.
  Rat(int v) : q_(v) {}   // NOLINT
  Rat(long num, long den);
  explicit Rat(const mpz_class& v) : q_(v) {}
  explicit Rat(const mpq_class& v) : q_(v) { q_.canonicalize(); }

  // Accepts "p", "-p", "p/q".
  static Rat Parse(std::string_view text);
  static Rat Pow(const Rat& base, unsigned exp);

  std::string ToString() const { return q_.get_str(); }
  const mpq_class& get() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  // Floor as an arbitrary-precision integer.
  mpz_class Floor() const;
  // Bits of numerator plus bits of denominator.
  std::size_t BitLength() const;
  double ToDouble() const { return q_.get_d(); }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.ToString();
  }

 private:
  mpq_class q_;
};

inline const Rat& Max(const Rat& a, const Rat& b) { return a < b ? b : a; }
inline const Rat& Min(const Rat& a, const Rat& b) { return b < a ? b : a; }

}  // namespace mechlab

#endif  // MECHLAB_RAT_H_
