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

#include "mechlab/rat.h"

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include <string>

#include "mechlab/errors.h"
#include "mechlab/rng.h"

namespace mechlab {
namespace {

using BigRat = boost::multiprecision::cpp_rational;

std::string Str(const BigRat& q) {
  const auto n = boost::multiprecision::numerator(q);
  const auto d = boost::multiprecision::denominator(q);
  return d == 1 ? n.str() : n.str() + "/" + d.str();
}

TEST(RatTest, CanonicalForm) {
  EXPECT_EQ(Rat(6, -4).ToString(), "-3/2");
  EXPECT_EQ(Rat(0, 7).ToString(), "0");
  EXPECT_EQ(Rat::Parse("10/4"), Rat(5, 2));
  EXPECT_TRUE(Rat(8, 4).is_integer());
  EXPECT_EQ(Rat(-7, 2).Floor(), -4);
}

TEST(RatTest, RejectsBadInput) {
  EXPECT_THROW(Rat(1, 0), Error);
  EXPECT_THROW(Rat::Parse("1/0"), Error);
  EXPECT_THROW(Rat::Parse("abc"), Error);
  EXPECT_THROW(Rat::Parse(""), Error);
  EXPECT_THROW(Rat(1) / Rat(0), Error);
}

TEST(RatTest, SmallMarginsStayExact) {
  const int m = 5;
  const Rat eps = Rat(1) / (Rat(8) * Rat(m) * Rat(m));
  EXPECT_EQ(eps.ToString(), "1/200");
  EXPECT_EQ(Rat(3) + eps - eps, Rat(3));
  EXPECT_EQ(Rat::Pow(Rat(m), 8), Rat(390625));
  // 4 * (1 + 1/4^3) = 65/16.
  EXPECT_EQ(Rat(4) * (Rat(1) + Rat(1) / Rat::Pow(Rat(4), 3)), Rat(65, 16));
}

// Field operations against an independent big-rational implementation.
TEST(RatTest, MatchesBoostRationals) {
  Rng rng("rat-test", 1, "ops");
  for (int trial = 0; trial < 2000; ++trial) {
    const long an = rng.Range(-1000000, 1000000);
    const long ad = rng.Range(1, 1000000);
    const long bn = rng.Range(-1000000, 1000000);
    const long bd = rng.Range(1, 1000000);
    const Rat a(an, ad), b(bn, bd);
    const BigRat x(an, ad), y(bn, bd);
    EXPECT_EQ((a + b).ToString(), Str(x + y));
    EXPECT_EQ((a - b).ToString(), Str(x - y));
    EXPECT_EQ((a * b).ToString(), Str(x * y));
    if (bn != 0) EXPECT_EQ((a / b).ToString(), Str(x / y));
    EXPECT_EQ(a < b, x < y);
    EXPECT_EQ(a == b, x == y);
  }
}

TEST(RatTest, PowMatchesRepeatedProduct) {
  const Rat base(-3, 7);
  BigRat acc = 1;
  for (unsigned e = 0; e < 40; ++e) {
    EXPECT_EQ(Rat::Pow(base, e).ToString(), Str(acc));
    acc *= BigRat(-3, 7);
  }
}

TEST(RatTest, MinMax) {
  EXPECT_EQ(Max(Rat(1, 3), Rat(1, 2)), Rat(1, 2));
  EXPECT_EQ(Min(Rat(1, 3), Rat(1, 2)), Rat(1, 3));
}

}  // namespace
}  // namespace mechlab
