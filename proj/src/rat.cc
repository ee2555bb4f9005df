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

#include <string>

#include "mechlab/errors.h"

namespace mechlab {

Rat::Rat(long num, long den) {
  if (den == 0) throw Error(ErrorKind::kParameter, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat Rat::Parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::kInput, "empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) {
    throw Error(ErrorKind::kInput, "malformed rational literal '" + s + "'");
  }
  if (q.get_den() == 0) {
    throw Error(ErrorKind::kInput, "zero denominator in '" + s + "'");
  }
  q.canonicalize();
  return Rat(q);
}

Rat Rat::Pow(const Rat& base, unsigned exp) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.q_.get_num_mpz_t(), exp);
  mpz_pow_ui(d.get_mpz_t(), base.q_.get_den_mpz_t(), exp);
  return Rat(mpq_class(n, d));
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.q_ == 0) throw Error(ErrorKind::kParameter, "division by zero");
  q_ /= o.q_;
  return *this;
}

mpz_class Rat::Floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

std::size_t Rat::BitLength() const {
  std::size_t bits = 0;
  if (q_.get_num() != 0) bits += mpz_sizeinbase(q_.get_num_mpz_t(), 2);
  bits += mpz_sizeinbase(q_.get_den_mpz_t(), 2);
  return bits;
}

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParameter: return "parameter";
    case ErrorKind::kDimension: return "dimension";
    case ErrorKind::kCapability: return "capability";
    case ErrorKind::kBudget: return "budget";
    case ErrorKind::kInput: return "input";
    case ErrorKind::kIncompleteStrategy: return "incomplete-strategy";
    case ErrorKind::kNotASpeaker: return "not-a-speaker";
    case ErrorKind::kReconstruction: return "reconstruction";
    case ErrorKind::kTaxation: return "taxation-violation";
    case ErrorKind::kGeneration: return "generation";
    case ErrorKind::kMode: return "mode";
    case ErrorKind::kInfeasible: return "infeasible";
  }
  return "unknown";
}

}  // namespace mechlab
