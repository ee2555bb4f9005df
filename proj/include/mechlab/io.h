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

#ifndef MECHLAB_IO_H_
#define MECHLAB_IO_H_

#include <string>

#include <json.hpp>

#include "mechlab/fixtures.h"
#include "mechlab/matroid.h"
#include "mechlab/simultaneous.h"
#include "mechlab/valuation.h"

namespace mechlab {

using Json = nlohmann::ordered_json;

// {"kind", "m", "payload"}. Tables, additive and count valuations keep
// their payload; other kinds are written as tables (m <= 16).
Json ValuationToJson(const Valuation& v);
Valuation ValuationFromJson(const Json& j);

Json MatroidToJson(const RankProfileMatroid& matroid);
RankProfileMatroid MatroidFromJson(const Json& j);

Json MechanismToJson(const Mechanism& mech);
// Validates the tree before returning.
Mechanism MechanismFromJson(const Json& j);

// Instances are stored as generator metadata plus the generated structure;
// loading regenerates from (generator, params, seed) and checks that the
// structure matches.
Json InstanceToJson(const AuctionInstance& inst);
AuctionInstance InstanceFromJson(const Json& j);
AuctionInstance RegenerateInstance(const std::string& generator,
                                   const Json& params, std::uint64_t seed);

// Parses JSON text; syntax errors become input errors naming the line and
// column.
Json ParseJson(const std::string& text, const std::string& source);
Json ReadJsonFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

Json BundleToJson(const Bundle& b);
Bundle BundleFromJson(int m, const Json& j);

}  // namespace mechlab

#endif  // MECHLAB_IO_H_
