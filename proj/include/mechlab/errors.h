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

#ifndef MECHLAB_ERRORS_H_
#define MECHLAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mechlab {

enum class ErrorKind {
  kParameter,
  kDimension,
  kCapability,
  kBudget,
  kInput,
  kIncompleteStrategy,
  kNotASpeaker,
  kReconstruction,
  kTaxation,
  kGeneration,
  kMode,
  kInfeasible,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Process exit code for the command-line tool: 3 for budget and capability
// limits, 4 for everything attributable to bad input.
inline int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCapability:
    case ErrorKind::kBudget:
      return 3;
    default:
      return 4;
  }
}

const char* ErrorKindName(ErrorKind kind);

}  // namespace mechlab

#endif  // MECHLAB_ERRORS_H_
