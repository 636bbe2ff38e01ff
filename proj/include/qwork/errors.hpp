// Copyright 2026 The qwork Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qwork {

// Malformed or out-of-range data (non-Hermitian matrix, wrong dimensions,
// unreadable file contents).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Well-formed input that falls outside the validity domain of a formula,
// e.g. a rank-deficient state handed to a full-rank-only work cost.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A numerical routine did not reach its stated accuracy.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qwork
