// Copyright 2026 The asynclp Authors
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

// Problem files: JSON documents tagged with "kind".
//
//   standard       {"kind": "standard", "A": [[..], ..], "b": [..], "f": [..]}
//   async          {"kind": "async", "B": [[..], ..],
//                   "inputs":  [{"name", "kind", "rho"?, "length"?, "role"?}],
//                   "outputs": [...]}
//                  variable kinds: fixed, linear_cost, nonnegative, l1
//   chebyshev      {"kind": "chebyshev", "A": [[..]], "b": [..]}
//   basis_pursuit  {"kind": "basis_pursuit", "A": [[..]], "b": [..],
//                   "x_true"?: [..]}
//
// Matrices are row-major arrays of rows. Without "kind", a document with "B"
// is read as async and one with "A", "b", "f" as standard.

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "asynclp/problem.hpp"
#include "asynclp/problems.hpp"

namespace asynclp {

enum class ProblemKind { kStandard, kAsync, kChebyshev, kBasisPursuit };

const char* to_string(ProblemKind k);

struct ProblemFile {
  ProblemKind kind = ProblemKind::kAsync;
  std::optional<StandardLP> standard;
  std::optional<ChebyshevInstance> chebyshev;
  std::optional<BasisPursuitInstance> basis_pursuit;
  AsyncFormProblem async;  // always set; encoded from the source form
};

ProblemFile make_problem(StandardLP lp);
ProblemFile make_problem(AsyncFormProblem p);
ProblemFile make_problem(ChebyshevInstance inst);
ProblemFile make_problem(BasisPursuitInstance inst);

// Throws Error(kParse) with a "line L, column C" or "field '...'" location.
ProblemFile parse_problem(std::string_view text);

// Throws Error(kIo) when the file cannot be read.
ProblemFile load_problem(const std::string& path);

// Serializes the source form (not the encoding).
std::string problem_to_json(const ProblemFile& p);

}  // namespace asynclp
