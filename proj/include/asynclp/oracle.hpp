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

// Brute-force LP oracle by vertex enumeration. Exponential in the problem
// size and only meant as independent ground truth for small instances.

#pragma once

#include <vector>

#include "asynclp/problem.hpp"
#include "asynclp/problems.hpp"

namespace asynclp {

// minimize f'x subject to A x <= b and x_j >= 0 where nonnegative[j].
struct GeneralLP {
  Vector f;
  Matrix A;
  Vector b;
  std::vector<bool> nonnegative;
};

enum class OracleStatus { kOptimal, kInfeasible, kUnbounded, kDegenerate };

const char* to_string(OracleStatus s);

struct OracleSolution {
  OracleStatus status = OracleStatus::kInfeasible;
  Vector x_star;  // set for kOptimal and kDegenerate
  double objective = 0.0;
};

// Standard form: every variable non-negative. Throws Error(kTooLarge) unless
// N <= 8 and M <= 12.
OracleSolution solve_vertex_enum(const StandardLP& lp);

// Needs a full-rank constraint system (a pointed feasible set). Throws
// Error(kTooLarge) past 5e6 candidate bases.
OracleSolution solve_vertex_enum(const GeneralLP& lp);

// Chebyshev LP over [x_c; r]: minimize -r subject to a_i'x_c + |a_i| r <= b_i,
// r >= 0.
GeneralLP chebyshev_lp(const ChebyshevInstance& inst);

// Standard split x = u - v: minimize 1'u + 1'v subject to A(u - v) = b. The
// returned x_star is u - v.
OracleSolution solve_basis_pursuit(const BasisPursuitInstance& inst);

}  // namespace asynclp
