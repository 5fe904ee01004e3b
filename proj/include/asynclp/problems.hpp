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

// Instance encoders and generators for the two worked examples: the
// Chebyshev center of a polytope and basis pursuit.

#pragma once

#include <cstdint>
#include <optional>

#include "asynclp/problem.hpp"
#include "asynclp/stationarity.hpp"

namespace asynclp {

// Largest ball {x_c + u : |u| <= r} inside {z : A z <= b}.
struct ChebyshevInstance {
  Matrix A;  // M x N, one hyperplane normal per row
  Vector b;

  Vector row_norms() const { return A.rowwise().norm(); }
};

struct BasisPursuitInstance {
  Matrix A;  // M x N
  Vector b;
  std::optional<Vector> x_true;
};

// Inputs [r1 (cost -r1), x_c (free), t = 1], outputs [r2 >= 0, z >= 0],
// B = [[1, 0, 0], [-n, -A, b]] so that z = b - A x_c - n r. Throws on a zero
// row of A.
AsyncFormProblem chebyshev_encode(const ChebyshevInstance& inst);

struct ChebyshevSolution {
  Vector center;
  double radius = 0.0;
};

// Recovers the affine block from c2 and reads r1 and x_c off the inputs.
ChebyshevSolution chebyshev_recover(const StationaritySystem& sys,
                                    const Vector& c2);

// B = A, inputs [x with l1 cost], outputs [Ax fixed to b].
AsyncFormProblem basis_pursuit_encode(const BasisPursuitInstance& inst);

// l1-cost variable x read directly off the nonlinear block.
Vector basis_pursuit_recover(const StationaritySystem& sys, const Vector& d2);

// 1 - 0.95^(k^2) for k = 1..10, 1 afterwards. Throws for k < 1.
double bp_homotopy_schedule(long k);

// Unit-norm rows, b_i = 1 + U[0, 1) so the unit ball around the origin is
// inside. When M > N the first N + 1 normals positively span R^N, which keeps
// the polytope bounded.
ChebyshevInstance gen_chebyshev(int dim, int count, std::uint64_t seed);

// Gaussian A with unit-norm columns; x_true has `sparsity` nonzeros at
// uniformly chosen positions with random signs and magnitudes in [0.5, 1.5).
BasisPursuitInstance gen_basis_pursuit(int n, int m, int sparsity,
                                       std::uint64_t seed);

// Small standard-form LP that is feasible and bounded by construction: row 0
// has strictly positive coefficients, b = A x0 + slack for some x0 >= 0.
StandardLP gen_feasible_lp(int n, int m, std::uint64_t seed);

}  // namespace asynclp
