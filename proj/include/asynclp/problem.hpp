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

// Linear program representations: the standard form
//
//   minimize f'x  subject to  A x <= b,  x >= 0
//
// and the asynchronous form, in which every variable block sits on one side
// of a single linear equality B z_in = z_out and is either fixed, carries a
// linear cost while unconstrained, is non-negative, or carries an l1 cost.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace asynclp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct StandardLP {
  Vector f;  // cost, length N
  Matrix A;  // M x N
  Vector b;  // length M

  Eigen::Index num_vars() const { return A.cols(); }
  Eigen::Index num_constraints() const { return A.rows(); }
};

// Throws Error(kDimensionMismatch / kInvalidArgument) on a malformed LP.
void check_standard_lp(const StandardLP& lp);

enum class Role { kInput, kOutput };

enum class VariableKind {
  kFixed,       // z = rho
  kLinearCost,  // unconstrained, cost rho'z (rho = 0 means free, no cost)
  kNonNegative, // z >= 0, no cost
  kL1Cost,      // unconstrained, cost |z|
};

// Fixed and LinearCost blocks are eliminated algebraically; the rest are
// iterated.
inline bool is_affine(VariableKind k) {
  return k == VariableKind::kFixed || k == VariableKind::kLinearCost;
}

const char* to_string(Role r);
const char* to_string(VariableKind k);

struct VariableSpec {
  std::string name;
  Role role = Role::kInput;
  VariableKind kind = VariableKind::kNonNegative;
  Eigen::Index length = 0;
  Vector rho;  // only for kFixed / kLinearCost

  static VariableSpec fixed(std::string name, Role role, Vector rho);
  static VariableSpec linear_cost(std::string name, Role role, Vector rho);
  static VariableSpec nonnegative(std::string name, Role role,
                                  Eigen::Index length);
  static VariableSpec l1_cost(std::string name, Role role, Eigen::Index length);
};

struct AsyncFormProblem {
  Matrix B;  // rows = total output length, cols = total input length
  std::vector<VariableSpec> inputs;
  std::vector<VariableSpec> outputs;

  Eigen::Index input_length() const;
  Eigen::Index output_length() const;
};

// B = [[0, I_N], [I_M, -A]] with inputs (b fixed, x1 linear cost f) and
// outputs (x2 >= 0, y >= 0). Throws on a malformed LP.
AsyncFormProblem to_asynchronous_form(const StandardLP& lp);

struct Violation {
  enum class Kind { kDimension, kConvention } kind;
  std::string message;
};

// Empty result iff the problem is well formed.
std::vector<Violation> validate_async_form(const AsyncFormProblem& p);

// Sum of per-variable cost contributions for values laid out like
// `p.inputs` followed by `p.outputs`.
double objective_value(const AsyncFormProblem& p,
                       const std::vector<Vector>& values);

}  // namespace asynclp
