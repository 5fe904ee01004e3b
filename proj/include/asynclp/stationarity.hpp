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

// Stationarity system of an asynchronous-form LP.
//
// The linear part is d = G c with G = (I + R)(I - R)^-1, R = [[0, -B'],
// [B, 0]], and coordinates ordered inputs first, then outputs. The memoryless
// nonlinearity c = m(d) acts element-wise. Fixed and linear-cost coordinates
// satisfy c1 = S d1 + h and are eliminated, leaving the reduced system
//
//   d2 = G' c2 + e,   c2 = m(d2)
//
// over the non-negative and l1 coordinates.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "asynclp/problem.hpp"

namespace asynclp {

struct Nonlinearity {
  enum class Kind {
    kFixedInput,
    kFixedOutput,
    kUnconstrainedInput,
    kUnconstrainedOutput,
    kNonNegInput,
    kNonNegOutput,
    kL1Input,
    kL1Output,
  };

  Kind kind = Kind::kNonNegInput;
  double rho = 0.0;

  static Nonlinearity for_variable(VariableKind kind, Role role,
                                   double rho = 0.0);

  bool affine() const {
    return kind == Kind::kFixedInput || kind == Kind::kFixedOutput ||
           kind == Kind::kUnconstrainedInput ||
           kind == Kind::kUnconstrainedOutput;
  }
};

const char* to_string(Nonlinearity::Kind k);

// Piecewise-linear map for an l1-cost input: d + 2 below -1, -d on [-1, 1],
// d - 2 above 1.
double l1_reflect(double d);

// `gamma` scales the non-negative and l1 maps; affine kinds ignore it.
double apply_nonlinearity(const Nonlinearity& k, double d, double gamma = 1.0);

Matrix build_R(const Matrix& B);

// (I + R)(I - R)^-1 through a dense LU solve.
Matrix build_G(const Matrix& B);

// (I + R)^2 blkdiag((I + B'B)^-1, (I + BB')^-1), the factored route. Kept as
// an independent cross-check of build_G.
Matrix build_G_factored(const Matrix& B);

struct VariableLayout {
  std::string name;
  Role role = Role::kInput;
  VariableKind kind = VariableKind::kNonNegative;
  Eigen::Index offset = 0;        // first coordinate in the full c / d
  Eigen::Index length = 0;
  bool affine = false;
  Eigen::Index block_offset = 0;  // first coordinate inside d1 or d2
};

struct StationaritySystem {
  AsyncFormProblem problem;
  Matrix G;
  std::vector<Eigen::Index> affine_index;     // full coordinates of d1 / c1
  std::vector<Eigen::Index> nonlinear_index;  // full coordinates of d2 / c2
  Matrix G11, G12, G21, G22;
  Vector S;  // diagonal of S, entries +-1
  Vector h;
  Matrix Gprime;
  Vector e;
  std::vector<Nonlinearity> affine_maps;
  std::vector<Nonlinearity> nonlinear_maps;
  std::vector<VariableLayout> layout;
  Eigen::PartialPivLU<Matrix> recovery_lu;  // of (I - G11 S)

  Eigen::Index num_coordinates() const { return G.rows(); }
  Eigen::Index num_nonlinear() const { return Gprime.rows(); }
  Eigen::Index num_affine() const { return G11.rows(); }

  const VariableLayout& variable(const std::string& name) const;
};

// Partition G by affine / nonlinear coordinates and eliminate the affine
// block. Throws Error(kSingular) when I - S G11 is numerically singular
// (reciprocal condition estimate below 1e-12).
StationaritySystem reduce(const Matrix& G, const AsyncFormProblem& problem);

// validate_async_form + build_G + reduce.
StationaritySystem build_system(const AsyncFormProblem& problem);

// m(d2) over the nonlinear coordinates, with homotopy scale gamma.
Vector apply_nonlinear(const StationaritySystem& sys, const Vector& d2,
                       double gamma = 1.0);

struct AffineRecovery {
  Vector d1;
  Vector c1;
};

// d1 = (I - G11 S)^-1 (G12 c2 + G11 h), c1 = S d1 + h.
AffineRecovery recover_affine(const StationaritySystem& sys, const Vector& c2);

// Full-length c and d assembled from the blocks.
struct FullPoint {
  Vector d;
  Vector c;
};

FullPoint assemble(const StationaritySystem& sys, const AffineRecovery& affine,
                   const Vector& d2, const Vector& c2);

// Takes c2 = m(d2) and recovers the affine block: the point a fixed-point
// iterate represents.
FullPoint expand(const StationaritySystem& sys, const Vector& d2);

// z = (d + c) / 2 on inputs, z = (d - c) / 2 on outputs; one vector per
// entry of `layout`, in layout order.
std::vector<Vector> recover_solution(const Vector& d, const Vector& c,
                                     const std::vector<VariableLayout>& layout);

// Max-abs residual of d = G c and c = m(d) on the full system.
double full_residual(const StationaritySystem& sys, const FullPoint& pt);

// Text dump of G, G' and e, row-major.
void dump_system(const StationaritySystem& sys, std::ostream& os);

}  // namespace asynclp
