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

#include "asynclp/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "asynclp/engine.hpp"
#include "asynclp/error.hpp"

namespace asynclp {

AsyncFormProblem chebyshev_encode(const ChebyshevInstance& inst) {
  const auto m = inst.A.rows();
  const auto n = inst.A.cols();
  if (m < 1 || n < 1 || inst.b.size() != m)
    throw Error(ErrorCode::kDimensionMismatch,
                "Chebyshev instance needs A (M x N) and b of length M");
  const Vector norms = inst.row_norms();
  for (Eigen::Index i = 0; i < m; ++i)
    if (norms[i] == 0.0)
      throw Error(ErrorCode::kInvalidArgument,
                  "row " + std::to_string(i) + " of A is zero");

  AsyncFormProblem p;
  p.B = Matrix::Zero(1 + m, 1 + n + 1);
  p.B(0, 0) = 1.0;
  p.B.block(1, 0, m, 1) = -norms;
  p.B.block(1, 1, m, n) = -inst.A;
  p.B.block(1, 1 + n, m, 1) = inst.b;

  p.inputs.push_back(
      VariableSpec::linear_cost("r1", Role::kInput, Vector::Constant(1, -1.0)));
  p.inputs.push_back(
      VariableSpec::linear_cost("x_c", Role::kInput, Vector::Zero(n)));
  p.inputs.push_back(
      VariableSpec::fixed("t", Role::kInput, Vector::Constant(1, 1.0)));
  p.outputs.push_back(VariableSpec::nonnegative("r2", Role::kOutput, 1));
  p.outputs.push_back(VariableSpec::nonnegative("z", Role::kOutput, m));
  return p;
}

ChebyshevSolution chebyshev_recover(const StationaritySystem& sys,
                                    const Vector& c2) {
  const AffineRecovery aff = recover_affine(sys, c2);
  const auto& r1 = sys.variable("r1");
  const auto& xc = sys.variable("x_c");
  if (!r1.affine || !xc.affine)
    throw Error(ErrorCode::kInvalidArgument,
                "system does not look like a Chebyshev encoding");
  ChebyshevSolution out;
  out.radius =
      0.5 * (aff.d1[r1.block_offset] + aff.c1[r1.block_offset]);
  out.center = 0.5 * (aff.d1.segment(xc.block_offset, xc.length) +
                      aff.c1.segment(xc.block_offset, xc.length));
  return out;
}

AsyncFormProblem basis_pursuit_encode(const BasisPursuitInstance& inst) {
  const auto m = inst.A.rows();
  const auto n = inst.A.cols();
  if (m < 1 || n < 1 || inst.b.size() != m)
    throw Error(ErrorCode::kDimensionMismatch,
                "basis pursuit instance needs A (M x N) and b of length M");
  AsyncFormProblem p;
  p.B = inst.A;
  p.inputs.push_back(VariableSpec::l1_cost("x", Role::kInput, n));
  p.outputs.push_back(VariableSpec::fixed("Ax", Role::kOutput, inst.b));
  return p;
}

Vector basis_pursuit_recover(const StationaritySystem& sys, const Vector& d2) {
  const auto& x = sys.variable("x");
  if (x.affine || x.kind != VariableKind::kL1Cost)
    throw Error(ErrorCode::kInvalidArgument,
                "system does not look like a basis pursuit encoding");
  Vector out(x.length);
  for (Eigen::Index i = 0; i < x.length; ++i) {
    const double d = d2[x.block_offset + i];
    out[i] = 0.5 * (d + l1_reflect(d));
  }
  return out;
}

double bp_homotopy_schedule(long k) {
  if (k < 1)
    throw Error(ErrorCode::kInvalidArgument,
                "equivalent iteration index starts at 1");
  return power_ramp_gamma(k);
}

ChebyshevInstance gen_chebyshev(int dim, int count, std::uint64_t seed) {
  if (dim < 1 || count < 1)
    throw Error(ErrorCode::kInvalidArgument,
                "Chebyshev generator needs dim >= 1 and count >= 1");
  Rng rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  ChebyshevInstance inst;
  inst.A.resize(count, dim);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < dim; ++j) inst.A(i, j) = normal(rng);
  if (count > dim) {
    // Row N closes off the cone spanned by rows 0..N-1.
    Vector w(dim);
    for (int j = 0; j < dim; ++j) w[j] = 0.5 + unit(rng);
    inst.A.row(dim) = -(w.transpose() * inst.A.topRows(dim));
  }
  for (int i = 0; i < count; ++i) inst.A.row(i).normalize();
  inst.b.resize(count);
  for (int i = 0; i < count; ++i) inst.b[i] = 1.0 + unit(rng);
  return inst;
}

BasisPursuitInstance gen_basis_pursuit(int n, int m, int sparsity,
                                       std::uint64_t seed) {
  if (sparsity < 0 || m < 1 || sparsity > m || m > n)
    throw Error(ErrorCode::kInvalidArgument,
                "basis pursuit generator needs 0 <= sparsity <= M <= N");
  Rng rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> magnitude(0.5, 1.5);

  BasisPursuitInstance inst;
  inst.A.resize(m, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) inst.A(i, j) = normal(rng);
    inst.A.col(j).normalize();
  }
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates over the first `sparsity` slots.
  for (int i = 0; i < sparsity; ++i) {
    const auto j = i + draw_coordinate(rng, n - i);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  Vector x = Vector::Zero(n);
  for (int i = 0; i < sparsity; ++i) {
    const double sign = draw_unit(rng) < 0.5 ? -1.0 : 1.0;
    x[idx[static_cast<std::size_t>(i)]] = sign * magnitude(rng);
  }
  inst.b = inst.A * x;
  inst.x_true = std::move(x);
  return inst;
}

StandardLP gen_feasible_lp(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1)
    throw Error(ErrorCode::kInvalidArgument, "need n >= 1 and m >= 1");
  Rng rng(seed);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StandardLP lp;
  lp.A.resize(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      lp.A(i, j) = i == 0 ? 0.2 + 0.8 * unit(rng) : sym(rng);
  Vector x0(n);
  for (int j = 0; j < n; ++j) x0[j] = unit(rng);
  lp.b = lp.A * x0;
  for (int i = 0; i < m; ++i) lp.b[i] += unit(rng);
  lp.f.resize(n);
  for (int j = 0; j < n; ++j) lp.f[j] = sym(rng);
  return lp;
}

}  // namespace asynclp
