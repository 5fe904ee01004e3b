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

#include "asynclp/oracle.hpp"

#include <cmath>
#include <limits>

#include "asynclp/error.hpp"

namespace asynclp {

namespace {

constexpr double kFeasTol = 1e-10;
constexpr double kTieTol = 1e-9;
constexpr double kMaxBases = 5e6;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

Matrix rows_of(const Matrix& m, const std::vector<int>& idx) {
  Matrix out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = m.row(idx[i]);
  return out;
}

}  // namespace

const char* to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::kOptimal: return "optimal";
    case OracleStatus::kInfeasible: return "infeasible";
    case OracleStatus::kUnbounded: return "unbounded";
    case OracleStatus::kDegenerate: return "degenerate";
  }
  return "?";
}

OracleSolution solve_vertex_enum(const StandardLP& lp) {
  check_standard_lp(lp);
  if (lp.num_vars() > 8 || lp.num_constraints() > 12)
    throw Error(ErrorCode::kTooLarge,
                "vertex enumeration is limited to N <= 8 and M <= 12");
  GeneralLP g{lp.f, lp.A, lp.b,
              std::vector<bool>(static_cast<std::size_t>(lp.num_vars()), true)};
  return solve_vertex_enum(g);
}

OracleSolution solve_vertex_enum(const GeneralLP& lp) {
  const auto n = lp.A.cols();
  const auto m = lp.A.rows();
  if (n < 1 || lp.f.size() != n || lp.b.size() != m ||
      static_cast<Eigen::Index>(lp.nonnegative.size()) != n)
    throw Error(ErrorCode::kDimensionMismatch, "malformed LP for the oracle");

  // Constraint system C x <= d including the sign constraints.
  Eigen::Index n_sign = 0;
  for (bool nn : lp.nonnegative) n_sign += nn ? 1 : 0;
  const auto rows = m + n_sign;
  Matrix C = Matrix::Zero(rows, n);
  Vector d = Vector::Zero(rows);
  C.topRows(m) = lp.A;
  d.head(m) = lp.b;
  for (Eigen::Index j = 0, r = m; j < n; ++j)
    if (lp.nonnegative[static_cast<std::size_t>(j)]) C(r++, j) = -1.0;

  const int P = static_cast<int>(rows);
  const int N = static_cast<int>(n);
  if (binomial(P, N) + binomial(P, N - 1) > kMaxBases)
    throw Error(ErrorCode::kTooLarge, "too many candidate bases to enumerate");
  if (Eigen::FullPivLU<Matrix>(C).rank() < n)
    throw Error(ErrorCode::kInvalidArgument,
                "constraint system is rank deficient (feasible set has a "
                "lineality space)");

  auto feasible = [&](const Vector& x) {
    const Vector slack = C * x - d;
    for (Eigen::Index i = 0; i < rows; ++i)
      if (slack[i] > kFeasTol * (1.0 + std::abs(d[i]))) return false;
    return true;
  };

  std::vector<Vector> vertices;
  if (P >= N) {
    for_each_subset(P, N, [&](const std::vector<int>& idx) {
      Eigen::PartialPivLU<Matrix> lu(rows_of(C, idx));
      if (lu.rcond() < 1e-12) return;
      Vector rhs(N);
      for (int i = 0; i < N; ++i) rhs[i] = d[idx[static_cast<std::size_t>(i)]];
      Vector x = lu.solve(rhs);
      if (!x.allFinite() || !feasible(x)) return;
      for (const auto& v : vertices)
        if ((v - x).lpNorm<Eigen::Infinity>() <= kTieTol) return;
      vertices.push_back(std::move(x));
    });
  }

  OracleSolution out;
  if (vertices.empty()) {
    out.status = OracleStatus::kInfeasible;
    return out;
  }

  // Extreme rays of the recession cone {u : C u <= 0}.
  bool unbounded = false;
  bool flat_ray = false;
  auto check_ray = [&](const Vector& u) {
    const Vector cu = C * u;
    if (cu.maxCoeff() > kFeasTol * u.norm()) return;
    const double slope = lp.f.dot(u) / u.norm();
    if (slope < -kTieTol) unbounded = true;
    else if (slope <= kTieTol) flat_ray = true;
  };
  if (N == 1) {
    check_ray(Vector::Constant(1, 1.0));
    check_ray(Vector::Constant(1, -1.0));
  } else if (P >= N - 1) {
    for_each_subset(P, N - 1, [&](const std::vector<int>& idx) {
      if (unbounded) return;
      Eigen::FullPivLU<Matrix> lu(rows_of(C, idx));
      const Matrix ker = lu.kernel();
      if (ker.cols() != 1 || lu.rank() != N - 1) return;
      const Vector u = ker.col(0);
      check_ray(u);
      check_ray(-u);
    });
  }
  if (unbounded) {
    out.status = OracleStatus::kUnbounded;
    return out;
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < vertices.size(); ++i)
    if (lp.f.dot(vertices[i]) < lp.f.dot(vertices[best])) best = i;
  out.x_star = vertices[best];
  out.objective = lp.f.dot(out.x_star);
  out.status = OracleStatus::kOptimal;

  const double scale = 1.0 + std::abs(out.objective);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (i != best &&
        std::abs(lp.f.dot(vertices[i]) - out.objective) <= kTieTol * scale)
      out.status = OracleStatus::kDegenerate;
  // A recession direction along which f is flat makes the optimal face
  // unbounded, hence not a single point.
  if (flat_ray) out.status = OracleStatus::kDegenerate;
  return out;
}

GeneralLP chebyshev_lp(const ChebyshevInstance& inst) {
  const auto m = inst.A.rows();
  const auto n = inst.A.cols();
  GeneralLP lp;
  lp.f = Vector::Zero(n + 1);
  lp.f[n] = -1.0;
  lp.A.resize(m, n + 1);
  lp.A.leftCols(n) = inst.A;
  lp.A.col(n) = inst.row_norms();
  lp.b = inst.b;
  lp.nonnegative.assign(static_cast<std::size_t>(n + 1), false);
  lp.nonnegative.back() = true;
  return lp;
}

OracleSolution solve_basis_pursuit(const BasisPursuitInstance& inst) {
  const auto m = inst.A.rows();
  const auto n = inst.A.cols();
  StandardLP lp;
  lp.f = Vector::Ones(2 * n);
  lp.A.resize(2 * m, 2 * n);
  lp.A << inst.A, -inst.A, -inst.A, inst.A;
  lp.b.resize(2 * m);
  lp.b << inst.b, -inst.b;
  OracleSolution split = solve_vertex_enum(lp);
  if (split.status == OracleStatus::kOptimal ||
      split.status == OracleStatus::kDegenerate) {
    split.x_star = Vector(split.x_star.head(n) - split.x_star.tail(n));
  }
  return split;
}

}  // namespace asynclp
