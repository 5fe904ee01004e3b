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

#include "asynclp/stationarity.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "asynclp/error.hpp"

namespace asynclp {

namespace {

constexpr double kMinReciprocalCondition = 1e-12;

Matrix take(const Matrix& m, const std::vector<Eigen::Index>& rows,
            const std::vector<Eigen::Index>& cols) {
  Matrix out(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      out(i, j) = m(rows[i], cols[j]);
  return out;
}

void write_matrix(std::ostream& os, const char* label, const Matrix& m) {
  os << label << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
    os << '\n';
  }
}

}  // namespace

Nonlinearity Nonlinearity::for_variable(VariableKind kind, Role role,
                                        double rho) {
  const bool in = role == Role::kInput;
  switch (kind) {
    case VariableKind::kFixed:
      return {in ? Kind::kFixedInput : Kind::kFixedOutput, rho};
    case VariableKind::kLinearCost:
      return {in ? Kind::kUnconstrainedInput : Kind::kUnconstrainedOutput,
              rho};
    case VariableKind::kNonNegative:
      return {in ? Kind::kNonNegInput : Kind::kNonNegOutput, 0.0};
    case VariableKind::kL1Cost:
      return {in ? Kind::kL1Input : Kind::kL1Output, 0.0};
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown variable kind");
}

const char* to_string(Nonlinearity::Kind k) {
  using K = Nonlinearity::Kind;
  switch (k) {
    case K::kFixedInput: return "fixed_input";
    case K::kFixedOutput: return "fixed_output";
    case K::kUnconstrainedInput: return "unconstrained_input";
    case K::kUnconstrainedOutput: return "unconstrained_output";
    case K::kNonNegInput: return "nonneg_input";
    case K::kNonNegOutput: return "nonneg_output";
    case K::kL1Input: return "l1_input";
    case K::kL1Output: return "l1_output";
  }
  return "?";
}

double l1_reflect(double d) {
  if (d < -1.0) return d + 2.0;
  if (d > 1.0) return d - 2.0;
  return -d;
}

double apply_nonlinearity(const Nonlinearity& k, double d, double gamma) {
  using K = Nonlinearity::Kind;
  switch (k.kind) {
    case K::kFixedInput: return -d + 2.0 * k.rho;
    case K::kFixedOutput: return d - 2.0 * k.rho;
    case K::kUnconstrainedInput: return d - 2.0 * k.rho;
    case K::kUnconstrainedOutput: return -d + 2.0 * k.rho;
    case K::kNonNegInput: return gamma * std::abs(d);
    case K::kNonNegOutput: return -(gamma * std::abs(d));
    case K::kL1Input: return gamma * l1_reflect(d);
    case K::kL1Output: return -(gamma * l1_reflect(d));
  }
  return 0.0;
}

Matrix build_R(const Matrix& B) {
  const auto m = B.rows();
  const auto n = B.cols();
  Matrix R = Matrix::Zero(n + m, n + m);
  R.topRightCorner(n, m) = -B.transpose();
  R.bottomLeftCorner(m, n) = B;
  return R;
}

Matrix build_G(const Matrix& B) {
  if (!B.array().isFinite().all())
    throw Error(ErrorCode::kInvalidArgument, "B contains NaN or Inf entries");
  const Matrix R = build_R(B);
  const auto n = R.rows();
  const Matrix I = Matrix::Identity(n, n);
  // I + R and (I - R)^-1 commute, so G = (I - R)^-1 (I + R).
  Eigen::PartialPivLU<Matrix> lu(I - R);
  if (lu.rcond() < kMinReciprocalCondition)
    throw Error(ErrorCode::kSingular, "I - R is numerically singular");
  return lu.solve(I + R);
}

Matrix build_G_factored(const Matrix& B) {
  const auto m = B.rows();
  const auto n = B.cols();
  const Matrix R = build_R(B);
  const Matrix I = Matrix::Identity(n + m, n + m);
  const Matrix IpR = I + R;

  Matrix blk = Matrix::Zero(n + m, n + m);
  const Matrix BtB = Matrix::Identity(n, n) + B.transpose() * B;
  const Matrix BBt = Matrix::Identity(m, m) + B * B.transpose();
  blk.topLeftCorner(n, n) = BtB.llt().solve(Matrix::Identity(n, n));
  blk.bottomRightCorner(m, m) = BBt.llt().solve(Matrix::Identity(m, m));
  return IpR * IpR * blk;
}

const VariableLayout& StationaritySystem::variable(
    const std::string& name) const {
  for (const auto& v : layout)
    if (v.name == name) return v;
  throw Error(ErrorCode::kInvalidArgument, "no variable named '" + name + "'");
}

StationaritySystem reduce(const Matrix& G, const AsyncFormProblem& problem) {
  const auto n_total = problem.input_length() + problem.output_length();
  if (G.rows() != n_total || G.cols() != n_total)
    throw Error(ErrorCode::kDimensionMismatch,
                "G is " + std::to_string(G.rows()) + "x" +
                    std::to_string(G.cols()) + " but the problem has " +
                    std::to_string(n_total) + " coordinates");

  StationaritySystem sys;
  sys.problem = problem;
  sys.G = G;

  std::vector<double> s_diag;
  std::vector<double> h_vals;
  Eigen::Index offset = 0;
  auto place = [&](const VariableSpec& spec) {
    VariableLayout v{spec.name, spec.role, spec.kind, offset, spec.length,
                     is_affine(spec.kind), 0};
    v.block_offset = static_cast<Eigen::Index>(
        v.affine ? sys.affine_index.size() : sys.nonlinear_index.size());
    for (Eigen::Index i = 0; i < spec.length; ++i) {
      const double rho = v.affine ? spec.rho[i] : 0.0;
      const auto nl = Nonlinearity::for_variable(spec.kind, spec.role, rho);
      if (!v.affine) {
        sys.nonlinear_index.push_back(offset + i);
        sys.nonlinear_maps.push_back(nl);
        continue;
      }
      sys.affine_index.push_back(offset + i);
      sys.affine_maps.push_back(nl);
      using K = Nonlinearity::Kind;
      switch (nl.kind) {
        case K::kFixedInput:
        case K::kUnconstrainedOutput:
          s_diag.push_back(-1.0);
          h_vals.push_back(2.0 * rho);
          break;
        default:
          s_diag.push_back(1.0);
          h_vals.push_back(-2.0 * rho);
          break;
      }
    }
    offset += spec.length;
    sys.layout.push_back(std::move(v));
  };
  for (const auto& s : problem.inputs) place(s);
  for (const auto& s : problem.outputs) place(s);

  if (sys.affine_index.empty() || sys.nonlinear_index.empty())
    throw Error(ErrorCode::kInvalidArgument,
                "reduction needs at least one affine and one nonlinear "
                "coordinate");

  sys.S = Eigen::Map<const Vector>(s_diag.data(),
                                   static_cast<Eigen::Index>(s_diag.size()));
  sys.h = Eigen::Map<const Vector>(h_vals.data(),
                                   static_cast<Eigen::Index>(h_vals.size()));
  sys.G11 = take(G, sys.affine_index, sys.affine_index);
  sys.G12 = take(G, sys.affine_index, sys.nonlinear_index);
  sys.G21 = take(G, sys.nonlinear_index, sys.affine_index);
  sys.G22 = take(G, sys.nonlinear_index, sys.nonlinear_index);

  const auto n1 = sys.num_affine();
  const Matrix I1 = Matrix::Identity(n1, n1);
  Eigen::PartialPivLU<Matrix> lu(I1 - sys.S.asDiagonal() * sys.G11);
  if (lu.rcond() < kMinReciprocalCondition)
    throw Error(ErrorCode::kSingular, "reduction singular: I - S G11");
  sys.Gprime = sys.G22 + sys.G21 * lu.solve(sys.S.asDiagonal() * sys.G12);
  sys.e = sys.G21 * lu.solve(sys.h);

  sys.recovery_lu.compute(I1 - sys.G11 * sys.S.asDiagonal());
  if (sys.recovery_lu.rcond() < kMinReciprocalCondition)
    throw Error(ErrorCode::kSingular, "reduction singular: I - G11 S");
  return sys;
}

StationaritySystem build_system(const AsyncFormProblem& problem) {
  const auto violations = validate_async_form(problem);
  if (!violations.empty()) {
    const auto code = violations.front().kind == Violation::Kind::kDimension
                          ? ErrorCode::kDimensionMismatch
                          : ErrorCode::kInvalidArgument;
    throw Error(code, "invalid asynchronous form: " +
                          violations.front().message);
  }
  return reduce(build_G(problem.B), problem);
}

Vector apply_nonlinear(const StationaritySystem& sys, const Vector& d2,
                       double gamma) {
  Vector c2(d2.size());
  for (Eigen::Index k = 0; k < d2.size(); ++k)
    c2[k] = apply_nonlinearity(sys.nonlinear_maps[k], d2[k], gamma);
  return c2;
}

AffineRecovery recover_affine(const StationaritySystem& sys, const Vector& c2) {
  if (c2.size() != sys.num_nonlinear())
    throw Error(ErrorCode::kDimensionMismatch,
                "c2 has length " + std::to_string(c2.size()) + ", expected " +
                    std::to_string(sys.num_nonlinear()));
  AffineRecovery r;
  r.d1 = sys.recovery_lu.solve(sys.G12 * c2 + sys.G11 * sys.h);
  r.c1 = sys.S.asDiagonal() * r.d1 + sys.h;
  return r;
}

FullPoint assemble(const StationaritySystem& sys, const AffineRecovery& affine,
                   const Vector& d2, const Vector& c2) {
  const auto n = sys.num_coordinates();
  FullPoint pt{Vector(n), Vector(n)};
  for (std::size_t i = 0; i < sys.affine_index.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    pt.d[sys.affine_index[i]] = affine.d1[k];
    pt.c[sys.affine_index[i]] = affine.c1[k];
  }
  for (std::size_t i = 0; i < sys.nonlinear_index.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    pt.d[sys.nonlinear_index[i]] = d2[k];
    pt.c[sys.nonlinear_index[i]] = c2[k];
  }
  return pt;
}

FullPoint expand(const StationaritySystem& sys, const Vector& d2) {
  const Vector c2 = apply_nonlinear(sys, d2);
  return assemble(sys, recover_affine(sys, c2), d2, c2);
}

std::vector<Vector> recover_solution(
    const Vector& d, const Vector& c,
    const std::vector<VariableLayout>& layout) {
  std::vector<Vector> out;
  out.reserve(layout.size());
  for (const auto& v : layout) {
    const auto dv = d.segment(v.offset, v.length);
    const auto cv = c.segment(v.offset, v.length);
    if (v.role == Role::kInput)
      out.emplace_back(0.5 * (dv + cv));
    else
      out.emplace_back(0.5 * (dv - cv));
  }
  return out;
}

double full_residual(const StationaritySystem& sys, const FullPoint& pt) {
  double r = (pt.d - sys.G * pt.c).lpNorm<Eigen::Infinity>();
  for (std::size_t i = 0; i < sys.affine_index.size(); ++i) {
    const auto j = sys.affine_index[i];
    r = std::max(r, std::abs(pt.c[j] -
                             apply_nonlinearity(sys.affine_maps[i], pt.d[j])));
  }
  for (std::size_t i = 0; i < sys.nonlinear_index.size(); ++i) {
    const auto j = sys.nonlinear_index[i];
    r = std::max(r, std::abs(pt.c[j] - apply_nonlinearity(
                                           sys.nonlinear_maps[i], pt.d[j])));
  }
  return r;
}

void dump_system(const StationaritySystem& sys, std::ostream& os) {
  const auto old_precision = os.precision();
  os << std::setprecision(17);
  os << "# asynclp system dump v1: blocks 'name rows cols' then row-major "
        "values\n";
  write_matrix(os, "G", sys.G);
  write_matrix(os, "Gprime", sys.Gprime);
  write_matrix(os, "e", sys.e);
  os.precision(old_precision);
}

}  // namespace asynclp
