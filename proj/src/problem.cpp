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

#include "asynclp/problem.hpp"

#include <cmath>
#include <set>

#include "asynclp/error.hpp"

namespace asynclp {

namespace {

bool all_finite(const Eigen::Ref<const Matrix>& m) {
  return m.array().isFinite().all();
}

Eigen::Index total_length(const std::vector<VariableSpec>& specs) {
  Eigen::Index n = 0;
  for (const auto& s : specs) n += s.length;
  return n;
}

}  // namespace

void check_standard_lp(const StandardLP& lp) {
  const auto m = lp.A.rows();
  const auto n = lp.A.cols();
  if (m < 1 || n < 1)
    throw Error(ErrorCode::kDimensionMismatch,
                "standard LP needs M >= 1 and N >= 1");
  if (lp.b.size() != m)
    throw Error(ErrorCode::kDimensionMismatch,
                "b has length " + std::to_string(lp.b.size()) +
                    ", expected M = " + std::to_string(m));
  if (lp.f.size() != n)
    throw Error(ErrorCode::kDimensionMismatch,
                "f has length " + std::to_string(lp.f.size()) +
                    ", expected N = " + std::to_string(n));
  if (!all_finite(lp.A) || !all_finite(lp.b) || !all_finite(lp.f))
    throw Error(ErrorCode::kInvalidArgument,
                "standard LP contains NaN or Inf entries");
}

const char* to_string(Role r) {
  return r == Role::kInput ? "input" : "output";
}

const char* to_string(VariableKind k) {
  switch (k) {
    case VariableKind::kFixed: return "fixed";
    case VariableKind::kLinearCost: return "linear_cost";
    case VariableKind::kNonNegative: return "nonnegative";
    case VariableKind::kL1Cost: return "l1";
  }
  return "?";
}

VariableSpec VariableSpec::fixed(std::string name, Role role, Vector rho) {
  const auto len = rho.size();
  return {std::move(name), role, VariableKind::kFixed, len, std::move(rho)};
}

VariableSpec VariableSpec::linear_cost(std::string name, Role role,
                                       Vector rho) {
  const auto len = rho.size();
  return {std::move(name), role, VariableKind::kLinearCost, len,
          std::move(rho)};
}

VariableSpec VariableSpec::nonnegative(std::string name, Role role,
                                       Eigen::Index length) {
  return {std::move(name), role, VariableKind::kNonNegative, length, Vector()};
}

VariableSpec VariableSpec::l1_cost(std::string name, Role role,
                                   Eigen::Index length) {
  return {std::move(name), role, VariableKind::kL1Cost, length, Vector()};
}

Eigen::Index AsyncFormProblem::input_length() const {
  return total_length(inputs);
}

Eigen::Index AsyncFormProblem::output_length() const {
  return total_length(outputs);
}

AsyncFormProblem to_asynchronous_form(const StandardLP& lp) {
  check_standard_lp(lp);
  const auto m = lp.A.rows();
  const auto n = lp.A.cols();

  AsyncFormProblem p;
  // Inputs are [b; x1], outputs are [x2; y].
  p.B = Matrix::Zero(n + m, m + n);
  p.B.block(0, m, n, n).setIdentity();
  p.B.block(n, 0, m, m).setIdentity();
  p.B.block(n, m, m, n) = -lp.A;

  p.inputs.push_back(VariableSpec::fixed("b", Role::kInput, lp.b));
  p.inputs.push_back(VariableSpec::linear_cost("x1", Role::kInput, lp.f));
  p.outputs.push_back(VariableSpec::nonnegative("x2", Role::kOutput, n));
  p.outputs.push_back(VariableSpec::nonnegative("y", Role::kOutput, m));
  return p;
}

std::vector<Violation> validate_async_form(const AsyncFormProblem& p) {
  std::vector<Violation> out;
  auto dim = [&](std::string msg) {
    out.push_back({Violation::Kind::kDimension, std::move(msg)});
  };
  auto conv = [&](std::string msg) {
    out.push_back({Violation::Kind::kConvention, std::move(msg)});
  };

  if (p.inputs.empty()) conv("(i) no input variables");
  if (p.outputs.empty()) conv("(i) no output variables");

  const auto in_len = p.input_length();
  const auto out_len = p.output_length();
  if (p.B.cols() != in_len)
    dim("B has " + std::to_string(p.B.cols()) +
        " columns but inputs total " + std::to_string(in_len));
  if (p.B.rows() != out_len)
    dim("B has " + std::to_string(p.B.rows()) +
        " rows but outputs total " + std::to_string(out_len));
  if (!all_finite(p.B)) dim("B contains NaN or Inf entries");

  std::set<std::string> names;
  auto check = [&](const VariableSpec& s, Role expected) {
    const std::string tag = "variable '" + s.name + "'";
    if (s.name.empty()) conv("(i) unnamed variable");
    if (!names.insert(s.name).second) conv("(i) duplicate " + tag);
    if (s.role != expected)
      conv(tag + " declared as " + to_string(s.role) + " but listed as " +
           to_string(expected));
    if (s.length < 1) dim(tag + " has non-positive length");
    if (is_affine(s.kind)) {
      if (s.rho.size() != s.length)
        dim(tag + " rho has length " + std::to_string(s.rho.size()) +
            ", expected " + std::to_string(s.length));
      else if (!all_finite(s.rho))
        dim(tag + " rho contains NaN or Inf entries");
    } else if (s.rho.size() != 0) {
      if (s.kind == VariableKind::kNonNegative &&
          (s.rho.array() != 0.0).any())
        conv("(iii) " + tag +
             " is non-negative but carries non-zero cost coefficients");
      else
        conv("(ii) " + tag + " of kind " + to_string(s.kind) +
             " must not carry rho");
    }
  };
  for (const auto& s : p.inputs) check(s, Role::kInput);
  for (const auto& s : p.outputs) check(s, Role::kOutput);
  return out;
}

double objective_value(const AsyncFormProblem& p,
                       const std::vector<Vector>& values) {
  double obj = 0.0;
  std::size_t i = 0;
  auto add = [&](const VariableSpec& s) {
    const Vector& v = values.at(i++);
    if (s.kind == VariableKind::kLinearCost)
      obj += s.rho.dot(v);
    else if (s.kind == VariableKind::kL1Cost)
      obj += v.lpNorm<1>();
  };
  for (const auto& s : p.inputs) add(s);
  for (const auto& s : p.outputs) add(s);
  return obj;
}

}  // namespace asynclp
