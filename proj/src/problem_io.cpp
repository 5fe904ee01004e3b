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

#include "asynclp/problem_io.hpp"

#include <fstream>
#include <sstream>

#include "asynclp/error.hpp"
#include "json.hpp"

namespace asynclp {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& msg) {
  throw Error(ErrorCode::kParse, "field '" + field + "': " + msg);
}

const json& require(const json& obj, const std::string& key,
                    const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end())
    field_error(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) field_error(field, "expected a number");
  return v.get<double>();
}

Vector read_vector(const json& v, const std::string& field) {
  if (!v.is_array()) field_error(field, "expected an array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    out[static_cast<Eigen::Index>(i)] =
        number(v[i], field + "[" + std::to_string(i) + "]");
  return out;
}

Matrix read_matrix(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty())
    field_error(field, "expected a non-empty array of rows");
  const auto cols = v[0].is_array() ? v[0].size() : 0;
  if (cols == 0) field_error(field + "[0]", "expected a non-empty row");
  Matrix out(static_cast<Eigen::Index>(v.size()),
             static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string row = field + "[" + std::to_string(i) + "]";
    if (!v[i].is_array()) field_error(row, "expected an array");
    if (v[i].size() != cols)
      field_error(row, "has " + std::to_string(v[i].size()) +
                           " entries, expected " + std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          number(v[i][j], row + "[" + std::to_string(j) + "]");
  }
  return out;
}

VariableKind read_kind(const json& v, const std::string& field) {
  if (!v.is_string()) field_error(field, "expected a string");
  const auto s = v.get<std::string>();
  if (s == "fixed") return VariableKind::kFixed;
  if (s == "linear_cost") return VariableKind::kLinearCost;
  if (s == "nonnegative") return VariableKind::kNonNegative;
  if (s == "l1") return VariableKind::kL1Cost;
  field_error(field, "unknown variable kind '" + s +
                         "' (expected fixed, linear_cost, nonnegative, l1)");
}

std::vector<VariableSpec> read_specs(const json& doc, const std::string& key,
                                     Role default_role) {
  const json& arr = require(doc, key, "");
  if (!arr.is_array()) field_error(key, "expected an array");
  std::vector<VariableSpec> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = key + "[" + std::to_string(i) + "]";
    const json& s = arr[i];
    if (!s.is_object()) field_error(where, "expected an object");
    VariableSpec spec;
    const json& name = require(s, "name", where);
    if (!name.is_string()) field_error(where + ".name", "expected a string");
    spec.name = name.get<std::string>();
    spec.kind = read_kind(require(s, "kind", where), where + ".kind");
    spec.role = default_role;
    if (auto it = s.find("role"); it != s.end()) {
      const auto r = it->is_string() ? it->get<std::string>() : "";
      if (r == "input") spec.role = Role::kInput;
      else if (r == "output") spec.role = Role::kOutput;
      else field_error(where + ".role", "expected \"input\" or \"output\"");
    }
    if (auto it = s.find("rho"); it != s.end() && !it->is_null())
      spec.rho = read_vector(*it, where + ".rho");
    if (auto it = s.find("length"); it != s.end()) {
      if (!it->is_number_integer() || it->get<long>() < 1)
        field_error(where + ".length", "expected a positive integer");
      spec.length = it->get<Eigen::Index>();
    } else if (spec.rho.size() > 0) {
      spec.length = spec.rho.size();
    } else {
      field_error(where + ".length", "missing (required when rho is absent)");
    }
    out.push_back(std::move(spec));
  }
  return out;
}

json to_json(const Vector& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> r(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      r[static_cast<std::size_t>(j)] = m(i, j);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

const char* to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::kStandard: return "standard";
    case ProblemKind::kAsync: return "async";
    case ProblemKind::kChebyshev: return "chebyshev";
    case ProblemKind::kBasisPursuit: return "basis_pursuit";
  }
  return "?";
}

ProblemFile make_problem(StandardLP lp) {
  ProblemFile p;
  p.kind = ProblemKind::kStandard;
  p.async = to_asynchronous_form(lp);
  p.standard = std::move(lp);
  return p;
}

ProblemFile make_problem(AsyncFormProblem a) {
  ProblemFile p;
  p.kind = ProblemKind::kAsync;
  p.async = std::move(a);
  return p;
}

ProblemFile make_problem(ChebyshevInstance inst) {
  ProblemFile p;
  p.kind = ProblemKind::kChebyshev;
  p.async = chebyshev_encode(inst);
  p.chebyshev = std::move(inst);
  return p;
}

ProblemFile make_problem(BasisPursuitInstance inst) {
  ProblemFile p;
  p.kind = ProblemKind::kBasisPursuit;
  p.async = basis_pursuit_encode(inst);
  p.basis_pursuit = std::move(inst);
  return p;
}

ProblemFile parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    if (const auto pos = msg.find("parse error"); pos != std::string::npos)
      msg = msg.substr(pos);
    throw Error(ErrorCode::kParse, location(text, e.byte) + ": " + msg);
  }
  if (!doc.is_object())
    throw Error(ErrorCode::kParse, "line 1, column 1: expected a JSON object");

  std::string kind;
  if (auto it = doc.find("kind"); it != doc.end()) {
    if (!it->is_string()) field_error("kind", "expected a string");
    kind = it->get<std::string>();
  } else if (doc.contains("B")) {
    kind = "async";
  } else {
    kind = "standard";
  }

  if (kind == "standard") {
    StandardLP lp;
    lp.A = read_matrix(require(doc, "A", ""), "A");
    lp.b = read_vector(require(doc, "b", ""), "b");
    lp.f = read_vector(require(doc, "f", ""), "f");
    if (lp.b.size() != lp.A.rows())
      field_error("b", "has length " + std::to_string(lp.b.size()) +
                           ", expected " + std::to_string(lp.A.rows()));
    if (lp.f.size() != lp.A.cols())
      field_error("f", "has length " + std::to_string(lp.f.size()) +
                           ", expected " + std::to_string(lp.A.cols()));
    return make_problem(std::move(lp));
  }
  if (kind == "async") {
    AsyncFormProblem p;
    p.B = read_matrix(require(doc, "B", ""), "B");
    p.inputs = read_specs(doc, "inputs", Role::kInput);
    p.outputs = read_specs(doc, "outputs", Role::kOutput);
    return make_problem(std::move(p));
  }
  if (kind == "chebyshev" || kind == "basis_pursuit") {
    Matrix A = read_matrix(require(doc, "A", ""), "A");
    Vector b = read_vector(require(doc, "b", ""), "b");
    if (b.size() != A.rows())
      field_error("b", "has length " + std::to_string(b.size()) +
                           ", expected " + std::to_string(A.rows()));
    if (kind == "chebyshev")
      return make_problem(ChebyshevInstance{std::move(A), std::move(b)});
    BasisPursuitInstance inst{std::move(A), std::move(b), std::nullopt};
    if (auto it = doc.find("x_true"); it != doc.end() && !it->is_null()) {
      inst.x_true = read_vector(*it, "x_true");
      if (inst.x_true->size() != inst.A.cols())
        field_error("x_true", "has the wrong length");
    }
    return make_problem(std::move(inst));
  }
  field_error("kind", "unknown problem kind '" + kind +
                          "' (expected standard, async, chebyshev, "
                          "basis_pursuit)");
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_problem(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string problem_to_json(const ProblemFile& p) {
  json doc;
  doc["kind"] = to_string(p.kind);
  switch (p.kind) {
    case ProblemKind::kStandard:
      doc["A"] = to_json(p.standard->A);
      doc["b"] = to_json(p.standard->b);
      doc["f"] = to_json(p.standard->f);
      break;
    case ProblemKind::kChebyshev:
      doc["A"] = to_json(p.chebyshev->A);
      doc["b"] = to_json(p.chebyshev->b);
      break;
    case ProblemKind::kBasisPursuit:
      doc["A"] = to_json(p.basis_pursuit->A);
      doc["b"] = to_json(p.basis_pursuit->b);
      if (p.basis_pursuit->x_true)
        doc["x_true"] = to_json(*p.basis_pursuit->x_true);
      break;
    case ProblemKind::kAsync: {
      doc["B"] = to_json(p.async.B);
      auto specs = [](const std::vector<VariableSpec>& list) {
        json arr = json::array();
        for (const auto& s : list) {
          json o{{"name", s.name},
                 {"role", to_string(s.role)},
                 {"kind", to_string(s.kind)},
                 {"length", s.length}};
          if (s.rho.size() > 0) o["rho"] = to_json(s.rho);
          arr.push_back(std::move(o));
        }
        return arr;
      };
      doc["inputs"] = specs(p.async.inputs);
      doc["outputs"] = specs(p.async.outputs);
      break;
    }
  }
  return doc.dump(2);
}

}  // namespace asynclp
