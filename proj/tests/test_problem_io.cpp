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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "asynclp/error.hpp"
#include "asynclp/problem_io.hpp"

using namespace asynclp;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    return e.what();
  }
  FAIL("expected a parse error");
  return {};
}

bool contains(const std::string& s, const std::string& needle) {
  return s.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("standard form, kind inferred") {
  const auto p = parse_problem(R"({"A": [[2]], "b": [1], "f": [3]})");
  CHECK(p.kind == ProblemKind::kStandard);
  REQUIRE(p.standard.has_value());
  CHECK(p.standard->A(0, 0) == 2.0);
  Matrix expected(2, 2);
  expected << 0, 1, 1, -2;
  CHECK(p.async.B == expected);
}

TEST_CASE("asynchronous form") {
  const auto p = parse_problem(R"({
    "B": [[1, 0], [0, 1]],
    "inputs": [{"name": "x", "kind": "linear_cost", "rho": [1, -1]}],
    "outputs": [{"name": "y", "kind": "nonnegative", "length": 2}]
  })");
  CHECK(p.kind == ProblemKind::kAsync);
  REQUIRE(p.async.inputs.size() == 1);
  CHECK(p.async.inputs[0].length == 2);
  CHECK(p.async.inputs[0].role == Role::kInput);
  CHECK(p.async.outputs[0].role == Role::kOutput);
  CHECK(p.async.outputs[0].kind == VariableKind::kNonNegative);
}

TEST_CASE("chebyshev and basis pursuit files") {
  const auto c = parse_problem(
      R"({"kind": "chebyshev", "A": [[1, 0], [-1, 0], [0, 1], [0, -1]],
          "b": [1, 1, 1, 1]})");
  CHECK(c.kind == ProblemKind::kChebyshev);
  CHECK(c.async.B.rows() == 5);
  const auto b = parse_problem(
      R"({"kind": "basis_pursuit", "A": [[1, 2]], "b": [2], "x_true": [0, 1]})");
  CHECK(b.kind == ProblemKind::kBasisPursuit);
  REQUIRE(b.basis_pursuit->x_true.has_value());
  CHECK((*b.basis_pursuit->x_true)[1] == 1.0);
}

TEST_CASE("malformed JSON reports line and column") {
  const auto msg = parse_error("{\n  \"A\": [[1, 2],\n  \"b\": ]\n}");
  CHECK(contains(msg, "line 3"));
  CHECK(contains(msg, "column"));
  CHECK(contains(parse_error("[1, 2]"), "expected a JSON object"));
}

TEST_CASE("field diagnostics") {
  CHECK(contains(parse_error(R"({"A": [[1, 2], [3]], "b": [1, 1], "f": [0, 0]})"),
                 "field 'A[1]'"));
  CHECK(contains(parse_error(R"({"A": [[1, "x"]], "b": [1], "f": [0, 0]})"),
                 "field 'A[0][1]'"));
  CHECK(contains(parse_error(R"({"A": [[1]], "f": [0]})"), "field 'b'"));
  CHECK(contains(parse_error(R"({"A": [[1]], "b": [1, 2], "f": [0]})"),
                 "field 'b'"));
  CHECK(contains(parse_error(R"({"kind": "qp", "A": [[1]]})"), "field 'kind'"));
  CHECK(contains(parse_error(R"({"B": [[1]], "inputs": [{"name": "x",
      "kind": "positive", "length": 1}], "outputs": []})"),
                 "inputs[0].kind"));
  CHECK(contains(parse_error(R"({"B": [[1]], "inputs": [{"name": "x",
      "kind": "nonnegative"}], "outputs": []})"),
                 "inputs[0].length"));
}

TEST_CASE("round trip through JSON is exact") {
  const std::vector<std::string> docs = {
      R"({"A": [[0.1, 0.7], [1e-17, -3.3333333333333335]], "b": [1, 2], "f": [0.3, -0.2]})",
      R"({"kind": "chebyshev", "A": [[0.6, 0.8], [-1, 0]], "b": [1.5, 2]})",
      R"({"kind": "basis_pursuit", "A": [[1, 2]], "b": [2]})",
      R"({"B": [[1]], "inputs": [{"name": "x", "kind": "fixed", "rho": [0.1]}],
          "outputs": [{"name": "y", "kind": "l1", "length": 1}]})"};
  for (const auto& d : docs) {
    const auto a = parse_problem(d);
    const auto b = parse_problem(problem_to_json(a));
    CHECK(a.kind == b.kind);
    CHECK(a.async.B == b.async.B);
    REQUIRE(a.async.inputs.size() == b.async.inputs.size());
    for (std::size_t i = 0; i < a.async.inputs.size(); ++i) {
      CHECK(a.async.inputs[i].name == b.async.inputs[i].name);
      CHECK(a.async.inputs[i].kind == b.async.inputs[i].kind);
      CHECK(a.async.inputs[i].rho == b.async.inputs[i].rho);
    }
  }
}

TEST_CASE("loading from disk") {
  const auto path =
      (std::filesystem::temp_directory_path() / "asynclp_io_test.json")
          .string();
  {
    std::ofstream out(path);
    out << R"({"A": [[1]], "b": [1], "f": [1]})";
  }
  CHECK(load_problem(path).kind == ProblemKind::kStandard);
  {
    std::ofstream out(path);
    out << R"({"A": [[1]], "b": [1], "f": "oops"})";
  }
  try {
    load_problem(path);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(contains(e.what(), path));
    CHECK(contains(e.what(), "field 'f'"));
  }
  std::remove(path.c_str());
  try {
    load_problem(path);
    FAIL("expected i/o error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}
