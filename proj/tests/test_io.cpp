// Copyright 2026 The isp-limits Authors
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

#include <doctest.h>

#include <random>
#include <sstream>

#include "isp/commands.hpp"
#include "isp/io.hpp"
#include "isp/report.hpp"
#include "oracles.hpp"

using namespace isp;

namespace {

const char* const kBorderedCsv =
    ",4,4,2,1\n"
    "6,1,0,0,0\n"
    "6,1,1,0,0\n"
    "4,1,1,7,2\n"
    "1,1,1,9,6\n";

Problem tri_lower() { return make_problem(std::vector<std::vector<long>>{{1, 0}, {1, 1}}, {3, 1}, {1, 3}); }
Problem tri_upper() { return make_problem(std::vector<std::vector<long>>{{1, 1}, {0, 1}}, {1, 1}, {1, 1}); }

ParseError parse_error(std::string_view text) {
  try {
    parse_problem(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected ParseError for: " << text);
  return ParseError(0, 0, "");
}

Errc error_code(std::string_view text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error for: " << text);
  return Errc::Internal;
}

}  // namespace

TEST_CASE("bordered CSV") {
  CHECK(parse_problem(kBorderedCsv) == oracle::bordered_example());
  CHECK(parse_problem(std::string(kBorderedCsv) + "\n\n") == oracle::bordered_example());
  CHECK(parse_problem(" , 1.5 \r\n 1.5 , 2\r\n").row_targets()[0] == Rational(3, 2));
  CHECK(serialize_problem_csv(oracle::bordered_example()) == kBorderedCsv);

  auto e = parse_error(",1,1\n1,1,x\n1,1,1\n");
  CHECK(e.line() == 2);
  CHECK(e.column() == 5);
  e = parse_error(",1,1\n1,1\n1,1,1\n");
  CHECK(e.line() == 2);
  e = parse_error("1,1,1\n1,1,1\n");
  CHECK(e.line() == 1);
  parse_error(",1\n1,1/2\n");  // fractions are JSON-only
  parse_error("");

  CHECK(error_code(",1,1\n1,0,0\n1,1,1\n") == Errc::ZeroRow);
  CHECK(error_code(",1,1\n1,-1,1\n1,1,1\n") == Errc::NegativeEntry);
}

TEST_CASE("JSON documents") {
  const Problem p = parse_problem(R"({"row_sums": [1,1], "col_sums": [1,1], "matrix": [[1,1],[0,1]]})");
  CHECK(p == tri_upper());

  const Problem q = parse_problem(R"({"matrix": [[0.1, "1/3"]], "row_sums": ["2.5"], "col_sums": [1e-1, 0.3]})");
  CHECK(q.matrix()(0, 0) == Rational(1, 10));
  CHECK(q.matrix()(0, 1) == Rational(1, 3));
  CHECK(q.row_targets()[0] == Rational(5, 2));
  CHECK(q.col_targets()[0] == Rational(1, 10));
  CHECK(q.col_targets()[1] == Rational(3, 10));

  // Long decimals stay exact instead of going through double.
  const Problem big = parse_problem(R"({"matrix": [[0.30000000000000000001]], "row_sums": [1], "col_sums": [1]})");
  CHECK(big.matrix()(0, 0) == Rational(mpz_class("30000000000000000001"), mpz_class("100000000000000000000")));

  auto e = parse_error("{\"matrix\": [[1,1],\n [0,1]], \"row_sums\": [1,1], \"col_sums\": [1,]}");
  CHECK(e.line() == 2);
  e = parse_error(R"({"matrix": [[1]], "row_sums": [1]})");
  CHECK(e.line() == 0);
  parse_error(R"({"matrix": [[1]], "row_sums": ["x"], "col_sums": [1]})");
  parse_error(R"({"matrix": [[true]], "row_sums": [1], "col_sums": [1]})");
  parse_error(R"([1, 2])");

  CHECK(error_code(R"({"matrix": [[0,0],[1,1]], "row_sums": [1,1], "col_sums": [1,1]})") == Errc::ZeroRow);
  CHECK(error_code(R"({"matrix": [[1,1],[1]], "row_sums": [1,1], "col_sums": [1,1]})") == Errc::DimensionMismatch);
}

TEST_CASE("problem serialization round-trips") {
  std::mt19937_64 rng(401);
  for (int trial = 0; trial < 200; ++trial) {
    const Problem p = oracle::random_problem(rng, 6, 6);
    REQUIRE(parse_problem(serialize_problem_json(p, true)) == p);
    REQUIRE(parse_problem(serialize_problem_json(p, false)) == p);
    REQUIRE(parse_problem(serialize_problem_csv(p)) == p);
  }
  const Problem frac = make_problem(std::vector<std::vector<std::string>>{{"1/3", "0.25"}}, std::vector<std::string>{"17/11"},
                                  std::vector<std::string>{"1", "2"});
  CHECK(parse_problem(serialize_problem_json(frac)) == frac);
  CHECK(serialize_problem_json(frac).find("\"17/11\"") != std::string::npos);
  CHECK_THROWS_AS(serialize_problem_csv(frac), Error);
}

TEST_CASE("check command") {
  auto r = cmd_check(tri_lower(), Rational(1));
  REQUIRE(r.check);
  CHECK_FALSE(r.check->feasible);
  CHECK(r.check->witness == std::vector<int>{1});
  CHECK(r.check->gap == "2");
  CHECK(to_text(r) == "Infeasible, I={1}, gap=2\n");

  r = cmd_check(oracle::bordered_example());
  CHECK(r.check->feasible);
  CHECK(r.check->scale == "17/11");
  CHECK(to_text(r).rfind("Feasible", 0) == 0);

  r = cmd_check(make_problem(std::vector<std::vector<long>>{{1, 2}, {3, 4}}, {2, 2}, {1, 3}));
  CHECK(r.check->feasible);
}

TEST_CASE("decompose command") {
  auto r = cmd_decompose(tri_upper());
  REQUIRE(r.decomposition);
  CHECK(r.decomposition->size() == 2);
  for (const auto& b : *r.decomposition) CHECK(b.quotient == "1");
  CHECK_FALSE(*r.single_block);

  r = cmd_decompose(tri_lower());
  CHECK((*r.decomposition)[0].quotient == "3");
  CHECK((*r.decomposition)[1].quotient == "1/3");
  CHECK((*r.decomposition)[1].quotient_decimal == doctest::Approx(1.0 / 3));
  CHECK((*r.decomposition)[0].rows == std::vector<int>{1});

  r = cmd_decompose(oracle::bordered_example());
  CHECK(r.decomposition->size() == 1);
  CHECK((*r.decomposition)[0].quotient == "17/11");
  CHECK(*r.single_block);
}

TEST_CASE("limits command") {
  auto r = cmd_limits(tri_lower());
  REQUIRE(r.limits);
  CHECK(r.limits->B == Grid{{3, 0}, {0, 1}});
  CHECK(r.limits->C == Grid{{1, 0}, {0, 3}});
  CHECK(r.limits->row_residual == 0);
  CHECK(r.limits->col_residual == 0);

  r = cmd_limits(make_problem(std::vector<std::vector<long>>{{5}}, {2}, {3}));
  CHECK(r.limits->B == Grid{{2}});
  CHECK(r.limits->C == Grid{{3}});

  r = cmd_limits(oracle::bordered_example());
  CHECK(r.limits->B[0][0] == doctest::Approx(6));
  CHECK(r.limits->C[0][0] == doctest::Approx(66.0 / 17).epsilon(1e-9));
  CHECK(r.limits->row_residual < 1e-9);
  CHECK(r.limits->col_residual < 1e-9);
}

TEST_CASE("scale command") {
  ScaleOptions opts;
  opts.iters = 500;
  std::ostringstream csv;
  opts.trace_csv = &csv;
  auto r = cmd_scale(tri_upper(), opts);
  REQUIRE(r.trace);
  CHECK(r.trace->iterations == 500);
  CHECK(r.trace->B[0][1] == doctest::Approx(0.001).epsilon(1e-12));
  const std::string text = csv.str();
  CHECK(text.rfind("k,delta,col_deviation,b_1_1,b_1_2,b_2_1,b_2_2\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 501);

  r = cmd_scale(make_problem(std::vector<std::vector<long>>{{1, 2}, {3, 0}}, {3, 3}, {4, 2}), ScaleOptions{});
  CHECK(r.trace->iterations == 1);
  CHECK(r.trace->converged);
}

TEST_CASE("bench command") {
  BenchOptions opts;
  opts.tol = 1e-6;
  opts.naive_cap = 20000;
  std::ostringstream csv;
  opts.csv = &csv;
  auto r = cmd_bench(tri_upper(), opts);
  REQUIRE(r.bench);
  CHECK_FALSE(r.bench->naive_reached);
  CHECK(r.bench->naive_iters == 20000);
  CHECK(r.bench->accelerated_iters <= 2);
  CHECK(csv.str().rfind("k,naive_error\n", 0) == 0);

  opts.tol = 1e-9;
  opts.csv = nullptr;
  r = cmd_bench(tri_lower(), opts);
  CHECK(r.bench->naive_reached);
  CHECK(r.bench->accelerated_iters <= 2);

  // A single full-support block: both paths need a similar effort.
  opts.tol = 1e-8;
  r = cmd_bench(make_problem(std::vector<std::vector<long>>{{1, 2}, {3, 4}}, {2, 2}, {1, 3}), opts);
  CHECK(r.bench->naive_reached);
  CHECK(r.bench->accelerated_iters <= 2 * r.bench->naive_iters + 2);
  CHECK(r.bench->naive_iters <= 2 * r.bench->accelerated_iters + 2);
}

TEST_CASE("reports round-trip and are deterministic") {
  const Problem p = oracle::bordered_example();
  ScaleOptions sopts;
  sopts.iters = 50;
  BenchOptions bopts;
  bopts.naive_cap = 1000;
  const std::vector<Report> reports{cmd_check(p), cmd_check(tri_lower(), Rational(1)), cmd_decompose(p),
                                    cmd_limits(p), cmd_scale(p, sopts), cmd_bench(tri_lower(), bopts)};
  for (const auto& r : reports) {
    CAPTURE(r.command);
    const std::string json = to_json(r);
    CHECK(report_from_json(json) == r);
    CHECK(to_json(report_from_json(json)) == json);
  }
  CHECK(to_json(cmd_limits(p)) == to_json(cmd_limits(p)));
  CHECK(to_json(cmd_decompose(p)) == to_json(cmd_decompose(p)));
  CHECK(to_json(cmd_scale(p, sopts)) == to_json(cmd_scale(p, sopts)));
  CHECK_THROWS_AS(report_from_json("{\"command\": 3}"), ParseError);
}

TEST_CASE("round_grids") {
  Report r = cmd_limits(oracle::bordered_example());
  round_grids(r, 3);
  CHECK(r.limits->C[0][0] == 3.88);
}
