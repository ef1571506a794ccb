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

#include "isp/core.hpp"
#include "oracles.hpp"

using namespace isp;

namespace {

Errc error_code(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an isp::Error");
  return Errc::Internal;
}

Rational q(const char* s) {
  Rational out;
  REQUIRE(parse_rational(s, out));
  return out;
}

}  // namespace

TEST_CASE("decimal and fraction text parses exactly") {
  CHECK(q("0.25") == Rational(1, 4));
  CHECK(q("12") == 12);
  CHECK(q("-0.5") == Rational(-1, 2));
  CHECK(q("1.5e-3") == Rational(3, 2000));
  CHECK(q("2E2") == 200);
  CHECK(q(".5") == Rational(1, 2));
  CHECK(q("17/11") == Rational(17, 11));
  CHECK(q("6/4") == Rational(3, 2));

  Rational sink;
  for (const char* bad : {"", "abc", "1.2.3", "1/0", "1/", "/2", "1e", "--1", "0x10", "1,5", "nan"})
    CHECK_MESSAGE(!parse_rational(bad, sink), bad);
  CHECK_FALSE(parse_decimal("17/11", sink));
}

TEST_CASE("conversion to double rounds to nearest") {
  CHECK(to_double(Rational(1, 10)) == 0.1);
  CHECK(to_double(Rational(1, 3)) == 1.0 / 3.0);
  CHECK(to_double(Rational(2, 3)) == 2.0 / 3.0);
  CHECK(to_double(Rational(-7, 10)) == -0.7);
  CHECK(to_double(Rational(17, 11)) == 17.0 / 11.0);
}

TEST_CASE("validate_problem accepts the bordered example and rejects bad data") {
  const Problem p = oracle::bordered_example();
  CHECK(p.rows() == 4);
  CHECK(p.cols() == 4);
  CHECK(p.support().edge_count() == 11);

  CHECK(error_code([] { make_problem(std::vector<std::vector<long>>{{0, 0}, {1, 1}}, {1, 1}, {1, 1}); }) ==
        Errc::ZeroRow);
  CHECK(error_code([] { make_problem(std::vector<std::vector<long>>{{1, 0}, {1, 0}}, {1, 1}, {1, 1}); }) ==
        Errc::ZeroCol);
  CHECK(error_code([] { make_problem(std::vector<std::vector<long>>{{1, 1}, {1, 1}}, {1, 0}, {1, 1}); }) ==
        Errc::NonPositiveTarget);
  CHECK(error_code([] { make_problem(std::vector<std::vector<long>>{{1, 1}, {1, 1}}, {1, 1}, {1, -2}); }) ==
        Errc::NonPositiveTarget);
  CHECK(error_code([] { make_problem(std::vector<std::vector<long>>{{1, 1}, {1, 1}}, {1, 1, 1}, {1, 1}); }) ==
        Errc::DimensionMismatch);
  CHECK(error_code([] { make_problem(std::vector<std::vector<long>>{{1, -1}, {1, 1}}, {1, 1}, {1, 1}); }) ==
        Errc::NegativeEntry);
  CHECK(error_code([] { make_problem(std::vector<std::vector<long>>{}, {}, {}); }) == Errc::DimensionMismatch);

  try {
    make_problem(std::vector<std::vector<long>>{{0, 0}, {1, 1}}, {1, 1}, {1, 1});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("ZeroRow(1)") != std::string::npos);
  }
}

TEST_CASE("decimal entries are kept exact") {
  const Problem p = make_problem(std::vector<std::vector<std::string>>{{"0.1", "0.2"}, {"0.3", "1/3"}},
                                 std::vector<std::string>{"1", "2.5"}, std::vector<std::string>{"1.5", "2"});
  CHECK(p.matrix()(0, 0) == Rational(1, 10));
  CHECK(p.matrix()(1, 1) == Rational(1, 3));
  CHECK(p.row_targets()[1] == Rational(5, 2));
  CHECK(p.float_matrix()(0, 0) == 0.1);
}

TEST_CASE("neighborhood") {
  const Problem p = oracle::bordered_example();
  CHECK(neighborhood(p.support(), IndexSet{0, 1}) == IndexSet{0, 1});
  CHECK(neighborhood(p.support(), IndexSet{2, 3}) == IndexSet{0, 1, 2, 3});
  CHECK(neighborhood(p.support(), IndexSet{}).empty());
  CHECK(row_neighborhood(p.support(), IndexSet{2}) == IndexSet{2, 3});
}

TEST_CASE("neighborhood distributes over union and shrinks under intersection") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Problem p = oracle::random_problem(rng, 6, 6);
    const auto& s = p.support();
    const unsigned full = (1U << p.rows()) - 1;
    for (unsigned a = 0; a <= full; ++a) {
      for (unsigned b = 0; b <= full; ++b) {
        const IndexSet I1 = IndexSet::from_mask(a);
        const IndexSet I2 = IndexSet::from_mask(b);
        const IndexSet n1 = neighborhood(s, I1);
        const IndexSet n2 = neighborhood(s, I2);
        REQUIRE(neighborhood(s, I1.unite(I2)) == n1.unite(n2));
        REQUIRE(neighborhood(s, I1.intersect(I2)).is_subset_of(n1.intersect(n2)));
      }
    }
  }
}

TEST_CASE("marginal_sum") {
  const Problem p = oracle::bordered_example();
  CHECK(marginal_sum(p.row_targets(), IndexSet{0, 1}) == 12);
  CHECK(marginal_sum(p.col_targets(), IndexSet{0, 1}) == 8);
  CHECK(marginal_sum(p.col_targets(), IndexSet{2, 3}) == 3);
  CHECK(marginal_sum(p.row_targets(), IndexSet{}) == 0);

  // Additive over disjoint sets.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<unsigned> mask(0, 63);
  for (int k = 0; k < 500; ++k) {
    const unsigned a = mask(rng);
    const unsigned b = mask(rng) & ~a;
    std::vector<Rational> targets;
    for (int i = 0; i < 6; ++i) {
      Rational v(static_cast<long>(mask(rng)) + 1, 7);
      v.canonicalize();
      targets.push_back(v);
    }
    CHECK(marginal_sum(targets, IndexSet::from_mask(a | b)) ==
          marginal_sum(targets, IndexSet::from_mask(a)) + marginal_sum(targets, IndexSet::from_mask(b)));
  }
}

TEST_CASE("mediant_bounds") {
  auto v = [](std::initializer_list<long> xs) {
    std::vector<Rational> out;
    for (long x : xs) out.emplace_back(x);
    return out;
  };
  {
    const auto m = mediant_bounds(v({1, 3}), v({1, 1}));
    CHECK(m.lo == 1);
    CHECK(m.hi == 3);
    CHECK(m.combined == 2);
    CHECK_FALSE(m.all_equal);
  }
  {
    const auto m = mediant_bounds(v({2, 4}), v({1, 2}));
    CHECK(m.lo == 2);
    CHECK(m.hi == 2);
    CHECK(m.all_equal);
  }
  {
    const auto m = mediant_bounds(v({6, 6, 4, 1}), v({4, 4, 2, 1}));
    CHECK(m.lo == 1);
    CHECK(m.hi == 2);
    CHECK(m.combined == Rational(17, 11));
    CHECK_FALSE(m.all_equal);
  }
  CHECK(error_code([&] { mediant_bounds(v({}), v({})); }) == Errc::EmptyInput);
  CHECK(error_code([&] { mediant_bounds(v({1, 0}), v({1, 1})); }) == Errc::NonPositive);
  CHECK(error_code([&] { mediant_bounds(v({1}), v({1, 1})); }) == Errc::DimensionMismatch);
}

TEST_CASE("blocks and splittings") {
  const Problem p = oracle::bordered_example();
  const Block b = make_block(p, IndexSet{0, 1}, IndexSet{0, 1});
  CHECK(b.quotient == Rational(3, 2));
  CHECK(quotient_consistent(p, b));
  Block tampered = b;
  tampered.quotient = 1;
  CHECK_FALSE(quotient_consistent(p, tampered));

  const Splitting coarse{{make_block(p, IndexSet{0, 1}, IndexSet{0, 1}), make_block(p, IndexSet{2, 3}, IndexSet{2, 3})}};
  const Splitting fine{{make_block(p, IndexSet{0}, IndexSet{0}), make_block(p, IndexSet{1}, IndexSet{1}),
                        make_block(p, IndexSet{2, 3}, IndexSet{2, 3})}};
  CHECK(coarse.is_partition(4, 4));
  CHECK(fine.is_partition(4, 4));
  CHECK(fine.refines(coarse));
  CHECK_FALSE(coarse.refines(fine));
  CHECK_FALSE(Splitting{{make_block(p, IndexSet{0, 1}, IndexSet{0, 1})}}.is_partition(4, 4));
  const Splitting overlapping{{make_block(p, IndexSet{0, 1}, IndexSet{0, 1}), make_block(p, IndexSet{1, 2, 3}, IndexSet{2, 3})}};
  CHECK_FALSE(overlapping.is_partition(4, 4));
  CHECK(Splitting{{coarse.blocks[1], coarse.blocks[0]}}.same_blocks(coarse));
}

TEST_CASE("restrict re-indexes and scales column targets") {
  const Problem p = oracle::bordered_example();
  const Problem sub = p.restrict(IndexSet{2, 3}, IndexSet{2, 3}, Rational(1, 2));
  CHECK(sub.rows() == 2);
  CHECK(sub.matrix()(1, 0) == 9);
  CHECK(sub.row_targets()[0] == 4);
  CHECK(sub.col_targets()[0] == 1);
  CHECK(sub.col_targets()[1] == Rational(1, 2));
  CHECK(p.support().restrict(IndexSet{0, 1}, IndexSet{1}).edge_count() == 1);
}
