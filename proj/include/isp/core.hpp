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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isp/error.hpp"
#include "isp/matrix.hpp"
#include "isp/rational.hpp"

namespace isp {

/// Sorted, duplicate-free set of 0-based row or column indices. Canonical
/// ordering makes equality syntactic.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<int> items);
  explicit IndexSet(std::vector<int> items);

  static IndexSet range(int n);

  bool empty() const noexcept { return items_.empty(); }
  std::size_t size() const noexcept { return items_.size(); }
  bool contains(int i) const;

  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }
  int operator[](std::size_t k) const { return items_[k]; }
  const std::vector<int>& items() const noexcept { return items_; }

  IndexSet unite(const IndexSet& other) const;
  IndexSet intersect(const IndexSet& other) const;
  IndexSet minus(const IndexSet& other) const;
  bool is_subset_of(const IndexSet& other) const;

  /// Set of members of [0, 64) encoded as a bit mask.
  static IndexSet from_mask(unsigned long long mask);

  /// "{1,3}" with 1-based indices.
  std::string to_string_1based() const;

  bool operator==(const IndexSet&) const = default;
  auto operator<=>(const IndexSet&) const = default;

 private:
  std::vector<int> items_;
};

/// S(A) as adjacency lists in both directions.
class SupportPattern {
 public:
  SupportPattern(int rows, int cols) : by_row_(rows), by_col_(cols) {}

  template <class T>
  static SupportPattern of(const Matrix<T>& m) {
    SupportPattern s(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0) s.add(static_cast<int>(i), static_cast<int>(j));
    return s;
  }

  /// Edges must be added in row-major order.
  void add(int i, int j);

  int rows() const noexcept { return static_cast<int>(by_row_.size()); }
  int cols() const noexcept { return static_cast<int>(by_col_.size()); }
  std::size_t edge_count() const noexcept { return edges_; }
  bool contains(int i, int j) const;

  const std::vector<int>& row(int i) const { return by_row_[i]; }
  const std::vector<int>& col(int j) const { return by_col_[j]; }
  std::vector<std::pair<int, int>> pairs() const;

  /// Restriction to the block rows x cols, re-indexed to 0..|rows|-1 and
  /// 0..|cols|-1 in set order.
  SupportPattern restrict(const IndexSet& rows, const IndexSet& cols) const;

  bool operator==(const SupportPattern&) const = default;

 private:
  std::vector<std::vector<int>> by_row_;
  std::vector<std::vector<int>> by_col_;
  std::size_t edges_ = 0;
};

/// Nonnegative matrix with positive row targets r and column targets c.
/// Only constructible through validate_problem, so every instance satisfies
/// the invariants: no zero line, positive targets, matching dimensions.
class Problem {
 public:
  int rows() const noexcept { return static_cast<int>(matrix_.rows()); }
  int cols() const noexcept { return static_cast<int>(matrix_.cols()); }

  const Matrix<Rational>& matrix() const noexcept { return matrix_; }
  const Matrix<double>& float_matrix() const noexcept { return float_matrix_; }
  const std::vector<Rational>& row_targets() const noexcept { return r_; }
  const std::vector<Rational>& col_targets() const noexcept { return c_; }
  std::vector<double> float_row_targets() const;
  std::vector<double> float_col_targets() const;
  const SupportPattern& support() const noexcept { return support_; }

  /// A[rows, cols] with targets r|rows and scale * c|cols.
  Problem restrict(const IndexSet& rows, const IndexSet& cols,
                   const Rational& col_scale = Rational(1)) const;

  bool operator==(const Problem& o) const {
    return matrix_ == o.matrix_ && r_ == o.r_ && c_ == o.c_;
  }

 private:
  friend Problem validate_problem(Matrix<Rational>, std::vector<Rational>, std::vector<Rational>);
  Problem(Matrix<Rational> a, std::vector<Rational> r, std::vector<Rational> c);

  Matrix<Rational> matrix_;
  Matrix<double> float_matrix_;
  std::vector<Rational> r_;
  std::vector<Rational> c_;
  SupportPattern support_{0, 0};
};

Problem validate_problem(Matrix<Rational> matrix, std::vector<Rational> r, std::vector<Rational> c);

/// Convenience for tests and fixtures: rows of decimal or fraction strings.
Problem make_problem(const std::vector<std::vector<std::string>>& rows,
                     const std::vector<std::string>& r, const std::vector<std::string>& c);
Problem make_problem(const std::vector<std::vector<long>>& rows, const std::vector<long>& r,
                     const std::vector<long>& c);

/// N(I): columns with a support entry in some row of I.
IndexSet neighborhood(const SupportPattern& support, const IndexSet& rows);

/// Rows with a support entry in some column of J.
IndexSet row_neighborhood(const SupportPattern& support, const IndexSet& cols);

Rational marginal_sum(std::span<const Rational> targets, const IndexSet& s);

struct MediantBounds {
  Rational lo;
  Rational hi;
  Rational combined;  // sum(p) / sum(q)
  bool all_equal = false;
};

/// min/max of p_i/q_i together with sum(p)/sum(q), which always lies
/// between them and touches either end only when every ratio is equal.
MediantBounds mediant_bounds(std::span<const Rational> p, std::span<const Rational> q);

/// A pair (I, J) of row and column index sets with quotient r(I)/c(J).
struct Block {
  IndexSet rows;
  IndexSet cols;
  Rational quotient;

  bool operator==(const Block& o) const {
    return rows == o.rows && cols == o.cols && quotient == o.quotient;
  }
};

Block make_block(const Problem& problem, IndexSet rows, IndexSet cols);

/// Stored quotient equals r(rows)/c(cols) recomputed from the problem.
bool quotient_consistent(const Problem& problem, const Block& block);

struct Splitting {
  std::vector<Block> blocks;

  /// Row sets partition [rows], column sets partition [cols], no empty side.
  bool is_partition(int rows, int cols) const;

  /// Every block of this splitting lies inside some block of `coarser`.
  bool refines(const Splitting& coarser) const;

  /// Order-independent comparison of the index-set pairs.
  bool same_blocks(const Splitting& other) const;
};

/// The decomposition of the limit B together with the step-I group each
/// block came from.
struct Decomposition {
  std::vector<Block> blocks;
  std::vector<int> group;  // group[k] = step-I peel index of blocks[k]
  int group_count = 0;

  Splitting splitting() const { return Splitting{blocks}; }

  /// First step-I group merged into one block (the merge of all blocks with
  /// maximal quotient).
  Block leading_block() const;

  /// block_of_row[i] / block_of_col[j].
  std::vector<int> row_owner(int rows) const;
  std::vector<int> col_owner(int cols) const;
};

}  // namespace isp
