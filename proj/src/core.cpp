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

#include "isp/core.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace isp {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::ZeroRow: return "ZeroRow";
    case Errc::ZeroCol: return "ZeroCol";
    case Errc::NonPositiveTarget: return "NonPositiveTarget";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::NonPositive: return "NonPositive";
    case Errc::ZeroRowSum: return "ZeroRowSum";
    case Errc::ZeroColSum: return "ZeroColSum";
    case Errc::SupportMismatch: return "SupportMismatch";
    case Errc::InfeasibleInstance: return "InfeasibleInstance";
    case Errc::TotalsMismatch: return "TotalsMismatch";
    case Errc::InfeasibleBlock: return "InfeasibleBlock";
    case Errc::EmptyBlockSupport: return "EmptyBlockSupport";
    case Errc::Parse: return "ParseError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

bool Error::is_input_error() const noexcept {
  switch (code_) {
    case Errc::ZeroRow:
    case Errc::ZeroCol:
    case Errc::NonPositiveTarget:
    case Errc::DimensionMismatch:
    case Errc::NegativeEntry:
    case Errc::EmptyInput:
    case Errc::NonPositive:
    case Errc::Parse:
      return true;
    default:
      return false;
  }
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error(Errc::Parse, line == 0 ? "ParseError: " + what
                                   : "ParseError at line " + std::to_string(line) + ", column " +
                                         std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------- IndexSet

IndexSet::IndexSet(std::initializer_list<int> items) : IndexSet(std::vector<int>(items)) {}

IndexSet::IndexSet(std::vector<int> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

IndexSet IndexSet::range(int n) {
  IndexSet s;
  s.items_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s.items_[static_cast<std::size_t>(i)] = i;
  return s;
}

IndexSet IndexSet::from_mask(unsigned long long mask) {
  IndexSet s;
  for (int i = 0; i < 64; ++i)
    if (mask >> i & 1ULL) s.items_.push_back(i);
  return s;
}

bool IndexSet::contains(int i) const { return std::binary_search(items_.begin(), items_.end(), i); }

IndexSet IndexSet::unite(const IndexSet& other) const {
  IndexSet out;
  std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                 std::back_inserter(out.items_));
  return out;
}

IndexSet IndexSet::intersect(const IndexSet& other) const {
  IndexSet out;
  std::set_intersection(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                        std::back_inserter(out.items_));
  return out;
}

IndexSet IndexSet::minus(const IndexSet& other) const {
  IndexSet out;
  std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                      std::back_inserter(out.items_));
  return out;
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

std::string IndexSet::to_string_1based() const {
  std::string s = "{";
  for (std::size_t k = 0; k < items_.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(items_[k] + 1);
  }
  return s + "}";
}

// ---------------------------------------------------------- SupportPattern

void SupportPattern::add(int i, int j) {
  by_row_[static_cast<std::size_t>(i)].push_back(j);
  by_col_[static_cast<std::size_t>(j)].push_back(i);
  ++edges_;
}

bool SupportPattern::contains(int i, int j) const {
  const auto& r = by_row_[static_cast<std::size_t>(i)];
  return std::binary_search(r.begin(), r.end(), j);
}

std::vector<std::pair<int, int>> SupportPattern::pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edges_);
  for (int i = 0; i < rows(); ++i)
    for (int j : row(i)) out.emplace_back(i, j);
  return out;
}

SupportPattern SupportPattern::restrict(const IndexSet& rows, const IndexSet& cols) const {
  std::vector<int> col_index(static_cast<std::size_t>(this->cols()), -1);
  for (std::size_t k = 0; k < cols.size(); ++k) col_index[static_cast<std::size_t>(cols[k])] = static_cast<int>(k);
  SupportPattern out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (int j : row(rows[k]))
      if (int jj = col_index[static_cast<std::size_t>(j)]; jj >= 0) out.add(static_cast<int>(k), jj);
  return out;
}

// ----------------------------------------------------------------- Problem

Problem::Problem(Matrix<Rational> a, std::vector<Rational> r, std::vector<Rational> c)
    : matrix_(std::move(a)), r_(std::move(r)), c_(std::move(c)) {
  float_matrix_ = matrix_.map<double>([](const Rational& q) { return to_double(q); });
  support_ = SupportPattern::of(matrix_);
}

std::vector<double> Problem::float_row_targets() const {
  std::vector<double> out;
  for (const auto& q : r_) out.push_back(to_double(q));
  return out;
}

std::vector<double> Problem::float_col_targets() const {
  std::vector<double> out;
  for (const auto& q : c_) out.push_back(to_double(q));
  return out;
}

Problem Problem::restrict(const IndexSet& rows, const IndexSet& cols,
                          const Rational& col_scale) const {
  Matrix<Rational> sub(rows.size(), cols.size());
  std::vector<Rational> r;
  std::vector<Rational> c;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    r.push_back(r_[static_cast<std::size_t>(rows[a])]);
    for (std::size_t b = 0; b < cols.size(); ++b)
      sub(a, b) = matrix_(static_cast<std::size_t>(rows[a]), static_cast<std::size_t>(cols[b]));
  }
  for (int j : cols) c.push_back(col_scale * c_[static_cast<std::size_t>(j)]);
  return validate_problem(std::move(sub), std::move(r), std::move(c));
}

Problem validate_problem(Matrix<Rational> matrix, std::vector<Rational> r, std::vector<Rational> c) {
  const std::size_t m = matrix.rows();
  const std::size_t n = matrix.cols();
  if (m == 0 || n == 0) throw Error(Errc::DimensionMismatch, "matrix must have at least one row and one column");
  if (r.size() != m || c.size() != n) {
    std::ostringstream os;
    os << "DimensionMismatch: matrix is " << m << "x" << n << " but " << r.size()
       << " row targets and " << c.size() << " column targets were given";
    throw Error(Errc::DimensionMismatch, os.str());
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(matrix(i, j)) < 0)
        throw Error(Errc::NegativeEntry, "NegativeEntry: entry (" + std::to_string(i + 1) + "," +
                                             std::to_string(j + 1) + ") is negative");
  for (std::size_t i = 0; i < m; ++i)
    if (sgn(r[i]) <= 0)
      throw Error(Errc::NonPositiveTarget,
                  "NonPositiveTarget: row target " + std::to_string(i + 1) + " is not positive");
  for (std::size_t j = 0; j < n; ++j)
    if (sgn(c[j]) <= 0)
      throw Error(Errc::NonPositiveTarget,
                  "NonPositiveTarget: column target " + std::to_string(j + 1) + " is not positive");
  for (std::size_t i = 0; i < m; ++i) {
    auto row = matrix.row(i);
    if (std::all_of(row.begin(), row.end(), [](const Rational& q) { return sgn(q) == 0; }))
      throw Error(Errc::ZeroRow, "ZeroRow(" + std::to_string(i + 1) + "): row " +
                                     std::to_string(i + 1) + " has no positive entry");
  }
  for (std::size_t j = 0; j < n; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < m && !any; ++i) any = sgn(matrix(i, j)) > 0;
    if (!any)
      throw Error(Errc::ZeroCol, "ZeroCol(" + std::to_string(j + 1) + "): column " +
                                     std::to_string(j + 1) + " has no positive entry");
  }
  return Problem(std::move(matrix), std::move(r), std::move(c));
}

namespace {

Rational parse_or_throw(const std::string& s) {
  Rational q;
  if (!parse_rational(s, q)) throw ParseError(0, 0, "not a number: '" + s + "'");
  return q;
}

}  // namespace

Problem make_problem(const std::vector<std::vector<std::string>>& rows,
                     const std::vector<std::string>& r, const std::vector<std::string>& c) {
  const std::size_t n = rows.empty() ? 0 : rows.front().size();
  Matrix<Rational> a(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) throw Error(Errc::DimensionMismatch, "DimensionMismatch: ragged matrix rows");
    for (std::size_t j = 0; j < n; ++j) a(i, j) = parse_or_throw(rows[i][j]);
  }
  std::vector<Rational> rq, cq;
  for (const auto& s : r) rq.push_back(parse_or_throw(s));
  for (const auto& s : c) cq.push_back(parse_or_throw(s));
  return validate_problem(std::move(a), std::move(rq), std::move(cq));
}

Problem make_problem(const std::vector<std::vector<long>>& rows, const std::vector<long>& r,
                     const std::vector<long>& c) {
  const std::size_t n = rows.empty() ? 0 : rows.front().size();
  Matrix<Rational> a(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) throw Error(Errc::DimensionMismatch, "DimensionMismatch: ragged matrix rows");
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(rows[i][j]);
  }
  std::vector<Rational> rq(r.begin(), r.end());
  std::vector<Rational> cq(c.begin(), c.end());
  return validate_problem(std::move(a), std::move(rq), std::move(cq));
}

// -------------------------------------------------------- set functions

IndexSet neighborhood(const SupportPattern& support, const IndexSet& rows) {
  std::vector<char> hit(static_cast<std::size_t>(support.cols()), 0);
  for (int i : rows)
    for (int j : support.row(i)) hit[static_cast<std::size_t>(j)] = 1;
  std::vector<int> out;
  for (int j = 0; j < support.cols(); ++j)
    if (hit[static_cast<std::size_t>(j)]) out.push_back(j);
  return IndexSet(std::move(out));
}

IndexSet row_neighborhood(const SupportPattern& support, const IndexSet& cols) {
  std::vector<char> hit(static_cast<std::size_t>(support.rows()), 0);
  for (int j : cols)
    for (int i : support.col(j)) hit[static_cast<std::size_t>(i)] = 1;
  std::vector<int> out;
  for (int i = 0; i < support.rows(); ++i)
    if (hit[static_cast<std::size_t>(i)]) out.push_back(i);
  return IndexSet(std::move(out));
}

Rational marginal_sum(std::span<const Rational> targets, const IndexSet& s) {
  Rational sum(0);
  for (int i : s) sum += targets[static_cast<std::size_t>(i)];
  return sum;
}

MediantBounds mediant_bounds(std::span<const Rational> p, std::span<const Rational> q) {
  if (p.empty() || q.empty()) throw Error(Errc::EmptyInput, "EmptyInput: mediant_bounds needs at least one pair");
  if (p.size() != q.size()) throw Error(Errc::DimensionMismatch, "DimensionMismatch: p and q differ in length");
  MediantBounds out;
  Rational sp(0), sq(0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (sgn(p[k]) <= 0 || sgn(q[k]) <= 0)
      throw Error(Errc::NonPositive, "NonPositive: entry " + std::to_string(k + 1) + " is not positive");
    Rational ratio = p[k] / q[k];
    if (k == 0 || ratio < out.lo) out.lo = ratio;
    if (k == 0 || ratio > out.hi) out.hi = ratio;
    sp += p[k];
    sq += q[k];
  }
  out.combined = sp / sq;
  out.all_equal = out.combined == out.lo || out.combined == out.hi;
  return out;
}

// ------------------------------------------------------ blocks/splittings

Block make_block(const Problem& problem, IndexSet rows, IndexSet cols) {
  Rational q = marginal_sum(problem.row_targets(), rows) / marginal_sum(problem.col_targets(), cols);
  return Block{std::move(rows), std::move(cols), std::move(q)};
}

bool quotient_consistent(const Problem& problem, const Block& block) {
  if (block.rows.empty() || block.cols.empty()) return false;
  return block.quotient == marginal_sum(problem.row_targets(), block.rows) /
                               marginal_sum(problem.col_targets(), block.cols);
}

bool Splitting::is_partition(int rows, int cols) const {
  std::vector<int> row_hits(static_cast<std::size_t>(rows), 0);
  std::vector<int> col_hits(static_cast<std::size_t>(cols), 0);
  for (const auto& b : blocks) {
    if (b.rows.empty() || b.cols.empty()) return false;
    for (int i : b.rows) {
      if (i < 0 || i >= rows) return false;
      ++row_hits[static_cast<std::size_t>(i)];
    }
    for (int j : b.cols) {
      if (j < 0 || j >= cols) return false;
      ++col_hits[static_cast<std::size_t>(j)];
    }
  }
  auto once = [](int h) { return h == 1; };
  return std::all_of(row_hits.begin(), row_hits.end(), once) &&
         std::all_of(col_hits.begin(), col_hits.end(), once);
}

bool Splitting::refines(const Splitting& coarser) const {
  return std::all_of(blocks.begin(), blocks.end(), [&](const Block& b) {
    return std::any_of(coarser.blocks.begin(), coarser.blocks.end(), [&](const Block& big) {
      return b.rows.is_subset_of(big.rows) && b.cols.is_subset_of(big.cols);
    });
  });
}

bool Splitting::same_blocks(const Splitting& other) const {
  auto keys = [](const Splitting& s) {
    std::vector<std::pair<IndexSet, IndexSet>> k;
    for (const auto& b : s.blocks) k.emplace_back(b.rows, b.cols);
    std::sort(k.begin(), k.end());
    return k;
  };
  return keys(*this) == keys(other);
}

Block Decomposition::leading_block() const {
  Block merged;
  bool first = true;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (group[k] != 0) continue;
    merged.rows = merged.rows.unite(blocks[k].rows);
    merged.cols = merged.cols.unite(blocks[k].cols);
    if (first) merged.quotient = blocks[k].quotient;
    first = false;
  }
  return merged;
}

std::vector<int> Decomposition::row_owner(int rows) const {
  std::vector<int> owner(static_cast<std::size_t>(rows), -1);
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (int i : blocks[k].rows) owner[static_cast<std::size_t>(i)] = static_cast<int>(k);
  return owner;
}

std::vector<int> Decomposition::col_owner(int cols) const {
  std::vector<int> owner(static_cast<std::size_t>(cols), -1);
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (int j : blocks[k].cols) owner[static_cast<std::size_t>(j)] = static_cast<int>(k);
  return owner;
}

}  // namespace isp
