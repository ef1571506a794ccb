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

#include "isp/decompose.hpp"

#include <algorithm>
#include <future>
#include <numeric>

#include "isp/scaling.hpp"

namespace isp {
namespace {

Rational total(std::span<const Rational> v) {
  return std::accumulate(v.begin(), v.end(), Rational(0));
}

IndexSet lift(const IndexSet& local, const IndexSet& global) {
  std::vector<int> out;
  out.reserve(local.size());
  for (int k : local) out.push_back(global[static_cast<std::size_t>(k)]);
  return IndexSet(std::move(out));
}

// Union-find over rows [0, m) and columns [m, m + n).
class Components {
 public:
  explicit Components(int size) : parent_(static_cast<std::size_t>(size)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int a) {
    while (parent_[static_cast<std::size_t>(a)] != a) {
      parent_[static_cast<std::size_t>(a)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(a)])];
      a = parent_[static_cast<std::size_t>(a)];
    }
    return a;
  }
  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

PhiResult phi(const SupportPattern& support, std::span<const Rational> r,
              std::span<const Rational> c) {
  PhiResult out;
  Rational t = total(r) / total(c);
  for (;;) {
    ++out.dinkelbach_steps;
    GapSet g = max_gap_set(support, r, c, t);
    if (sgn(g.gap) > 0) {
      Rational next = marginal_sum(r, g.rows) / marginal_sum(c, neighborhood(support, g.rows));
      if (!(next > t)) throw Error(Errc::Internal, "phi: Dinkelbach parameter failed to increase");
      t = std::move(next);
      continue;
    }
    if (g.rows.empty()) throw Error(Errc::Internal, "phi: no tight set at the optimal ratio");
    out.cols = neighborhood(support, g.rows);
    out.rows = std::move(g.rows);
    out.ratio = std::move(t);
    return out;
  }
}

Splitting step_one(const Problem& problem) {
  Splitting out;
  IndexSet rows = IndexSet::range(problem.rows());
  IndexSet cols = IndexSet::range(problem.cols());
  while (!rows.empty()) {
    if (cols.empty()) throw Error(Errc::Internal, "step_one: rows remain but no columns");
    const SupportPattern sub = problem.support().restrict(rows, cols);
    std::vector<Rational> r;
    std::vector<Rational> c;
    for (int i : rows) r.push_back(problem.row_targets()[static_cast<std::size_t>(i)]);
    for (int j : cols) c.push_back(problem.col_targets()[static_cast<std::size_t>(j)]);
    for (int k = 0; k < sub.rows(); ++k)
      if (sub.row(k).empty()) throw Error(Errc::Internal, "step_one: remainder has a zero row");
    for (int k = 0; k < sub.cols(); ++k)
      if (sub.col(k).empty()) throw Error(Errc::Internal, "step_one: remainder has a zero column");

    PhiResult p = phi(sub, r, c);
    Block b = make_block(problem, lift(p.rows, rows), lift(p.cols, cols));
    if (b.quotient != p.ratio) throw Error(Errc::Internal, "step_one: quotient mismatch");
    if (!out.blocks.empty() && !(b.quotient < out.blocks.back().quotient))
      throw Error(Errc::Internal, "step_one: step-I quotients must strictly decrease");
    rows = rows.minus(b.rows);
    cols = cols.minus(b.cols);
    out.blocks.push_back(std::move(b));
  }
  if (!cols.empty()) throw Error(Errc::Internal, "step_one: columns left over");
  return out;
}

std::vector<Block> step_two(const Problem& problem, const Block& block) {
  const SupportPattern sub = problem.support().restrict(block.rows, block.cols);
  std::vector<Rational> r;
  std::vector<Rational> c;
  for (int i : block.rows) r.push_back(problem.row_targets()[static_cast<std::size_t>(i)]);
  for (int j : block.cols) c.push_back(problem.col_targets()[static_cast<std::size_t>(j)]);

  const Rational& t = block.quotient;
  if (total(r) != t * total(c) || hall_check(sub, r, c, t).verdict != Verdict::Feasible)
    throw Error(Errc::InfeasibleBlock, "InfeasibleBlock: block " + block.rows.to_string_1based() + " x " +
                                           block.cols.to_string_1based() + " is not feasible at its quotient");

  const SupportPattern flex = flexible_support(sub, r, c, t);
  const int m = sub.rows();
  const int n = sub.cols();
  Components comp(m + n);
  for (auto [i, j] : flex.pairs()) comp.join(i, m + j);

  // Components are labelled by their smallest member; every row precedes
  // every column in that numbering, and each component contains a row.
  std::vector<std::vector<int>> comp_rows(static_cast<std::size_t>(m + n));
  std::vector<std::vector<int>> comp_cols(static_cast<std::size_t>(m + n));
  for (int i = 0; i < m; ++i) comp_rows[static_cast<std::size_t>(comp.find(i))].push_back(block.rows[static_cast<std::size_t>(i)]);
  for (int j = 0; j < n; ++j) comp_cols[static_cast<std::size_t>(comp.find(m + j))].push_back(block.cols[static_cast<std::size_t>(j)]);

  std::vector<Block> out;
  for (int root = 0; root < m + n; ++root) {
    auto& rr = comp_rows[static_cast<std::size_t>(root)];
    auto& cc = comp_cols[static_cast<std::size_t>(root)];
    if (rr.empty() && cc.empty()) continue;
    if (rr.empty() || cc.empty()) throw Error(Errc::Internal, "step_two: component without rows or columns");
    Block piece = make_block(problem, IndexSet(std::move(rr)), IndexSet(std::move(cc)));
    if (piece.quotient != t) throw Error(Errc::Internal, "step_two: component quotient differs from block quotient");
    out.push_back(std::move(piece));
  }
  return out;
}

Decomposition decompose(const Problem& problem) {
  Decomposition d;
  const Splitting coarse = step_one(problem);
  for (std::size_t g = 0; g < coarse.blocks.size(); ++g) {
    for (auto& piece : step_two(problem, coarse.blocks[g])) {
      d.blocks.push_back(std::move(piece));
      d.group.push_back(static_cast<int>(g));
    }
  }
  d.group_count = static_cast<int>(coarse.blocks.size());
  return d;
}

Problem prune(const Problem& problem, const Decomposition& d) {
  if (!d.splitting().is_partition(problem.rows(), problem.cols()))
    throw Error(Errc::EmptyBlockSupport, "EmptyBlockSupport: decomposition is not a splitting of the problem");
  const auto row_block = d.row_owner(problem.rows());
  const auto col_block = d.col_owner(problem.cols());
  Matrix<Rational> a = problem.matrix();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (row_block[i] != col_block[j]) a(i, j) = 0;
  try {
    return validate_problem(std::move(a), problem.row_targets(), problem.col_targets());
  } catch (const Error& e) {
    throw Error(Errc::EmptyBlockSupport, std::string("EmptyBlockSupport: ") + e.what());
  }
}

namespace {

struct BlockLimit {
  Matrix<double> B;
  long iters = 0;
  bool converged = true;
};

BlockLimit scale_block(const Problem& pruned, const Block& block, const LimitOptions& options) {
  BlockLimit out;
  if (block.rows.size() == 1 && block.cols.size() == 1) {
    out.B = Matrix<double>(1, 1, to_double(pruned.row_targets()[static_cast<std::size_t>(block.rows[0])]));
    return out;
  }
  const Problem sub = pruned.restrict(block.rows, block.cols, block.quotient);
  StopRule stop;
  stop.max_iters = options.max_iters;
  stop.tol = options.tol;
  stop.metric = StopRule::Metric::ColDeviation;
  stop.stride = options.max_iters + 1;
  auto trace = isp_run(sub, stop);
  out.B = std::move(trace.iterates.back().B);
  out.iters = trace.rounds;
  out.converged = trace.converged;
  return out;
}

}  // namespace

LimitPair limit_pair(const Problem& problem, const LimitOptions& options) {
  LimitPair out;
  out.decomposition = decompose(problem);
  const Problem pruned = prune(problem, out.decomposition);
  const auto& blocks = out.decomposition.blocks;

  std::vector<BlockLimit> parts;
  if (options.parallel && blocks.size() > 1) {
    std::vector<std::future<BlockLimit>> tasks;
    for (const auto& b : blocks)
      tasks.push_back(std::async(std::launch::async, scale_block, std::cref(pruned), std::cref(b), std::cref(options)));
    for (auto& t : tasks) parts.push_back(t.get());
  } else {
    for (const auto& b : blocks) parts.push_back(scale_block(pruned, b, options));
  }

  const auto m = static_cast<std::size_t>(problem.rows());
  const auto n = static_cast<std::size_t>(problem.cols());
  out.B = Matrix<double>(m, n, 0.0);
  out.C = Matrix<double>(m, n, 0.0);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const Block& b = blocks[k];
    const double to_col_side = to_double(1 / b.quotient);
    for (std::size_t a = 0; a < b.rows.size(); ++a) {
      for (std::size_t e = 0; e < b.cols.size(); ++e) {
        const auto i = static_cast<std::size_t>(b.rows[a]);
        const auto j = static_cast<std::size_t>(b.cols[e]);
        out.B(i, j) = parts[k].B(a, e);
        out.C(i, j) = to_col_side * parts[k].B(a, e);
      }
    }
    out.per_block_iters.push_back(parts[k].iters);
    out.converged = out.converged && parts[k].converged;
  }
  return out;
}

}  // namespace isp
