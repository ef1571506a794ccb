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

#include "isp/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "isp/feasibility.hpp"
#include "isp/kernels.hpp"
#include "isp/scaling.hpp"

namespace isp {
namespace {

std::vector<int> one_based(const IndexSet& s) {
  std::vector<int> out;
  for (int i : s) out.push_back(i + 1);
  return out;
}

Grid to_grid(const Matrix<double>& m) {
  Grid g(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) g[i].assign(m.row(i).begin(), m.row(i).end());
  return g;
}

Report base_report(const char* command, const Problem& p) {
  Report r;
  r.command = command;
  r.rows = p.rows();
  r.cols = p.cols();
  return r;
}

std::vector<BlockEntry> block_entries(const Decomposition& d) {
  std::vector<BlockEntry> out;
  for (std::size_t k = 0; k < d.blocks.size(); ++k) {
    const Block& b = d.blocks[k];
    out.push_back(BlockEntry{one_based(b.rows), one_based(b.cols), to_fraction_string(b.quotient),
                             to_double(b.quotient), d.group[k] + 1});
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Report cmd_check(const Problem& problem, const std::optional<Rational>& scale) {
  const auto& r = problem.row_targets();
  const auto& c = problem.col_targets();
  const Rational t = scale ? *scale
                           : std::accumulate(r.begin(), r.end(), Rational(0)) /
                                 std::accumulate(c.begin(), c.end(), Rational(0));
  const HallCertificate cert = hall_check(problem.support(), r, c, t);
  Report out = base_report("check", problem);
  out.check = CheckSection{cert.verdict == Verdict::Feasible, to_fraction_string(t),
                           one_based(cert.witness), to_fraction_string(cert.gap)};
  return out;
}

Report cmd_decompose(const Problem& problem) {
  const Decomposition d = decompose(problem);
  Report out = base_report("decompose", problem);
  out.single_block = d.blocks.size() == 1;
  out.decomposition = block_entries(d);
  return out;
}

Report cmd_limits(const Problem& problem, const LimitOptions& options) {
  const LimitPair lp = limit_pair(problem, options);
  Report out = base_report("limits", problem);
  out.single_block = lp.decomposition.blocks.size() == 1;
  out.decomposition = block_entries(lp.decomposition);

  LimitsSection s;
  s.B = to_grid(lp.B);
  s.C = to_grid(lp.C);
  const auto r = problem.float_row_targets();
  const auto c = problem.float_col_targets();
  for (std::size_t i = 0; i < lp.B.rows(); ++i) {
    double sum = 0.0;
    for (double v : lp.B.row(i)) sum += v;
    s.row_residual = std::max(s.row_residual, std::fabs(sum - r[i]) / r[i]);
  }
  for (std::size_t j = 0; j < lp.C.cols(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < lp.C.rows(); ++i) sum += lp.C(i, j);
    s.col_residual = std::max(s.col_residual, std::fabs(sum - c[j]) / c[j]);
  }
  s.per_block_iters = lp.per_block_iters;
  s.converged = lp.converged;
  out.limits = std::move(s);
  return out;
}

Report cmd_scale(const Problem& problem, const ScaleOptions& options) {
  StopRule stop;
  stop.max_iters = std::max<long>(1, options.iters);
  stop.tol = options.tol;
  stop.stride = stop.max_iters + 1;

  const bool with_entries = problem.float_matrix().size() <= 64;
  IterateObserver<double> observer;
  if (options.trace_csv) {
    std::ostream& os = *options.trace_csv;
    os << "k,delta,col_deviation";
    if (with_entries)
      for (int i = 1; i <= problem.rows(); ++i)
        for (int j = 1; j <= problem.cols(); ++j) os << ",b_" << i << '_' << j;
    os << '\n';
    observer = [&os, with_entries](const Iterate<double>& it) {
      os << it.k << ',' << csv_double(it.delta) << ',' << csv_double(it.col_deviation);
      if (with_entries)
        for (double v : it.B.data()) os << ',' << csv_double(v);
      os << '\n';
      return true;
    };
  }
  const auto trace = isp_run(problem, stop, observer);

  Report out = base_report("scale", problem);
  TraceSummary s;
  s.iterations = trace.rounds;
  s.final_delta = trace.delta.back();
  s.final_col_deviation = trace.col_deviation.back();
  s.converged = trace.converged;
  s.B = to_grid(trace.last().B);
  s.C = to_grid(trace.last().C);
  out.trace = std::move(s);
  return out;
}

Report cmd_bench(const Problem& problem, const BenchOptions& options) {
  Report out = base_report("bench", problem);
  BenchSection s;
  s.tol = options.tol;
  s.naive_cap = std::max<long>(1, options.naive_cap);

  // Accelerated path at the requested tolerance.
  LimitOptions fast;
  fast.tol = options.tol;
  auto start = std::chrono::steady_clock::now();
  const LimitPair accelerated = limit_pair(problem, fast);
  s.accelerated_seconds = seconds_since(start);
  s.per_block_iters = accelerated.per_block_iters;
  s.accelerated_iters = accelerated.per_block_iters.empty()
                            ? 0
                            : *std::max_element(accelerated.per_block_iters.begin(),
                                                accelerated.per_block_iters.end());

  // Reference limit, tighter than the tolerance being measured.
  LimitOptions tight;
  tight.tol = std::min(1e-13, options.tol * 1e-3);
  const LimitPair reference = limit_pair(problem, tight);

  if (options.csv) *options.csv << "k,naive_error\n";
  long next_sample = 1;
  StopRule stop;
  stop.max_iters = s.naive_cap;
  stop.tol = -1.0;
  stop.stride = s.naive_cap + 1;
  start = std::chrono::steady_clock::now();
  isp_run(problem, stop, [&](const Iterate<double>& it) {
    const double err = kernels::active().max_abs_diff(it.B.data(), reference.B.data());
    s.naive_iters = it.k;
    s.naive_reached = err <= options.tol;
    if (options.csv && (it.k >= next_sample || s.naive_reached || it.k == s.naive_cap)) {
      *options.csv << it.k << ',' << csv_double(err) << '\n';
      next_sample = std::max(next_sample + 1, static_cast<long>(std::ceil(static_cast<double>(next_sample) * 1.12)));
    }
    return !s.naive_reached;
  });
  s.naive_seconds = seconds_since(start);

  out.single_block = accelerated.decomposition.blocks.size() == 1;
  out.decomposition = block_entries(accelerated.decomposition);
  out.bench = std::move(s);
  return out;
}

}  // namespace isp
