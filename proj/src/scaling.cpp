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

#include "isp/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "isp/kernels.hpp"

namespace isp {
namespace {

[[noreturn]] void throw_zero_line(bool row, std::size_t index) {
  const std::string which = row ? "ZeroRowSum" : "ZeroColSum";
  throw Error(row ? Errc::ZeroRowSum : Errc::ZeroColSum,
              which + "(" + std::to_string(index + 1) + "): cannot rescale a line summing to zero");
}

// Arithmetic backends for the shared iteration driver. The double backend
// goes through the dispatched kernels.
struct FloatOps {
  using T = double;

  static void row_sums(const Matrix<double>& m, std::vector<double>& out) {
    out.resize(m.rows());
    kernels::active().row_sums(m.data(), m.cols(), out);
  }
  static void col_sums(const Matrix<double>& m, std::vector<double>& out) {
    out.resize(m.cols());
    kernels::active().col_sums(m.data(), m.cols(), out);
  }
  static void scale_rows(Matrix<double>& m, const std::vector<double>& x) {
    kernels::active().scale_rows(m.data(), m.cols(), x);
  }
  static void scale_cols(Matrix<double>& m, const std::vector<double>& y) {
    kernels::active().scale_cols(m.data(), m.cols(), y);
  }
  static double max_abs_diff(const Matrix<double>& a, const Matrix<double>& b) {
    return kernels::active().max_abs_diff(a.data(), b.data());
  }
  static double to_float(double v) { return v; }
};

struct ExactOps {
  using T = Rational;

  static void row_sums(const Matrix<Rational>& m, std::vector<Rational>& out) {
    out.assign(m.rows(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (const auto& v : m.row(i)) out[i] += v;
  }
  static void col_sums(const Matrix<Rational>& m, std::vector<Rational>& out) {
    out.assign(m.cols(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out[j] += m(i, j);
  }
  static void scale_rows(Matrix<Rational>& m, const std::vector<Rational>& x) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (auto& v : m.row(i)) v *= x[i];
  }
  static void scale_cols(Matrix<Rational>& m, const std::vector<Rational>& y) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= y[j];
  }
  static double max_abs_diff(const Matrix<Rational>& a, const Matrix<Rational>& b) {
    Rational best(0);
    for (std::size_t k = 0; k < a.size(); ++k) {
      Rational d = abs(a.data()[k] - b.data()[k]);
      if (d > best) best = d;
    }
    return to_double(best);
  }
  static double to_float(const Rational& v) { return to_double(v); }
};

template <class Ops>
AdjustResult<typename Ops::T> adjust(const Matrix<typename Ops::T>& m,
                                     std::span<const typename Ops::T> targets, bool rows) {
  using T = typename Ops::T;
  AdjustResult<T> out{m, {}};
  std::vector<T> sums;
  if (rows) {
    Ops::row_sums(m, sums);
  } else {
    Ops::col_sums(m, sums);
  }
  if (targets.size() != sums.size())
    throw Error(Errc::DimensionMismatch, "DimensionMismatch: target count does not match matrix");
  out.multipliers.resize(sums.size());
  for (std::size_t k = 0; k < sums.size(); ++k) {
    if (!(sums[k] > 0)) throw_zero_line(rows, k);
    out.multipliers[k] = targets[k] / sums[k];
  }
  if (rows) {
    Ops::scale_rows(out.matrix, out.multipliers);
  } else {
    Ops::scale_cols(out.matrix, out.multipliers);
  }
  return out;
}

template <class Ops>
ScalingTrace<typename Ops::T> run(const Matrix<typename Ops::T>& a,
                                  std::span<const typename Ops::T> r,
                                  std::span<const typename Ops::T> c, const StopRule& stop,
                                  const IterateObserver<typename Ops::T>& observer) {
  using T = typename Ops::T;
  if (r.size() != a.rows() || c.size() != a.cols())
    throw Error(Errc::DimensionMismatch, "DimensionMismatch: targets do not match matrix");

  ScalingTrace<T> trace;
  const long stride = std::max<long>(1, stop.stride);
  const long max_iters = std::max<long>(1, stop.max_iters);
  trace.delta.reserve(static_cast<std::size_t>(std::min<long>(max_iters, 1 << 20)));
  trace.col_deviation.reserve(trace.delta.capacity());

  Iterate<T> cur;
  Matrix<T> prev_b = a;
  Matrix<T> prev_c = a;
  std::vector<T> col_sums;

  for (long k = 1; k <= max_iters; ++k) {
    auto b = adjust<Ops>(prev_c, r, true);
    const double delta = Ops::max_abs_diff(b.matrix, prev_b);

    Ops::col_sums(b.matrix, col_sums);
    double deviation = 0.0;
    for (std::size_t j = 0; j < col_sums.size(); ++j)
      deviation = std::max(deviation, std::fabs(Ops::to_float((col_sums[j] - c[j]) / c[j])));

    auto cc = adjust<Ops>(b.matrix, c, false);

    cur.k = k;
    cur.B = std::move(b.matrix);
    cur.C = std::move(cc.matrix);
    cur.x = std::move(b.multipliers);
    cur.y = std::move(cc.multipliers);
    cur.delta = delta;
    cur.col_deviation = deviation;

    trace.delta.push_back(delta);
    trace.col_deviation.push_back(deviation);
    trace.rounds = k;
    const bool keep_going = !observer || observer(cur);

    const double metric = stop.metric == StopRule::Metric::Delta ? delta : deviation;
    trace.converged = metric <= stop.tol;
    const bool done = trace.converged || k == max_iters || !keep_going;

    if ((k - 1) % stride == 0 || done) trace.iterates.push_back(cur);
    if (done) break;

    prev_b = cur.B;
    prev_c = cur.C;
  }
  return trace;
}

}  // namespace

AdjustResult<double> row_adjust(const Matrix<double>& m, std::span<const double> r) {
  return adjust<FloatOps>(m, r, true);
}

AdjustResult<double> col_adjust(const Matrix<double>& m, std::span<const double> c) {
  return adjust<FloatOps>(m, c, false);
}

AdjustResult<Rational> row_adjust(const Matrix<Rational>& m, std::span<const Rational> r) {
  return adjust<ExactOps>(m, r, true);
}

AdjustResult<Rational> col_adjust(const Matrix<Rational>& m, std::span<const Rational> c) {
  return adjust<ExactOps>(m, c, false);
}

ScalingTrace<double> isp_run(const Matrix<double>& a, std::span<const double> r,
                             std::span<const double> c, const StopRule& stop,
                             const IterateObserver<double>& observer) {
  return run<FloatOps>(a, r, c, stop, observer);
}

ScalingTrace<double> isp_run(const Problem& problem, const StopRule& stop,
                             const IterateObserver<double>& observer) {
  const auto r = problem.float_row_targets();
  const auto c = problem.float_col_targets();
  return run<FloatOps>(problem.float_matrix(), r, c, stop, observer);
}

ScalingTrace<Rational> isp_run_exact(const Problem& problem, const StopRule& stop,
                                     const IterateObserver<Rational>& observer) {
  return run<ExactOps>(problem.matrix(), problem.row_targets(), problem.col_targets(), stop,
                       observer);
}

bool check_diag_equivalent(const Matrix<double>& m, const Matrix<double>& m_prime, double tol) {
  if (m.rows() != m_prime.rows() || m.cols() != m_prime.cols())
    throw Error(Errc::SupportMismatch, "SupportMismatch: shapes differ");
  const auto support = SupportPattern::of(m);
  if (!(support == SupportPattern::of(m_prime)))
    throw Error(Errc::SupportMismatch, "SupportMismatch: supports differ");

  const int rows = support.rows();
  const int cols = support.cols();
  // Want m_ij = x_i * m'_ij * y_j. Walk each component breadth-first from
  // its lowest row (or an isolated column), fixing x or y as reached.
  std::vector<double> x(static_cast<std::size_t>(rows), 0.0);
  std::vector<double> y(static_cast<std::size_t>(cols), 0.0);
  std::vector<char> row_seen(static_cast<std::size_t>(rows), 0);
  std::vector<char> col_seen(static_cast<std::size_t>(cols), 0);

  // Queue entries: >= 0 is a row, < 0 encodes column -(j + 1).
  std::queue<int> frontier;
  auto visit_from = [&](int start_row) {
    row_seen[static_cast<std::size_t>(start_row)] = 1;
    x[static_cast<std::size_t>(start_row)] = 1.0;
    frontier.push(start_row);
    while (!frontier.empty()) {
      const int node = frontier.front();
      frontier.pop();
      if (node >= 0) {
        const auto i = static_cast<std::size_t>(node);
        for (int jj : support.row(node)) {
          const auto j = static_cast<std::size_t>(jj);
          if (col_seen[j]) continue;
          col_seen[j] = 1;
          y[j] = m(i, j) / (x[i] * m_prime(i, j));
          frontier.push(-(jj + 1));
        }
      } else {
        const auto j = static_cast<std::size_t>(-node - 1);
        for (int ii : support.col(-node - 1)) {
          const auto i = static_cast<std::size_t>(ii);
          if (row_seen[i]) continue;
          row_seen[i] = 1;
          x[i] = m(i, j) / (m_prime(i, j) * y[j]);
          frontier.push(ii);
        }
      }
    }
  };
  for (int i = 0; i < rows; ++i)
    if (!row_seen[static_cast<std::size_t>(i)]) visit_from(i);

  for (auto [ii, jj] : support.pairs()) {
    const auto i = static_cast<std::size_t>(ii);
    const auto j = static_cast<std::size_t>(jj);
    const double predicted = x[i] * m_prime(i, j) * y[j];
    if (!(x[i] > 0) || !(y[j] > 0) || !std::isfinite(predicted)) return false;
    if (std::fabs(predicted - m(i, j)) > tol * std::fabs(m(i, j))) return false;
  }
  return true;
}

}  // namespace isp
