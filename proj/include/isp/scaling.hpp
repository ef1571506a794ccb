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

#include <functional>
#include <span>
#include <vector>

#include "isp/core.hpp"
#include "isp/matrix.hpp"
#include "isp/rational.hpp"

namespace isp {

/// Result of one row or column adjustment: the rescaled matrix and the
/// per-line multipliers (x_i = r_i / row sum, or y_j = c_j / column sum).
template <class T>
struct AdjustResult {
  Matrix<T> matrix;
  std::vector<T> multipliers;
};

AdjustResult<double> row_adjust(const Matrix<double>& m, std::span<const double> r);
AdjustResult<double> col_adjust(const Matrix<double>& m, std::span<const double> c);
AdjustResult<Rational> row_adjust(const Matrix<Rational>& m, std::span<const Rational> r);
AdjustResult<Rational> col_adjust(const Matrix<Rational>& m, std::span<const Rational> c);

struct StopRule {
  enum class Metric {
    Delta,         // sup-norm change of B between rounds
    ColDeviation,  // max relative deviation of B's column sums from c
  };

  long max_iters = 1'000'000;
  double tol = 1e-10;
  Metric metric = Metric::Delta;
  /// Keep every stride-th iterate (k = 1, 1 + stride, ...). The final
  /// iterate is always kept.
  long stride = 1;
};

/// Round k of the procedure: B(k) = R(C(k-1)) with row multipliers x(k),
/// C(k) = C(B(k)) with column multipliers y(k). C(0) = A.
template <class T>
struct Iterate {
  long k = 0;
  Matrix<T> B;
  Matrix<T> C;
  std::vector<T> x;
  std::vector<T> y;
  double delta = 0.0;          // sup |B(k) - B(k-1)|, B(0) = A
  double col_deviation = 0.0;  // max_j |colsum_j(B(k)) - c_j| / c_j
};

template <class T>
struct ScalingTrace {
  std::vector<Iterate<T>> iterates;
  std::vector<double> delta;          // delta[k-1] = sup |B(k) - B(k-1)|, B(0) = A
  std::vector<double> col_deviation;  // col_deviation[k-1] for B(k)
  long rounds = 0;
  bool converged = false;

  const Iterate<T>& last() const { return iterates.back(); }
};

/// Called after every round. Returning false ends the run early (the trace
/// is then marked not converged unless the stop rule also fired).
template <class T>
using IterateObserver = std::function<bool(const Iterate<T>&)>;

/// Alternating row/column adjustment starting from A. One round = one row
/// adjustment plus one column adjustment. Stops after the first round whose
/// chosen metric is <= stop.tol, or after stop.max_iters rounds.
ScalingTrace<double> isp_run(const Matrix<double>& a, std::span<const double> r,
                             std::span<const double> c, const StopRule& stop,
                             const IterateObserver<double>& observer = {});
ScalingTrace<double> isp_run(const Problem& problem, const StopRule& stop,
                             const IterateObserver<double>& observer = {});

/// Same recurrence in exact rational arithmetic. Denominators grow quickly;
/// intended for small fixtures.
ScalingTrace<Rational> isp_run_exact(const Problem& problem, const StopRule& stop,
                                     const IterateObserver<Rational>& observer = {});

/// Whether m = diag(x) * m_prime * diag(y) for some positive x, y. Multipliers
/// are propagated along a spanning forest of the bipartite support graph and
/// every remaining support entry is checked to relative tolerance `tol`.
/// Throws Error(SupportMismatch) on different shapes or supports.
bool check_diag_equivalent(const Matrix<double>& m, const Matrix<double>& m_prime, double tol);

}  // namespace isp
