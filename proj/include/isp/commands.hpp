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

#include <optional>
#include <ostream>

#include "isp/core.hpp"
#include "isp/decompose.hpp"
#include "isp/report.hpp"

namespace isp {

/// Hall check at scale t (default sum(r)/sum(c)).
Report cmd_check(const Problem& problem, const std::optional<Rational>& scale = std::nullopt);

Report cmd_decompose(const Problem& problem);

Report cmd_limits(const Problem& problem, const LimitOptions& options = {});

struct ScaleOptions {
  long iters = 1000;
  double tol = 0.0;  // delta criterion; 0 runs all rounds
  std::ostream* trace_csv = nullptr;
};

/// Plain alternating scaling from A. The optional CSV has one line per
/// round: k, delta, col_deviation and, for matrices of at most 64 entries,
/// every entry of B(k).
Report cmd_scale(const Problem& problem, const ScaleOptions& options);

struct BenchOptions {
  double tol = 1e-6;
  long naive_cap = 1'000'000;
  std::ostream* csv = nullptr;  // k, naive_error at roughly log-spaced k
};

/// Rounds needed by plain scaling to come within tol (sup-norm) of the limit
/// B, versus the decomposition + pruning + per-block path.
Report cmd_bench(const Problem& problem, const BenchOptions& options);

}  // namespace isp
