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

#include <span>
#include <vector>

#include "isp/core.hpp"
#include "isp/feasibility.hpp"
#include "isp/matrix.hpp"
#include "isp/rational.hpp"

namespace isp {

/// The row set maximizing r(I)/c(N(I)), largest among all maximizers.
struct PhiResult {
  IndexSet rows;
  IndexSet cols;  // N(rows)
  Rational ratio;
  int dinkelbach_steps = 0;
};

/// Dinkelbach iteration on max_gap_set, starting from t = sum(r)/sum(c).
/// The parameter strictly increases until the largest maximizer of the gap
/// is tight.
PhiResult phi(const SupportPattern& support, std::span<const Rational> r,
              std::span<const Rational> c);

/// Peels phi blocks off the remaining submatrix until no rows are left.
/// Quotients strictly decrease along the returned order.
Splitting step_one(const Problem& problem);

/// Splits a block that is feasible at its own quotient into the connected
/// components of its flexible support. Every component keeps the quotient.
/// Throws Error(InfeasibleBlock) when the block is not feasible.
std::vector<Block> step_two(const Problem& problem, const Block& block);

/// step_one followed by step_two on every block: the decomposition of the
/// limit B, in peel order.
Decomposition decompose(const Problem& problem);

/// Zeroes every entry of A that lies outside the blocks of `d`. The limits
/// of the procedure are unchanged; convergence is much faster.
Problem prune(const Problem& problem, const Decomposition& d);

struct LimitOptions {
  double tol = 1e-10;  // per-block relative column-sum deviation
  long max_iters = 1'000'000;
  bool parallel = false;  // one task per block; merge order is fixed
};

/// The two limit points: B has row sums r, C has column sums c, and on each
/// block C = (c(J)/r(I)) * B. Entries outside the blocks are exactly zero.
struct LimitPair {
  Matrix<double> B;
  Matrix<double> C;
  Decomposition decomposition;
  std::vector<long> per_block_iters;  // 0 for 1x1 blocks
  bool converged = true;
};

LimitPair limit_pair(const Problem& problem, const LimitOptions& options = {});

}  // namespace isp
