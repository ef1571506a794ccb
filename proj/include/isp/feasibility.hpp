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
#include "isp/rational.hpp"

namespace isp {

/// Transportation network for the scaled Hall condition:
/// source -> row i (capacity r_i), row i -> column j for every support entry
/// (capacity sum(r) + 1, which no minimum cut can use), column j -> sink
/// (capacity t * c_j).
struct FlowNetwork {
  struct Arc {
    int from;
    int to;
    Rational capacity;
  };

  int rows = 0;
  int cols = 0;
  Rational scale;
  std::vector<Arc> arcs;  // source arcs, then support arcs row-major, then sink arcs

  int node_count() const noexcept { return rows + cols + 2; }
  int source() const noexcept { return 0; }
  int sink() const noexcept { return rows + cols + 1; }
  int row_node(int i) const noexcept { return 1 + i; }
  int col_node(int j) const noexcept { return 1 + rows + j; }
  /// Index in `arcs` of the first support arc.
  std::size_t support_arc_begin() const noexcept { return static_cast<std::size_t>(rows); }
};

FlowNetwork build_network(const SupportPattern& support, std::span<const Rational> r,
                          std::span<const Rational> c, const Rational& t);

struct MaxFlowResult {
  std::vector<Rational> flow;  // parallel to FlowNetwork::arcs
  Rational value;
  std::vector<char> reach_from_source;  // per node, in the final residual graph
  std::vector<char> reach_to_sink;
};

/// Exact maximum flow by breadth-first shortest augmenting paths.
MaxFlowResult max_flow(const FlowNetwork& net);

enum class Verdict { Feasible, Infeasible };

struct HallCertificate {
  Verdict verdict = Verdict::Feasible;
  /// Infeasible: the maximal row set with the largest violation.
  /// Feasible: the maximal tight set (largest I with r(I) = t * c(N(I))).
  IndexSet witness;
  Rational gap;  // r(witness) - t * c(N(witness))
};

/// Decides whether some matrix supported in S(A) has row sums r and column
/// sums at most t * c_j, i.e. whether r(I) <= t * c(N(I)) for every row set I.
HallCertificate hall_check(const SupportPattern& support, std::span<const Rational> r,
                           std::span<const Rational> c, const Rational& t);

struct GapSet {
  Rational gap;
  IndexSet rows;
};

/// max over I of r(I) - t * c(N(I)) (I = {} allowed, so gap >= 0) together
/// with the unique largest maximizer.
GapSet max_gap_set(const SupportPattern& support, std::span<const Rational> r,
                   std::span<const Rational> c, const Rational& t);

/// Support entries that are positive in at least one nonnegative matrix with
/// row sums r, column sums t * c and support inside S(A). Requires
/// sum(r) == t * sum(c) and a feasible instance.
SupportPattern flexible_support(const SupportPattern& support, std::span<const Rational> r,
                                std::span<const Rational> c, const Rational& t);

}  // namespace isp
