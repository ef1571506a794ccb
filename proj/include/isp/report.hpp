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
#include <string>
#include <vector>

namespace isp {

// Machine-readable command output. Row and column indices are 1-based.

struct CheckSection {
  bool feasible = false;
  std::string scale;        // fraction string
  std::vector<int> witness;
  std::string gap;          // fraction string

  bool operator==(const CheckSection&) const = default;
};

struct BlockEntry {
  std::vector<int> rows;
  std::vector<int> cols;
  std::string quotient;     // exact fraction
  double quotient_decimal = 0.0;
  int group = 0;            // 1-based step-I group

  bool operator==(const BlockEntry&) const = default;
};

using Grid = std::vector<std::vector<double>>;

struct LimitsSection {
  Grid B;
  Grid C;
  double row_residual = 0.0;  // max |row sum of B - r_i| / r_i
  double col_residual = 0.0;  // max |column sum of C - c_j| / c_j
  std::vector<long> per_block_iters;
  bool converged = true;

  bool operator==(const LimitsSection&) const = default;
};

struct TraceSummary {
  long iterations = 0;
  double final_delta = 0.0;
  double final_col_deviation = 0.0;
  bool converged = false;
  Grid B;
  Grid C;

  bool operator==(const TraceSummary&) const = default;
};

struct BenchSection {
  double tol = 0.0;
  long naive_cap = 0;
  long naive_iters = 0;       // first k with sup|B(k) - B*| <= tol, or the cap
  bool naive_reached = false;
  long accelerated_iters = 0; // max over blocks
  std::vector<long> per_block_iters;
  double naive_seconds = 0.0;
  double accelerated_seconds = 0.0;

  bool operator==(const BenchSection&) const = default;
};

struct Report {
  std::string command;
  int rows = 0;
  int cols = 0;
  std::optional<CheckSection> check;
  std::optional<bool> single_block;
  std::optional<std::vector<BlockEntry>> decomposition;
  std::optional<LimitsSection> limits;
  std::optional<TraceSummary> trace;
  std::optional<BenchSection> bench;

  bool operator==(const Report&) const = default;
};

/// Fixed field order; doubles are written so that they read back exactly.
std::string to_json(const Report& report);

/// Throws ParseError on malformed documents.
Report report_from_json(const std::string& text);

/// Human-readable form with `precision` significant digits.
std::string to_text(const Report& report, int precision = 6);

/// Rounds every matrix entry to `digits` significant digits.
void round_grids(Report& report, int digits);

}  // namespace isp
