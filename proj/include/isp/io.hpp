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

#include <istream>
#include <string>
#include <string_view>

#include "isp/core.hpp"

namespace isp {

/// Reads a problem from text. JSON documents (first non-blank character
/// '{') look like
///
///   {"matrix": [[1, 0], ["0.5", 1]], "row_sums": [1, 1], "col_sums": ["3/2", "1/2"]}
///
/// Numbers keep their exact decimal value; strings may also hold fractions.
/// Anything else is read as a bordered CSV: cell (0,0) empty, row 0 the
/// column targets, column 0 the row targets, plain decimals only.
///
/// Throws ParseError for malformed text and Error for invalid problems.
Problem parse_problem(std::string_view text);

/// Reads the whole stream, then parse_problem.
Problem parse_problem(std::istream& in);

/// `path` of "-" reads standard input.
Problem load_problem(const std::string& path);

Problem parse_problem_json(std::string_view text);
Problem parse_problem_csv(std::string_view text);

/// Inverse of parse_problem_json. With `exact` every value is written as a
/// fraction string ("17/11"); otherwise integers are written as JSON
/// numbers and other values as fraction strings.
std::string serialize_problem_json(const Problem& problem, bool exact = true);

/// Bordered CSV; every value must have a terminating decimal expansion.
std::string serialize_problem_csv(const Problem& problem);

}  // namespace isp
