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

#include <stdexcept>
#include <string>

namespace isp {

enum class Errc {
  // validation
  ZeroRow,
  ZeroCol,
  NonPositiveTarget,
  DimensionMismatch,
  NegativeEntry,
  EmptyInput,
  NonPositive,
  // iterative phase
  ZeroRowSum,
  ZeroColSum,
  SupportMismatch,
  // combinatorial phase
  InfeasibleInstance,
  TotalsMismatch,
  InfeasibleBlock,
  EmptyBlockSupport,
  // input documents
  Parse,
  // broken internal invariant
  Internal,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

  /// Errors caused by the input (exit code 2 in the CLI) as opposed to
  /// broken internal invariants.
  bool is_input_error() const noexcept;

 private:
  Errc code_;
};

/// Malformed input document. line == 0 means a document-level (schema)
/// problem with no single source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace isp
