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

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace isp {

/// Exact arbitrary-precision rational. Every combinatorial decision
/// (feasibility, ratio maximization, tightness) is made in this type.
using Rational = mpq_class;

/// Parses "12", "-0.25", "1.5e-3", "17/11" exactly. Returns false on any
/// malformed input; `out` is untouched in that case.
bool parse_rational(std::string_view text, Rational& out);

/// Like parse_rational but rejects the "p/q" form.
bool parse_decimal(std::string_view text, Rational& out);

/// Canonical fraction string: "17/11", "3", "-1/2".
std::string to_fraction_string(const Rational& q);

double to_double(const Rational& q);

}  // namespace isp
