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

#include "isp/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <cstdlib>
#include <limits>

namespace isp {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

}  // namespace

bool parse_decimal(std::string_view text, Rational& out) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) return false;
    exponent = std::strtol(std::string(exp_part).c_str(), nullptr, 10);
    if (exp_negative) exponent = -exponent;
  }

  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
    if (!frac_part.empty() && !all_digits(frac_part)) return false;
  }
  if (!int_part.empty() && !all_digits(int_part)) return false;
  if (int_part.empty() && frac_part.empty()) return false;

  std::string digits(int_part);
  digits.append(frac_part);
  mpz_class mantissa(digits.empty() ? std::string("0") : digits, 10);
  exponent -= static_cast<long>(frac_part.size());

  Rational value(mantissa);
  if (exponent > 0) {
    value *= pow10(static_cast<unsigned long>(exponent));
  } else if (exponent < 0) {
    value /= pow10(static_cast<unsigned long>(-exponent));
  }
  value.canonicalize();
  if (negative) value = -value;
  out = value;
  return true;
}

bool parse_rational(std::string_view text, Rational& out) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text, out);

  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  bool negative = false;
  if (!num.empty() && (num.front() == '+' || num.front() == '-')) {
    negative = num.front() == '-';
    num.remove_prefix(1);
  }
  if (!all_digits(num) || !all_digits(den)) return false;
  mpz_class d(std::string(den), 10);
  if (d == 0) return false;
  Rational value(mpz_class(std::string(num), 10), d);
  value.canonicalize();
  if (negative) value = -value;
  out = value;
  return true;
}

std::string to_fraction_string(const Rational& q) { return q.get_str(10); }

double to_double(const Rational& q) {
  // mpq_get_d truncates; step to the neighbour when it is strictly closer,
  // or equally close with an even mantissa.
  const double toward_zero = q.get_d();
  if (!std::isfinite(toward_zero)) return toward_zero;
  const double away = std::nextafter(
      toward_zero, sgn(q) < 0 ? -std::numeric_limits<double>::infinity()
                              : std::numeric_limits<double>::infinity());
  if (!std::isfinite(away)) return toward_zero;
  const Rational err_near = abs(q - Rational(toward_zero));
  const Rational err_away = abs(Rational(away) - q);
  if (err_away < err_near) return away;
  if (err_away == err_near) {
    std::int64_t bits = 0;
    std::memcpy(&bits, &toward_zero, sizeof bits);
    return (bits & 1) ? away : toward_zero;
  }
  return toward_zero;
}

}  // namespace isp
