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

#include "isp/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

namespace isp {
namespace {

using json = nlohmann::json;

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Builds a DOM in which every number is replaced by its source text, so that
// decimals are never rounded through a double.
class ExactNumberSax {
 public:
  using number_integer_t = json::number_integer_t;
  using number_unsigned_t = json::number_unsigned_t;
  using number_float_t = json::number_float_t;
  using string_t = json::string_t;
  using binary_t = json::binary_t;

  explicit ExactNumberSax(std::string_view text) : text_(text) {}

  json release() { return std::move(root_); }

  bool null() { return put(json(nullptr)); }
  bool boolean(bool v) { return put(json(v)); }
  bool number_integer(number_integer_t v) { return put(json(std::to_string(v))); }
  bool number_unsigned(number_unsigned_t v) { return put(json(std::to_string(v))); }
  bool number_float(number_float_t, const string_t& raw) { return put(json(raw)); }
  bool string(string_t& v) { return put(json(v)); }
  bool binary(binary_t&) { return put(json(nullptr)); }

  bool start_object(std::size_t) {
    put(json::object());
    return true;
  }
  bool key(string_t& k) {
    pending_key_ = k;
    return true;
  }
  bool end_object() {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) {
    put(json::array());
    return true;
  }
  bool end_array() {
    stack_.pop_back();
    return true;
  }

  bool parse_error(std::size_t position, const std::string& last_token,
                   const nlohmann::detail::exception& ex) {
    auto [line, col] = line_col(text_, position == 0 ? 0 : position - 1);
    std::string msg = ex.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError(line, col, msg + " (near '" + last_token + "')");
  }

 private:
  bool put(json v) {
    const bool container = v.is_object() || v.is_array();
    json* slot = nullptr;
    if (stack_.empty()) {
      root_ = std::move(v);
      slot = &root_;
    } else if (stack_.back()->is_array()) {
      stack_.back()->push_back(std::move(v));
      slot = &stack_.back()->back();
    } else {
      slot = &(*stack_.back())[pending_key_];
      *slot = std::move(v);
    }
    if (container) stack_.push_back(slot);
    return true;
  }

  std::string_view text_;
  json root_;
  std::vector<json*> stack_;
  std::string pending_key_;
};

Rational json_scalar(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(0, 0, where + ": expected a number or numeric string");
  Rational q;
  if (!parse_rational(v.get_ref<const std::string&>(), q))
    throw ParseError(0, 0, where + ": not a number: '" + v.get<std::string>() + "'");
  return q;
}

std::vector<Rational> json_vector(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(0, 0, std::string("missing key \"") + key + "\"");
  const json& arr = doc.at(key);
  if (!arr.is_array()) throw ParseError(0, 0, std::string("\"") + key + "\" must be an array");
  std::vector<Rational> out;
  for (std::size_t k = 0; k < arr.size(); ++k)
    out.push_back(json_scalar(arr[k], std::string(key) + "[" + std::to_string(k) + "]"));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string decimal_string(const Rational& q) {
  mpz_class den = q.get_den();
  while (den % 2 == 0) den /= 2;
  while (den % 5 == 0) den /= 5;
  if (den != 1) throw Error(Errc::Internal, "value " + to_fraction_string(q) + " has no finite decimal form");

  Rational v = q;
  std::size_t digits = 0;
  while (v.get_den() != 1) {
    v *= 10;
    ++digits;
  }
  std::string s = v.get_num().get_str();
  const bool negative = !s.empty() && s[0] == '-';
  if (negative) s.erase(0, 1);
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

}  // namespace

Problem parse_problem_json(std::string_view text) {
  ExactNumberSax sax(text);
  json::sax_parse(text.begin(), text.end(), &sax);
  json doc = sax.release();
  if (!doc.is_object()) throw ParseError(0, 0, "top-level JSON value must be an object");
  if (!doc.contains("matrix")) throw ParseError(0, 0, "missing key \"matrix\"");
  const json& rows = doc.at("matrix");
  if (!rows.is_array() || rows.empty()) throw ParseError(0, 0, "\"matrix\" must be a non-empty array of rows");
  const std::size_t n = rows[0].is_array() ? rows[0].size() : 0;
  Matrix<Rational> a(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array()) throw ParseError(0, 0, "matrix[" + std::to_string(i) + "] must be an array");
    if (rows[i].size() != n)
      throw Error(Errc::DimensionMismatch, "DimensionMismatch: matrix row " + std::to_string(i + 1) +
                                               " has " + std::to_string(rows[i].size()) +
                                               " entries, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = json_scalar(rows[i][j], "matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }
  return validate_problem(std::move(a), json_vector(doc, "row_sums"), json_vector(doc, "col_sums"));
}

Problem parse_problem_csv(std::string_view text) {
  std::vector<std::vector<std::string_view>> cells;
  std::vector<std::size_t> line_numbers;
  std::vector<std::vector<std::size_t>> columns;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (trim(line).empty()) continue;
    std::vector<std::string_view> fields;
    std::vector<std::size_t> starts;
    std::size_t pos = 0;
    for (;;) {
      auto comma = line.find(',', pos);
      fields.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
      starts.push_back(pos + 1);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    cells.push_back(std::move(fields));
    columns.push_back(std::move(starts));
    line_numbers.push_back(line_no);
  }
  if (cells.size() < 2) throw ParseError(cells.empty() ? 1 : line_numbers[0], 1, "bordered CSV needs a target row and at least one matrix row");
  const auto& header = cells[0];
  if (!header[0].empty()) throw ParseError(line_numbers[0], 1, "top-left cell of a bordered CSV must be empty");
  const std::size_t n = header.size() - 1;
  if (n == 0) throw ParseError(line_numbers[0], 1, "no column targets");

  auto number = [&](std::size_t row, std::size_t field) {
    Rational q;
    if (!parse_decimal(cells[row][field], q))
      throw ParseError(line_numbers[row], columns[row][field],
                       "expected a decimal number, got '" + std::string(cells[row][field]) + "'");
    return q;
  };

  std::vector<Rational> c;
  for (std::size_t j = 1; j <= n; ++j) c.push_back(number(0, j));
  std::vector<Rational> r;
  Matrix<Rational> a(cells.size() - 1, n);
  for (std::size_t row = 1; row < cells.size(); ++row) {
    if (cells[row].size() != n + 1)
      throw ParseError(line_numbers[row], 1, "expected " + std::to_string(n + 1) + " fields, found " +
                                                 std::to_string(cells[row].size()));
    r.push_back(number(row, 0));
    for (std::size_t j = 0; j < n; ++j) a(row - 1, j) = number(row, j + 1);
  }
  return validate_problem(std::move(a), std::move(r), std::move(c));
}

Problem parse_problem(std::string_view text) {
  std::size_t k = 0;
  while (k < text.size() && (text[k] == ' ' || text[k] == '\t' || text[k] == '\r' || text[k] == '\n')) ++k;
  if (k < text.size() && text[k] == '{') return parse_problem_json(text);
  return parse_problem_csv(text);
}

Problem parse_problem(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_problem(text);
}

Problem load_problem(const std::string& path) {
  if (path == "-") return parse_problem(std::cin);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
  return parse_problem(in);
}

std::string serialize_problem_json(const Problem& problem, bool exact) {
  auto value = [exact](const Rational& q) -> json {
    if (!exact && q.get_den() == 1 && q.get_num().fits_slong_p()) return json(q.get_num().get_si());
    return json(to_fraction_string(q));
  };
  json doc = json::object();
  json rows = json::array();
  for (std::size_t i = 0; i < problem.matrix().rows(); ++i) {
    json row = json::array();
    for (const auto& q : problem.matrix().row(i)) row.push_back(value(q));
    rows.push_back(std::move(row));
  }
  json r = json::array();
  for (const auto& q : problem.row_targets()) r.push_back(value(q));
  json c = json::array();
  for (const auto& q : problem.col_targets()) c.push_back(value(q));
  doc["matrix"] = std::move(rows);
  doc["row_sums"] = std::move(r);
  doc["col_sums"] = std::move(c);
  return doc.dump();
}

std::string serialize_problem_csv(const Problem& problem) {
  std::ostringstream os;
  for (const auto& q : problem.col_targets()) os << ',' << decimal_string(q);
  os << '\n';
  for (std::size_t i = 0; i < problem.matrix().rows(); ++i) {
    os << decimal_string(problem.row_targets()[i]);
    for (const auto& q : problem.matrix().row(i)) os << ',' << decimal_string(q);
    os << '\n';
  }
  return os.str();
}

}  // namespace isp
