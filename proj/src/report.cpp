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

#include "isp/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "isp/error.hpp"

namespace isp {
namespace {

using ojson = nlohmann::ordered_json;

ojson grid_json(const Grid& g) {
  ojson out = ojson::array();
  for (const auto& row : g) out.push_back(row);
  return out;
}

Grid grid_from(const ojson& j) { return j.get<Grid>(); }

std::string set_text(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(s[k]);
  }
  return out + "}";
}

std::string num(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

void grid_text(std::ostringstream& os, const char* name, const Grid& g, int precision) {
  os << name << " =\n";
  for (const auto& row : g) {
    os << " ";
    for (double v : row) os << ' ' << num(v, precision);
    os << '\n';
  }
}

}  // namespace

std::string to_json(const Report& r) {
  ojson doc;
  doc["command"] = r.command;
  doc["rows"] = r.rows;
  doc["cols"] = r.cols;
  if (r.check) {
    doc["check"] = {{"feasible", r.check->feasible},
                    {"scale", r.check->scale},
                    {"witness", r.check->witness},
                    {"gap", r.check->gap}};
  }
  if (r.single_block) doc["single_block"] = *r.single_block;
  if (r.decomposition) {
    ojson blocks = ojson::array();
    for (const auto& b : *r.decomposition) {
      blocks.push_back({{"rows", b.rows},
                        {"cols", b.cols},
                        {"quotient", b.quotient},
                        {"quotient_decimal", b.quotient_decimal},
                        {"group", b.group}});
    }
    doc["decomposition"] = std::move(blocks);
  }
  if (r.limits) {
    doc["limits"] = {{"B", grid_json(r.limits->B)},
                     {"C", grid_json(r.limits->C)},
                     {"row_residual", r.limits->row_residual},
                     {"col_residual", r.limits->col_residual},
                     {"per_block_iters", r.limits->per_block_iters},
                     {"converged", r.limits->converged}};
  }
  if (r.trace) {
    doc["trace_summary"] = {{"iterations", r.trace->iterations},
                            {"final_delta", r.trace->final_delta},
                            {"final_col_deviation", r.trace->final_col_deviation},
                            {"converged", r.trace->converged},
                            {"B", grid_json(r.trace->B)},
                            {"C", grid_json(r.trace->C)}};
  }
  if (r.bench) {
    const auto& b = *r.bench;
    doc["bench"] = {{"tol", b.tol},
                    {"naive_cap", b.naive_cap},
                    {"naive_iters", b.naive_iters},
                    {"naive_reached", b.naive_reached},
                    {"accelerated_iters", b.accelerated_iters},
                    {"per_block_iters", b.per_block_iters}};
    doc["timings"] = {{"naive_seconds", b.naive_seconds}, {"accelerated_seconds", b.accelerated_seconds}};
  }
  return doc.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  Report r;
  try {
    const ojson doc = ojson::parse(text);
    r.command = doc.at("command").get<std::string>();
    r.rows = doc.at("rows").get<int>();
    r.cols = doc.at("cols").get<int>();
    if (doc.contains("check")) {
      const auto& c = doc["check"];
      r.check = CheckSection{c.at("feasible").get<bool>(), c.at("scale").get<std::string>(),
                             c.at("witness").get<std::vector<int>>(), c.at("gap").get<std::string>()};
    }
    if (doc.contains("single_block")) r.single_block = doc["single_block"].get<bool>();
    if (doc.contains("decomposition")) {
      std::vector<BlockEntry> blocks;
      for (const auto& b : doc["decomposition"]) {
        blocks.push_back(BlockEntry{b.at("rows").get<std::vector<int>>(), b.at("cols").get<std::vector<int>>(),
                                    b.at("quotient").get<std::string>(), b.at("quotient_decimal").get<double>(),
                                    b.at("group").get<int>()});
      }
      r.decomposition = std::move(blocks);
    }
    if (doc.contains("limits")) {
      const auto& l = doc["limits"];
      r.limits = LimitsSection{grid_from(l.at("B")),
                               grid_from(l.at("C")),
                               l.at("row_residual").get<double>(),
                               l.at("col_residual").get<double>(),
                               l.at("per_block_iters").get<std::vector<long>>(),
                               l.at("converged").get<bool>()};
    }
    if (doc.contains("trace_summary")) {
      const auto& t = doc["trace_summary"];
      r.trace = TraceSummary{t.at("iterations").get<long>(),  t.at("final_delta").get<double>(),
                             t.at("final_col_deviation").get<double>(), t.at("converged").get<bool>(),
                             grid_from(t.at("B")),            grid_from(t.at("C"))};
    }
    if (doc.contains("bench")) {
      const auto& b = doc["bench"];
      BenchSection s;
      s.tol = b.at("tol").get<double>();
      s.naive_cap = b.at("naive_cap").get<long>();
      s.naive_iters = b.at("naive_iters").get<long>();
      s.naive_reached = b.at("naive_reached").get<bool>();
      s.accelerated_iters = b.at("accelerated_iters").get<long>();
      s.per_block_iters = b.at("per_block_iters").get<std::vector<long>>();
      if (doc.contains("timings")) {
        s.naive_seconds = doc["timings"].at("naive_seconds").get<double>();
        s.accelerated_seconds = doc["timings"].at("accelerated_seconds").get<double>();
      }
      r.bench = std::move(s);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, 0, std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string to_text(const Report& r, int precision) {
  std::ostringstream os;
  if (r.check) {
    const auto& c = *r.check;
    if (c.feasible) {
      os << "Feasible (scale " << c.scale << ", maximal tight set I=" << set_text(c.witness) << ")\n";
    } else {
      os << "Infeasible, I=" << set_text(c.witness) << ", gap=" << c.gap << "\n";
    }
  }
  if (r.decomposition) {
    os << r.decomposition->size() << " block" << (r.decomposition->size() == 1 ? "" : "s");
    if (r.single_block && *r.single_block) os << " (single block)";
    os << "\n";
    for (const auto& b : *r.decomposition) {
      os << "  group " << b.group << ": rows " << set_text(b.rows) << " cols " << set_text(b.cols)
         << " quotient " << b.quotient << " (" << num(b.quotient_decimal, precision) << ")\n";
    }
  }
  if (r.limits) {
    grid_text(os, "B", r.limits->B, precision);
    grid_text(os, "C", r.limits->C, precision);
    os << "row residual " << num(r.limits->row_residual, 3) << ", column residual "
       << num(r.limits->col_residual, 3) << (r.limits->converged ? "" : " (not converged)") << "\n";
  }
  if (r.trace) {
    os << "after " << r.trace->iterations << " rounds: delta " << num(r.trace->final_delta, 3)
       << ", column deviation " << num(r.trace->final_col_deviation, 3)
       << (r.trace->converged ? " (converged)" : "") << "\n";
    grid_text(os, "B", r.trace->B, precision);
    grid_text(os, "C", r.trace->C, precision);
  }
  if (r.bench) {
    const auto& b = *r.bench;
    os << "tolerance " << num(b.tol, 3) << "\n";
    os << "  naive:       " << b.naive_iters << " rounds" << (b.naive_reached ? "" : " (cap reached)")
       << ", " << num(b.naive_seconds, 3) << " s\n";
    os << "  accelerated: " << b.accelerated_iters << " rounds, " << num(b.accelerated_seconds, 3) << " s\n";
  }
  return os.str();
}

void round_grids(Report& report, int digits) {
  auto round_value = [digits](double& v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    v = std::strtod(buf, nullptr);
  };
  auto round_grid = [&](Grid& g) {
    for (auto& row : g)
      for (double& v : row) round_value(v);
  };
  if (report.limits) {
    round_grid(report.limits->B);
    round_grid(report.limits->C);
  }
  if (report.trace) {
    round_grid(report.trace->B);
    round_grid(report.trace->C);
  }
}

}  // namespace isp
