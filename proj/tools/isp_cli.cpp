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

// isp: iterative scaling, feasibility checks and limit-point decomposition.
//
//   isp check     [--scale T]             problem.json|problem.csv|-
//   isp decompose                         ...
//   isp limits    [--tol X]
//   isp scale     [--iters K] [--tol X] [--trace out.csv]
//   isp bench     [--tol X] [--iters CAP] [--trace out.csv]
//
// Common: --format json|text (default json), --precision N.
// Exit codes: 0 success, 2 invalid input, 1 internal failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "isp/commands.hpp"
#include "isp/io.hpp"

namespace {

struct Args {
  std::string input = "-";
  std::string format = "json";
  std::optional<int> precision;
  std::optional<std::string> scale;
  std::optional<long> iters;
  std::optional<double> tol;
  std::optional<std::string> trace;
};

void emit(isp::Report report, const Args& args) {
  if (args.format == "text") {
    std::cout << isp::to_text(report, args.precision.value_or(6));
    return;
  }
  if (args.precision) isp::round_grids(report, *args.precision);
  std::cout << isp::to_json(report);
}

std::unique_ptr<std::ofstream> open_trace(const Args& args) {
  if (!args.trace) return nullptr;
  auto out = std::make_unique<std::ofstream>(*args.trace);
  if (!*out) throw isp::Error(isp::Errc::Internal, "cannot write trace file '" + *args.trace + "'");
  return out;
}

int run(const std::string& command, const Args& args) {
  const isp::Problem problem = isp::load_problem(args.input);

  if (command == "check") {
    std::optional<isp::Rational> t;
    if (args.scale) {
      isp::Rational q;
      if (!isp::parse_rational(*args.scale, q) || sgn(q) <= 0)
        throw isp::ParseError(0, 0, "--scale must be a positive number or fraction, got '" + *args.scale + "'");
      t = q;
    }
    emit(isp::cmd_check(problem, t), args);
  } else if (command == "decompose") {
    emit(isp::cmd_decompose(problem), args);
  } else if (command == "limits") {
    isp::LimitOptions options;
    if (args.tol) options.tol = *args.tol;
    if (args.iters) options.max_iters = *args.iters;
    emit(isp::cmd_limits(problem, options), args);
  } else if (command == "scale") {
    isp::ScaleOptions options;
    if (args.iters) options.iters = *args.iters;
    if (args.tol) options.tol = *args.tol;
    auto trace = open_trace(args);
    options.trace_csv = trace.get();
    emit(isp::cmd_scale(problem, options), args);
  } else if (command == "bench") {
    isp::BenchOptions options;
    if (args.tol) options.tol = *args.tol;
    if (args.iters) options.naive_cap = *args.iters;
    auto csv = open_trace(args);
    options.csv = csv.get();
    emit(isp::cmd_bench(problem, options), args);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterative scaling limits via block decomposition"};
  app.require_subcommand(1);
  Args args;

  auto add_common = [&args](CLI::App* sub) {
    sub->add_option("input", args.input, "Problem file (JSON or bordered CSV); '-' for stdin");
    sub->add_option("--format", args.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--precision", args.precision, "Significant digits for matrix output")
        ->check(CLI::Range(1, 17));
  };

  auto* check = app.add_subcommand("check", "Generalized Hall condition at a scale factor");
  add_common(check);
  check->add_option("--scale", args.scale, "Scale t as decimal or fraction (default sum(r)/sum(c))");

  auto* decompose = app.add_subcommand("decompose", "Block decomposition of the limit with exact quotients");
  add_common(decompose);

  auto* limits = app.add_subcommand("limits", "Both limit matrices via per-block scaling");
  add_common(limits);
  limits->add_option("--tol", args.tol, "Per-block column-sum tolerance (default 1e-10)");
  limits->add_option("--iters", args.iters, "Per-block round cap (default 1000000)");

  auto* scale = app.add_subcommand("scale", "Plain alternating scaling");
  add_common(scale);
  scale->add_option("--iters", args.iters, "Rounds to run (default 1000)");
  scale->add_option("--tol", args.tol, "Stop once the sup-norm change is at most this (default: run all rounds)");
  scale->add_option("--trace", args.trace, "Write a per-round CSV trace");

  auto* bench = app.add_subcommand("bench", "Plain scaling versus the decomposition path");
  add_common(bench);
  bench->add_option("--tol", args.tol, "Target accuracy (default 1e-6)");
  bench->add_option("--iters", args.iters, "Cap on plain-scaling rounds (default 1000000)");
  bench->add_option("--trace", args.trace, "Write the plain-scaling error curve as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, args);
  } catch (const isp::Error& e) {
    std::cerr << "isp " << command << ": " << e.what() << '\n';
    return e.is_input_error() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "isp " << command << ": internal error: " << e.what() << '\n';
    return 1;
  }
}
