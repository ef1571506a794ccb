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

#include "isp/feasibility.hpp"

#include <queue>

namespace isp {
namespace {

Rational total(std::span<const Rational> v) {
  Rational s(0);
  for (const auto& q : v) s += q;
  return s;
}

// Residual graph with paired forward/backward edges; edge e ^ 1 is the
// partner of e.
struct Residual {
  struct Edge {
    int to;
    Rational cap;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> out;

  explicit Residual(const FlowNetwork& net) : out(static_cast<std::size_t>(net.node_count())) {
    edges.reserve(net.arcs.size() * 2);
    for (const auto& a : net.arcs) {
      out[static_cast<std::size_t>(a.from)].push_back(static_cast<int>(edges.size()));
      edges.push_back({a.to, a.capacity});
      out[static_cast<std::size_t>(a.to)].push_back(static_cast<int>(edges.size()));
      edges.push_back({a.from, Rational(0)});
    }
  }

  std::vector<char> reach_from(int start) const {
    std::vector<char> seen(out.size(), 0);
    std::queue<int> q;
    seen[static_cast<std::size_t>(start)] = 1;
    q.push(start);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e : out[static_cast<std::size_t>(u)]) {
        const auto& edge = edges[static_cast<std::size_t>(e)];
        if (sgn(edge.cap) > 0 && !seen[static_cast<std::size_t>(edge.to)]) {
          seen[static_cast<std::size_t>(edge.to)] = 1;
          q.push(edge.to);
        }
      }
    }
    return seen;
  }

  // Nodes from which `target` is reachable.
  std::vector<char> reach_to(int target) const {
    std::vector<char> seen(out.size(), 0);
    std::queue<int> q;
    seen[static_cast<std::size_t>(target)] = 1;
    q.push(target);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      // u -> v has residual capacity iff the partner of some edge leaving v
      // has positive capacity.
      for (int e : out[static_cast<std::size_t>(v)]) {
        const auto& back = edges[static_cast<std::size_t>(e ^ 1)];
        const int u = edges[static_cast<std::size_t>(e)].to;
        if (sgn(back.cap) > 0 && !seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = 1;
          q.push(u);
        }
      }
    }
    return seen;
  }
};

void check_scale(const Rational& t) {
  if (sgn(t) <= 0) throw Error(Errc::NonPositive, "NonPositive: scale t must be positive");
}

}  // namespace

FlowNetwork build_network(const SupportPattern& support, std::span<const Rational> r,
                          std::span<const Rational> c, const Rational& t) {
  check_scale(t);
  if (r.size() != static_cast<std::size_t>(support.rows()) ||
      c.size() != static_cast<std::size_t>(support.cols()))
    throw Error(Errc::DimensionMismatch, "DimensionMismatch: targets do not match support");

  FlowNetwork net;
  net.rows = support.rows();
  net.cols = support.cols();
  net.scale = t;
  const Rational unbounded = total(r) + 1;
  for (int i = 0; i < net.rows; ++i)
    net.arcs.push_back({net.source(), net.row_node(i), r[static_cast<std::size_t>(i)]});
  for (auto [i, j] : support.pairs()) net.arcs.push_back({net.row_node(i), net.col_node(j), unbounded});
  for (int j = 0; j < net.cols; ++j)
    net.arcs.push_back({net.col_node(j), net.sink(), t * c[static_cast<std::size_t>(j)]});
  return net;
}

MaxFlowResult max_flow(const FlowNetwork& net) {
  Residual g(net);
  const int s = net.source();
  const int t = net.sink();
  const auto nodes = static_cast<std::size_t>(net.node_count());
  Rational value(0);

  std::vector<int> via(nodes);
  for (;;) {
    std::fill(via.begin(), via.end(), -1);
    std::queue<int> q;
    q.push(s);
    via[static_cast<std::size_t>(s)] = -2;
    while (!q.empty() && via[static_cast<std::size_t>(t)] == -1) {
      int u = q.front();
      q.pop();
      for (int e : g.out[static_cast<std::size_t>(u)]) {
        const auto& edge = g.edges[static_cast<std::size_t>(e)];
        if (sgn(edge.cap) > 0 && via[static_cast<std::size_t>(edge.to)] == -1) {
          via[static_cast<std::size_t>(edge.to)] = e;
          q.push(edge.to);
        }
      }
    }
    if (via[static_cast<std::size_t>(t)] == -1) break;

    Rational push = g.edges[static_cast<std::size_t>(via[static_cast<std::size_t>(t)])].cap;
    for (int v = t; v != s;) {
      const int e = via[static_cast<std::size_t>(v)];
      if (g.edges[static_cast<std::size_t>(e)].cap < push) push = g.edges[static_cast<std::size_t>(e)].cap;
      v = g.edges[static_cast<std::size_t>(e ^ 1)].to;
    }
    for (int v = t; v != s;) {
      const int e = via[static_cast<std::size_t>(v)];
      g.edges[static_cast<std::size_t>(e)].cap -= push;
      g.edges[static_cast<std::size_t>(e ^ 1)].cap += push;
      v = g.edges[static_cast<std::size_t>(e ^ 1)].to;
    }
    value += push;
  }

  MaxFlowResult out;
  out.flow.reserve(net.arcs.size());
  for (std::size_t a = 0; a < net.arcs.size(); ++a) out.flow.push_back(g.edges[2 * a + 1].cap);
  out.value = value;
  out.reach_from_source = g.reach_from(s);
  out.reach_to_sink = g.reach_to(t);
  return out;
}

GapSet max_gap_set(const SupportPattern& support, std::span<const Rational> r,
                   std::span<const Rational> c, const Rational& t) {
  const FlowNetwork net = build_network(support, r, c, t);
  const MaxFlowResult flow = max_flow(net);

  // Rows that cannot reach the sink form the source side of the minimum cut
  // with the largest source side; its row set is the largest maximizer.
  std::vector<int> rows;
  for (int i = 0; i < net.rows; ++i)
    if (!flow.reach_to_sink[static_cast<std::size_t>(net.row_node(i))]) rows.push_back(i);

  GapSet out{total(r) - flow.value, IndexSet(std::move(rows))};
  const Rational check = marginal_sum(r, out.rows) - t * marginal_sum(c, neighborhood(support, out.rows));
  if (check != out.gap) throw Error(Errc::Internal, "max_gap_set: cut value disagrees with flow value");
  return out;
}

HallCertificate hall_check(const SupportPattern& support, std::span<const Rational> r,
                           std::span<const Rational> c, const Rational& t) {
  GapSet g = max_gap_set(support, r, c, t);
  HallCertificate cert;
  cert.verdict = sgn(g.gap) > 0 ? Verdict::Infeasible : Verdict::Feasible;
  cert.witness = std::move(g.rows);
  cert.gap = std::move(g.gap);
  return cert;
}

SupportPattern flexible_support(const SupportPattern& support, std::span<const Rational> r,
                                std::span<const Rational> c, const Rational& t) {
  if (total(r) != t * total(c))
    throw Error(Errc::TotalsMismatch, "TotalsMismatch: sum(r) != t * sum(c)");
  const FlowNetwork net = build_network(support, r, c, t);
  const MaxFlowResult flow = max_flow(net);
  if (flow.value != total(r))
    throw Error(Errc::InfeasibleInstance, "InfeasibleInstance: no matrix meets the marginals on this support");

  Residual g(net);
  for (std::size_t a = 0; a < net.arcs.size(); ++a) {
    g.edges[2 * a].cap -= flow.flow[a];
    g.edges[2 * a + 1].cap = flow.flow[a];
  }

  // (i, j) can be raised iff the residual graph has a path j ~> i, closing a
  // cycle with the uncapacitated arc i -> j.
  std::vector<std::vector<char>> reach_from_col;
  reach_from_col.reserve(static_cast<std::size_t>(net.cols));
  for (int j = 0; j < net.cols; ++j) reach_from_col.push_back(g.reach_from(net.col_node(j)));

  SupportPattern out(support.rows(), support.cols());
  std::size_t arc = net.support_arc_begin();
  for (auto [i, j] : support.pairs()) {
    const bool carries = sgn(flow.flow[arc]) > 0;
    const bool cycle = reach_from_col[static_cast<std::size_t>(j)][static_cast<std::size_t>(net.row_node(i))] != 0;
    if (carries || cycle) out.add(i, j);
    ++arc;
  }
  return out;
}

}  // namespace isp
