// Copyright 2026 The hcflow Authors.
//
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

// Integral max-flow on a general directed network (Dinic) and feasibility of
// flows with lower bounds.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace hcf {

using Cap = std::int64_t;

/// Distinguished infinite capacity. Large enough that no finite sum of
/// hypercube capacities reaches it, small enough that sums do not overflow.
inline constexpr Cap kInfinite = Cap{1} << 48;

constexpr bool is_infinite(Cap c) { return c >= kInfinite; }

class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes)
      : adj_(static_cast<std::size_t>(nodes)),
        level_(static_cast<std::size_t>(nodes)),
        next_(static_cast<std::size_t>(nodes)) {}

  int nodes() const { return static_cast<int>(adj_.size()); }

  int add_arc(int from, int to, Cap cap) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({from, to, cap, 0});
    arcs_.push_back({to, from, 0, 0});
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
  }

  Cap flow(int arc) const { return arcs_[arc].flow; }
  Cap capacity(int arc) const { return arcs_[arc].cap; }
  int head(int arc) const { return arcs_[arc].to; }
  int tail(int arc) const { return arcs_[arc].from; }

  Cap max_flow(int s, int t) {
    Cap total = 0;
    while (build_levels(s, t)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (Cap pushed = augment(s, t, kInfinite * 4)) total += pushed;
    }
    return total;
  }

  /// Nodes reachable from s in the residual graph.
  std::vector<bool> residual_reachable(int s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<int> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int id : adj_[u]) {
        const Arc& a = arcs_[id];
        if (a.cap - a.flow > 0 && !seen[a.to]) {
          seen[a.to] = true;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int from;
    int to;
    Cap cap;
    Cap flow;
  };

  bool build_levels(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<int> queue{s};
    level_[s] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int u = queue[qi];
      for (int id : adj_[u]) {
        const Arc& a = arcs_[id];
        if (a.cap - a.flow > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[u] + 1;
          queue.push_back(a.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  Cap augment(int u, int t, Cap limit) {
    if (u == t) return limit;
    for (auto& i = next_[u]; i < adj_[u].size(); ++i) {
      const int id = adj_[u][i];
      Arc& a = arcs_[id];
      if (a.cap - a.flow <= 0 || level_[a.to] != level_[u] + 1) continue;
      if (Cap got = augment(a.to, t, std::min(limit, a.cap - a.flow))) {
        a.flow += got;
        arcs_[id ^ 1].flow -= got;
        return got;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

struct BoundedArc {
  int from = 0;
  int to = 0;
  Cap lower = 0;
  Cap upper = 0;
};

/// Finds integral arc flows within [lower, upper] that conserve flow at every
/// node except `source` and `sink` (any net amount may leave the source).
/// Returns nullopt when no such flow exists.
inline std::optional<std::vector<Cap>> feasible_bounded_flow(
    int nodes, const std::vector<BoundedArc>& arcs, int source, int sink) {
  const int ss = nodes;
  const int tt = nodes + 1;
  FlowNetwork net(nodes + 2);
  std::vector<Cap> excess(static_cast<std::size_t>(nodes), 0);
  std::vector<int> ids;
  ids.reserve(arcs.size());
  for (const auto& a : arcs) {
    if (a.lower > a.upper) return std::nullopt;
    ids.push_back(net.add_arc(a.from, a.to, a.upper - a.lower));
    excess[a.to] += a.lower;
    excess[a.from] -= a.lower;
  }
  net.add_arc(sink, source, kInfinite);
  Cap need = 0;
  for (int v = 0; v < nodes; ++v) {
    if (excess[v] > 0) {
      net.add_arc(ss, v, excess[v]);
      need += excess[v];
    } else if (excess[v] < 0) {
      net.add_arc(v, tt, -excess[v]);
    }
  }
  if (net.max_flow(ss, tt) != need) return std::nullopt;
  std::vector<Cap> out;
  out.reserve(arcs.size());
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    out.push_back(arcs[k].lower + net.flow(ids[k]));
  }
  return out;
}

}  // namespace hcf
