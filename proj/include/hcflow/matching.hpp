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

// Bipartite matching: Hopcroft-Karp for cardinality and successive shortest
// paths for minimum cost among maximum matchings.

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace hcf {

/// Left vertices 0..n-1, right vertices 0..m-1.
struct Bigraph {
  int left = 0;
  int right = 0;
  std::vector<std::vector<int>> adj;

  Bigraph(int n, int m) : left(n), right(m), adj(static_cast<std::size_t>(n)) {}
  void add_edge(int u, int v) { adj[static_cast<std::size_t>(u)].push_back(v); }
};

struct MatchingResult {
  int size = 0;
  std::vector<int> mate_left;   // right index or -1
  std::vector<int> mate_right;  // left index or -1
};

inline MatchingResult hopcroft_karp(const Bigraph& g) {
  constexpr int kInf = std::numeric_limits<int>::max();
  MatchingResult r;
  r.mate_left.assign(static_cast<std::size_t>(g.left), -1);
  r.mate_right.assign(static_cast<std::size_t>(g.right), -1);
  std::vector<int> dist(static_cast<std::size_t>(g.left));
  std::vector<std::size_t> it(static_cast<std::size_t>(g.left));

  auto bfs = [&] {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < g.left; ++u) {
      if (r.mate_left[u] < 0) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = kInf;
      }
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : g.adj[u]) {
        const int w = r.mate_right[v];
        if (w < 0) {
          found = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };

  std::function<bool(int)> dfs = [&](int u) -> bool {
    for (auto& i = it[u]; i < g.adj[u].size(); ++i) {
      const int v = g.adj[u][i];
      const int w = r.mate_right[v];
      if (w < 0 || (dist[w] == dist[u] + 1 && dfs(w))) {
        r.mate_left[u] = v;
        r.mate_right[v] = u;
        ++i;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (int u = 0; u < g.left; ++u) {
      if (r.mate_left[u] < 0 && dfs(u)) ++r.size;
    }
  }
  return r;
}

struct CostedEdge {
  int u = 0;
  int v = 0;
  std::int64_t cost = 0;
};

struct MinCostMatchingResult {
  int size = 0;
  std::int64_t cost = 0;
  std::vector<int> mate_left;
  std::vector<int> mate_right;
};

/// Maximum-cardinality matching of minimum total cost. Costs must be
/// nonnegative. Successive shortest augmenting paths with Johnson potentials.
inline MinCostMatchingResult min_cost_max_matching(
    int n, int m, const std::vector<CostedEdge>& edges) {
  struct Arc {
    int to;
    int cap;
    std::int64_t cost;
  };
  const int source = n + m;
  const int sink = n + m + 1;
  const int nodes = n + m + 2;
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out(static_cast<std::size_t>(nodes));
  auto add = [&](int a, int b, std::int64_t c) {
    out[a].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({b, 1, c});
    out[b].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({a, 0, -c});
  };
  for (int u = 0; u < n; ++u) add(source, u, 0);
  for (const auto& e : edges) add(e.u, n + e.v, e.cost);
  for (int v = 0; v < m; ++v) add(n + v, sink, 0);

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> pot(static_cast<std::size_t>(nodes), 0);
  std::vector<std::int64_t> dist(static_cast<std::size_t>(nodes));
  std::vector<int> via(static_cast<std::size_t>(nodes));

  MinCostMatchingResult r;
  while (true) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(via.begin(), via.end(), -1);
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0;
    pq.push({0, source});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du != dist[u]) continue;
      for (int id : out[u]) {
        const Arc& a = arcs[id];
        if (a.cap == 0) continue;
        const std::int64_t nd = du + a.cost + pot[u] - pot[a.to];
        if (nd < dist[a.to]) {
          dist[a.to] = nd;
          via[a.to] = id;
          pq.push({nd, a.to});
        }
      }
    }
    if (dist[sink] >= kInf) break;
    for (int x = 0; x < nodes; ++x) {
      if (dist[x] < kInf) pot[x] += dist[x];
    }
    for (int x = sink; x != source;) {
      const int id = via[x];
      arcs[id].cap -= 1;
      arcs[id ^ 1].cap += 1;
      x = arcs[id ^ 1].to;
    }
    ++r.size;
  }

  r.mate_left.assign(static_cast<std::size_t>(n), -1);
  r.mate_right.assign(static_cast<std::size_t>(m), -1);
  for (int u = 0; u < n; ++u) {
    for (int id : out[u]) {
      const Arc& a = arcs[id];
      if ((id & 1) == 0 && a.to >= n && a.to < n + m && a.cap == 0) {
        r.mate_left[u] = a.to - n;
        r.mate_right[a.to - n] = u;
        r.cost += a.cost;
      }
    }
  }
  return r;
}

}  // namespace hcf
