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

// Max-flow / min-cut on induced hypercube subgraphs with simultaneous vertex
// and edge capacities.
//
// The network has a super source joined to every source and every sink joined
// to a super sink, both with infinite capacity. A vertex of finite capacity c
// is split into an in-node and an out-node joined by an arc of capacity c;
// vertices of infinite capacity stay whole. Cut certificates are pairs (C, F)
// of vertices and edges meeting every source-to-sink path.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hcflow/hypercube.hpp"
#include "hcflow/matched_pairs.hpp"
#include "hcflow/network.hpp"

namespace hcf {

struct VertexCaps {
  Cap uniform = kInfinite;
  std::map<Vertex, Cap> overrides;

  static VertexCaps constant(Cap c) { return {c, {}}; }
  Cap operator()(Vertex v) const {
    auto it = overrides.find(v);
    return it == overrides.end() ? uniform : it->second;
  }
  bool is_uniform() const { return overrides.empty(); }
};

struct EdgeCaps {
  Cap uniform = kInfinite;
  std::map<Edge, Cap> overrides;

  static EdgeCaps constant(Cap c) { return {c, {}}; }
  Cap operator()(const Edge& e) const {
    auto it = overrides.find(e);
    return it == overrides.end() ? uniform : it->second;
  }
  bool is_uniform() const { return overrides.empty(); }
};

struct FlowProblem {
  int d = 0;
  VertexMask graph;  // the network is the subgraph induced on these vertices
  VertexList sources;
  VertexList sinks;
  VertexCaps vcap;
  EdgeCaps ecap;

  static FlowProblem on_cover(const CoverGraph& g, VertexList S, VertexList T,
                              VertexCaps vcap, EdgeCaps ecap) {
    return {g.d, g.mask, sorted_unique(std::move(S)), sorted_unique(std::move(T)),
            std::move(vcap), std::move(ecap)};
  }
  static FlowProblem on_cube(int d, VertexList S, VertexList T, VertexCaps vcap,
                             EdgeCaps ecap) {
    check_dimension(d);
    return {d, VertexMask(d, true), sorted_unique(std::move(S)),
            sorted_unique(std::move(T)), std::move(vcap), std::move(ecap)};
  }

  bool is_source(Vertex v) const {
    return std::binary_search(sources.begin(), sources.end(), v);
  }
  bool is_sink(Vertex v) const {
    return std::binary_search(sinks.begin(), sinks.end(), v);
  }
};

using Path = VertexList;

struct FlowSolution {
  Cap value = 0;
  std::vector<std::pair<Edge, Cap>> arc_flow;  // positive entries, sorted by edge
  std::vector<Path> paths;                     // one entry per unit of flow
};

struct CutCertificate {
  VertexList C;
  std::vector<Edge> F;
  Cap value = 0;

  friend bool operator==(const CutCertificate&, const CutCertificate&) = default;
};

struct CutPartition {
  VertexList s_side;
  VertexList cut;  // C together with graph vertices on neither side
  VertexList t_side;
  VertexList residue;  // the part of `cut` that is not in C
};

struct FlowResult {
  FlowSolution flow;
  CutCertificate cut;
};

struct UnboundedFlow : std::domain_error {
  UnboundedFlow()
      : std::domain_error("unbounded flow: a source reaches a sink through "
                          "infinite-capacity elements only") {}
};

struct InvalidCut : std::invalid_argument {
  Path witness;
  InvalidCut(std::string what, Path path)
      : std::invalid_argument(std::move(what)), witness(std::move(path)) {}
};

struct NotOptimalPair : std::invalid_argument {
  NotOptimalPair() : std::invalid_argument("not optimal pair: flow value differs from cut value") {}
};

inline Cap cut_value(const FlowProblem& p, const VertexList& C,
                     const std::vector<Edge>& F) {
  Cap v = 0;
  for (Vertex c : C) v += p.vcap(c);
  for (const Edge& e : F) v += p.ecap(e);
  return v;
}

namespace detail {

/// The split network of a flow problem.
struct SplitNetwork {
  static constexpr int kSource = 0;
  static constexpr int kSink = 1;

  FlowNetwork net{2};
  std::vector<int> in_node;   // by vertex bits, -1 outside the graph
  std::vector<int> out_node;
  std::vector<int> split_arc;  // by vertex bits, -1 if unsplit
  std::vector<std::pair<Edge, int>> edge_arcs;
  std::vector<std::pair<Vertex, int>> source_arcs;
  std::vector<std::pair<Vertex, int>> sink_arcs;

  explicit SplitNetwork(const FlowProblem& p) {
    const std::size_t n = cube_size(p.d);
    in_node.assign(n, -1);
    out_node.assign(n, -1);
    split_arc.assign(n, -1);
    int nodes = 2;
    for (std::uint32_t b = 0; b < n; ++b) {
      const Vertex v{b};
      if (!p.graph.contains(v)) continue;
      in_node[b] = nodes++;
      out_node[b] = is_infinite(p.vcap(v)) ? in_node[b] : nodes++;
    }
    net = FlowNetwork(nodes);
    for (std::uint32_t b = 0; b < n; ++b) {
      if (in_node[b] >= 0 && in_node[b] != out_node[b]) {
        split_arc[b] = net.add_arc(in_node[b], out_node[b], p.vcap(Vertex{b}));
      }
    }
    for (Vertex s : p.sources) {
      if (p.graph.contains(s)) {
        source_arcs.emplace_back(s, net.add_arc(kSource, in_node[s.bits], kInfinite));
      }
    }
    for (Vertex t : p.sinks) {
      if (p.graph.contains(t)) {
        sink_arcs.emplace_back(t, net.add_arc(out_node[t.bits], kSink, kInfinite));
      }
    }
    for_each_edge(p.graph, [&](const Edge& e) {
      const Cap c = p.ecap(e);
      if (c > 0) {
        edge_arcs.emplace_back(
            e, net.add_arc(out_node[e.lo.bits], in_node[e.hi.bits], std::min(c, kInfinite)));
      }
    });
  }
};

/// Peels unit paths from an edge flow. At every vertex the path ends if the
/// vertex still has sink flow, otherwise it moves to the smallest successor
/// with remaining flow.
inline std::vector<Path> decompose(int d,
                                   const std::vector<std::pair<Vertex, Cap>>& emit,
                                   const std::vector<std::pair<Vertex, Cap>>& absorb_list,
                                   const std::vector<std::pair<Edge, Cap>>& edge_flow) {
  const std::size_t n = cube_size(d);
  std::vector<Cap> absorb(n, 0);
  for (const auto& [t, f] : absorb_list) absorb[t.bits] += f;
  // rem[v * d + (k-1)] : remaining flow on edge v -> v + e_k
  std::vector<Cap> rem(n * static_cast<std::size_t>(d), 0);
  for (const auto& [e, f] : edge_flow) {
    rem[e.lo.bits * static_cast<std::size_t>(d) + static_cast<std::size_t>(e.dim - 1)] += f;
  }
  std::vector<Path> paths;
  for (const auto& [s, f] : emit) {
    for (Cap unit = 0; unit < f; ++unit) {
      Path path{s};
      Vertex v = s;
      while (true) {
        if (absorb[v.bits] > 0) {
          --absorb[v.bits];
          break;
        }
        // Successors ordered by encoding: v + e_k increases with k.
        int next = -1;
        for (int k = 1; k <= d; ++k) {
          if (v.bits & (1u << (k - 1))) continue;
          if (rem[v.bits * static_cast<std::size_t>(d) + static_cast<std::size_t>(k - 1)] > 0) {
            next = k;
            break;
          }
        }
        if (next < 0) throw std::logic_error("flow decomposition got stuck");
        --rem[v.bits * static_cast<std::size_t>(d) + static_cast<std::size_t>(next - 1)];
        v = Vertex{v.bits | (1u << (next - 1))};
        path.push_back(v);
      }
      paths.push_back(std::move(path));
    }
  }
  return paths;
}

}  // namespace detail

/// Max flow, its path decomposition, and the source-side minimal min cut.
inline FlowResult solve(const FlowProblem& p) {
  check_dimension(p.d);
  detail::SplitNetwork sn(p);
  const Cap value = sn.net.max_flow(detail::SplitNetwork::kSource,
                                    detail::SplitNetwork::kSink);
  if (is_infinite(value)) throw UnboundedFlow();

  FlowResult r;
  r.flow.value = value;
  for (const auto& [e, id] : sn.edge_arcs) {
    if (sn.net.flow(id) > 0) r.flow.arc_flow.emplace_back(e, sn.net.flow(id));
  }
  std::vector<std::pair<Vertex, Cap>> emit, absorb;
  for (const auto& [s, id] : sn.source_arcs) {
    if (sn.net.flow(id) > 0) emit.emplace_back(s, sn.net.flow(id));
  }
  for (const auto& [t, id] : sn.sink_arcs) {
    if (sn.net.flow(id) > 0) absorb.emplace_back(t, sn.net.flow(id));
  }
  r.flow.paths = detail::decompose(p.d, emit, absorb, r.flow.arc_flow);

  const auto reach = sn.net.residual_reachable(detail::SplitNetwork::kSource);
  for (std::uint32_t b = 0; b < sn.split_arc.size(); ++b) {
    if (sn.split_arc[b] >= 0 && reach[sn.in_node[b]] && !reach[sn.out_node[b]]) {
      r.cut.C.push_back(Vertex{b});
    }
  }
  for (const auto& [e, id] : sn.edge_arcs) {
    if (reach[sn.net.tail(id)] && !reach[sn.net.head(id)]) r.cut.F.push_back(e);
  }
  r.cut.value = cut_value(p, r.cut.C, r.cut.F);
  if (r.cut.value != value) throw std::logic_error("max-flow/min-cut mismatch");
  return r;
}

inline FlowSolution max_flow(const FlowProblem& p) { return solve(p).flow; }
inline CutCertificate min_cut(const FlowProblem& p) { return solve(p).cut; }

/// A source-to-sink path avoiding C and F, if one exists.
inline std::optional<Path> find_cut_free_path(const FlowProblem& p,
                                              const CutCertificate& c) {
  const std::size_t n = cube_size(p.d);
  std::vector<std::uint8_t> in_c(n, 0);
  for (Vertex v : c.C) in_c[v.bits] = 1;
  const std::vector<Edge> F = [&] {
    auto f = c.F;
    std::sort(f.begin(), f.end());
    return f;
  }();
  auto blocked = [&](const Edge& e) { return std::binary_search(F.begin(), F.end(), e); };

  std::vector<std::int64_t> parent(n, -2);  // -2 unseen, -1 root
  std::vector<Vertex> stack;
  for (Vertex s : p.sources) {
    if (p.graph.contains(s) && !in_c[s.bits] && parent[s.bits] == -2) {
      parent[s.bits] = -1;
      stack.push_back(s);
    }
  }
  // Breadth-first in layer order keeps witnesses short and deterministic.
  for (std::size_t qi = 0; qi < stack.size(); ++qi) {
    const Vertex v = stack[qi];
    if (p.is_sink(v)) {
      Path path;
      for (std::int64_t x = v.bits; x >= 0; x = parent[static_cast<std::size_t>(x)]) {
        path.push_back(Vertex{static_cast<std::uint32_t>(x)});
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int k = 1; k <= p.d; ++k) {
      const std::uint32_t m = 1u << (k - 1);
      if (v.bits & m) continue;
      const Vertex w{v.bits | m};
      if (!p.graph.contains(w) || in_c[w.bits] || parent[w.bits] != -2) continue;
      const Edge e{v, w, k};
      if (blocked(e) || p.ecap(e) == 0) continue;
      parent[w.bits] = v.bits;
      stack.push_back(w);
    }
  }
  return std::nullopt;
}

inline std::string render_path(int d, const Path& path) {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += "->";
    s += to_bitstring(d, path[i]);
  }
  return s;
}

inline void require_valid_cut(const FlowProblem& p, const CutCertificate& c) {
  if (auto path = find_cut_free_path(p, c)) {
    throw InvalidCut("invalid cut: path " + render_path(p.d, *path) + " is cut-free",
                     *path);
  }
}

inline bool is_valid_cut(const FlowProblem& p, const CutCertificate& c) {
  return !find_cut_free_path(p, c).has_value();
}

namespace detail {

/// Reachability split without any validity checks. For an invalid cut the two
/// sides may overlap; the source side wins.
inline CutPartition partition_unchecked(const FlowProblem& p, const CutCertificate& c,
                                        bool check_crossing) {
  const int d = p.d;
  const std::size_t n = cube_size(d);
  std::vector<std::uint8_t> in_c(n, 0);
  for (Vertex v : c.C) in_c[v.bits] = 1;
  std::vector<Edge> F = c.F;
  std::sort(F.begin(), F.end());
  auto usable = [&](const Edge& e) {
    return p.graph.contains(e.lo) && p.graph.contains(e.hi) && !in_c[e.lo.bits] &&
           !in_c[e.hi.bits] && p.ecap(e) > 0 && !std::binary_search(F.begin(), F.end(), e);
  };

  std::vector<std::uint8_t> fwd(n, 0), bwd(n, 0);
  for (Vertex s : p.sources) {
    if (p.graph.contains(s) && !in_c[s.bits]) fwd[s.bits] = 1;
  }
  for (std::uint32_t b = 0; b < n; ++b) {
    if (!fwd[b]) continue;
    for (int k = 1; k <= d; ++k) {
      const std::uint32_t m = 1u << (k - 1);
      if (!(b & m) && usable(Edge{Vertex{b}, Vertex{b | m}, k})) fwd[b | m] = 1;
    }
  }
  for (Vertex t : p.sinks) {
    if (p.graph.contains(t) && !in_c[t.bits]) bwd[t.bits] = 1;
  }
  for (std::uint32_t b = static_cast<std::uint32_t>(n); b-- > 0;) {
    if (!bwd[b]) continue;
    for (int k = 1; k <= d; ++k) {
      const std::uint32_t m = 1u << (k - 1);
      if ((b & m) && usable(Edge{Vertex{b & ~m}, Vertex{b}, k})) bwd[b & ~m] = 1;
    }
  }

  CutPartition part;
  for (std::uint32_t b = 0; b < n; ++b) {
    const Vertex v{b};
    if (!p.graph.contains(v)) continue;
    if (in_c[b]) {
      part.cut.push_back(v);
    } else if (fwd[b]) {
      part.s_side.push_back(v);
    } else if (bwd[b]) {
      part.t_side.push_back(v);
    } else {
      part.cut.push_back(v);
      part.residue.push_back(v);
    }
  }
  // Only F edges may lead from the source side to the sink side.
  for (Vertex v : check_crossing ? part.s_side : VertexList{}) {
    for (int k = 1; k <= d; ++k) {
      const std::uint32_t m = 1u << (k - 1);
      if (v.bits & m) continue;
      const Vertex w{v.bits | m};
      if (bwd[w.bits] && !in_c[w.bits] && usable(Edge{v, w, k})) {
        throw InvalidCut("invalid cut: edge " + to_bitstring(d, v) + "->" +
                             to_bitstring(d, w) + " joins the two sides",
                         Path{v, w});
      }
    }
  }
  return part;
}

}  // namespace detail

/// Splits the graph into the cut-free-reachable side, the cut, and the
/// cut-free-co-reachable side.
inline CutPartition partition_by_cut(const FlowProblem& p, const CutCertificate& c) {
  require_valid_cut(p, c);
  return detail::partition_unchecked(p, c, true);
}

/// Replaces every group of >= 2 F-edges at a common vertex v by v itself,
/// whenever that does not raise the cut value.
inline CutCertificate normalize_cut(const FlowProblem& p, const CutCertificate& c) {
  require_valid_cut(p, c);
  VertexList C = sorted_unique(c.C);
  std::vector<Edge> F = c.F;
  std::sort(F.begin(), F.end());
  F.erase(std::unique(F.begin(), F.end()), F.end());

  bool changed = true;
  while (changed) {
    changed = false;
    std::map<Vertex, std::vector<Edge>> at;
    for (const Edge& e : F) {
      at[e.lo].push_back(e);
      at[e.hi].push_back(e);
    }
    for (const auto& [v, edges] : at) {
      if (edges.size() < 2) continue;
      Cap edge_cost = 0;
      for (const Edge& e : edges) edge_cost += p.ecap(e);
      const bool already_cut = std::binary_search(C.begin(), C.end(), v);
      if (!already_cut && p.vcap(v) > edge_cost) continue;
      std::erase_if(F, [&](const Edge& e) { return e.lo == v || e.hi == v; });
      if (!already_cut) C.insert(std::lower_bound(C.begin(), C.end(), v), v);
      changed = true;
      break;
    }
  }
  CutCertificate out{std::move(C), std::move(F), 0};
  out.value = cut_value(p, out.C, out.F);
  return out;
}

/// True when no vertex meets more than one F-edge.
inline bool is_normalized(const CutCertificate& c) {
  std::map<Vertex, int> deg;
  for (const Edge& e : c.F) {
    if (++deg[e.lo] > 1 || ++deg[e.hi] > 1) return false;
  }
  return true;
}

/// Feasibility of a path decomposition: every path is a monotone walk inside
/// the graph from a source to a sink, and usage respects all capacities.
inline Validation check_flow_solution(const FlowProblem& p, const FlowSolution& f) {
  if (static_cast<Cap>(f.paths.size()) != f.value) {
    return Validation::fail("path count " + std::to_string(f.paths.size()) +
                            " differs from value " + std::to_string(f.value));
  }
  std::map<Vertex, Cap> vuse;
  std::map<Edge, Cap> euse;
  for (const Path& path : f.paths) {
    if (path.empty()) return Validation::fail("empty path");
    if (!p.is_source(path.front())) {
      return Validation::fail("path " + render_path(p.d, path) + " does not start in S");
    }
    if (!p.is_sink(path.back())) {
      return Validation::fail("path " + render_path(p.d, path) + " does not end in T");
    }
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (!p.graph.contains(path[i])) {
        return Validation::fail("path " + render_path(p.d, path) + " leaves the graph");
      }
      ++vuse[path[i]];
      if (i + 1 < path.size()) {
        const Vertex a = path[i], b = path[i + 1];
        if (!strictly_precedes(a, b) || layer_of(b) != layer_of(a) + 1) {
          return Validation::fail("path " + render_path(p.d, path) + " is not monotone");
        }
        ++euse[edge_between(a, b)];
      }
    }
  }
  for (const auto& [v, u] : vuse) {
    if (u > p.vcap(v)) {
      return Validation::fail("vertex " + to_bitstring(p.d, v) + " carries " +
                              std::to_string(u) + " paths");
    }
  }
  for (const auto& [e, u] : euse) {
    if (u > p.ecap(e)) {
      return Validation::fail("edge " + to_bitstring(p.d, e.lo) + "->" +
                              to_bitstring(p.d, e.hi) + " carries " +
                              std::to_string(u) + " paths");
    }
  }
  return {};
}

/// Checks that each path meets exactly one cut element, each C-vertex lies on
/// exactly vcap paths and each F-edge on exactly ecap paths.
inline Validation verify_complementary_slackness(const FlowProblem& p,
                                                 const FlowSolution& f,
                                                 const CutCertificate& c) {
  if (f.value != c.value) throw NotOptimalPair();
  const VertexList C = sorted_unique(c.C);
  std::vector<Edge> F = c.F;
  std::sort(F.begin(), F.end());
  std::map<Vertex, Cap> on_c;
  std::map<Edge, Cap> on_f;
  for (const Path& path : f.paths) {
    int hits = 0;
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (std::binary_search(C.begin(), C.end(), path[i])) {
        ++hits;
        ++on_c[path[i]];
      }
      if (i + 1 < path.size()) {
        const Edge e = edge_between(path[i], path[i + 1]);
        if (std::binary_search(F.begin(), F.end(), e)) {
          ++hits;
          ++on_f[e];
        }
      }
    }
    if (hits != 1) {
      return Validation::fail("path " + render_path(p.d, path) + " meets " +
                              std::to_string(hits) + " cut elements");
    }
  }
  for (Vertex v : C) {
    if (on_c[v] != p.vcap(v)) {
      return Validation::fail("cut vertex " + to_bitstring(p.d, v) + " lies on " +
                              std::to_string(on_c[v]) + " paths, capacity " +
                              std::to_string(p.vcap(v)));
    }
  }
  for (const Edge& e : F) {
    if (on_f[e] != p.ecap(e)) {
      return Validation::fail("cut edge " + to_bitstring(p.d, e.lo) + "->" +
                              to_bitstring(p.d, e.hi) + " lies on " +
                              std::to_string(on_f[e]) + " paths");
    }
  }
  return {};
}

}  // namespace hcf
