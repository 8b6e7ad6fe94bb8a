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

// Lehman-Ron path systems between level sets of the directed hypercube.
//
// A single LR solution is a maximum flow with unit vertex capacities on the
// cover graph. Two edge-disjoint LR solutions come from a flow with vertex
// capacity 2 and edge capacity 1, split into two vertex-disjoint halves by a
// flow with lower bounds on the support of the original flow. The same peeling
// step generalizes to r collections.
//
// The gateway / pink-edge / projection-set helpers evaluate the combinatorial
// objects used in the flow-cut argument for these statements. They are
// diagnostics: nothing is asserted about them beyond their definitions.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hcflow/flow_core.hpp"
#include "hcflow/hypercube.hpp"
#include "hcflow/matched_pairs.hpp"

namespace hcf {

struct LRSolution {
  std::vector<Path> paths;
};

struct DoubleLRSolution {
  LRSolution first;
  LRSolution second;
};

struct TheoremViolation : std::runtime_error {
  explicit TheoremViolation(const std::string& what)
      : std::runtime_error("THEOREM VIOLATION: " + what) {}
};

struct SplitFailure : std::runtime_error {
  FlowSolution flow;
  int collections;
  SplitFailure(const std::string& instance, FlowSolution f, int r)
      : std::runtime_error("SPLIT FAILURE (" + std::to_string(r) +
                           " collections): " + instance),
        flow(std::move(f)),
        collections(r) {}
};

struct LevelsRequired : std::invalid_argument {
  LevelsRequired()
      : std::invalid_argument("levels required: S and T must each lie in a "
                              "single layer, S below T") {}
};

struct LevelPair {
  int i = 0;
  int j = 0;
  int distance() const { return j - i; }
};

inline void require_matched_pair(const MatchedPair& p) {
  if (auto v = validate_matched_pair(p); !v) {
    throw std::invalid_argument("not a matched pair: " + v.violation);
  }
  if (p.phi.empty()) throw std::invalid_argument("not a matched pair: empty");
}

inline LevelPair levels_of(const MatchedPair& p) {
  const int i = detail::common_layer(p.S);
  const int j = detail::common_layer(p.T);
  if (i < 0 || j < 0 || i >= j) throw LevelsRequired();
  return {i, j};
}

inline std::string describe(const MatchedPair& p) {
  std::string s = "d=" + std::to_string(p.d) + " phi={";
  for (std::size_t k = 0; k < p.phi.size(); ++k) {
    if (k) s += ",";
    s += to_bitstring(p.d, p.phi[k].first) + "->" + to_bitstring(p.d, p.phi[k].second);
  }
  return s + "}";
}

inline FlowProblem cover_problem(const MatchedPair& p, Cap vcap, Cap ecap) {
  const CoverGraph g = cover_graph(p.d, p.S, p.T);
  return FlowProblem::on_cover(g, p.S, p.T, VertexCaps::constant(vcap),
                               EdgeCaps::constant(ecap));
}

/// |S| pairwise vertex-disjoint monotone paths from S to T.
inline LRSolution lr_solution(const MatchedPair& p) {
  require_matched_pair(p);
  levels_of(p);
  const FlowSolution f = max_flow(cover_problem(p, 1, kInfinite));
  if (f.value < static_cast<Cap>(p.size())) {
    throw TheoremViolation("vertex-capacitated flow " + std::to_string(f.value) +
                           " < |S| = " + std::to_string(p.size()) + " for " +
                           describe(p));
  }
  return {f.paths};
}

namespace detail {

struct FlowProfile {
  std::map<Vertex, Cap> through;
  std::map<Vertex, Cap> emit;
  std::map<Vertex, Cap> absorb;
  std::map<Edge, Cap> edge;
};

inline FlowProfile profile(const std::vector<Path>& paths) {
  FlowProfile pr;
  for (const Path& path : paths) {
    ++pr.emit[path.front()];
    ++pr.absorb[path.back()];
    for (std::size_t i = 0; i < path.size(); ++i) {
      ++pr.through[path[i]];
      if (i + 1 < path.size()) ++pr.edge[edge_between(path[i], path[i + 1])];
    }
  }
  return pr;
}

inline FlowSolution solution_from_edges(int d,
                                        const std::vector<std::pair<Vertex, Cap>>& emit,
                                        const std::vector<std::pair<Vertex, Cap>>& absorb,
                                        std::vector<std::pair<Edge, Cap>> edges) {
  FlowSolution s;
  for (const auto& [v, c] : emit) s.value += c;
  std::erase_if(edges, [](const auto& e) { return e.second == 0; });
  std::sort(edges.begin(), edges.end());
  s.arc_flow = std::move(edges);
  s.paths = decompose(d, emit, absorb, s.arc_flow);
  return s;
}

/// One unit-throughput flow g inside the support of f such that f - g has
/// throughput at most r - 1 everywhere; every source of f emits exactly one
/// unit of g when it emitted r units of f.
inline std::optional<std::pair<FlowSolution, FlowSolution>> peel_one(
    int d, const FlowSolution& f, int r) {
  const FlowProfile pr = profile(f.paths);
  std::map<Vertex, int> in_node, out_node;
  int nodes = 2;
  for (const auto& [v, t] : pr.through) {
    in_node[v] = nodes++;
    out_node[v] = nodes++;
  }
  std::vector<BoundedArc> arcs;
  std::vector<std::pair<Vertex, std::size_t>> emit_arcs, absorb_arcs;
  std::vector<std::pair<Edge, std::size_t>> edge_arcs;
  for (const auto& [v, t] : pr.through) {
    arcs.push_back({in_node[v], out_node[v], std::max<Cap>(0, t - (r - 1)),
                    std::min<Cap>(1, t)});
  }
  for (const auto& [s, c] : pr.emit) {
    emit_arcs.emplace_back(s, arcs.size());
    arcs.push_back({0, in_node[s], 0, c});
  }
  for (const auto& [t, c] : pr.absorb) {
    absorb_arcs.emplace_back(t, arcs.size());
    arcs.push_back({out_node[t], 1, 0, c});
  }
  for (const auto& [e, c] : pr.edge) {
    edge_arcs.emplace_back(e, arcs.size());
    arcs.push_back({out_node[e.lo], in_node[e.hi], 0, c});
  }
  const auto g = feasible_bounded_flow(nodes, arcs, 0, 1);
  if (!g) return std::nullopt;

  std::vector<std::pair<Vertex, Cap>> emit_g, emit_h, absorb_g, absorb_h;
  std::vector<std::pair<Edge, Cap>> edge_g, edge_h;
  for (const auto& [s, k] : emit_arcs) {
    emit_g.emplace_back(s, (*g)[k]);
    emit_h.emplace_back(s, arcs[k].upper - (*g)[k]);
  }
  for (const auto& [t, k] : absorb_arcs) {
    absorb_g.emplace_back(t, (*g)[k]);
    absorb_h.emplace_back(t, arcs[k].upper - (*g)[k]);
  }
  for (const auto& [e, k] : edge_arcs) {
    edge_g.emplace_back(e, (*g)[k]);
    edge_h.emplace_back(e, arcs[k].upper - (*g)[k]);
  }
  return std::make_pair(solution_from_edges(d, emit_g, absorb_g, std::move(edge_g)),
                        solution_from_edges(d, emit_h, absorb_h, std::move(edge_h)));
}

inline void require_peelable(const FlowSolution& f, int r) {
  const FlowProfile pr = profile(f.paths);
  for (const auto& [e, c] : pr.edge) {
    if (c > 1) throw std::invalid_argument("split needs edge flows in {0,1}");
  }
  for (const auto& [v, t] : pr.through) {
    if (t > r) {
      throw std::invalid_argument("split needs vertex throughput <= " + std::to_string(r));
    }
  }
  for (const auto& [s, c] : pr.emit) {
    if (c != r) {
      throw std::invalid_argument("split needs every source to emit exactly " +
                                  std::to_string(r) + " units");
    }
  }
  if (f.value % r != 0) throw std::invalid_argument("flow value not divisible");
}

}  // namespace detail

/// Splits an integral flow with edge flows in {0,1}, vertex throughput at most
/// r and r units leaving every source into r flows of unit vertex throughput.
/// Throws SplitFailure (carrying the flow) if a peeling step is infeasible.
inline std::vector<FlowSolution> split_flow_collections(int d, const FlowSolution& f,
                                                        int r,
                                                        const std::string& instance = "") {
  if (r < 1) throw std::invalid_argument("need at least one collection");
  detail::require_peelable(f, r);
  std::vector<FlowSolution> out;
  FlowSolution rest = f;
  for (int left = r; left > 1; --left) {
    auto step = detail::peel_one(d, rest, left);
    if (!step) throw SplitFailure(instance, f, r);
    out.push_back(std::move(step->first));
    rest = std::move(step->second);
  }
  out.push_back(std::move(rest));
  return out;
}

inline std::pair<FlowSolution, FlowSolution> split_flow_two_collections(
    int d, const FlowSolution& f, const std::string& instance = "") {
  auto parts = split_flow_collections(d, f, 2, instance);
  return {std::move(parts[0]), std::move(parts[1])};
}

/// Two LR solutions whose union is edge-disjoint; needs j - i >= 2.
inline DoubleLRSolution double_lr_solution(const MatchedPair& p) {
  require_matched_pair(p);
  const LevelPair lv = levels_of(p);
  if (lv.distance() < 2) {
    throw std::invalid_argument("distance ≥ 2 required between the layers of S and T, got " +
                                std::to_string(lv.distance()));
  }
  const FlowSolution f = max_flow(cover_problem(p, 2, 1));
  const Cap target = 2 * static_cast<Cap>(p.size());
  if (f.value < target) {
    throw TheoremViolation("flow with vcap=2, ecap=1 is " + std::to_string(f.value) +
                           " < 2|S| = " + std::to_string(target) + " for " +
                           describe(p));
  }
  auto [a, b] = split_flow_two_collections(p.d, f, describe(p));
  return {{std::move(a.paths)}, {std::move(b.paths)}};
}

/// |S| paths, each from S to T along hypercube edges, pairwise vertex-disjoint.
inline Validation check_lr_solution(const MatchedPair& p, const LRSolution& sol) {
  if (sol.paths.size() != p.size()) {
    return Validation::fail("expected " + std::to_string(p.size()) + " paths, got " +
                            std::to_string(sol.paths.size()));
  }
  std::set<Vertex> used;
  for (const Path& path : sol.paths) {
    if (path.empty()) return Validation::fail("empty path");
    if (!std::binary_search(p.S.begin(), p.S.end(), path.front())) {
      return Validation::fail("path " + render_path(p.d, path) + " does not start in S");
    }
    if (!std::binary_search(p.T.begin(), p.T.end(), path.back())) {
      return Validation::fail("path " + render_path(p.d, path) + " does not end in T");
    }
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i + 1 < path.size() &&
          (!strictly_precedes(path[i], path[i + 1]) ||
           layer_of(path[i + 1]) != layer_of(path[i]) + 1)) {
        return Validation::fail("path " + render_path(p.d, path) + " is not monotone");
      }
      if (!used.insert(path[i]).second) {
        return Validation::fail("vertex " + to_bitstring(p.d, path[i]) + " used twice");
      }
    }
  }
  return {};
}

/// Each collection is an LR solution and no edge appears in two paths overall.
inline Validation check_path_collections(const MatchedPair& p,
                                         const std::vector<LRSolution>& cols) {
  std::set<Edge> edges;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (auto v = check_lr_solution(p, cols[c]); !v) {
      return Validation::fail("collection " + std::to_string(c + 1) + ": " + v.violation);
    }
    for (const Path& path : cols[c].paths) {
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (!edges.insert(edge_between(path[i], path[i + 1])).second) {
          return Validation::fail("edge " + to_bitstring(p.d, path[i]) + "->" +
                                  to_bitstring(p.d, path[i + 1]) + " used twice");
        }
      }
    }
  }
  return {};
}

inline Validation check_double_lr_solution(const MatchedPair& p, const DoubleLRSolution& s) {
  return check_path_collections(p, {s.first, s.second});
}

// ---------------------------------------------------------------------------
// Gateway diagnostics.

struct GatewayContext {
  FlowProblem problem;
  CoverGraph cover;
  std::vector<Path> paths;
  CutCertificate cut;
  CutPartition partition;
  bool vertex_only = false;  // unit vertex capacities, no edge capacities

  std::map<Vertex, int> path_count;
  std::set<Edge> path_edges;
  std::map<Vertex, VertexList> successors;  // along paths

  bool on_s_side(Vertex v) const {
    return std::binary_search(partition.s_side.begin(), partition.s_side.end(), v);
  }
  int paths_through(Vertex v) const {
    auto it = path_count.find(v);
    return it == path_count.end() ? 0 : it->second;
  }
  bool in_f(const Edge& e) const {
    return std::find(cut.F.begin(), cut.F.end(), e) != cut.F.end();
  }
};

inline GatewayContext make_gateway_context(FlowProblem problem, CoverGraph cover,
                                           std::vector<Path> paths, CutCertificate cut) {
  GatewayContext ctx;
  // Diagnostics also accept hand-built cuts that do not separate S from T.
  ctx.partition = is_valid_cut(problem, cut) ? partition_by_cut(problem, cut)
                                             : detail::partition_unchecked(problem, cut, false);
  ctx.vertex_only = problem.vcap.is_uniform() && problem.vcap.uniform == 1 &&
                    problem.ecap.is_uniform() && is_infinite(problem.ecap.uniform);
  for (const Path& path : paths) {
    for (std::size_t i = 0; i < path.size(); ++i) {
      ++ctx.path_count[path[i]];
      if (i + 1 < path.size()) {
        ctx.path_edges.insert(edge_between(path[i], path[i + 1]));
        auto& succ = ctx.successors[path[i]];
        if (std::find(succ.begin(), succ.end(), path[i + 1]) == succ.end()) {
          succ.push_back(path[i + 1]);
        }
      }
    }
  }
  ctx.problem = std::move(problem);
  ctx.cover = std::move(cover);
  ctx.paths = std::move(paths);
  ctx.cut = std::move(cut);
  return ctx;
}

/// Context built from the solver's own optimal flow and min cut on the cover
/// graph of p.
inline GatewayContext gateway_context(const MatchedPair& p, Cap vcap, Cap ecap) {
  FlowProblem prob = cover_problem(p, vcap, ecap);
  FlowResult r = solve(prob);
  CoverGraph g = cover_graph(p.d, p.S, p.T);
  return make_gateway_context(std::move(prob), std::move(g), std::move(r.flow.paths),
                              std::move(r.cut));
}

/// Layer-k gateways: source-side vertices that are underloaded by the paths
/// and still have an uncut edge leaving them in the cover graph.
inline VertexList gateways(const GatewayContext& ctx, int k) {
  const int d = ctx.problem.d;
  const int lo = ctx.cover.src_layer >= 0 ? ctx.cover.src_layer : 0;
  const int hi = ctx.cover.dst_layer >= 0 ? ctx.cover.dst_layer - 1 : d;
  if (k < lo || k > hi) {
    throw std::out_of_range("gateway layer " + std::to_string(k) + " outside [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  VertexList out;
  for (Vertex v : ctx.cover.vertices) {
    if (layer_of(v) != k || !ctx.on_s_side(v)) continue;
    if (ctx.paths_through(v) > (ctx.vertex_only ? 0 : 1)) continue;
    bool exit = false;
    for (int c = 1; c <= d && !exit; ++c) {
      if (bit(v, c)) continue;
      const Edge e{v, Vertex{v.bits | (1u << (c - 1))}, c};
      if (!ctx.cover.contains(e)) continue;
      exit = ctx.vertex_only || !ctx.in_f(e);
    }
    if (exit) out.push_back(v);
  }
  return out;
}

/// Pink edges: path edges that do not flip coordinate r. Returns how many
/// distinct pink edges of `within` touch W.
inline std::int64_t pink_count(const GatewayContext& ctx, int r, const VertexList& W,
                               const CoverGraph& within) {
  check_coordinate(ctx.problem.d, r);
  const VertexMask wm(ctx.problem.d, W);
  std::int64_t n = 0;
  for (const Edge& e : ctx.path_edges) {
    if (e.dim == r || !within.contains(e)) continue;
    if (wm.contains(e.lo) || wm.contains(e.hi)) ++n;
  }
  return n;
}

inline std::int64_t pink_count(const GatewayContext& ctx, int r, const VertexList& W) {
  return pink_count(ctx, r, W, ctx.cover);
}

struct StepSets {
  VertexList A, X, B, Y;
};

/// The projection-step sets around a layer-k vertex v_star with v_star_r = 0:
/// A = source-side layer-k vertices with a_r = 0 whose r-flip lies in the
/// cover graph, X = flip(A), B = path successors of X, Y = flip(B).
inline StepSets gateway_step_sets(const GatewayContext& ctx, Vertex v_star, int r) {
  const int d = ctx.problem.d;
  check_coordinate(d, r);
  check_vertex(d, v_star);
  if (bit(v_star, r)) {
    throw std::invalid_argument("v_star must have coordinate " + std::to_string(r) + " = 0");
  }
  const int k = layer_of(v_star);
  StepSets s;
  for (Vertex a : ctx.partition.s_side) {
    if (layer_of(a) != k || bit(a, r)) continue;
    if (ctx.cover.contains(project(d, a, r))) s.A.push_back(a);
  }
  for (Vertex a : s.A) s.X.push_back(project(d, a, r));
  for (Vertex x : s.X) {
    auto it = ctx.successors.find(x);
    if (it == ctx.successors.end()) continue;
    for (Vertex b : it->second) s.B.push_back(b);
  }
  s.X = sorted_unique(std::move(s.X));
  s.B = sorted_unique(std::move(s.B));
  for (Vertex b : s.B) s.Y.push_back(project(d, b, r));
  s.Y = sorted_unique(std::move(s.Y));
  return s;
}

/// Projection coordinate for a gateway: the dimension of its path edge when
/// it lies on exactly one path, otherwise its lowest cover-graph out-edge.
inline std::optional<int> projection_coordinate(const GatewayContext& ctx, Vertex v) {
  if (ctx.paths_through(v) == 1) {
    auto it = ctx.successors.find(v);
    if (it != ctx.successors.end() && !it->second.empty()) {
      return edge_between(v, it->second.front()).dim;
    }
  }
  for (int c = 1; c <= ctx.problem.d; ++c) {
    if (!bit(v, c) && ctx.cover.contains(Vertex{v.bits | (1u << (c - 1))})) return c;
  }
  return std::nullopt;
}

}  // namespace hcf
