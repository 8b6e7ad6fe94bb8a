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

// Flow lower bounds for subsets of the cube, and per-instance testers for the
// r-collection routing and r^2-vertex-capacity routing conjectures.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcflow/flow_core.hpp"
#include "hcflow/hypercube.hpp"
#include "hcflow/lr_routing.hpp"
#include "hcflow/matched_pairs.hpp"
#include "hcflow/monotonicity.hpp"
#include "hcflow/rational.hpp"

namespace hcf {

enum class Theorem { kFlowPoincare, kCsPoincare, kCsLr, kEdgeDisjoint };

inline const char* theorem_name(Theorem t) {
  switch (t) {
    case Theorem::kFlowPoincare: return "flow-poincare";
    case Theorem::kCsPoincare: return "cs-poincare";
    case Theorem::kCsLr: return "cs-lr";
    case Theorem::kEdgeDisjoint: return "edge-disjoint";
  }
  return "?";
}

/// Outcome of one proven flow lower bound on one instance. `bound` is the
/// guaranteed lower bound on `flow`; `empirical` is flow / bound when bound > 0.
struct TheoremCheck {
  Theorem theorem = Theorem::kFlowPoincare;
  Cap flow = 0;
  std::int64_t dirvol = 0;
  Rational r{0};
  Rational bound{0};
  Rational empirical{0};
  bool pass = true;
  bool vacuous = false;
};

namespace detail {

inline VertexList require_proper_subset(int d, const VertexList& S) {
  check_dimension(d);
  VertexList s = sorted_unique(S);
  for (Vertex v : s) check_vertex(d, v);
  if (s.empty() || s.size() == cube_size(d)) {
    throw std::invalid_argument("S must be a proper nonempty subset of the cube");
  }
  return s;
}

inline Cap subset_flow(int d, const VertexList& S, Cap vcap, Cap ecap) {
  const VertexList T = VertexMask(d, S).complement().to_list();
  return max_flow(FlowProblem::on_cube(d, S, T, VertexCaps::constant(vcap),
                                       EdgeCaps::constant(ecap)))
      .value;
}

inline void finish(TheoremCheck& c) {
  c.pass = Rational(c.flow) >= c.bound;
  c.empirical = c.bound > 0 ? Rational(c.flow) / c.bound : Rational(0);
}

}  // namespace detail

/// Unit edge capacities, unbounded vertices, sinks the complement of S:
/// flow >= dirvol(S).
inline TheoremCheck check_thm_flowpoin(int d, const VertexList& S) {
  const VertexList s = detail::require_proper_subset(d, S);
  TheoremCheck c{Theorem::kFlowPoincare};
  c.dirvol = directed_volume(d, s).value;
  c.flow = detail::subset_flow(d, s, kInfinite, 1);
  c.bound = Rational(c.dirvol);
  detail::finish(c);
  c.vacuous = c.dirvol == 0;
  return c;
}

/// Unit edge capacities: flow >= r * dirvol(S), r the separation distance of S.
inline TheoremCheck check_thm_cspoin(int d, const VertexList& S) {
  const VertexList s = detail::require_proper_subset(d, S);
  TheoremCheck c{Theorem::kCsPoincare};
  c.dirvol = directed_volume(d, s).value;
  c.flow = detail::subset_flow(d, s, kInfinite, 1);
  if (c.dirvol == 0) {
    c.vacuous = true;
    return c;
  }
  c.r = separation_distance_of_set(d, s).r;
  c.bound = c.r * c.dirvol;
  detail::finish(c);
  return c;
}

/// Unit vertex capacities: flow >= dirvol(S) / (32 r). `empirical` holds
/// flow * r / dirvol(S) rather than the ratio to the weak bound.
inline TheoremCheck check_thm_cslr(int d, const VertexList& S) {
  const VertexList s = detail::require_proper_subset(d, S);
  TheoremCheck c{Theorem::kCsLr};
  c.dirvol = directed_volume(d, s).value;
  c.flow = detail::subset_flow(d, s, 1, kInfinite);
  if (c.dirvol == 0) {
    c.vacuous = true;
    return c;
  }
  c.r = separation_distance_of_set(d, s).r;
  c.bound = Rational(c.dirvol) / (c.r * 32);
  c.pass = Rational(c.flow) >= c.bound;
  c.empirical = Rational(c.flow) * c.r / c.dirvol;
  return c;
}

/// Matched pair with disjoint S and T: |S| edge-disjoint monotone S -> T paths.
inline TheoremCheck check_thm_sachdeva(const MatchedPair& p) {
  require_matched_pair(p);
  for (Vertex s : p.S) {
    if (std::binary_search(p.T.begin(), p.T.end(), s)) {
      throw std::invalid_argument("S and T must be disjoint; both contain " +
                                  to_bitstring(p.d, s));
    }
  }
  TheoremCheck c{Theorem::kEdgeDisjoint};
  c.dirvol = static_cast<std::int64_t>(p.size());
  c.flow = max_flow(FlowProblem::on_cube(p.d, p.S, p.T, VertexCaps::constant(kInfinite),
                                         EdgeCaps::constant(1)))
               .value;
  c.bound = Rational(c.dirvol);
  detail::finish(c);
  return c;
}

// ---------------------------------------------------------------------------
// r collections of vertex-disjoint paths with edge-disjoint union.

struct SplitPolicy {
  int max_r = 3;
  std::size_t max_cover = 200;
};

struct GlrRecord {
  MatchedPair pair;
  int r = 0;
  std::size_t cover_size = 0;
  Cap flow = 0;
  Cap target = 0;  // r |S|
  Rational ratio{0};
  bool necessary_ok = false;
  bool split_attempted = false;
  bool split_ok = false;
  std::vector<LRSolution> collections;
  std::string finding;

  /// r = 1 and r = 2 are settled; a failure there is a bug, not evidence.
  bool theorem_violation() const {
    return r <= 2 && (!necessary_ok || (split_attempted && !split_ok));
  }
};

inline GlrRecord test_conj_glr(const MatchedPair& p, const SplitPolicy& policy = {}) {
  require_matched_pair(p);
  const LevelPair lv = levels_of(p);
  GlrRecord rec;
  rec.pair = p;
  rec.r = lv.distance();
  const CoverGraph g = cover_graph(p.d, p.S, p.T);
  rec.cover_size = g.vertices.size();
  const FlowSolution f = max_flow(FlowProblem::on_cover(
      g, p.S, p.T, VertexCaps::constant(rec.r), EdgeCaps::constant(1)));
  rec.flow = f.value;
  rec.target = static_cast<Cap>(rec.r) * static_cast<Cap>(p.size());
  rec.ratio = Rational(rec.flow, rec.target);
  rec.necessary_ok = rec.flow >= rec.target;
  if (!rec.necessary_ok) {
    rec.finding = "flow " + std::to_string(rec.flow) + " < r|S| = " +
                  std::to_string(rec.target) + " for " + describe(p);
    return rec;
  }
  if (rec.r > policy.max_r || rec.cover_size > policy.max_cover) return rec;
  rec.split_attempted = true;
  try {
    for (auto& part : split_flow_collections(p.d, f, rec.r, describe(p))) {
      rec.collections.push_back({std::move(part.paths)});
    }
    if (auto v = check_path_collections(p, rec.collections); !v) {
      rec.finding = "collections rejected: " + v.violation;
    } else {
      rec.split_ok = true;
    }
  } catch (const SplitFailure& e) {
    rec.finding = e.what();
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Unit edge capacities with vertex capacities r^2.

struct RoutRecord {
  int d = 0;
  VertexList S;
  VertexList T;            // sinks
  Rational r{0};
  std::int64_t dirvol = 0;
  std::int64_t gap_sum = 0;  // r * dirvol
  Cap vcap = 0;              // ceil(r^2)
  Cap flow = 0;
  Rational ratio{0};         // flow / (r dirvol)
  bool fractional = false;
  Cap vcap_floor = 0;        // floor(r)^2, run separately when r is fractional
  Cap flow_floor = 0;
  Rational ratio_floor{0};   // flow_floor / (r dirvol)
  Rational ratio_floor_r{0};  // flow / (floor(r) dirvol)
};

namespace detail {

inline Cap rout_flow(int d, const VertexList& S, const VertexList& T, Cap vcap) {
  return max_flow(FlowProblem::on_cube(d, S, T, VertexCaps::constant(vcap),
                                       EdgeCaps::constant(1)))
      .value;
}

inline RoutRecord rout_record(int d, VertexList S, VertexList T, Rational r,
                              std::int64_t dirvol) {
  RoutRecord rec;
  rec.d = d;
  rec.S = std::move(S);
  rec.T = std::move(T);
  rec.r = r;
  rec.dirvol = dirvol;
  const Rational gap = r * dirvol;
  if (!is_integral(gap)) throw std::logic_error("r * dirvol is not an integer");
  rec.gap_sum = gap.numerator();
  rec.vcap = ceil(r * r);
  rec.flow = rout_flow(d, rec.S, rec.T, rec.vcap);
  rec.ratio = Rational(rec.flow, rec.gap_sum);
  rec.fractional = !is_integral(r);
  const std::int64_t fr = floor(r);
  rec.vcap_floor = fr * fr;
  rec.flow_floor = rec.fractional ? rout_flow(d, rec.S, rec.T, rec.vcap_floor) : rec.flow;
  rec.ratio_floor = Rational(rec.flow_floor, rec.gap_sum);
  rec.ratio_floor_r = Rational(rec.flow, fr * dirvol);
  return rec;
}

}  // namespace detail

/// Sinks are the complement of S; r is the separation distance of S.
inline RoutRecord test_conj_rout(int d, const VertexList& S) {
  const VertexList s = detail::require_proper_subset(d, S);
  const std::int64_t dv = directed_volume(d, s).value;
  if (dv == 0) throw NoCertificate();
  const Rational r = separation_distance_of_set(d, s).r;
  return detail::rout_record(d, s, VertexMask(d, s).complement().to_list(), r, dv);
}

/// The same measurement with the certificate fixed to a given matched pair:
/// sinks are T, r its separation distance, and |S| stands in for dirvol.
inline RoutRecord test_conj_rout_pair(const MatchedPair& p) {
  require_matched_pair(p);
  return detail::rout_record(p.d, p.S, p.T, separation_distance(p),
                             static_cast<std::int64_t>(p.size()));
}

// ---------------------------------------------------------------------------
// Cuts built from edge colorings.

struct ColoringCut {
  FlowProblem problem;  // sources f^{-1}(1), sinks f^{-1}(0), vcap r^2, ecap 1
  CutCertificate cut;
  bool valid = false;
  std::string finding;
  std::vector<int> loads;
  std::int64_t light_load = 0;   // sum of d(x) over 0 < d(x) <= r^2
  std::int64_t heavy_count = 0;  // #{x : d(x) > r^2}
  double sqrt_sum = 0;           // sum of sqrt(d(x))
  double objective = 0;          // sqrt_sum / 2^d
  bool light_case_holds = true;  // d(x) <= r sqrt(d(x)) at every light x
  bool heavy_case_holds = true;  // r^2 <= r sqrt(d(x)) at every heavy x
  bool within_bound = true;      // value <= r * sqrt_sum
};

inline ColoringCut coloring_to_cut(const BooleanFunction& f, const EdgeColoring& chi, int r) {
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  ColoringCut out;
  out.loads = talagrand_loads(f, chi);
  const int d = f.dim();
  const Cap r2 = static_cast<Cap>(r) * r;
  const VertexList ones = f.ones();
  out.problem = FlowProblem::on_cube(d, ones, VertexMask(d, ones).complement().to_list(),
                                     VertexCaps::constant(r2), EdgeCaps::constant(1));

  std::vector<std::uint8_t> in_c(cube_size(d), 0);
  for (std::size_t k = 0; k < chi.edges.size(); ++k) {
    const Edge& e = chi.edges[k];
    const Vertex x = chi.color[k] ? e.lo : e.hi;
    if (out.loads[x.bits] <= r2) {
      out.cut.F.push_back(e);
    } else {
      in_c[x.bits] = 1;
    }
  }
  for (std::uint32_t b = 0; b < in_c.size(); ++b) {
    if (in_c[b]) out.cut.C.push_back(Vertex{b});
  }
  out.cut.value = cut_value(out.problem, out.cut.C, out.cut.F);

  for (int l : out.loads) {
    if (l == 0) continue;
    out.sqrt_sum += std::sqrt(static_cast<double>(l));
    if (l <= r2) {
      out.light_load += l;
      out.light_case_holds = out.light_case_holds && static_cast<Cap>(l) * l <= r2 * l;
    } else {
      ++out.heavy_count;
      out.heavy_case_holds = out.heavy_case_holds && r2 * r2 <= r2 * l;
    }
  }
  out.objective = out.sqrt_sum / static_cast<double>(cube_size(d));
  out.within_bound =
      static_cast<double>(out.cut.value) <= static_cast<double>(r) * out.sqrt_sum + 1e-9;

  try {
    partition_by_cut(out.problem, out.cut);
    out.valid = true;
  } catch (const InvalidCut& e) {
    out.finding = e.what();
  }
  return out;
}

}  // namespace hcf
