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

// Matched pairs (S, T; phi), directed volume and separation distance.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hcflow/hypercube.hpp"
#include "hcflow/matching.hpp"
#include "hcflow/rational.hpp"

namespace hcf {

struct MatchedPair {
  int d = 0;
  VertexList S;
  VertexList T;
  std::vector<std::pair<Vertex, Vertex>> phi;

  std::size_t size() const { return S.size(); }

  /// Builds S and T (sorted) from the assignment list.
  static MatchedPair from_phi(int d, std::vector<std::pair<Vertex, Vertex>> phi) {
    MatchedPair p;
    p.d = d;
    std::sort(phi.begin(), phi.end());
    for (const auto& [s, t] : phi) {
      p.S.push_back(s);
      p.T.push_back(t);
    }
    std::sort(p.T.begin(), p.T.end());
    p.phi = std::move(phi);
    return p;
  }

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

struct Validation {
  bool ok = true;
  std::string violation;

  explicit operator bool() const { return ok; }
  static Validation fail(std::string why) { return {false, std::move(why)}; }
};

inline Validation validate_matched_pair(const MatchedPair& p) {
  if (p.d < 1 || p.d > kMaxDim) {
    return Validation::fail("dimension " + std::to_string(p.d) + " out of range");
  }
  const std::size_t n = cube_size(p.d);
  for (const VertexList* side : {&p.S, &p.T}) {
    for (Vertex v : *side) {
      if (v.bits >= n) return Validation::fail("vertex outside the cube");
    }
  }
  auto bs = [&](Vertex v) { return to_bitstring(p.d, v); };
  if (p.S.size() != p.T.size()) {
    return Validation::fail("|S| = " + std::to_string(p.S.size()) +
                            " differs from |T| = " + std::to_string(p.T.size()));
  }
  std::vector<std::uint8_t> in_s(n, 0), in_t(n, 0), hit_s(n, 0), hit_t(n, 0);
  for (Vertex s : p.S) {
    if (in_s[s.bits]++) return Validation::fail("duplicate source " + bs(s));
  }
  for (Vertex t : p.T) {
    if (in_t[t.bits]++) return Validation::fail("duplicate target " + bs(t));
  }
  if (p.phi.size() != p.S.size()) {
    return Validation::fail("phi has " + std::to_string(p.phi.size()) +
                            " entries for " + std::to_string(p.S.size()) +
                            " sources");
  }
  for (const auto& [s, t] : p.phi) {
    if (s.bits >= n || t.bits >= n) return Validation::fail("phi leaves the cube");
    if (!in_s[s.bits]) return Validation::fail(bs(s) + " is not in S");
    if (!in_t[t.bits]) return Validation::fail(bs(t) + " is not in T");
    if (hit_s[s.bits]++) return Validation::fail("phi assigns " + bs(s) + " twice");
    if (hit_t[t.bits]++) {
      return Validation::fail("phi is not injective: " + bs(t) + " hit twice");
    }
    if (!strictly_precedes(s, t)) {
      return Validation::fail(bs(s) + " does not strictly precede " + bs(t));
    }
  }
  return {};
}

namespace detail {

/// Bigraph of strict comparability from `lower` to the vertices of `upper`.
/// Right indices follow upper.to_list() order.
inline Bigraph comparability_bigraph(int d, const VertexList& lower,
                                     const VertexList& upper_list,
                                     const VertexMask& upper) {
  std::vector<int> index(cube_size(d), -1);
  for (std::size_t k = 0; k < upper_list.size(); ++k) {
    index[upper_list[k].bits] = static_cast<int>(k);
  }
  const std::uint32_t all = static_cast<std::uint32_t>(cube_size(d) - 1);
  Bigraph g(static_cast<int>(lower.size()), static_cast<int>(upper_list.size()));
  for (std::size_t u = 0; u < lower.size(); ++u) {
    const std::uint32_t s = lower[u].bits;
    const std::uint32_t free = all & ~s;
    // Nonempty submasks of the free coordinates, smallest superset first.
    std::vector<int> nbrs;
    for (std::uint32_t sub = free; sub; sub = (sub - 1) & free) {
      const Vertex t{s | sub};
      if (upper.contains(t)) nbrs.push_back(index[t.bits]);
    }
    std::sort(nbrs.begin(), nbrs.end());
    for (int v : nbrs) g.add_edge(static_cast<int>(u), v);
  }
  return g;
}

inline MatchedPair pair_from_matching(int d, const VertexList& lower,
                                      const VertexList& upper,
                                      const std::vector<int>& mate_left) {
  std::vector<std::pair<Vertex, Vertex>> phi;
  for (std::size_t u = 0; u < lower.size(); ++u) {
    if (mate_left[u] >= 0) phi.emplace_back(lower[u], upper[mate_left[u]]);
  }
  return MatchedPair::from_phi(d, std::move(phi));
}

}  // namespace detail

/// Maximum matching from `lower` into `upper` under strict comparability.
inline MatchedPair max_comparability_matching(int d, const VertexList& lower,
                                              const VertexMask& upper) {
  const VertexList upper_list = upper.to_list();
  const Bigraph g = detail::comparability_bigraph(d, lower, upper_list, upper);
  const MatchingResult m = hopcroft_karp(g);
  return detail::pair_from_matching(d, lower, upper_list, m.mate_left);
}

struct DirectedVolume {
  std::int64_t value = 0;
  MatchedPair certificate;
};

inline DirectedVolume directed_volume(int d, const VertexList& S) {
  check_dimension(d);
  const VertexList src = sorted_unique(S);
  for (Vertex v : src) check_vertex(d, v);
  DirectedVolume out;
  out.certificate.d = d;
  if (src.empty() || src.size() == cube_size(d)) return out;
  const VertexMask outside = VertexMask(d, src).complement();
  out.certificate = max_comparability_matching(d, src, outside);
  out.value = static_cast<std::int64_t>(out.certificate.size());
  return out;
}

/// Sum of layer gaps |phi(s)| - |s| over the pair.
inline std::int64_t total_gap(const MatchedPair& p) {
  std::int64_t g = 0;
  for (const auto& [s, t] : p.phi) g += layer_of(t) - layer_of(s);
  return g;
}

inline Rational separation_distance(const MatchedPair& p) {
  if (auto v = validate_matched_pair(p); !v) {
    throw std::invalid_argument("not a matched pair: " + v.violation);
  }
  if (p.phi.empty()) throw std::invalid_argument("empty matched pair");
  return Rational(total_gap(p), static_cast<std::int64_t>(p.size()));
}

struct NoCertificate : std::domain_error {
  NoCertificate() : std::domain_error("no certificate: directed volume is 0") {}
};

struct Separation {
  Rational r;
  MatchedPair witness;  // a directed volume certificate attaining r
};

/// Minimum separation distance over all directed volume certificates of S,
/// found as a min-cost maximum matching with cost |t| - |s|.
inline Separation separation_distance_of_set(int d, const VertexList& S) {
  check_dimension(d);
  const VertexList src = sorted_unique(S);
  for (Vertex v : src) check_vertex(d, v);
  if (src.empty() || src.size() == cube_size(d)) throw NoCertificate();
  const VertexMask outside = VertexMask(d, src).complement();
  const VertexList upper = outside.to_list();
  const Bigraph g = detail::comparability_bigraph(d, src, upper, outside);
  std::vector<CostedEdge> edges;
  for (int u = 0; u < g.left; ++u) {
    for (int v : g.adj[u]) {
      edges.push_back({u, v, layer_of(upper[v]) - layer_of(src[u])});
    }
  }
  const auto m = min_cost_max_matching(g.left, g.right, edges);
  if (m.size == 0) throw NoCertificate();
  Separation out;
  out.witness = detail::pair_from_matching(d, src, upper, m.mate_left);
  out.r = Rational(m.cost, m.size);
  return out;
}

namespace detail {

/// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(static_cast<const std::vector<int>&>(idx));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline bool has_perfect_matching(const VertexList& S, const VertexList& T) {
  Bigraph g(static_cast<int>(S.size()), static_cast<int>(T.size()));
  for (std::size_t u = 0; u < S.size(); ++u) {
    for (std::size_t v = 0; v < T.size(); ++v) {
      if (strictly_precedes(S[u], T[v])) g.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
  }
  return hopcroft_karp(g).size == static_cast<int>(S.size());
}

/// Lexicographically smallest perfect matching by (s, t) encoding; S and T
/// sorted. Returns empty if none exists.
inline std::vector<std::pair<Vertex, Vertex>> canonical_phi(const VertexList& S,
                                                            const VertexList& T) {
  std::vector<std::pair<Vertex, Vertex>> phi;
  if (!has_perfect_matching(S, T)) return phi;
  VertexList rest_t = T;
  for (std::size_t k = 0; k < S.size(); ++k) {
    const VertexList rest_s(S.begin() + static_cast<std::ptrdiff_t>(k) + 1, S.end());
    for (std::size_t c = 0; c < rest_t.size(); ++c) {
      if (!strictly_precedes(S[k], rest_t[c])) continue;
      VertexList remaining = rest_t;
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(c));
      if (has_perfect_matching(rest_s, remaining)) {
        phi.emplace_back(S[k], rest_t[c]);
        rest_t = std::move(remaining);
        break;
      }
    }
  }
  return phi;
}

}  // namespace detail

/// Streams every level matched pair S ⊆ L_i, T ⊆ L_j with 1 ≤ |S| ≤ max_size
/// that admits a perfect comparability matching. Order: by size, then S, then
/// T, each in lexicographic combination order of the sorted layers.
template <typename Fn>
void enumerate_level_matched_pairs(int d, int i, int j, int max_size, Fn&& fn) {
  check_dimension(d);
  if (i < 0 || j > d || i >= j) {
    throw std::out_of_range("level pair requires 0 <= i < j <= d");
  }
  const VertexList li = layer(d, i);
  const VertexList lj = layer(d, j);
  const int top = std::min<int>({max_size, static_cast<int>(li.size()),
                                 static_cast<int>(lj.size())});
  for (int k = 1; k <= top; ++k) {
    detail::for_each_combination(static_cast<int>(li.size()), k, [&](const std::vector<int>& a) {
      VertexList S;
      for (int x : a) S.push_back(li[x]);
      detail::for_each_combination(static_cast<int>(lj.size()), k, [&](const std::vector<int>& b) {
        VertexList T;
        for (int x : b) T.push_back(lj[x]);
        auto phi = detail::canonical_phi(S, T);
        if (phi.empty()) return;
        MatchedPair p;
        p.d = d;
        p.S = S;
        p.T = T;
        p.phi = std::move(phi);
        fn(static_cast<const MatchedPair&>(p));
      });
    });
  }
}

inline std::vector<MatchedPair> level_matched_pairs(int d, int i, int j, int max_size) {
  std::vector<MatchedPair> out;
  enumerate_level_matched_pairs(d, i, j, max_size,
                                [&](const MatchedPair& p) { out.push_back(p); });
  return out;
}

}  // namespace hcf
