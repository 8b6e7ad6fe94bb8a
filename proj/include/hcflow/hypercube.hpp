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

// Directed hypercube primitives.
//
// A vertex of {0,1}^d is stored as an unsigned integer whose bit i-1 holds
// coordinate x_i. Edges point upward: (lo, hi) with hi = lo + e_dim. The text
// form of a vertex is the string x_1 x_2 ... x_d, so for d = 3 the vertex with
// bits 0b001 renders as "100".

#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hcf {

inline constexpr int kMaxDim = 20;

struct Vertex {
  std::uint32_t bits = 0;

  friend constexpr auto operator<=>(Vertex, Vertex) = default;
};

using VertexList = std::vector<Vertex>;

struct Edge {
  Vertex lo;
  Vertex hi;
  int dim = 0;  // 1-based coordinate flipped 0 -> 1

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

inline void check_dimension(int d) {
  if (d < 1 || d > kMaxDim) {
    throw std::out_of_range("dimension " + std::to_string(d) +
                            " outside [1, " + std::to_string(kMaxDim) + "]");
  }
}

constexpr std::size_t cube_size(int d) { return std::size_t{1} << d; }

constexpr int layer_of(Vertex v) { return std::popcount(v.bits); }

constexpr bool bit(Vertex v, int coord) {
  return ((v.bits >> (coord - 1)) & 1u) != 0;
}

inline void check_vertex(int d, Vertex v) {
  if (v.bits >= cube_size(d)) {
    throw std::invalid_argument("vertex " + std::to_string(v.bits) +
                                " does not belong to the " +
                                std::to_string(d) + "-cube");
  }
}

inline void check_coordinate(int d, int coord) {
  if (coord < 1 || coord > d) {
    throw std::out_of_range("coordinate " + std::to_string(coord) +
                            " outside [1, " + std::to_string(d) + "]");
  }
}

/// x ⪯ y coordinatewise, i.e. x is a subset of y.
constexpr bool precedes(Vertex x, Vertex y) { return (x.bits & y.bits) == x.bits; }
constexpr bool strictly_precedes(Vertex x, Vertex y) {
  return x != y && precedes(x, y);
}

/// Checked variants reject vertices outside the d-cube.
inline bool precedes(int d, Vertex x, Vertex y) {
  check_vertex(d, x);
  check_vertex(d, y);
  return precedes(x, y);
}
inline bool strictly_precedes(int d, Vertex x, Vertex y) {
  check_vertex(d, x);
  check_vertex(d, y);
  return strictly_precedes(x, y);
}

/// Flips coordinate `coord` (1-based).
inline Vertex project(int d, Vertex x, int coord) {
  check_coordinate(d, coord);
  check_vertex(d, x);
  return Vertex{x.bits ^ (1u << (coord - 1))};
}

/// The edge joining two vertices that differ in exactly one coordinate,
/// oriented upward. Throws if they are not adjacent.
inline Edge edge_between(Vertex a, Vertex b) {
  const std::uint32_t diff = a.bits ^ b.bits;
  if (std::popcount(diff) != 1) {
    throw std::invalid_argument("vertices are not hypercube neighbours");
  }
  const int dim = std::countr_zero(diff) + 1;
  return (a.bits & diff) != 0 ? Edge{b, a, dim} : Edge{a, b, dim};
}

/// All vertices of Hamming weight i, in increasing encoding order.
inline VertexList layer(int d, int i) {
  check_dimension(d);
  if (i < 0 || i > d) {
    throw std::out_of_range("layer " + std::to_string(i) + " outside [0, " +
                            std::to_string(d) + "]");
  }
  VertexList out;
  for (std::uint32_t b = 0; b < cube_size(d); ++b) {
    if (std::popcount(b) == i) out.push_back(Vertex{b});
  }
  return out;
}

inline std::string to_bitstring(int d, Vertex v) {
  std::string s(static_cast<std::size_t>(d), '0');
  for (int i = 0; i < d; ++i) {
    if ((v.bits >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

inline Vertex parse_bitstring(int d, std::string_view s) {
  if (static_cast<int>(s.size()) != d) {
    throw std::invalid_argument("bitstring '" + std::string(s) +
                                "' does not have length " + std::to_string(d));
  }
  std::uint32_t bits = 0;
  for (int i = 0; i < d; ++i) {
    const char c = s[static_cast<std::size_t>(i)];
    if (c == '1') {
      bits |= 1u << i;
    } else if (c != '0') {
      throw std::invalid_argument("bitstring '" + std::string(s) +
                                  "' contains a non-binary character");
    }
  }
  return Vertex{bits};
}

inline VertexList sorted_unique(VertexList v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Dense membership bitmap over {0,1}^d.
class VertexMask {
 public:
  VertexMask() = default;
  explicit VertexMask(int d, bool full = false)
      : d_(d), bits_(cube_size(d), full ? 1 : 0), count_(full ? cube_size(d) : 0) {}
  VertexMask(int d, const VertexList& members) : VertexMask(d) {
    for (Vertex v : members) insert(v);
  }

  int dim() const { return d_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(Vertex v) const {
    return v.bits < bits_.size() && bits_[v.bits] != 0;
  }
  void insert(Vertex v) {
    check_vertex(d_, v);
    if (!bits_[v.bits]) {
      bits_[v.bits] = 1;
      ++count_;
    }
  }
  void erase(Vertex v) {
    if (contains(v)) {
      bits_[v.bits] = 0;
      --count_;
    }
  }

  VertexList to_list() const {
    VertexList out;
    out.reserve(count_);
    for (std::uint32_t b = 0; b < bits_.size(); ++b) {
      if (bits_[b]) out.push_back(Vertex{b});
    }
    return out;
  }

  VertexMask complement() const {
    VertexMask out(d_, true);
    for (std::uint32_t b = 0; b < bits_.size(); ++b) {
      if (bits_[b]) out.erase(Vertex{b});
    }
    return out;
  }

  friend bool operator==(const VertexMask&, const VertexMask&) = default;

 private:
  int d_ = 0;
  std::vector<std::uint8_t> bits_;
  std::size_t count_ = 0;
};

/// Visits every upward edge (v, v + e_k) with both endpoints in `mask`,
/// ordered by (lo, dim).
template <typename Fn>
void for_each_edge(const VertexMask& mask, Fn&& fn) {
  const int d = mask.dim();
  for (std::uint32_t b = 0; b < cube_size(d); ++b) {
    const Vertex lo{b};
    if (!mask.contains(lo)) continue;
    for (int k = 1; k <= d; ++k) {
      const std::uint32_t m = 1u << (k - 1);
      if (b & m) continue;
      const Vertex hi{b | m};
      if (mask.contains(hi)) fn(Edge{lo, hi, k});
    }
  }
}

/// Union of all monotone paths from S to T.
struct CoverGraph {
  int d = 0;
  VertexMask mask;
  VertexList vertices;
  std::vector<Edge> edges;
  int src_layer = -1;  // -1 unless S lies in a single layer
  int dst_layer = -1;

  bool contains(Vertex v) const { return mask.contains(v); }
  bool contains(const Edge& e) const {
    return mask.contains(e.lo) && mask.contains(e.hi);
  }
  bool empty() const { return vertices.empty(); }
};

namespace detail {

inline int common_layer(const VertexList& vs) {
  if (vs.empty()) return -1;
  const int l = layer_of(vs.front());
  for (Vertex v : vs) {
    if (layer_of(v) != l) return -1;
  }
  return l;
}

}  // namespace detail

inline CoverGraph cover_graph(int d, const VertexList& sources,
                              const VertexList& sinks) {
  check_dimension(d);
  if (sources.empty() || sinks.empty()) {
    throw std::invalid_argument("cover graph needs nonempty S and T");
  }
  for (Vertex v : sources) check_vertex(d, v);
  for (Vertex v : sinks) check_vertex(d, v);

  const std::size_t n = cube_size(d);
  // above[v]: some s ⪯ v. below[v]: v ⪯ some t. Both by DP along the cube.
  std::vector<std::uint8_t> above(n, 0), below(n, 0);
  for (Vertex s : sources) above[s.bits] = 1;
  for (Vertex t : sinks) below[t.bits] = 1;
  for (std::uint32_t b = 0; b < n; ++b) {
    if (above[b]) continue;
    for (std::uint32_t rest = b; rest; rest &= rest - 1) {
      if (above[b & ~(rest & -rest)]) {
        above[b] = 1;
        break;
      }
    }
  }
  for (std::uint32_t b = static_cast<std::uint32_t>(n); b-- > 0;) {
    if (below[b]) continue;
    const std::uint32_t free = ~b & static_cast<std::uint32_t>(n - 1);
    for (std::uint32_t rest = free; rest; rest &= rest - 1) {
      if (below[b | (rest & -rest)]) {
        below[b] = 1;
        break;
      }
    }
  }

  CoverGraph g;
  g.d = d;
  g.mask = VertexMask(d);
  for (std::uint32_t b = 0; b < n; ++b) {
    if (above[b] && below[b]) g.mask.insert(Vertex{b});
  }
  g.vertices = g.mask.to_list();
  for_each_edge(g.mask, [&](const Edge& e) { g.edges.push_back(e); });
  g.src_layer = detail::common_layer(sources);
  g.dst_layer = detail::common_layer(sinks);
  return g;
}

}  // namespace hcf

template <>
struct std::hash<hcf::Vertex> {
  std::size_t operator()(hcf::Vertex v) const noexcept {
    return std::hash<std::uint32_t>{}(v.bits);
  }
};
