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

// Directed isoperimetric quantities of Boolean functions on {0,1}^d:
// violated edges, directed influence, distance to monotonicity, the violated
// edge matching number, and the robust Talagrand objective under a coloring.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hcflow/hypercube.hpp"
#include "hcflow/matched_pairs.hpp"
#include "hcflow/matching.hpp"
#include "hcflow/rational.hpp"

namespace hcf {

class BooleanFunction {
 public:
  BooleanFunction() = default;
  BooleanFunction(int d, std::vector<std::uint8_t> table) : d_(d), table_(std::move(table)) {
    check_dimension(d);
    if (table_.size() != cube_size(d)) {
      throw std::invalid_argument("truth table has length " + std::to_string(table_.size()) +
                                  ", expected 2^" + std::to_string(d) + " = " +
                                  std::to_string(cube_size(d)));
    }
    for (auto& b : table_) b = b ? 1 : 0;
  }

  template <typename Pred>
  static BooleanFunction from_predicate(int d, Pred&& pred) {
    check_dimension(d);
    std::vector<std::uint8_t> t(cube_size(d));
    for (std::uint32_t b = 0; b < t.size(); ++b) t[b] = pred(Vertex{b}) ? 1 : 0;
    return BooleanFunction(d, std::move(t));
  }

  static BooleanFunction indicator(int d, const VertexList& S) {
    const VertexMask m(d, S);
    return from_predicate(d, [&](Vertex v) { return m.contains(v); });
  }

  /// Character at index v is f(v).
  static BooleanFunction from_bitstring(std::string_view s) {
    int d = 0;
    while (d <= kMaxDim && cube_size(d) < s.size()) ++d;
    if (d > kMaxDim || cube_size(d) != s.size() || d < 1) {
      throw std::invalid_argument("truth table length " + std::to_string(s.size()) +
                                  " is not 2^d for any supported d");
    }
    std::vector<std::uint8_t> t(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '0' && s[i] != '1') {
        throw std::invalid_argument("truth table contains a non-binary character");
      }
      t[i] = s[i] == '1';
    }
    return BooleanFunction(d, std::move(t));
  }

  /// "0x"-prefixed hex; each digit spells four consecutive table entries,
  /// most significant bit first ("0x8" is the table "1000").
  static BooleanFunction from_hex(std::string_view s) {
    if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
    std::string bits;
    for (char c : s) {
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else throw std::invalid_argument("bad hex digit in truth table");
      for (int k = 3; k >= 0; --k) bits += ((v >> k) & 1) ? '1' : '0';
    }
    return from_bitstring(bits);
  }

  static BooleanFunction parse(std::string_view s) {
    if (s.starts_with("0x") || s.starts_with("0X")) return from_hex(s);
    return from_bitstring(s);
  }

  int dim() const { return d_; }
  bool operator()(Vertex v) const { return table_[v.bits] != 0; }
  const std::vector<std::uint8_t>& table() const { return table_; }

  std::string to_bitstring() const {
    std::string s;
    for (auto b : table_) s += b ? '1' : '0';
    return s;
  }

  VertexList ones() const {
    VertexList out;
    for (std::uint32_t b = 0; b < table_.size(); ++b) {
      if (table_[b]) out.push_back(Vertex{b});
    }
    return out;
  }

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  int d_ = 0;
  std::vector<std::uint8_t> table_;
};

/// Edges (x, y) with f(x) = 1 and f(y) = 0, sorted.
inline std::vector<Edge> violated_edges(const BooleanFunction& f) {
  std::vector<Edge> out;
  for_each_edge(VertexMask(f.dim(), true), [&](const Edge& e) {
    if (f(e.lo) && !f(e.hi)) out.push_back(e);
  });
  return out;
}

inline bool is_monotone(const BooleanFunction& f) { return violated_edges(f).empty(); }

inline Rational directed_influence(const BooleanFunction& f) {
  const auto n = static_cast<std::int64_t>(violated_edges(f).size());
  return Rational(2 * n, static_cast<std::int64_t>(cube_size(f.dim())));
}

/// Size of a maximum matching of violated pairs x ≺ y, f(x) = 1 > f(y) = 0.
inline std::int64_t violation_matching_size(const BooleanFunction& f) {
  const VertexList ones = f.ones();
  if (ones.empty() || ones.size() == cube_size(f.dim())) return 0;
  const VertexMask zeros = VertexMask(f.dim(), ones).complement();
  return static_cast<std::int64_t>(max_comparability_matching(f.dim(), ones, zeros).size());
}

inline Rational distance_to_monotonicity(const BooleanFunction& f) {
  return Rational(violation_matching_size(f), static_cast<std::int64_t>(cube_size(f.dim())));
}

/// Maximum number of pairwise vertex-disjoint violated edges.
inline std::int64_t gamma_plus_raw(const BooleanFunction& f) {
  const auto edges = violated_edges(f);
  if (edges.empty()) return 0;
  std::vector<int> left(cube_size(f.dim()), -1), right(cube_size(f.dim()), -1);
  int nl = 0, nr = 0;
  for (const Edge& e : edges) {
    if (left[e.lo.bits] < 0) left[e.lo.bits] = nl++;
    if (right[e.hi.bits] < 0) right[e.hi.bits] = nr++;
  }
  Bigraph g(nl, nr);
  for (const Edge& e : edges) g.add_edge(left[e.lo.bits], right[e.hi.bits]);
  return hopcroft_karp(g).size;
}

/// Normalized by 2^d.
inline Rational gamma_plus(const BooleanFunction& f) {
  return Rational(gamma_plus_raw(f), static_cast<std::int64_t>(cube_size(f.dim())));
}

/// A color in {0,1} for each violated edge of the companion function, aligned
/// with violated_edges(f).
struct EdgeColoring {
  std::vector<Edge> edges;
  std::vector<std::uint8_t> color;

  static EdgeColoring uniform(const BooleanFunction& f, int c) {
    EdgeColoring x{violated_edges(f), {}};
    x.color.assign(x.edges.size(), static_cast<std::uint8_t>(c ? 1 : 0));
    return x;
  }
};

/// Loads d(x): violated edges at x whose color equals f(x). A violated edge
/// (x, y) has f(x) = 1 and f(y) = 0, so color 1 charges x and color 0 charges y.
inline std::vector<int> talagrand_loads(const BooleanFunction& f, const EdgeColoring& chi) {
  const auto edges = violated_edges(f);
  if (chi.edges != edges || chi.color.size() != edges.size()) {
    throw std::invalid_argument("coloring domain is not the violated edge set");
  }
  std::vector<int> load(cube_size(f.dim()), 0);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    ++load[chi.color[k] ? edges[k].lo.bits : edges[k].hi.bits];
  }
  return load;
}

namespace detail {

inline double sqrt_sum_from_histogram(const std::vector<std::int64_t>& hist) {
  double s = 0;
  for (std::size_t k = 1; k < hist.size(); ++k) {
    s += static_cast<double>(hist[k]) * std::sqrt(static_cast<double>(k));
  }
  return s;
}

}  // namespace detail

/// Σ_x sqrt(d(x)), unnormalized.
inline double talagrand_sum(const BooleanFunction& f, const EdgeColoring& chi) {
  std::vector<std::int64_t> hist(static_cast<std::size_t>(f.dim()) + 1, 0);
  for (int l : talagrand_loads(f, chi)) ++hist[static_cast<std::size_t>(l)];
  return detail::sqrt_sum_from_histogram(hist);
}

inline double talagrand_objective(const BooleanFunction& f, const EdgeColoring& chi) {
  return talagrand_sum(f, chi) / static_cast<double>(cube_size(f.dim()));
}

enum class TalagrandMode { kExhaustive, kLocalSearch };

inline constexpr std::size_t kExhaustiveColoringCap = 24;

struct TalagrandMin {
  double value = 0;  // normalized by 2^d
  EdgeColoring argmin;
  bool exact = false;
};

inline TalagrandMin min_talagrand(const BooleanFunction& f, TalagrandMode mode,
                                  std::uint64_t seed = 0, int restarts = 16) {
  const auto edges = violated_edges(f);
  const std::size_t m = edges.size();
  const double scale = static_cast<double>(cube_size(f.dim()));
  TalagrandMin best;
  best.argmin = EdgeColoring::uniform(f, 0);
  best.exact = mode == TalagrandMode::kExhaustive;
  if (m == 0) return best;

  std::vector<int> load(cube_size(f.dim()), 0);
  std::vector<std::int64_t> hist(static_cast<std::size_t>(f.dim()) + 1, 0);
  auto charge = [&](std::size_t k, std::uint8_t c) {
    return c ? edges[k].lo.bits : edges[k].hi.bits;
  };
  auto move = [&](std::uint32_t v, int delta) {
    --hist[static_cast<std::size_t>(load[v])];
    load[v] += delta;
    ++hist[static_cast<std::size_t>(load[v])];
  };
  auto reset = [&](const std::vector<std::uint8_t>& col) {
    std::fill(load.begin(), load.end(), 0);
    std::fill(hist.begin(), hist.end(), 0);
    for (std::size_t k = 0; k < m; ++k) ++load[charge(k, col[k])];
    for (int l : load) ++hist[static_cast<std::size_t>(l)];
  };
  auto flip = [&](std::vector<std::uint8_t>& col, std::size_t k) {
    move(charge(k, col[k]), -1);
    col[k] ^= 1;
    move(charge(k, col[k]), +1);
  };

  std::vector<std::uint8_t> col(m, 0);
  if (mode == TalagrandMode::kExhaustive) {
    if (m > kExhaustiveColoringCap) {
      throw std::invalid_argument(std::to_string(m) + " violated edges exceed the exhaustive cap of " +
                                  std::to_string(kExhaustiveColoringCap) +
                                  "; use local-search");
    }
    reset(col);
    double best_sum = detail::sqrt_sum_from_histogram(hist);
    std::vector<std::uint8_t> best_col = col;
    // Gray code walk over all 2^m colorings.
    for (std::uint64_t step = 1; step < (std::uint64_t{1} << m); ++step) {
      flip(col, static_cast<std::size_t>(std::countr_zero(step)));
      const double s = detail::sqrt_sum_from_histogram(hist);
      if (s < best_sum) {
        best_sum = s;
        best_col = col;
      }
    }
    best.value = best_sum / scale;
    best.argmin.color = std::move(best_col);
    return best;
  }

  std::mt19937_64 rng(seed);
  double best_sum = std::numeric_limits<double>::infinity();
  for (int round = 0; round < std::max(1, restarts); ++round) {
    for (auto& c : col) c = static_cast<std::uint8_t>(rng() & 1u);
    reset(col);
    double cur = detail::sqrt_sum_from_histogram(hist);
    for (bool improved = true; improved;) {
      improved = false;
      for (std::size_t k = 0; k < m; ++k) {
        flip(col, k);
        const double s = detail::sqrt_sum_from_histogram(hist);
        if (s < cur - 1e-12) {
          cur = s;
          improved = true;
        } else {
          flip(col, k);
        }
      }
    }
    if (cur < best_sum) {
      best_sum = cur;
      best.argmin.color = col;
    }
  }
  best.value = best_sum / scale;
  return best;
}

/// Exhaustive when the violated edge set is within the cap, else local search.
inline TalagrandMin min_talagrand_auto(const BooleanFunction& f, std::uint64_t seed = 0) {
  return violated_edges(f).size() <= kExhaustiveColoringCap
             ? min_talagrand(f, TalagrandMode::kExhaustive)
             : min_talagrand(f, TalagrandMode::kLocalSearch, seed);
}

}  // namespace hcf
