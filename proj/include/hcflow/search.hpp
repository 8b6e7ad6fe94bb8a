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

// Instance generators, a small worker pool, and the sweep drivers that fold
// per-instance results into deterministic reports.

#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hcflow/conjectures.hpp"
#include "hcflow/hypercube.hpp"
#include "hcflow/matched_pairs.hpp"
#include "hcflow/rational.hpp"

namespace hcf {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// hardware_concurrency, capped by HCF_THREADS when set.
inline int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("HCF_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

/// out[k] = fn(items[k]). Exceptions are rethrown in item order.
template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& items, Fn&& fn, int threads) {
  using Out = decltype(fn(items.front()));
  std::vector<std::optional<Out>> slots(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < items.size();) {
      try {
        slots[k].emplace(fn(items[k]));
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(items.size())));
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::vector<Out> out;
  out.reserve(items.size());
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
    out.push_back(std::move(*slots[k]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators.

/// Uniform value in [0, n) for n >= 1.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

/// Size uniform in [1, 2^d - 1], then a uniform subset of that size.
inline VertexList random_subset(int d, std::mt19937_64& rng) {
  const std::uint64_t n = cube_size(d);
  const std::uint64_t k = 1 + draw_below(rng, n - 1);
  std::vector<std::uint32_t> pool(n);
  for (std::uint32_t b = 0; b < n; ++b) pool[b] = b;
  VertexList out;
  for (std::uint64_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + draw_below(rng, n - i)]);
    out.push_back(Vertex{pool[i]});
  }
  return sorted_unique(std::move(out));
}

/// All proper nonempty subsets in order of their indicator masks.
inline std::vector<VertexList> all_proper_subsets(int d) {
  const std::uint64_t n = cube_size(d);
  std::vector<VertexList> out;
  for (std::uint64_t m = 1; m + 1 < (std::uint64_t{1} << n); ++m) {
    VertexList s;
    for (std::uint32_t b = 0; b < n; ++b) {
      if (m >> b & 1) s.push_back(Vertex{b});
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Every level matched pair with |S| <= max_size, over all layers i < j.
inline std::vector<MatchedPair> all_level_pairs(int d, int max_size) {
  std::vector<MatchedPair> out;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      enumerate_level_matched_pairs(d, i, j, max_size,
                                    [&](const MatchedPair& p) { out.push_back(p); });
    }
  }
  return out;
}

/// Layers i < j uniformly, then up to max_size pairs s -> t with s a random
/// i-set and t = s plus j - i random further coordinates.
inline MatchedPair random_level_pair(int d, int max_size, std::mt19937_64& rng) {
  const int i = static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(d)));
  const int j = i + 1 + static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(d - i)));
  const int want = 1 + static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(max_size)));
  auto pick = [&](std::uint32_t base, int count) {
    std::vector<int> free;
    for (int k = 0; k < d; ++k) {
      if (!(base >> k & 1)) free.push_back(k);
    }
    for (int c = 0; c < count; ++c) {
      const auto at = c + static_cast<int>(draw_below(
                              rng, static_cast<std::uint64_t>(free.size() - c)));
      std::swap(free[c], free[at]);
      base |= 1u << free[c];
    }
    return base;
  };
  std::vector<std::pair<Vertex, Vertex>> phi;
  std::vector<std::uint32_t> used_s, used_t;
  for (int attempt = 0; attempt < 4 * want && static_cast<int>(phi.size()) < want; ++attempt) {
    const std::uint32_t s = pick(0, i);
    const std::uint32_t t = pick(s, j - i);
    if (std::find(used_s.begin(), used_s.end(), s) != used_s.end() ||
        std::find(used_t.begin(), used_t.end(), t) != used_t.end()) {
      continue;
    }
    used_s.push_back(s);
    used_t.push_back(t);
    phi.emplace_back(Vertex{s}, Vertex{t});
  }
  return MatchedPair::from_phi(d, std::move(phi));
}

inline std::string render_set(int d, const VertexList& S) {
  std::string s = "{";
  for (std::size_t k = 0; k < S.size(); ++k) {
    if (k) s += ",";
    s += to_bitstring(d, S[k]);
  }
  return s + "}";
}

// ---------------------------------------------------------------------------
// Conjecture search.

struct SearchSpec {
  std::string conjecture = "rout";  // "glr" or "rout"
  bool exhaustive = false;
  int d = 3;
  int max_size = 6;
  std::int64_t budget = 1000;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: worker_count()
  bool keep_records = false;

  /// Thread count does not affect results and is left out.
  friend bool operator==(const SearchSpec& a, const SearchSpec& b) {
    return a.conjecture == b.conjecture && a.exhaustive == b.exhaustive && a.d == b.d &&
           a.max_size == b.max_size && a.budget == b.budget && a.seed == b.seed &&
           a.keep_records == b.keep_records;
  }
};

struct InstanceRecord {
  std::int64_t index = 0;
  Rational ratio{0};
  std::optional<Rational> ratio_floor;  // rout, floor(r)^2 vertex caps
  std::string split;                    // glr: "ok", "failed" or "skipped"

  friend bool operator==(const InstanceRecord&, const InstanceRecord&) = default;
};

struct ConjectureReport {
  SearchSpec spec;
  std::int64_t instances = 0;  // evaluated
  std::int64_t skipped = 0;    // rout subsets with dirvol 0
  std::optional<Rational> min_ratio;
  std::int64_t witness_index = -1;
  std::optional<MatchedPair> witness_pair;  // glr
  VertexList witness_set;                   // rout
  std::optional<Rational> min_ratio_floor;    // rout, floor(r)^2 vertex caps
  std::optional<Rational> min_ratio_floor_r;  // rout, flow / (floor(r) dirvol)
  std::int64_t fractional = 0;                // rout instances with fractional r
  std::int64_t split_attempts = 0;
  std::int64_t split_successes = 0;
  std::int64_t theorem_violations = 0;
  std::vector<std::string> failures;
  std::vector<InstanceRecord> records;

  friend bool operator==(const ConjectureReport&, const ConjectureReport&) = default;
};

inline void validate_search_spec(const SearchSpec& s) {
  if (s.conjecture != "glr" && s.conjecture != "rout") {
    throw ConfigError("unknown conjecture '" + s.conjecture + "' (expected glr or rout)");
  }
  if (s.d < 1 || s.d > kMaxDim) {
    throw ConfigError("d=" + std::to_string(s.d) + " outside [1, " + std::to_string(kMaxDim) +
                      "]");
  }
  if (s.max_size < 1) throw ConfigError("max-size must be at least 1");
  if (s.exhaustive) {
    if (s.conjecture == "rout" && s.d > 3) {
      throw ConfigError("exhaustive rout search supports d <= 3");
    }
    if (s.conjecture == "glr" && (s.d > 4 || s.max_size > 6)) {
      throw ConfigError("exhaustive glr search supports d <= 4 and max-size <= 6");
    }
  } else if (s.budget < 1) {
    throw ConfigError("budget must be at least 1");
  }
}

namespace detail {

inline int threads_for(const SearchSpec& s) { return s.threads > 0 ? s.threads : worker_count(); }

inline void keep_min(std::optional<Rational>& slot, const Rational& q) {
  if (!slot || q < *slot) slot = q;
}

inline ConjectureReport search_rout(const SearchSpec& spec) {
  std::vector<VertexList> items;
  if (spec.exhaustive) {
    items = all_proper_subsets(spec.d);
  } else {
    std::mt19937_64 rng(spec.seed);
    for (std::int64_t k = 0; k < spec.budget; ++k) items.push_back(random_subset(spec.d, rng));
  }
  const int d = spec.d;
  auto results = parallel_map(
      items,
      [d](const VertexList& S) -> std::optional<RoutRecord> {
        if (directed_volume(d, S).value == 0) return std::nullopt;
        return test_conj_rout(d, S);
      },
      threads_for(spec));

  ConjectureReport rep;
  rep.spec = spec;
  for (std::size_t k = 0; k < results.size(); ++k) {
    if (!results[k]) {
      ++rep.skipped;
      continue;
    }
    const RoutRecord& r = *results[k];
    ++rep.instances;
    if (!rep.min_ratio || r.ratio < *rep.min_ratio) {
      rep.min_ratio = r.ratio;
      rep.witness_index = static_cast<std::int64_t>(k);
      rep.witness_set = r.S;
    }
    keep_min(rep.min_ratio_floor, r.ratio_floor);
    keep_min(rep.min_ratio_floor_r, r.ratio_floor_r);
    if (r.fractional) ++rep.fractional;
    if (spec.keep_records) {
      rep.records.push_back({static_cast<std::int64_t>(k), r.ratio,
                             r.fractional ? std::optional<Rational>(r.ratio_floor)
                                          : std::nullopt,
                             ""});
    }
  }
  return rep;
}

inline ConjectureReport search_glr(const SearchSpec& spec) {
  std::vector<MatchedPair> items;
  if (spec.exhaustive) {
    items = all_level_pairs(spec.d, spec.max_size);
  } else {
    std::mt19937_64 rng(spec.seed);
    for (std::int64_t k = 0; k < spec.budget; ++k) {
      items.push_back(random_level_pair(spec.d, spec.max_size, rng));
    }
  }
  auto results = parallel_map(
      items, [](const MatchedPair& p) { return test_conj_glr(p); }, threads_for(spec));

  ConjectureReport rep;
  rep.spec = spec;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const GlrRecord& r = results[k];
    ++rep.instances;
    if (!rep.min_ratio || r.ratio < *rep.min_ratio) {
      rep.min_ratio = r.ratio;
      rep.witness_index = static_cast<std::int64_t>(k);
      rep.witness_pair = r.pair;
    }
    if (r.split_attempted) ++rep.split_attempts;
    if (r.split_ok) ++rep.split_successes;
    if (r.theorem_violation()) ++rep.theorem_violations;
    if (!r.finding.empty()) rep.failures.push_back(r.finding);
    if (spec.keep_records) {
      rep.records.push_back({static_cast<std::int64_t>(k), r.ratio, std::nullopt,
                             r.split_ok ? "ok" : r.split_attempted ? "failed" : "skipped"});
    }
  }
  return rep;
}

}  // namespace detail

inline ConjectureReport run_search(const SearchSpec& spec) {
  validate_search_spec(spec);
  return spec.conjecture == "glr" ? detail::search_glr(spec) : detail::search_rout(spec);
}

/// Recomputes the ratio of the recorded witness.
inline Rational replay_witness(const ConjectureReport& rep) {
  if (rep.spec.conjecture == "glr") {
    if (!rep.witness_pair) throw std::invalid_argument("report has no witness");
    return test_conj_glr(*rep.witness_pair, {0, 0}).ratio;
  }
  if (rep.witness_set.empty()) throw std::invalid_argument("report has no witness");
  return test_conj_rout(rep.spec.d, rep.witness_set).ratio;
}

// ---------------------------------------------------------------------------
// Sweeps of the proven subset bounds.

struct TheoremTally {
  Theorem theorem = Theorem::kFlowPoincare;
  std::int64_t checked = 0;
  std::int64_t vacuous = 0;
  std::int64_t failures = 0;
  std::optional<Rational> min_empirical;
  VertexList witness;  // subset attaining min_empirical
  std::vector<std::string> failure_list;

  friend bool operator==(const TheoremTally&, const TheoremTally&) = default;
};

struct TheoremSweep {
  int d = 0;
  bool exhaustive = false;
  std::int64_t budget = 0;
  std::uint64_t seed = 0;
  std::int64_t instances = 0;
  std::array<TheoremTally, 4> tallies{};

  bool ok() const {
    for (const auto& t : tallies) {
      if (t.failures) return false;
    }
    return true;
  }
  friend bool operator==(const TheoremSweep&, const TheoremSweep&) = default;
};

/// Checks every subset bound on each subset, plus the edge-disjoint bound on
/// the subset's directed volume certificate.
inline std::array<TheoremCheck, 4> check_subset_theorems(int d, const VertexList& S) {
  std::array<TheoremCheck, 4> out{check_thm_flowpoin(d, S), check_thm_cspoin(d, S),
                                  check_thm_cslr(d, S), TheoremCheck{Theorem::kEdgeDisjoint}};
  const DirectedVolume dv = directed_volume(d, S);
  if (dv.value > 0) {
    out[3] = check_thm_sachdeva(dv.certificate);
  } else {
    out[3].vacuous = true;
  }
  return out;
}

inline TheoremSweep run_theorem_sweep(int d, bool exhaustive, std::int64_t budget,
                                      std::uint64_t seed, int threads = 0) {
  if (d < 1 || d > kMaxDim) {
    throw ConfigError("d=" + std::to_string(d) + " outside [1, " + std::to_string(kMaxDim) +
                      "]");
  }
  if (exhaustive && d > 3) throw ConfigError("exhaustive theorem sweep supports d <= 3");
  if (!exhaustive && budget < 1) throw ConfigError("budget must be at least 1");
  std::vector<VertexList> items;
  if (exhaustive) {
    items = all_proper_subsets(d);
  } else {
    std::mt19937_64 rng(seed);
    for (std::int64_t k = 0; k < budget; ++k) items.push_back(random_subset(d, rng));
  }
  auto results = parallel_map(
      items, [d](const VertexList& S) { return check_subset_theorems(d, S); },
      threads > 0 ? threads : worker_count());

  TheoremSweep sw;
  sw.d = d;
  sw.exhaustive = exhaustive;
  sw.budget = exhaustive ? 0 : budget;
  sw.seed = seed;
  sw.instances = static_cast<std::int64_t>(items.size());
  for (std::size_t t = 0; t < 4; ++t) sw.tallies[t].theorem = static_cast<Theorem>(t);
  for (std::size_t k = 0; k < results.size(); ++k) {
    for (std::size_t t = 0; t < 4; ++t) {
      const TheoremCheck& c = results[k][t];
      TheoremTally& tally = sw.tallies[t];
      ++tally.checked;
      if (c.vacuous) {
        ++tally.vacuous;
        continue;
      }
      if (!c.pass) {
        ++tally.failures;
        tally.failure_list.push_back(std::string(theorem_name(c.theorem)) + ": S=" +
                                     render_set(d, items[k]) + " flow=" +
                                     std::to_string(c.flow) + " bound=" + to_string(c.bound));
      }
      if (!tally.min_empirical || c.empirical < *tally.min_empirical) {
        tally.min_empirical = c.empirical;
        tally.witness = items[k];
      }
    }
  }
  return sw;
}

}  // namespace hcf
