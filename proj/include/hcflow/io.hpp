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

// JSON and CSV encodings. Vertices are fixed-width bitstrings x_1...x_d.

#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hcflow/conjectures.hpp"
#include "hcflow/flow_core.hpp"
#include "hcflow/hypercube.hpp"
#include "hcflow/lr_routing.hpp"
#include "hcflow/matched_pairs.hpp"
#include "hcflow/rational.hpp"
#include "hcflow/search.hpp"

namespace hcf {

using Json = nlohmann::ordered_json;

struct FormatError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

template <typename T>
T get_as(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("field \"") + key + "\" has the wrong type");
  }
}

inline Vertex vertex_from_json(int d, const Json& j) {
  if (!j.is_string()) throw FormatError("vertex must be a bitstring");
  const auto& s = j.get_ref<const std::string&>();
  if (static_cast<int>(s.size()) != d) {
    throw FormatError("vertex \"" + s + "\" does not have length d=" + std::to_string(d));
  }
  try {
    return parse_bitstring(d, s);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

/// Width of the first bitstring found in a list of paths.
inline int infer_dimension(const Json& paths) {
  for (const auto& path : paths) {
    for (const auto& v : path) {
      if (v.is_string()) return static_cast<int>(v.get_ref<const std::string&>().size());
    }
  }
  return 0;
}

}  // namespace detail

inline Json to_json(int d, const VertexList& S) {
  Json a = Json::array();
  for (Vertex v : S) a.push_back(to_bitstring(d, v));
  return a;
}

inline VertexList vertex_list_from_json(int d, const Json& j) {
  if (!j.is_array()) throw FormatError("vertex set must be an array of bitstrings");
  VertexList out;
  for (const auto& v : j) out.push_back(detail::vertex_from_json(d, v));
  return out;
}

inline Json to_json(const Rational& q) { return {{"num", q.numerator()}, {"den", q.denominator()}}; }

inline Rational rational_from_json(const Json& j) {
  const auto num = detail::get_as<std::int64_t>(j, "num");
  const auto den = detail::get_as<std::int64_t>(j, "den");
  if (den == 0) throw FormatError("zero denominator");
  return Rational(num, den);
}

// ---------------------------------------------------------------------------

inline Json to_json(const MatchedPair& p) {
  Json phi = Json::array();
  for (const auto& [s, t] : p.phi) phi.push_back({to_bitstring(p.d, s), to_bitstring(p.d, t)});
  return {{"d", p.d}, {"S", to_json(p.d, p.S)}, {"T", to_json(p.d, p.T)}, {"phi", phi}};
}

/// Parses the encoding only; validate_matched_pair decides whether the result
/// is a matched pair.
inline MatchedPair matched_pair_from_json(const Json& j) {
  MatchedPair p;
  p.d = detail::get_as<int>(j, "d");
  try {
    check_dimension(p.d);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  p.S = vertex_list_from_json(p.d, detail::field(j, "S"));
  p.T = vertex_list_from_json(p.d, detail::field(j, "T"));
  const Json& phi = detail::field(j, "phi");
  if (!phi.is_array()) throw FormatError("phi must be an array of pairs");
  for (const auto& e : phi) {
    if (!e.is_array() || e.size() != 2) throw FormatError("phi entries must be pairs");
    p.phi.emplace_back(detail::vertex_from_json(p.d, e[0]), detail::vertex_from_json(p.d, e[1]));
  }
  return p;
}

inline Json paths_to_json(int d, const std::vector<Path>& paths) {
  Json a = Json::array();
  for (const Path& path : paths) a.push_back(to_json(d, path));
  return a;
}

inline std::vector<Path> paths_from_json(int d, const Json& j) {
  if (!j.is_array()) throw FormatError("paths must be an array");
  std::vector<Path> out;
  for (const auto& path : j) out.push_back(vertex_list_from_json(d, path));
  return out;
}

inline Json to_json(int d, const CutCertificate& c) {
  Json F = Json::array();
  for (const Edge& e : c.F) F.push_back({to_bitstring(d, e.lo), to_bitstring(d, e.hi)});
  return {{"C", to_json(d, c.C)}, {"F", F}, {"value", c.value}};
}

inline CutCertificate cut_from_json(int d, const Json& j) {
  CutCertificate c;
  c.C = vertex_list_from_json(d, detail::field(j, "C"));
  const Json& F = detail::field(j, "F");
  if (!F.is_array()) throw FormatError("F must be an array of edges");
  for (const auto& e : F) {
    if (!e.is_array() || e.size() != 2) throw FormatError("F entries must be pairs");
    try {
      c.F.push_back(edge_between(detail::vertex_from_json(d, e[0]),
                                 detail::vertex_from_json(d, e[1])));
    } catch (const FormatError&) {
      throw;
    } catch (const std::invalid_argument& ex) {
      throw FormatError(ex.what());
    }
  }
  c.value = detail::get_as<Cap>(j, "value");
  return c;
}

inline Json to_json(int d, const FlowSolution& f) {
  return {{"value", f.value}, {"paths", paths_to_json(d, f.paths)}};
}

/// Edge flows are rebuilt from the paths.
inline FlowSolution flow_from_json(int d, const Json& j) {
  FlowSolution f;
  f.value = detail::get_as<Cap>(j, "value");
  f.paths = paths_from_json(d, detail::field(j, "paths"));
  std::map<Edge, Cap> load;
  for (const Path& path : f.paths) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      try {
        ++load[edge_between(path[i], path[i + 1])];
      } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
      }
    }
  }
  f.arc_flow.assign(load.begin(), load.end());
  return f;
}

inline Json to_json(int d, const LRSolution& s) { return {{"paths", paths_to_json(d, s.paths)}}; }

inline LRSolution lr_solution_from_json(const Json& j, int d = 0) {
  const Json& paths = detail::field(j, "paths");
  return {paths_from_json(d ? d : detail::infer_dimension(paths), paths)};
}

inline Json to_json(int d, const DoubleLRSolution& s) {
  return {{"first", paths_to_json(d, s.first.paths)}, {"second", paths_to_json(d, s.second.paths)}};
}

inline DoubleLRSolution double_lr_solution_from_json(const Json& j, int d = 0) {
  const Json& a = detail::field(j, "first");
  const Json& b = detail::field(j, "second");
  if (!d) d = detail::infer_dimension(a);
  return {{paths_from_json(d, a)}, {paths_from_json(d, b)}};
}

// ---------------------------------------------------------------------------
// Reports.

namespace detail {

inline Json optional_rational(const std::optional<Rational>& q) {
  return q ? to_json(*q) : Json(nullptr);
}

inline std::optional<Rational> optional_rational_from_json(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (v.is_null()) return std::nullopt;
  return rational_from_json(v);
}

}  // namespace detail

inline std::string decimal(const Rational& q, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, to_double(q));
  return buf;
}

inline Json to_json(const ConjectureReport& r) {
  const SearchSpec& s = r.spec;
  Json j;
  j["conjecture"] = s.conjecture;
  j["generator"] = s.exhaustive ? "exhaustive" : "random";
  j["d"] = s.d;
  j["max_size"] = s.max_size;
  j["budget"] = s.budget;
  j["seed"] = s.seed;
  j["instances"] = r.instances;
  j["skipped"] = r.skipped;
  j["min_ratio"] = detail::optional_rational(r.min_ratio);
  j["min_ratio_decimal"] = r.min_ratio ? Json(decimal(*r.min_ratio)) : Json(nullptr);
  j["witness_index"] = r.witness_index;
  if (r.witness_pair) {
    j["witness"] = to_json(*r.witness_pair);
  } else if (!r.witness_set.empty()) {
    j["witness"] = {{"d", s.d}, {"S", to_json(s.d, r.witness_set)}};
  } else {
    j["witness"] = nullptr;
  }
  if (s.conjecture == "rout") {
    j["min_ratio_floor_caps"] = detail::optional_rational(r.min_ratio_floor);
    j["min_ratio_floor_r"] = detail::optional_rational(r.min_ratio_floor_r);
    j["fractional"] = r.fractional;
  } else {
    j["split_attempts"] = r.split_attempts;
    j["split_successes"] = r.split_successes;
  }
  j["theorem_violations"] = r.theorem_violations;
  j["failures"] = r.failures;
  if (s.keep_records) {
    Json recs = Json::array();
    for (const auto& x : r.records) {
      Json e{{"index", x.index}, {"ratio", to_json(x.ratio)}};
      if (x.ratio_floor) e["ratio_floor_caps"] = to_json(*x.ratio_floor);
      if (!x.split.empty()) e["split"] = x.split;
      recs.push_back(std::move(e));
    }
    j["records"] = std::move(recs);
  }
  return j;
}

inline ConjectureReport report_from_json(const Json& j) {
  using detail::get_as;
  ConjectureReport r;
  SearchSpec& s = r.spec;
  s.conjecture = get_as<std::string>(j, "conjecture");
  if (s.conjecture != "glr" && s.conjecture != "rout") throw FormatError("unknown conjecture");
  const auto gen = get_as<std::string>(j, "generator");
  if (gen != "exhaustive" && gen != "random") throw FormatError("unknown generator");
  s.exhaustive = gen == "exhaustive";
  s.d = get_as<int>(j, "d");
  try {
    check_dimension(s.d);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  s.max_size = get_as<int>(j, "max_size");
  s.budget = get_as<std::int64_t>(j, "budget");
  s.seed = get_as<std::uint64_t>(j, "seed");
  r.instances = get_as<std::int64_t>(j, "instances");
  r.skipped = get_as<std::int64_t>(j, "skipped");
  r.min_ratio = detail::optional_rational_from_json(j, "min_ratio");
  r.witness_index = get_as<std::int64_t>(j, "witness_index");
  const Json& w = detail::field(j, "witness");
  if (!w.is_null()) {
    if (s.conjecture == "glr") {
      r.witness_pair = matched_pair_from_json(w);
    } else {
      r.witness_set = vertex_list_from_json(s.d, detail::field(w, "S"));
    }
  }
  if (s.conjecture == "rout") {
    r.min_ratio_floor = detail::optional_rational_from_json(j, "min_ratio_floor_caps");
    r.min_ratio_floor_r = detail::optional_rational_from_json(j, "min_ratio_floor_r");
    r.fractional = get_as<std::int64_t>(j, "fractional");
  } else {
    r.split_attempts = get_as<std::int64_t>(j, "split_attempts");
    r.split_successes = get_as<std::int64_t>(j, "split_successes");
  }
  r.theorem_violations = get_as<std::int64_t>(j, "theorem_violations");
  r.failures = get_as<std::vector<std::string>>(j, "failures");
  if (j.contains("records")) {
    s.keep_records = true;
    for (const auto& e : j.at("records")) {
      InstanceRecord x;
      x.index = get_as<std::int64_t>(e, "index");
      x.ratio = rational_from_json(detail::field(e, "ratio"));
      if (e.contains("ratio_floor_caps")) x.ratio_floor = rational_from_json(e.at("ratio_floor_caps"));
      if (e.contains("split")) x.split = get_as<std::string>(e, "split");
      r.records.push_back(std::move(x));
    }
  }
  return r;
}

inline std::string csv_summary_header() {
  return "conjecture,generator,d,max_size,budget,seed,instances,skipped,min_ratio,"
         "min_ratio_decimal,failures,theorem_violations";
}

inline std::string csv_summary_row(const ConjectureReport& r) {
  const SearchSpec& s = r.spec;
  return s.conjecture + "," + (s.exhaustive ? "exhaustive" : "random") + "," +
         std::to_string(s.d) + "," + std::to_string(s.max_size) + "," +
         std::to_string(s.budget) + "," + std::to_string(s.seed) + "," +
         std::to_string(r.instances) + "," + std::to_string(r.skipped) + "," +
         (r.min_ratio ? to_string(*r.min_ratio) : "") + "," +
         (r.min_ratio ? decimal(*r.min_ratio) : "") + "," + std::to_string(r.failures.size()) +
         "," + std::to_string(r.theorem_violations);
}

inline Json to_json(const TheoremSweep& sw) {
  Json j;
  j["d"] = sw.d;
  j["generator"] = sw.exhaustive ? "exhaustive" : "random";
  j["budget"] = sw.budget;
  j["seed"] = sw.seed;
  j["instances"] = sw.instances;
  Json ts = Json::array();
  for (const auto& t : sw.tallies) {
    ts.push_back({{"theorem", theorem_name(t.theorem)},
                  {"checked", t.checked},
                  {"vacuous", t.vacuous},
                  {"failures", t.failures},
                  {"min_empirical", detail::optional_rational(t.min_empirical)},
                  {"witness", to_json(sw.d, t.witness)},
                  {"failure_list", t.failure_list}});
  }
  j["theorems"] = std::move(ts);
  j["ok"] = sw.ok();
  return j;
}

inline TheoremSweep theorem_sweep_from_json(const Json& j) {
  using detail::get_as;
  TheoremSweep sw;
  sw.d = get_as<int>(j, "d");
  sw.exhaustive = get_as<std::string>(j, "generator") == "exhaustive";
  sw.budget = get_as<std::int64_t>(j, "budget");
  sw.seed = get_as<std::uint64_t>(j, "seed");
  sw.instances = get_as<std::int64_t>(j, "instances");
  const Json& ts = detail::field(j, "theorems");
  if (!ts.is_array() || ts.size() != sw.tallies.size()) throw FormatError("expected four theorems");
  for (std::size_t k = 0; k < sw.tallies.size(); ++k) {
    TheoremTally& t = sw.tallies[k];
    t.theorem = static_cast<Theorem>(k);
    if (get_as<std::string>(ts[k], "theorem") != theorem_name(t.theorem)) {
      throw FormatError("theorems out of order");
    }
    t.checked = get_as<std::int64_t>(ts[k], "checked");
    t.vacuous = get_as<std::int64_t>(ts[k], "vacuous");
    t.failures = get_as<std::int64_t>(ts[k], "failures");
    t.min_empirical = detail::optional_rational_from_json(ts[k], "min_empirical");
    t.witness = vertex_list_from_json(sw.d, detail::field(ts[k], "witness"));
    t.failure_list = get_as<std::vector<std::string>>(ts[k], "failure_list");
  }
  return sw;
}

}  // namespace hcf
