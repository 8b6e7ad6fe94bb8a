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

// The hcflow command line. Exit codes: 0 success, 1 internal or integrity
// failure, 2 configuration or input error, 3 a proven-theorem check failed.

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hcflow.hpp"

namespace hcf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitTheorem = 3;

struct RunConfig {
  std::string subcommand;
  std::string input;  // path or inline instance
  std::string conjecture;
  int d = 3;
  std::uint64_t seed = 0;
  std::int64_t budget = 1000;
  std::string format;
  std::string out;
  int max_size = 6;
  bool exhaustive = false;
  bool records = false;
  bool random = false;
};

struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

/// Inline JSON when the argument starts with '{', else the contents of a file.
inline std::string read_instance(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;
  std::ifstream in(arg);
  if (!in) throw ConfigError("cannot read input file '" + arg + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

inline MatchedPair read_pair(const std::string& arg) {
  MatchedPair p = matched_pair_from_json(parse_json(read_instance(arg)));
  require_matched_pair(p);
  return p;
}

/// A file holding the table, or the table itself (bitstring or 0x-hex).
inline BooleanFunction read_function(const std::string& arg) {
  std::ifstream in(arg);
  if (in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return BooleanFunction::parse(trim(ss.str()));
  }
  return BooleanFunction::parse(trim(arg));
}

inline std::string rat(const Rational& q) { return to_string(q); }

inline Json decimal_json(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return Json::parse(buf);
}

inline std::string decimal12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline void require_format(const RunConfig& c, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (c.format == a) return;
  }
  throw ConfigError("format '" + c.format + "' is not supported by " + c.subcommand);
}

// ---------------------------------------------------------------------------

inline int cmd_lr_route(const RunConfig& c, std::ostream& out) {
  require_format(c, {"text", "json"});
  const MatchedPair p = read_pair(c.input);
  const LRSolution sol = lr_solution(p);
  const Validation v = check_lr_solution(p, sol);
  if (!v) throw TheoremViolation("self-check failed: " + v.violation);
  if (c.format == "json") {
    Json j = to_json(p.d, sol);
    j["d"] = p.d;
    j["vertex_disjoint"] = true;
    out << j.dump(2) << "\n";
  } else {
    out << describe(p) << "\n";
    for (std::size_t k = 0; k < sol.paths.size(); ++k) {
      out << "path " << k + 1 << ": " << render_path(p.d, sol.paths[k]) << "\n";
    }
    out << "vertex-disjoint: OK\n";
  }
  return kExitOk;
}

inline int cmd_lr_route2(const RunConfig& c, std::ostream& out) {
  require_format(c, {"text", "json"});
  const MatchedPair p = read_pair(c.input);
  const DoubleLRSolution sol = double_lr_solution(p);
  const Validation v = check_double_lr_solution(p, sol);
  if (!v) throw TheoremViolation("self-check failed: " + v.violation);
  if (c.format == "json") {
    Json j = to_json(p.d, sol);
    j["d"] = p.d;
    j["vertex_disjoint"] = true;
    j["edge_disjoint_union"] = true;
    out << j.dump(2) << "\n";
  } else {
    out << describe(p) << "\n";
    const LRSolution* cols[] = {&sol.first, &sol.second};
    for (int k = 0; k < 2; ++k) {
      out << "collection " << k + 1 << ":\n";
      for (const Path& path : cols[k]->paths) out << "  " << render_path(p.d, path) << "\n";
    }
    out << "vertex-disjoint: OK\n";
    out << "edge-disjoint union: OK\n";
  }
  return kExitOk;
}

inline int cmd_analyze_fn(const RunConfig& c, std::ostream& out) {
  require_format(c, {"text", "json"});
  BooleanFunction f;
  if (c.random) {
    check_dimension(c.d);
    std::mt19937_64 rng(c.seed);
    std::vector<std::uint8_t> t(cube_size(c.d));
    for (auto& b : t) b = static_cast<std::uint8_t>(rng() & 1u);
    f = BooleanFunction(c.d, std::move(t));
  } else {
    if (c.input.empty()) throw ConfigError("analyze-fn needs a truth table or --random");
    f = read_function(c.input);
  }
  const Rational eps = distance_to_monotonicity(f);
  const Rational inf = directed_influence(f);
  const Rational gam = gamma_plus(f);
  const TalagrandMin tal = min_talagrand_auto(f, c.seed);
  const bool thm42 = inf >= eps;
  std::optional<double> r43, r44;
  if (eps > 0) {
    r43 = to_double(inf * gam / (eps * eps));
    r44 = tal.value / to_double(eps);
  }

  if (c.format == "json") {
    Json j;
    j["d"] = f.dim();
    j["table"] = f.to_bitstring();
    j["violated_edges"] = violated_edges(f).size();
    j["eps"] = to_json(eps);
    j["directed_influence"] = to_json(inf);
    j["gamma_plus"] = to_json(gam);
    j["min_talagrand"] = decimal_json(tal.value);
    j["min_talagrand_exact"] = tal.exact;
    j["influence_minus_eps"] = to_json(inf - eps);
    j["influence_at_least_eps"] = thm42;
    j["influence_gamma_over_eps_squared"] = r43 ? decimal_json(*r43) : Json(nullptr);
    j["min_talagrand_over_eps"] = r44 ? decimal_json(*r44) : Json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    out << "function " << f.to_bitstring() << " (d=" << f.dim() << ")\n";
    out << "violated edges      " << violated_edges(f).size() << "\n";
    out << "eps                 " << rat(eps) << "\n";
    out << "I+                  " << rat(inf) << "\n";
    out << "Gamma+              " << rat(gam) << "\n";
    out << "min Talagrand       " << decimal12(tal.value)
        << (tal.exact ? " (exact)" : " (local search)") << "\n";
    out << "I+ - eps            " << rat(inf - eps) << (thm42 ? " >= 0" : " < 0") << "\n";
    out << "I+ Gamma+ / eps^2   " << (r43 ? decimal12(*r43) : "n/a") << "\n";
    out << "min Talagrand / eps " << (r44 ? decimal12(*r44) : "n/a") << "\n";
  }
  return thm42 ? kExitOk : kExitTheorem;
}

inline int cmd_check_theorems(const RunConfig& c, std::ostream& out) {
  require_format(c, {"text", "json"});
  const TheoremSweep sw = run_theorem_sweep(c.d, c.exhaustive, c.budget, c.seed);
  if (c.format == "json") {
    out << to_json(sw).dump(2) << "\n";
  } else {
    out << "theorem sweep d=" << sw.d << " "
        << (sw.exhaustive ? "exhaustive" : "random seed=" + std::to_string(sw.seed))
        << " instances=" << sw.instances << "\n";
    for (const auto& t : sw.tallies) {
      out << theorem_name(t.theorem) << ": checked=" << t.checked << " vacuous=" << t.vacuous
          << " failures=" << t.failures;
      if (t.min_empirical) {
        out << " min_ratio=" << rat(*t.min_empirical) << " witness="
            << render_set(sw.d, t.witness);
      }
      out << "\n";
      for (const auto& f : t.failure_list) out << "  " << f << "\n";
    }
    out << (sw.ok() ? "result: OK\n" : "result: THEOREM VIOLATION\n");
  }
  return sw.ok() ? kExitOk : kExitTheorem;
}

inline void write_report(const ConjectureReport& r, const std::string& format,
                         std::ostream& out) {
  if (format == "json") {
    out << to_json(r).dump(2) << "\n";
  } else if (format == "csv") {
    out << csv_summary_header() << "\n" << csv_summary_row(r) << "\n";
  } else {
    const SearchSpec& s = r.spec;
    out << "conjecture " << s.conjecture << " d=" << s.d
        << (s.exhaustive ? " exhaustive" : " random budget=" + std::to_string(s.budget))
        << " seed=" << s.seed;
    if (s.conjecture == "glr") out << " max-size=" << s.max_size;
    out << "\n";
    out << "instances " << r.instances << " skipped " << r.skipped << "\n";
    if (r.min_ratio) {
      out << "min ratio " << rat(*r.min_ratio) << " (" << decimal(*r.min_ratio) << ")\n";
      out << "witness #" << r.witness_index << " "
          << (r.witness_pair ? describe(*r.witness_pair) : render_set(s.d, r.witness_set))
          << "\n";
    }
    if (s.conjecture == "rout") {
      if (r.min_ratio_floor) out << "min ratio, floor(r)^2 caps " << rat(*r.min_ratio_floor) << "\n";
      if (r.min_ratio_floor_r) out << "min ratio, floor(r) scale " << rat(*r.min_ratio_floor_r) << "\n";
      out << "fractional r " << r.fractional << "\n";
    } else {
      out << "splits " << r.split_successes << "/" << r.split_attempts << "\n";
    }
    out << "failures " << r.failures.size() << "\n";
    for (const auto& f : r.failures) out << "  " << f << "\n";
    out << "theorem violations " << r.theorem_violations << "\n";
  }
}

inline int cmd_search(const RunConfig& c, std::ostream& out) {
  require_format(c, {"text", "json", "csv"});
  SearchSpec s;
  s.conjecture = c.conjecture;
  s.exhaustive = c.exhaustive;
  s.d = c.d;
  s.max_size = c.max_size;
  s.budget = c.budget;
  s.seed = c.seed;
  s.keep_records = c.records;
  const ConjectureReport r = run_search(s);
  write_report(r, c.format, out);
  return r.theorem_violations ? kExitTheorem : kExitOk;
}

/// Re-emits a saved report after replaying its witness.
inline int cmd_emit_report(const RunConfig& c, std::ostream& out) {
  require_format(c, {"text", "json", "csv"});
  const std::string text = read_instance(c.input);
  const ConjectureReport r = report_from_json(parse_json(text));
  if (r.min_ratio) {
    const Rational replayed = replay_witness(r);
    if (replayed != *r.min_ratio) {
      throw IntegrityError("witness replay gives " + rat(replayed) + ", report records " +
                           rat(*r.min_ratio));
    }
  }
  write_report(r, c.format, out);
  return r.theorem_violations ? kExitTheorem : kExitOk;
}

inline int dispatch(const RunConfig& c, std::ostream& out) {
  if (c.subcommand == "lr-route") return cmd_lr_route(c, out);
  if (c.subcommand == "lr-route2") return cmd_lr_route2(c, out);
  if (c.subcommand == "analyze-fn") return cmd_analyze_fn(c, out);
  if (c.subcommand == "check-theorems") return cmd_check_theorems(c, out);
  if (c.subcommand == "search") return cmd_search(c, out);
  return cmd_emit_report(c, out);
}

}  // namespace detail

/// Runs one invocation; `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Routing and isoperimetry on the directed hypercube", "hcflow"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", c.out, "write output to this file instead of stdout");
  };

  auto* lr = app.add_subcommand("lr-route", "vertex-disjoint paths for a matched pair");
  lr->add_option("pair", c.input, "matched pair JSON file or inline JSON")->required();
  auto* lr2 = app.add_subcommand("lr-route2", "two path collections with edge-disjoint union");
  lr2->add_option("pair", c.input, "matched pair JSON file or inline JSON")->required();
  auto* fn = app.add_subcommand("analyze-fn", "isoperimetric quantities of a Boolean function");
  fn->add_option("function", c.input, "truth table (bitstring or 0x hex) or a file holding one");
  fn->add_flag("--random", c.random, "analyze a random function of dimension --d");
  fn->add_option("--d", c.d, "dimension for --random");
  fn->add_option("--seed", c.seed, "seed for --random and local search");
  auto* th = app.add_subcommand("check-theorems", "sweep the proven flow bounds over subsets");
  th->add_option("--d", c.d, "dimension");
  th->add_option("--seed", c.seed, "seed for random subsets");
  th->add_option("--budget", c.budget, "number of random subsets");
  th->add_flag("--exhaustive", c.exhaustive, "all proper subsets (d <= 3)");
  auto* se = app.add_subcommand("search", "counterexample search for a conjecture");
  se->add_option("conjecture", c.conjecture, "glr or rout")
      ->required()
      ->check(CLI::IsMember({"glr", "rout"}));
  se->add_option("--d", c.d, "dimension");
  se->add_option("--seed", c.seed, "seed for random instances");
  se->add_option("--budget", c.budget, "number of random instances");
  se->add_option("--max-size", c.max_size, "largest |S| for glr instances");
  se->add_flag("--exhaustive", c.exhaustive, "enumerate all instances");
  se->add_flag("--records", c.records, "include per-instance records");
  auto* em = app.add_subcommand("emit-report", "replay and re-emit a saved search report");
  em->add_option("report", c.input, "report JSON file")->required();

  for (auto* sub : {lr, lr2, fn, th, se, em}) common(sub);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
  if (c.format.empty()) {
    c.format = c.subcommand == "search" || c.subcommand == "emit-report" ? "json" : "text";
  }

  std::ostringstream buf;
  int code = kExitOk;
  try {
    code = detail::dispatch(c, buf);
  } catch (const TheoremViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitTheorem;
  } catch (const SplitFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitTheorem;
  } catch (const IntegrityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  if (c.out.empty()) {
    out << buf.str();
  } else {
    std::ofstream file(c.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << c.out << "'\n";
      return kExitConfig;
    }
    file << buf.str();
  }
  return code;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace hcf::cli
