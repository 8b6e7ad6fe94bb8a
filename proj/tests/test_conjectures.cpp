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

#include <gtest/gtest.h>

#include <random>

#include "hcflow/conjectures.hpp"
#include "hcflow/search.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace hcf {
namespace {

using testing::Pair;
using testing::V;
using testing::Vs;

BooleanFunction anti_dictator(int d) {
  return BooleanFunction::from_predicate(d, [](Vertex v) { return !bit(v, 1); });
}

TEST(FlowPoincare, Examples) {
  const TheoremCheck a = check_thm_flowpoin(2, Vs({"00"}));
  EXPECT_GE(a.flow, 1);
  EXPECT_TRUE(a.pass);

  const TheoremCheck b = check_thm_flowpoin(2, Vs({"00", "01"}));
  EXPECT_EQ(b.flow, 2);
  EXPECT_EQ(b.dirvol, 2);
  EXPECT_TRUE(b.pass);

  const TheoremCheck c = check_thm_flowpoin(3, Vs({"000", "010", "001", "011"}));
  EXPECT_EQ(c.flow, 4);
  EXPECT_EQ(c.dirvol, 4);
  EXPECT_TRUE(c.pass);

  EXPECT_TRUE(check_thm_flowpoin(2, Vs({"11"})).vacuous);
  EXPECT_THROW(check_thm_flowpoin(2, {}), std::invalid_argument);
  EXPECT_THROW(check_thm_flowpoin(1, Vs({"0", "1"})), std::invalid_argument);
}

TEST(CsPoincare, Examples) {
  const TheoremCheck a = check_thm_cspoin(2, Vs({"00"}));
  EXPECT_EQ(a.r, Rational(1));
  EXPECT_EQ(a.dirvol, 1);
  EXPECT_EQ(a.flow, 2);
  EXPECT_TRUE(a.pass);

  const TheoremCheck b = check_thm_cspoin(3, Vs({"000"}));
  EXPECT_EQ(b.flow, 3);
  EXPECT_EQ(b.bound, Rational(1));
  EXPECT_TRUE(b.pass);

  const TheoremCheck v = check_thm_cspoin(2, Vs({"11"}));
  EXPECT_TRUE(v.vacuous);
  EXPECT_TRUE(v.pass);
}

TEST(CsLr, Examples) {
  for (const auto& [d, S] : {std::pair{2, Vs({"00"})}, std::pair{3, Vs({"000"})}}) {
    const TheoremCheck c = check_thm_cslr(d, S);
    EXPECT_EQ(c.flow, 1);
    EXPECT_EQ(c.bound, Rational(1, 32));
    EXPECT_EQ(c.empirical, Rational(1));
    EXPECT_TRUE(c.pass);
  }
}

TEST(EdgeDisjoint, Examples) {
  const TheoremCheck a = check_thm_sachdeva(Pair({{"00", "11"}}));
  EXPECT_EQ(a.flow, 2);
  EXPECT_TRUE(a.pass);

  const TheoremCheck b = check_thm_sachdeva(Pair({{"001", "101"}, {"010", "011"}, {"100", "111"}}));
  EXPECT_GE(b.flow, 3);
  EXPECT_TRUE(b.pass);

  EXPECT_THROW(check_thm_sachdeva(Pair({{"00", "01"}, {"01", "11"}})), std::invalid_argument);
}

// All matched pairs at d = 3 with disjoint S, T and |S| <= 4, built from
// every injective assignment of the directed volume certificates' shapes.
TEST(EdgeDisjoint, ExhaustiveThreeCube) {
  int checked = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j <= 3; ++j) {
      for (const auto& p : level_matched_pairs(3, i, j, 4)) {
        const TheoremCheck c = check_thm_sachdeva(p);
        ASSERT_TRUE(c.pass) << describe(p);
        EXPECT_EQ(c.flow, oracle::max_path_packing(3, testing::bitset_of(p.S),
                                                   testing::bitset_of(p.T), -1, 1));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(TheoremSweep, ExhaustiveThreeCubePasses) {
  const TheoremSweep sw = run_theorem_sweep(3, true, 0, 0, 1);
  EXPECT_EQ(sw.instances, 254);
  EXPECT_TRUE(sw.ok());
  for (const auto& t : sw.tallies) {
    EXPECT_EQ(t.checked, 254);
    EXPECT_EQ(t.failures, 0) << theorem_name(t.theorem);
    ASSERT_TRUE(t.min_empirical.has_value());
    EXPECT_GE(*t.min_empirical, Rational(1)) << theorem_name(t.theorem);
  }
}

TEST(TheoremSweep, RandomIsDeterministicAcrossThreadCounts) {
  EXPECT_EQ(run_theorem_sweep(5, false, 200, 7, 1), run_theorem_sweep(5, false, 200, 7, 3));
  EXPECT_THROW(run_theorem_sweep(4, true, 0, 0), ConfigError);
  EXPECT_THROW(run_theorem_sweep(5, false, 0, 0), ConfigError);
}

TEST(Glr, CornerToCornerInThreeCube) {
  const GlrRecord rec = test_conj_glr(Pair({{"000", "111"}}));
  EXPECT_EQ(rec.r, 3);
  EXPECT_EQ(rec.flow, 3);
  EXPECT_EQ(rec.target, 3);
  EXPECT_EQ(rec.ratio, Rational(1));
  EXPECT_TRUE(rec.necessary_ok);
  ASSERT_TRUE(rec.split_ok) << rec.finding;
  ASSERT_EQ(rec.collections.size(), 3u);
  for (const auto& c : rec.collections) EXPECT_EQ(c.paths.size(), 1u);
  EXPECT_FALSE(rec.theorem_violation());
}

TEST(Glr, ShortDistancesReduceToProvenCases) {
  for (int j = 1; j <= 2; ++j) {
    for (const auto& p : level_matched_pairs(4, 1, 1 + j, 3)) {
      const GlrRecord rec = test_conj_glr(p);
      EXPECT_EQ(rec.r, j);
      EXPECT_TRUE(rec.necessary_ok);
      EXPECT_TRUE(rec.split_ok) << rec.finding;
      EXPECT_FALSE(rec.theorem_violation());
    }
  }
}

TEST(Glr, PolicyLimitsTheSplit) {
  const GlrRecord rec = test_conj_glr(Pair({{"000", "111"}}), {2, 200});
  EXPECT_TRUE(rec.necessary_ok);
  EXPECT_FALSE(rec.split_attempted);
  EXPECT_THROW(test_conj_glr(Pair({{"000", "011"}, {"001", "111"}})), LevelsRequired);
}

TEST(Rout, SquareCorner) {
  // The source vertex 00 carries at most vcap = 1 unit.
  const RoutRecord rec = test_conj_rout(2, Vs({"00"}));
  EXPECT_EQ(rec.r, Rational(1));
  EXPECT_EQ(rec.vcap, 1);
  EXPECT_EQ(rec.flow, 1);
  EXPECT_EQ(rec.ratio, Rational(1));
  EXPECT_FALSE(rec.fractional);
}

TEST(Rout, CertificateForcedToTheTop) {
  const RoutRecord rec = test_conj_rout_pair(Pair({{"000", "111"}}));
  EXPECT_EQ(rec.r, Rational(3));
  EXPECT_EQ(rec.vcap, 9);
  EXPECT_EQ(rec.flow, 3);
  EXPECT_EQ(rec.ratio, Rational(1));
}

TEST(Rout, FractionalSeparationRunsBothCaps) {
  const VertexList S = Vs({"000", "100", "010", "001"});
  const RoutRecord rec = test_conj_rout(3, S);
  EXPECT_EQ(rec.r, Rational(3, 2));
  EXPECT_TRUE(rec.fractional);
  EXPECT_EQ(rec.vcap, 3);
  EXPECT_EQ(rec.vcap_floor, 1);
  EXPECT_EQ(rec.ratio, Rational(rec.flow, 6));
  EXPECT_EQ(rec.ratio_floor, Rational(rec.flow_floor, 6));
  EXPECT_EQ(rec.ratio_floor_r, Rational(rec.flow, 4));
  EXPECT_THROW(test_conj_rout(2, Vs({"11"})), NoCertificate);
}

TEST(ColoringCut, MonotoneGivesEmptyCut) {
  const BooleanFunction f = BooleanFunction::parse("0001");
  const ColoringCut c = coloring_to_cut(f, EdgeColoring::uniform(f, 0), 1);
  EXPECT_TRUE(c.cut.C.empty());
  EXPECT_TRUE(c.cut.F.empty());
  EXPECT_TRUE(c.valid);
}

TEST(ColoringCut, AntiDictatorSquare) {
  const BooleanFunction f = anti_dictator(2);
  const ColoringCut c = coloring_to_cut(f, EdgeColoring::uniform(f, 1), 1);
  EXPECT_TRUE(c.cut.C.empty());
  EXPECT_EQ(c.cut.F, violated_edges(f));
  EXPECT_EQ(c.cut.value, 2);
  EXPECT_TRUE(c.valid);
  EXPECT_TRUE(c.within_bound);
  EXPECT_DOUBLE_EQ(c.objective, 0.5);
}

TEST(ColoringCut, HeavyVertexIsCut) {
  // Both violated edges leave 00; color 1 charges 00 twice, above r^2 = 1.
  const BooleanFunction f = BooleanFunction::indicator(2, Vs({"00"}));
  const ColoringCut c = coloring_to_cut(f, EdgeColoring::uniform(f, 1), 1);
  EXPECT_EQ(c.cut.C, Vs({"00"}));
  EXPECT_TRUE(c.cut.F.empty());
  EXPECT_EQ(c.heavy_count, 1);
  EXPECT_TRUE(c.valid);
  EXPECT_THROW(coloring_to_cut(f, EdgeColoring::uniform(f, 1), 0), std::invalid_argument);
}

TEST(ColoringCut, AntiDictatorCubeMixedColors) {
  const BooleanFunction f = anti_dictator(3);
  EdgeColoring chi = EdgeColoring::uniform(f, 0);
  for (std::size_t k = 0; k < chi.color.size(); k += 2) chi.color[k] = 1;
  const ColoringCut c = coloring_to_cut(f, chi, 2);
  EXPECT_TRUE(c.valid) << c.finding;
  EXPECT_EQ(c.cut.value, 4);
  EXPECT_TRUE(c.light_case_holds);
  EXPECT_TRUE(c.heavy_case_holds);
  EXPECT_TRUE(c.within_bound);
}

TEST(ColoringCut, RandomColoringsAlwaysValid) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 2 + trial % 3;
    std::vector<std::uint8_t> t(cube_size(d));
    for (auto& b : t) b = rng() & 1;
    const BooleanFunction f(d, t);
    EdgeColoring chi = EdgeColoring::uniform(f, 0);
    for (auto& c : chi.color) c = rng() & 1;
    for (int r = 1; r <= 3; ++r) {
      const ColoringCut c = coloring_to_cut(f, chi, r);
      ASSERT_TRUE(c.valid) << f.to_bitstring() << " r=" << r << ": " << c.finding;
      EXPECT_TRUE(c.within_bound);
    }
  }
}

TEST(Search, GlrExhaustiveThreeCube) {
  SearchSpec spec;
  spec.conjecture = "glr";
  spec.exhaustive = true;
  spec.d = 3;
  spec.threads = 1;
  const ConjectureReport rep = run_search(spec);
  EXPECT_GT(rep.instances, 0);
  EXPECT_EQ(rep.theorem_violations, 0);
  EXPECT_TRUE(rep.failures.empty());
  EXPECT_EQ(rep.split_attempts, rep.split_successes);
  ASSERT_TRUE(rep.min_ratio.has_value());
  EXPECT_EQ(*rep.min_ratio, Rational(1));
  EXPECT_EQ(replay_witness(rep), *rep.min_ratio);
}

TEST(Search, RoutExhaustiveThreeCube) {
  SearchSpec spec;
  spec.exhaustive = true;
  spec.d = 3;
  spec.threads = 1;
  const ConjectureReport rep = run_search(spec);
  EXPECT_EQ(rep.instances + rep.skipped, 254);
  ASSERT_TRUE(rep.min_ratio.has_value());
  EXPECT_GT(*rep.min_ratio, Rational(0));
  EXPECT_FALSE(rep.witness_set.empty());
  EXPECT_EQ(replay_witness(rep), *rep.min_ratio);
}

TEST(Search, RandomRoutIsDeterministic) {
  SearchSpec spec;
  spec.d = 8;
  spec.budget = 300;
  spec.seed = 1;
  spec.keep_records = true;
  spec.threads = 1;
  const ConjectureReport a = run_search(spec);
  spec.threads = 4;
  const ConjectureReport b = run_search(spec);
  EXPECT_EQ(a, b);
  EXPECT_EQ(replay_witness(a), *a.min_ratio);
  EXPECT_EQ(a.records.size(), static_cast<std::size_t>(a.instances));
}

TEST(Search, RandomGlrIsDeterministic) {
  SearchSpec spec;
  spec.conjecture = "glr";
  spec.d = 6;
  spec.budget = 100;
  spec.max_size = 4;
  spec.seed = 3;
  spec.threads = 2;
  const ConjectureReport a = run_search(spec);
  EXPECT_EQ(a, run_search(spec));
  EXPECT_EQ(a.theorem_violations, 0);
  EXPECT_EQ(replay_witness(a), *a.min_ratio);
}

TEST(Search, RejectsBadConfiguration) {
  SearchSpec spec;
  spec.d = 30;
  EXPECT_THROW(run_search(spec), ConfigError);
  spec = {};
  spec.conjecture = "nope";
  EXPECT_THROW(run_search(spec), ConfigError);
  spec = {};
  spec.exhaustive = true;
  spec.d = 4;
  EXPECT_THROW(run_search(spec), ConfigError);
  spec = {};
  spec.budget = 0;
  EXPECT_THROW(run_search(spec), ConfigError);
  spec = {};
  spec.conjecture = "glr";
  spec.exhaustive = true;
  spec.d = 5;
  EXPECT_THROW(run_search(spec), ConfigError);
}

TEST(Generators, RandomLevelPairsAreValid) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const MatchedPair p = random_level_pair(6, 5, rng);
    ASSERT_TRUE(validate_matched_pair(p));
    EXPECT_NO_THROW(levels_of(p));
    EXPECT_LE(p.size(), 5u);
  }
  std::mt19937_64 a(5), b(5);
  for (int trial = 0; trial < 50; ++trial) {
    const VertexList s = random_subset(4, a);
    EXPECT_EQ(s, random_subset(4, b));
    EXPECT_FALSE(s.empty());
    EXPECT_LT(s.size(), 16u);
  }
}

TEST(ParallelMap, PreservesOrderAndFirstError) {
  std::vector<int> xs(100);
  for (int k = 0; k < 100; ++k) xs[k] = k;
  const auto ys = parallel_map(xs, [](int x) { return x * x; }, 4);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(ys[k], k * k);
  try {
    parallel_map(
        xs,
        [](int x) {
          if (x == 30 || x == 70) throw std::runtime_error(std::to_string(x));
          return x;
        },
        4);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "30");
  }
}

}  // namespace
}  // namespace hcf
