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
#include <set>

#include "generators.hpp"
#include "hcflow/flow_core.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace hcf {
namespace {

using testing::bitset_of;
using testing::rendered;
using testing::V;
using testing::Vs;

FlowProblem corner(int d, Cap vcap, Cap ecap) {
  const std::string lo(static_cast<std::size_t>(d), '0');
  const std::string hi(static_cast<std::size_t>(d), '1');
  return FlowProblem::on_cube(d, {parse_bitstring(d, lo)}, {parse_bitstring(d, hi)},
                              VertexCaps::constant(vcap), EdgeCaps::constant(ecap));
}

Edge E(const char* a, const char* b) { return edge_between(V(a), V(b)); }

TEST(MaxFlow, SquareExamples) {
  EXPECT_EQ(max_flow(corner(2, kInfinite, 1)).value, 2);
  EXPECT_EQ(max_flow(corner(2, 1, kInfinite)).value, 1);
  EXPECT_EQ(max_flow(corner(2, 2, 1)).value, 2);
  EXPECT_EQ(max_flow(corner(3, kInfinite, 1)).value, 3);
}

TEST(MaxFlow, PathsAreDeterministic) {
  const FlowSolution f = max_flow(corner(2, kInfinite, 1));
  ASSERT_EQ(f.paths.size(), 2u);
  EXPECT_EQ(render_path(2, f.paths[0]), "00->10->11");
  EXPECT_EQ(render_path(2, f.paths[1]), "00->01->11");
}

TEST(MaxFlow, InfiniteEverywhereIsUnbounded) {
  EXPECT_THROW(max_flow(corner(2, kInfinite, kInfinite)), UnboundedFlow);
}

TEST(MaxFlow, NoComparablePairGivesZero) {
  const FlowProblem p = FlowProblem::on_cube(2, Vs({"10"}), Vs({"01"}), VertexCaps::constant(1),
                                             EdgeCaps::constant(1));
  const FlowResult r = solve(p);
  EXPECT_EQ(r.flow.value, 0);
  EXPECT_TRUE(r.flow.paths.empty());
  EXPECT_EQ(r.cut.value, 0);
}

TEST(MinCut, Examples) {
  const CutCertificate a = min_cut(corner(2, 1, kInfinite));
  EXPECT_EQ(a.value, 1);
  EXPECT_EQ(a.C, Vs({"00"}));
  EXPECT_TRUE(a.F.empty());

  EXPECT_EQ(min_cut(corner(2, 2, 1)).value, 2);

  const CutCertificate c = min_cut(corner(3, kInfinite, 1));
  EXPECT_EQ(c.value, 3);
  EXPECT_TRUE(c.C.empty());
  for (const Edge& e : c.F) EXPECT_EQ(e.lo, V("000"));
}

TEST(Partition, Examples) {
  const FlowProblem p = corner(2, 1, 1);
  const CutPartition a = partition_by_cut(p, {Vs({"01", "10"}), {}, 2});
  EXPECT_EQ(a.s_side, Vs({"00"}));
  EXPECT_EQ(a.t_side, Vs({"11"}));
  EXPECT_EQ(rendered(2, a.cut), (std::set<std::string>{"01", "10"}));
  EXPECT_TRUE(a.residue.empty());

  const CutPartition b = partition_by_cut(p, {{}, {E("00", "01"), E("00", "10")}, 2});
  EXPECT_EQ(b.s_side, Vs({"00"}));
  EXPECT_EQ(rendered(2, b.t_side), (std::set<std::string>{"01", "10", "11"}));
  EXPECT_TRUE(b.cut.empty());
}

TEST(Partition, InvalidCutNamesAFreePath) {
  const FlowProblem p = corner(2, 1, 1);
  const CutCertificate bad{{}, {E("00", "01")}, 1};
  EXPECT_FALSE(is_valid_cut(p, bad));
  try {
    partition_by_cut(p, bad);
    FAIL() << "expected InvalidCut";
  } catch (const InvalidCut& e) {
    EXPECT_EQ(render_path(2, e.witness), "00->10->11");
    EXPECT_NE(std::string(e.what()).find("00->10->11"), std::string::npos);
  }
}

TEST(Partition, ResidueJoinsTheCut) {
  // 010 is cut off from both sides once 000 -> 010 and 010 -> 011 are in F
  // together with the other edges leaving the source.
  const FlowProblem p = FlowProblem::on_cube(3, Vs({"000"}), Vs({"011"}),
                                             VertexCaps::constant(kInfinite), EdgeCaps::constant(1));
  const CutCertificate c{{}, {E("000", "010"), E("000", "001"), E("010", "011")}, 3};
  const CutPartition part = partition_by_cut(p, c);
  EXPECT_EQ(bitset_of(part.residue), bitset_of(Vs({"010"})));
  EXPECT_NE(std::find(part.cut.begin(), part.cut.end(), V("010")), part.cut.end());
}

TEST(Normalize, MergesEdgesAtACommonVertex) {
  const FlowProblem p = corner(2, 2, 1);
  const CutCertificate c{{}, {E("00", "01"), E("00", "10")}, 2};
  const CutCertificate n = normalize_cut(p, c);
  EXPECT_EQ(n.C, Vs({"00"}));
  EXPECT_TRUE(n.F.empty());
  EXPECT_EQ(n.value, 2);
  EXPECT_TRUE(is_normalized(n));
  EXPECT_TRUE(is_valid_cut(p, n));
}

TEST(Normalize, FixedPointIsUnchanged) {
  const FlowProblem p = corner(2, 2, 1);
  const CutCertificate c{Vs({"00"}), {}, 2};
  EXPECT_EQ(normalize_cut(p, c), c);
}

TEST(Normalize, ValueNeverIncreasesOnThreeCube) {
  const FlowProblem p = corner(3, 2, 1);
  // 000 meets three F-edges; replacing them by the vertex saves one unit.
  const CutCertificate c{{}, {E("000", "100"), E("000", "010"), E("000", "001")}, 3};
  const CutCertificate n = normalize_cut(p, c);
  EXPECT_EQ(n.value, 2);
  EXPECT_LE(n.value, c.value);
  EXPECT_TRUE(is_normalized(n));
  EXPECT_TRUE(is_valid_cut(p, n));
}

TEST(Normalize, RejectsInvalidInput) {
  EXPECT_THROW(normalize_cut(corner(2, 1, 1), CutCertificate{{}, {E("00", "01")}, 1}),
               InvalidCut);
}

TEST(Slackness, SolverOutputPasses) {
  for (const FlowProblem& p : {corner(2, 2, 1), corner(3, 1, kInfinite), corner(3, kInfinite, 1),
                               corner(4, 2, 1)}) {
    const FlowResult r = solve(p);
    EXPECT_TRUE(verify_complementary_slackness(p, r.flow, r.cut)) << p.d;
  }
  const FlowProblem p = corner(3, 1, kInfinite);
  const FlowResult r = solve(p);
  EXPECT_EQ(r.cut.C, Vs({"000"}));
}

TEST(Slackness, PathThroughTwoCutVerticesFails) {
  const FlowProblem p = corner(2, 1, kInfinite);
  FlowSolution f;
  f.value = 2;
  f.paths = {Vs({"00", "01", "11"})};
  const CutCertificate c{Vs({"00", "11"}), {}, 2};
  const Validation v = verify_complementary_slackness(p, f, c);
  EXPECT_FALSE(v);
  EXPECT_NE(v.violation.find("00->01->11 meets 2"), std::string::npos);
}

TEST(Slackness, ValueMismatchIsNotOptimal) {
  const FlowProblem p = corner(2, 1, kInfinite);
  FlowSolution f;
  f.value = 1;
  f.paths = {Vs({"00", "01", "11"})};
  EXPECT_THROW(verify_complementary_slackness(p, f, CutCertificate{Vs({"01", "10"}), {}, 2}),
               NotOptimalPair);
}

TEST(CheckFlow, RejectsBadDecompositions) {
  const FlowProblem p = corner(2, 1, 1);
  FlowSolution f;
  f.value = 1;
  f.paths = {Vs({"00", "11"})};
  EXPECT_FALSE(check_flow_solution(p, f));
  f.paths = {Vs({"01", "11"})};
  EXPECT_FALSE(check_flow_solution(p, f));
  f.value = 2;
  f.paths = {Vs({"00", "01", "11"}), Vs({"00", "10", "11"})};
  EXPECT_NE(check_flow_solution(p, f).violation.find("carries 2"), std::string::npos);
}

// Brute-force path packing over the full cube, d <= 3, all three cap models.
TEST(Oracle, PackingMatchesSolver) {
  std::mt19937_64 rng(5);
  const std::pair<int, int> models[] = {{1, -1}, {-1, 1}, {2, 1}};
  for (int d = 2; d <= 3; ++d) {
    const std::uint32_t n = 1u << d;
    for (int trial = 0; trial < 60; ++trial) {
      std::set<std::uint32_t> S, T;
      const std::size_t ks = 1 + rng() % 2, kt = 1 + rng() % 2;
      while (S.size() < ks) S.insert(static_cast<std::uint32_t>(rng() % n));
      while (T.size() < kt) {
        const auto t = static_cast<std::uint32_t>(rng() % n);
        if (!S.count(t)) T.insert(t);
      }
      VertexList sl, tl;
      for (auto b : S) sl.push_back(Vertex{b});
      for (auto b : T) tl.push_back(Vertex{b});
      for (auto [vc, ec] : models) {
        const FlowProblem p = FlowProblem::on_cube(
            d, sl, tl, VertexCaps::constant(vc < 0 ? kInfinite : vc),
            EdgeCaps::constant(ec < 0 ? kInfinite : ec));
        EXPECT_EQ(max_flow(p).value, oracle::max_path_packing(d, S, T, vc, ec))
            << "d=" << d << " trial=" << trial << " vcap=" << vc << " ecap=" << ec;
      }
    }
  }
}

// Duality, decomposition soundness and cut validity on random problems.
TEST(Random, DualityAndSoundness) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 600; ++trial) {
    const int d = 2 + trial % 4;
    const bool uniform = trial % 2 == 0;
    const FlowProblem p = testing::random_flow_problem(d, rng, uniform);
    const FlowResult r = solve(p);
    ASSERT_EQ(r.flow.value, r.cut.value);
    ASSERT_TRUE(check_flow_solution(p, r.flow)) << check_flow_solution(p, r.flow).violation;
    ASSERT_TRUE(is_valid_cut(p, r.cut));
    EXPECT_TRUE(verify_complementary_slackness(p, r.flow, r.cut));
    EXPECT_NO_THROW(partition_by_cut(p, r.cut));
    const CutCertificate n = normalize_cut(p, r.cut);
    EXPECT_LE(n.value, r.cut.value);
    EXPECT_TRUE(is_valid_cut(p, n));

    std::set<std::uint32_t> graph;
    for (Vertex v : p.graph.to_list()) graph.insert(v.bits);
    std::set<std::pair<std::uint32_t, std::uint32_t>> F;
    for (const Edge& e : r.cut.F) F.insert({e.lo.bits, e.hi.bits});
    EXPECT_TRUE(oracle::cut_blocks_all_paths(d, graph, bitset_of(p.sources), bitset_of(p.sinks),
                                             bitset_of(r.cut.C), F));
  }
}

TEST(Random, SolveIsDeterministic) {
  std::mt19937_64 a(3), b(3);
  for (int trial = 0; trial < 50; ++trial) {
    const FlowProblem p = testing::random_flow_problem(4, a, false);
    const FlowProblem q = testing::random_flow_problem(4, b, false);
    const FlowResult x = solve(p), y = solve(q);
    EXPECT_EQ(x.flow.paths, y.flow.paths);
    EXPECT_EQ(x.cut, y.cut);
  }
}

}  // namespace
}  // namespace hcf
