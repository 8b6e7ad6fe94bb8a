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

#include "hcflow/hypercube.hpp"
#include "test_util.hpp"

namespace hcf {
namespace {

using testing::rendered;
using testing::V;

TEST(Encoding, CoordinateOneIsLowestBit) {
  EXPECT_EQ(to_bitstring(3, Vertex{0b001}), "100");
  EXPECT_EQ(V("100").bits, 1u);
  EXPECT_EQ(V("011").bits, 0b110u);
  EXPECT_TRUE(bit(V("010"), 2));
  EXPECT_FALSE(bit(V("010"), 1));
  for (std::uint32_t b = 0; b < 32; ++b) {
    EXPECT_EQ(parse_bitstring(5, to_bitstring(5, Vertex{b})).bits, b);
  }
}

TEST(Encoding, RejectsMalformedStrings) {
  EXPECT_THROW(parse_bitstring(3, "10"), std::invalid_argument);
  EXPECT_THROW(parse_bitstring(2, "1x"), std::invalid_argument);
  EXPECT_THROW(check_dimension(kMaxDim + 1), std::out_of_range);
  EXPECT_THROW(check_vertex(2, Vertex{4}), std::invalid_argument);
}

TEST(Layer, SmallCases) {
  EXPECT_EQ(rendered(2, layer(2, 1)), (std::set<std::string>{"01", "10"}));
  EXPECT_EQ(rendered(3, layer(3, 0)), (std::set<std::string>{"000"}));
  EXPECT_EQ(layer(4, 2).size(), 6u);
  EXPECT_THROW(layer(3, 4), std::out_of_range);
  EXPECT_THROW(layer(3, -1), std::out_of_range);
}

TEST(Layer, SizesAreBinomial) {
  for (int d = 1; d <= 10; ++d) {
    std::size_t total = 0;
    std::size_t binom = 1;
    for (int i = 0; i <= d; ++i) {
      EXPECT_EQ(layer(d, i).size(), binom) << "d=" << d << " i=" << i;
      total += binom;
      binom = binom * static_cast<std::size_t>(d - i) / static_cast<std::size_t>(i + 1);
    }
    EXPECT_EQ(total, cube_size(d));
  }
}

TEST(Order, Precedes) {
  EXPECT_TRUE(precedes(V("00"), V("11")));
  EXPECT_FALSE(precedes(V("01"), V("10")));
  EXPECT_FALSE(precedes(V("10"), V("01")));
  EXPECT_FALSE(strictly_precedes(V("11"), V("11")));
  EXPECT_TRUE(precedes(V("11"), V("11")));
  EXPECT_THROW(precedes(2, Vertex{0}, Vertex{7}), std::invalid_argument);
}

TEST(Order, PrecedesMatchesCoordinatewiseDefinition) {
  const int d = 4;
  for (std::uint32_t x = 0; x < 16; ++x) {
    for (std::uint32_t y = 0; y < 16; ++y) {
      bool le = true;
      for (int c = 1; c <= d; ++c) le = le && (bit(Vertex{x}, c) <= bit(Vertex{y}, c));
      EXPECT_EQ(precedes(Vertex{x}, Vertex{y}), le);
      EXPECT_EQ(strictly_precedes(Vertex{x}, Vertex{y}), le && x != y);
    }
  }
}

TEST(Project, Examples) {
  EXPECT_EQ(project(2, V("00"), 1), V("10"));
  EXPECT_EQ(project(3, V("101"), 2), V("111"));
  EXPECT_THROW(project(3, V("101"), 0), std::out_of_range);
  EXPECT_THROW(project(3, V("101"), 4), std::out_of_range);
}

TEST(Project, InvolutionAndLayerBijection) {
  const int d = 5;
  for (std::uint32_t b = 0; b < 32; ++b) {
    for (int r = 1; r <= d; ++r) {
      EXPECT_EQ(project(d, project(d, Vertex{b}, r), r), Vertex{b});
    }
  }
  for (int i = 0; i <= d; ++i) {
    for (int r = 1; r <= d; ++r) {
      VertexList w;
      for (Vertex v : layer(d, i)) {
        if (!bit(v, r)) w.push_back(v);
      }
      VertexList img;
      for (Vertex v : w) img.push_back(project(d, v, r));
      EXPECT_EQ(sorted_unique(img).size(), w.size());
    }
  }
}

TEST(Edges, EdgeBetweenOrientsUpward) {
  const Edge e = edge_between(V("110"), V("100"));
  EXPECT_EQ(e.lo, V("100"));
  EXPECT_EQ(e.hi, V("110"));
  EXPECT_EQ(e.dim, 2);
  EXPECT_THROW(edge_between(V("100"), V("010")), std::invalid_argument);
  EXPECT_THROW(edge_between(V("100"), V("100")), std::invalid_argument);
}

TEST(Edges, FullCubeEdgeCount) {
  for (int d = 1; d <= 8; ++d) {
    std::size_t n = 0;
    for_each_edge(VertexMask(d, true), [&](const Edge& e) {
      EXPECT_EQ(layer_of(e.hi), layer_of(e.lo) + 1);
      EXPECT_EQ(e.hi.bits, e.lo.bits | (1u << (e.dim - 1)));
      ++n;
    });
    EXPECT_EQ(n, static_cast<std::size_t>(d) * cube_size(d) / 2);
  }
}

TEST(Mask, ComplementAndList) {
  VertexMask m(3, VertexList{V("000"), V("111")});
  EXPECT_EQ(m.size(), 2u);
  const VertexMask c = m.complement();
  EXPECT_EQ(c.size(), 6u);
  EXPECT_FALSE(c.contains(V("000")));
  EXPECT_TRUE(c.contains(V("010")));
  EXPECT_EQ(c.complement(), m);
  m.erase(V("000"));
  EXPECT_EQ(m.to_list(), VertexList{V("111")});
}

TEST(CoverGraph, Examples) {
  const CoverGraph a = cover_graph(2, {V("00")}, {V("11")});
  EXPECT_EQ(a.vertices.size(), 4u);
  EXPECT_EQ(a.edges.size(), 4u);
  EXPECT_EQ(a.src_layer, 0);
  EXPECT_EQ(a.dst_layer, 2);

  const CoverGraph b = cover_graph(2, {V("00")}, {V("01")});
  EXPECT_EQ(rendered(2, b.vertices), (std::set<std::string>{"00", "01"}));
  EXPECT_EQ(b.edges.size(), 1u);

  const CoverGraph c = cover_graph(3, {V("000")}, {V("011")});
  EXPECT_EQ(rendered(3, c.vertices), (std::set<std::string>{"000", "001", "010", "011"}));
  EXPECT_EQ(c.edges.size(), 4u);
}

TEST(CoverGraph, EmptyWhenNothingComparable) {
  const CoverGraph g = cover_graph(2, {V("10")}, {V("01")});
  EXPECT_TRUE(g.empty());
  EXPECT_TRUE(g.edges.empty());
  EXPECT_THROW(cover_graph(2, {}, {V("01")}), std::invalid_argument);
}

// Membership against the definition, for random S and T at d <= 4.
TEST(CoverGraph, MatchesBruteForceMembership) {
  std::mt19937_64 rng(11);
  for (int d = 1; d <= 4; ++d) {
    for (int trial = 0; trial < 200; ++trial) {
      VertexList S, T;
      for (std::uint32_t b = 0; b < cube_size(d); ++b) {
        if (rng() % 4 == 0) S.push_back(Vertex{b});
        if (rng() % 4 == 0) T.push_back(Vertex{b});
      }
      if (S.empty() || T.empty()) continue;
      const CoverGraph g = cover_graph(d, S, T);
      for (std::uint32_t b = 0; b < cube_size(d); ++b) {
        bool expect = false;
        for (Vertex s : S) {
          for (Vertex t : T) expect = expect || (precedes(s, Vertex{b}) && precedes(Vertex{b}, t));
        }
        EXPECT_EQ(g.contains(Vertex{b}), expect);
      }
      for (const Edge& e : g.edges) {
        EXPECT_TRUE(g.contains(e.lo));
        EXPECT_TRUE(g.contains(e.hi));
        EXPECT_EQ(edge_between(e.lo, e.hi), e);
      }
      std::size_t inside = 0;
      for_each_edge(VertexMask(d, true), [&](const Edge& e) {
        inside += g.contains(e.lo) && g.contains(e.hi);
      });
      EXPECT_EQ(inside, g.edges.size());
    }
  }
}

TEST(CoverGraph, LevelPairLayersAreSAndT) {
  const int d = 4;
  const VertexList S{V("1000"), V("0100")};
  const VertexList T{V("1110"), V("0111")};
  const CoverGraph g = cover_graph(d, S, T);
  VertexList bottom, top;
  for (Vertex v : g.vertices) {
    if (layer_of(v) == 1) bottom.push_back(v);
    if (layer_of(v) == 3) top.push_back(v);
  }
  EXPECT_EQ(bottom, sorted_unique(S));
  EXPECT_EQ(top, sorted_unique(T));
}

}  // namespace
}  // namespace hcf
