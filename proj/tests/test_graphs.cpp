// Copyright 2026 The gmeact Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <map>

#include "test_util.hpp"

namespace gmeact {
namespace {

using testing::max_abs_diff;

Graph path(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (std::size_t i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

Graph random_graph(std::size_t n, double p, Rng& rng) {
  Graph g(n);
  std::bernoulli_distribution coin(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

Graph random_bipartite(std::size_t n, Rng& rng) {
  std::vector<int> color(n);
  std::bernoulli_distribution coin(0.5);
  for (auto& c : color) c = coin(rng);
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (color[i] != color[j] && coin(rng)) g.add_edge(i, j);
  g.set_coloring(color);
  return g;
}

// Dense matrix of a Pauli string, column by column.
ComplexMatrix pauli_matrix(const StabilizerElement& s) {
  const std::size_t dim = std::size_t{1} << s.letters.size();
  ComplexMatrix m(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const auto col = apply_pauli(s, basis_vector(dim, c));
    for (std::size_t r = 0; r < dim; ++r) m(r, c) = col[r];
  }
  return m;
}

TEST(GraphState, SingleEdgeIsBellLike) {
  Graph g(2);
  g.add_edge(0, 1);
  // (|0+> + |1->)/sqrt2
  const double h = 0.5;
  const ComplexVector want = {h, h, h, -h};
  EXPECT_LT(max_abs_diff(graph_state(g), want), 1e-15);
}

TEST(GraphState, EmptyGraphIsPlusProduct) {
  const auto psi = graph_state(Graph(4));
  for (const auto& a : psi) EXPECT_NEAR(std::abs(a - cplx(0.25)), 0, 1e-15);
}

TEST(GraphState, StarWithHadamardLeavesIsGhz) {
  const double s = 1 / std::sqrt(2.0);
  const ComplexMatrix h = ComplexMatrix{{s, s}, {s, -s}};
  const auto u = kron(kron(ComplexMatrix::identity(2), h), h);
  const auto psi = matvec(u, graph_state(star(2)));
  EXPECT_LT(max_abs_diff(psi, ghz_basis_state(1, GhzSign::Plus)), 1e-14);
  for (const char* gen : {"ZZI", "XXX", "IZZ"}) {
    const auto v = apply_pauli({gen, 1}, psi);
    EXPECT_LT(max_abs_diff(v, psi), 1e-14) << gen;
  }
}

TEST(Stabilizers, SingleEdge) {
  Graph g(2);
  g.add_edge(0, 1);
  const auto s = stabilizers(g);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].letters, "XZ");
  EXPECT_EQ(s[1].letters, "ZX");
}

TEST(Stabilizers, GraphStateIsJointEigenvector) {
  Rng rng(41);
  for (int t = 0; t < 30; ++t) {
    const auto g = random_graph(1 + t % 8, 0.4, rng);
    const auto psi = graph_state(g);
    for (const auto& s : stabilizers(g)) EXPECT_LT(max_abs_diff(apply_pauli(s, psi), psi), 1e-10);
  }
}

TEST(Stabilizers, GeneratedGroupIsAbelianOfFullSize) {
  Rng rng(42);
  for (int t = 0; t < 5; ++t) {
    const auto g = random_graph(4, 0.5, rng);
    const auto gens = stabilizers(g);
    std::vector<ComplexMatrix> mats;
    for (const auto& s : gens) mats.push_back(pauli_matrix(s));
    std::vector<ComplexMatrix> group;
    for (std::size_t mask = 0; mask < (std::size_t{1} << gens.size()); ++mask) {
      ComplexMatrix m = ComplexMatrix::identity(16);
      for (std::size_t b = 0; b < gens.size(); ++b)
        if (mask >> b & 1) m = m * mats[b];
      for (const auto& other : group) EXPECT_GT(max_abs_diff(m, other), 0.5);
      group.push_back(m);
    }
    EXPECT_EQ(group.size(), 16u);
    for (const auto& a : group)
      for (const auto& b : group) EXPECT_LT(max_abs_diff(a * b, b * a), 1e-14);
  }
}

TEST(FuseEz, DisjointNeighborhoodsKeepUnion) {
  Graph g(5);
  g.add_edge(0, 2);
  g.add_edge(1, 3);
  g.add_edge(1, 4);
  const auto r = fuse_ez(g, 0, 1);
  EXPECT_EQ(r.graph.node_count(), 4u);
  EXPECT_EQ(r.graph.neighbors(0), (std::set<std::size_t>{1, 2, 3}));
  EXPECT_EQ(r.label_map[1], -1);
  EXPECT_EQ(r.label_map[4], 3);
}

TEST(FuseEz, IdenticalNeighborhoodsIsolateMergedNode) {
  Graph g(4);
  g.add_edge(0, 2);
  g.add_edge(0, 3);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  const auto r = fuse_ez(g, 0, 1);
  EXPECT_TRUE(r.graph.neighbors(0).empty());
}

TEST(FuseEz, RejectsAdjacentPair) {
  EXPECT_THROW(fuse_ez(path(2), 0, 1), std::invalid_argument);
}

TEST(FuseEz, RuleMatchesMatrixAction) {
  Rng rng(43);
  int checked = 0;
  while (checked < 30) {
    const std::size_t n = 2 + rng() % 7;
    const auto g = random_graph(n, 0.45, rng);
    const std::size_t i = rng() % n, j = rng() % n;
    if (i == j || g.adjacent(i, j)) continue;
    const auto fused = apply_fusion(graph_state(g), n, i, j, FusionKind::Z);
    const auto pr = proportionality(graph_state(fuse_ez(g, i, j).graph), fused);
    EXPECT_LT(pr.residual, 1e-10);
    EXPECT_GT(pr.scalar.real(), 0);
    EXPECT_NEAR(pr.scalar.imag(), 0, 1e-12);
    ++checked;
  }
}

TEST(FuseEx, TwoLeavesOfAStar) {
  const auto r = fuse_ex(star(2), 1, 2);
  Graph want(2);
  want.add_edge(0, 1);
  EXPECT_EQ(r.graph, want);
}

TEST(FuseEx, DifferentNeighborhoodsThrow) {
  EXPECT_THROW(fuse_ex(path(4), 0, 3), std::invalid_argument);
}

TEST(FuseEx, RuleMatchesMatrixAction) {
  Rng rng(44);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng() % 6;
    auto base = random_graph(n, 0.45, rng);
    // append a twin of node i so that the pair is admissible
    const std::size_t i = rng() % n;
    Graph g(n + 1);
    for (auto [a, b] : base.edges()) g.add_edge(a, b);
    for (auto v : base.neighbors(i)) g.add_edge(n, v);
    const auto fused = apply_fusion(graph_state(g), n + 1, i, n, FusionKind::X);
    const auto pr = proportionality(graph_state(fuse_ex(g, i, n).graph), fused);
    EXPECT_LT(pr.residual, 1e-10);
    EXPECT_GT(pr.scalar.real(), 0);
  }
}

TEST(TwoColorFuse, PathOfThree) {
  Graph g = path(3);
  g.set_coloring({0, 1, 0});
  const auto r = two_color_fuse(g);
  EXPECT_EQ(r.graph, g);
  EXPECT_LT(proportionality(graph_state(g), fuse_copies_vector(g, 2)).residual, 1e-12);
}

TEST(TwoColorFuse, SingleEdge) {
  Graph g = path(2);
  g.set_coloring({0, 1});
  EXPECT_EQ(two_color_fuse(g).graph, g);
  EXPECT_LT(proportionality(graph_state(g), fuse_copies_vector(g, 2)).residual, 1e-12);
}

TEST(TwoColorFuse, NeedsProperColoring) {
  Graph g = path(3);
  EXPECT_THROW(two_color_fuse(g), std::invalid_argument);
  g.set_coloring({0, 0, 1});
  EXPECT_THROW(two_color_fuse(g), std::invalid_argument);
}

TEST(TwoColorFuse, RandomFixedPoints) {
  Rng rng(45);
  for (int t = 0; t < 40; ++t) {
    const auto g = random_bipartite(1 + rng() % 7, rng);
    EXPECT_EQ(two_color_fuse(g).graph, g);
    EXPECT_LT(proportionality(graph_state(g), fuse_copies_vector(g, 2)).residual, 1e-10);
  }
}

TEST(TwoColorFuse, ThreeCopiesIterated) {
  Rng rng(46);
  for (int t = 0; t < 5; ++t) {
    const auto g = random_bipartite(1 + rng() % 4, rng);
    EXPECT_LT(proportionality(graph_state(g), fuse_copies_vector(g, 3)).residual, 1e-10);
  }
}

TEST(TwoColoring, FindsBipartitionOrRejects) {
  const auto c = find_two_coloring(path(5));
  ASSERT_TRUE(c);
  Graph p = path(5);
  p.set_coloring(*c);
  EXPECT_TRUE(p.coloring_is_proper());
  Graph tri(3);
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(0, 2);
  EXPECT_FALSE(find_two_coloring(tri));
}

TEST(Graph, Guards) {
  Graph g(3);
  EXPECT_THROW(g.add_edge(0, 0), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 3), std::out_of_range);
  EXPECT_THROW(graph_state(Graph(kMaxGraphNodes + 1)), std::invalid_argument);
}

}  // namespace
}  // namespace gmeact
