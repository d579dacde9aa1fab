#include <gtest/gtest.h>

#include "support.hpp"

using namespace qbmg;
using namespace qbmg::testing;

namespace {

// Direct readings of the axioms, quantifying over all vertex tuples.

bool n1_oracle(const ColoredDigraph& g) {
  const Index n = static_cast<Index>(g.size());
  for (Index u = 0; u < n; ++u)
    for (Index v = 0; v < n; ++v) {
      if (u == v || g.adjacent(u, v)) continue;
      for (Index w = 0; w < n; ++w)
        for (Index t = 0; t < n; ++t)
          if (g.has_edge(u, t) && g.has_edge(v, w) && g.has_edge(t, w)) return false;
    }
  return true;
}

bool n3_oracle(const ColoredDigraph& g) {
  for (Index u = 0; u < g.size(); ++u)
    for (Index v = 0; v < g.size(); ++v) {
      if (u == v) continue;
      bool common = false, u_in_v = true, v_in_u = true;
      for (Index x = 0; x < g.size(); ++x) {
        common = common || (g.has_edge(u, x) && g.has_edge(v, x));
        if (g.has_edge(u, x) && !g.has_edge(v, x)) u_in_v = false;
        if (g.has_edge(v, x) && !g.has_edge(u, x)) v_in_u = false;
      }
      if (common && !u_in_v && !v_in_u) return false;
    }
  return true;
}

std::vector<Index> indices(const ColoredDigraph& g, const std::vector<VertexId>& w) {
  std::vector<Index> out;
  for (const auto& v : w) out.push_back(g.index_of(v));
  return out;
}

}  // namespace

TEST(N1, ViolatingConfigurationReportsWitness) {
  ColoredDigraph g = graph({"u", "w"}, {"v", "t"}, {{"u", "t"}, {"t", "w"}, {"v", "w"}});
  Verdict r = check_n1(g);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.witness, (std::vector<VertexId>{vid("u"), vid("v"), vid("w"), vid("t")}));
}

TEST(N1, HoldsOnSmallExamples) {
  EXPECT_TRUE(check_n1(graph({"a"}, {"b"}, {{"a", "b"}, {"b", "a"}})).holds);
  EXPECT_TRUE(check_n1(load_fixture("two_layer_m4.qbmg")).holds);
}

TEST(N2, ChainWithoutChordFails) {
  ColoredDigraph g = graph({"u1", "u2"}, {"w1", "w2"}, {{"u1", "w1"}, {"w1", "u2"}, {"u2", "w2"}});
  Verdict r = check_n2(g);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.witness, (std::vector<VertexId>{vid("u1"), vid("w1"), vid("u2"), vid("w2")}));
}

TEST(N2, OrbitQuotientPathAndN2TrivialConstructionHold) {
  EXPECT_TRUE(check_n2(load_fixture("orbit_quotient_path.qbmg")).holds);
  ColoredDigraph g = load_fixture("n2_trivial_m4.qbmg");
  EXPECT_TRUE(check_n2(g).holds);
  EXPECT_TRUE(triviality(g).n2);
}

TEST(N2, WalkAndPathReadingsAgreeOnExhaustivePool) {
  std::size_t graphs = 0;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for_each_bipartite(a, b, [&](const ColoredDigraph& g) {
        ++graphs;
        ASSERT_EQ(check_n2(g).holds, n2_path_reading(g)) << format_qbmg(g);
      });
  EXPECT_EQ(graphs, 270763u);
}

TEST(N3, IncomparableOverlappingOutSetsFail) {
  ColoredDigraph g = graph({"u1", "u2"}, {"w1", "w2", "w3"},
                           {{"u1", "w1"}, {"u1", "w2"}, {"u2", "w1"}, {"u2", "w3"}});
  Verdict r = check_n3(g);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.witness, (std::vector<VertexId>{vid("u1"), vid("u2")}));
  EXPECT_TRUE(check_n3(complete_symmetric(3, 2)).holds);
}

TEST(N3Star, DirectEvaluations) {
  EXPECT_TRUE(check_n3star(graph({"u1", "u2"}, {"w1", "w2"}, {{"u1", "w1"}, {"u2", "w1"}, {"u1", "w2"}})).holds);
  Verdict r = check_n3star(graph({"u1", "u2"}, {"w1", "w2"}, {{"u1", "w1"}, {"u2", "w1"}, {"w2", "u1"}}));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.witness, (std::vector<VertexId>{vid("u1"), vid("u2")}));
  EXPECT_TRUE(check_n3star(graph({"a"}, {"b"}, {})).holds);
}

TEST(Axioms, CheckersMatchDirectReadingsOnExhaustivePool) {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for_each_bipartite(a, b, [&](const ColoredDigraph& g) {
        ASSERT_EQ(check_n1(g).holds, n1_oracle(g)) << format_qbmg(g);
        ASSERT_EQ(check_n3(g).holds, n3_oracle(g)) << format_qbmg(g);
      });
}

TEST(Axioms, RoutesAgreeOnExhaustivePool) {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for_each_bipartite(a, b, [&](const ColoredDigraph& g) {
        AxiomReport r = axiom_report(g);
        ASSERT_EQ(r.is_2qbmg, r.n1.holds && r.n2.holds && r.n3star.holds) << format_qbmg(g);
      });
}

TEST(Axioms, WitnessesReplayAgainstTheDefinitions) {
  std::mt19937_64 rng(5);
  std::size_t replayed = 0;
  for (int k = 0; k < 3000; ++k) {
    ColoredDigraph g = random_bipartite(3, 4, rng);
    AxiomReport r = axiom_report(g);
    if (!r.n1.holds) {
      auto x = indices(g, r.n1.witness);  // u, v, w, t
      ASSERT_EQ(x.size(), 4u);
      EXPECT_TRUE(x[0] != x[1] && !g.adjacent(x[0], x[1]));
      EXPECT_TRUE(g.has_edge(x[0], x[3]) && g.has_edge(x[1], x[2]) && g.has_edge(x[3], x[2]));
      ++replayed;
    }
    if (!r.n2.holds) {
      auto x = indices(g, r.n2.witness);
      EXPECT_TRUE(g.has_edge(x[0], x[1]) && g.has_edge(x[1], x[2]) && g.has_edge(x[2], x[3]));
      EXPECT_FALSE(g.has_edge(x[0], x[3]));
      ++replayed;
    }
    if (!r.n3.holds) {
      auto x = indices(g, r.n3.witness);
      ASSERT_EQ(x.size(), 2u);
      EXPECT_LT(x[0], x[1]);
      bool common = false, u_in_v = true, v_in_u = true;
      for (Index y = 0; y < g.size(); ++y) {
        common = common || (g.has_edge(x[0], y) && g.has_edge(x[1], y));
        u_in_v = u_in_v && (!g.has_edge(x[0], y) || g.has_edge(x[1], y));
        v_in_u = v_in_u && (!g.has_edge(x[1], y) || g.has_edge(x[0], y));
      }
      EXPECT_TRUE(common && !u_in_v && !v_in_u);
      ++replayed;
    }
  }
  EXPECT_GT(replayed, 1000u);
}

TEST(Membership, BlowUpFixtures) {
  AxiomReport base = axiom_report(load_fixture("blowup_base.qbmg"));
  EXPECT_TRUE(base.is_2qbmg);
  EXPECT_TRUE(base.proper);
  EXPECT_FALSE(base.trivial.n1);
  EXPECT_TRUE(is_2qbmg(load_fixture("blowup_g1.qbmg")));
  EXPECT_TRUE(is_2qbmg(load_fixture("blowup_g12.qbmg")));
  EXPECT_FALSE(is_2qbmg(load_fixture("negative/simultaneous_blowup.qbmg")));
  EXPECT_FALSE(is_2qbmg(load_fixture("negative/n1_configuration.qbmg")));
  EXPECT_FALSE(is_2qbmg(load_fixture("negative/open_chain.qbmg")));
}

TEST(Membership, EmptyGraphIsTrivial) {
  AxiomReport r = axiom_report(load_fixture("empty.qbmg"));
  EXPECT_TRUE(r.is_2qbmg);
  EXPECT_TRUE(r.trivial.all());
  EXPECT_FALSE(r.proper);
}

TEST(Membership, HereditaryOnInducedSubgraphs) {
  std::mt19937_64 rng(9);
  for (const auto& e : fixture_corpus()) {
    ASSERT_TRUE(is_2qbmg(e.g)) << e.name;
    for (int k = 0; k < 20; ++k) {
      std::vector<Index> keep;
      for (Index v = 0; v < e.g.size(); ++v)
        if (rng() % 3) keep.push_back(v);
      EXPECT_TRUE(is_2qbmg(induced_subgraph_indices(e.g, keep))) << e.name;
    }
  }
}

TEST(Star, SymmetricEdgesFormAMatching) {
  EXPECT_TRUE(satisfies_star(load_fixture("blowup_base.qbmg")).holds);
  Verdict r = satisfies_star(complete_symmetric(2, 3));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.witness.front(), vid("u1"));
  EXPECT_TRUE(satisfies_star(load_fixture("k22_oriented.qbmg")).holds);
}

TEST(Thin, Examples) {
  EXPECT_TRUE(is_thin(load_fixture("two_layer_m4.qbmg")));
  EXPECT_FALSE(is_thin(load_fixture("blowup_g1.qbmg")));
  EXPECT_TRUE(is_thin(graph({"a"}, {}, {})));
}
