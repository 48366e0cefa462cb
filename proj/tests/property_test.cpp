// Corpus-wide invariants: determinant counts against the oracle, sign
// function soundness, and the compound-graph identities.

#include <gtest/gtest.h>

#include "matchkast/compound.hpp"
#include "matchkast/corpus.hpp"
#include "matchkast/kasteleyn.hpp"
#include "matchkast/oracle.hpp"
#include "matchkast/pbg_io.hpp"

using namespace matchkast;

namespace {

const std::vector<PlanarBipartiteGraph>& graphs() {
  static const auto g = graph_corpus(0, 300, 14);
  return g;
}

const std::vector<CompoundGraph>& compounds() {
  static const auto c = compound_corpus(0, 60);
  return c;
}

}  // namespace

TEST(Corpus, IsDeterministic) {
  auto a = graph_corpus(5, 20, 12), b = graph_corpus(5, 20, 12);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(write_pbg(a[i]), write_pbg(b[i]));
  EXPECT_EQ(compounds().size(), 60u);
}

TEST(Corpus, KasteleynMatchesOracle) {
  for (const auto& g : graphs()) {
    EXPECT_EQ(count_matchings(g), oracle_count(g)) << write_pbg(g);
  }
}

TEST(Corpus, EnumerationAgreesWithCount) {
  for (const auto& g : graphs()) {
    std::vector<RingElement> ones(g.edge_count(), RingElement(1));
    auto unit = g.with_weights(ones);
    EXPECT_EQ(Integer(enumerate_matchings(unit).size()), oracle_count(unit).constant_term());
  }
}

TEST(Corpus, ConstructedSignsVerify) {
  for (const auto& g : graphs()) {
    auto r = verify_sign_function(g, construct_sign_function(g), 1'000'000);
    EXPECT_TRUE(r.passed()) << write_pbg(g);
    if (g.vertex_count() <= 12) {
      EXPECT_EQ(*r.find("exhaustive"), "yes");
    }
  }
}

TEST(Corpus, MirrorPreservesCounts) {
  for (std::size_t i = 0; i < graphs().size(); i += 3) {
    const auto& g = graphs()[i];
    EXPECT_EQ(mirror(mirror(g)), g);
    EXPECT_EQ(count_matchings(mirror(g)), count_matchings(g));
  }
}

TEST(Corpus, DeletingAnEdgeNeverIncreasesTheCount) {
  for (std::size_t i = 0; i < graphs().size(); i += 5) {
    const auto& g = graphs()[i];
    std::vector<RingElement> ones(g.edge_count(), RingElement(1));
    auto unit = g.with_weights(ones);
    Integer full = count_matchings(unit).evaluate_at_ones();
    for (std::size_t drop = 0; drop < unit.edge_count(); ++drop) {
      std::vector<bool> keep_edge(unit.edge_count(), true);
      keep_edge[drop] = false;
      auto h = subgraph(unit, std::vector<bool>(unit.vertex_count(), true), keep_edge);
      EXPECT_LE(count_matchings(h).evaluate_at_ones(), full);
    }
  }
}

TEST(Compounds, CountsMatchOracle) {
  for (const auto& c : compounds()) {
    if (c.graph.vertex_count() > 30) continue;
    EXPECT_EQ(count_matchings(c.graph), oracle_count(c.graph)) << write_pbg(c.graph);
  }
}

TEST(Compounds, ComposedSignsVerifyAndRestrict) {
  std::size_t faithful = 0;
  for (const auto& c : compounds()) {
    ReducedGraph r = reduced_graph(c);
    SignFunction sb = construct_sign_function(c.base), sr = construct_sign_function(r.graph);
    if (!faces_correspond(c, r)) {
      try {
        compose_sign_function(c, r, sb, sr);
        ADD_FAILURE() << "composition accepted an unfaithful embedding";
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnfaithfulEmbedding);
      }
      continue;
    }
    ++faithful;
    SignFunction sf = compose_sign_function(c, r, sb, sr);
    EXPECT_TRUE(verify_sign_function(c.graph, sf, 20000).passed()) << write_pbg(c.graph);
    EXPECT_EQ(restrict_to_base(c, sf), sb);
    EXPECT_EQ(restrict_to_reduced(r, sf), sr);
    // The other direction: restricting and composing again is the identity.
    EXPECT_EQ(compose_sign_function(c, r, restrict_to_base(c, sf), restrict_to_reduced(r, sf)), sf);
  }
  EXPECT_GE(faithful, compounds().size() / 3);
}

TEST(Compounds, StandardSignIsValidEverywhere) {
  for (const auto& c : compounds()) {
    ReducedGraph r = reduced_graph(c);
    SignFunction sb = construct_sign_function(c.base);
    SignFunction sf = standard_sign(c, r);
    EXPECT_TRUE(verify_sign_function(c.graph, sf, 20000).passed()) << write_pbg(c.graph);
    EXPECT_EQ(restrict_to_base(c, sf), sb);
    // Where the faces correspond it is the plain composition.
    if (faces_correspond(c, r)) {
      EXPECT_EQ(sf, compose_sign_function(c, r, sb, construct_sign_function(r.graph)));
    }
  }
}

TEST(Compounds, CorruptedStemSignFails) {
  for (const auto& c : compounds()) {
    ReducedGraph r = reduced_graph(c);
    SignFunction sf = standard_sign(c, r);
    // A stem edge between two different faces of H, at least one bounded;
    // flipping it breaks the sign condition there.
    Faces hf = trace_faces(c.graph);
    std::optional<std::size_t> stem_edge;
    for (std::size_t p : c.stems)
      for (std::size_t e : c.graph.rotation(p)) {
        std::size_t f1 = hf.face_of[2 * e], f2 = hf.face_of[2 * e + 1];
        if (f1 != f2 && !(hf.walks[f1].is_outer && hf.walks[f2].is_outer)) stem_edge = e;
      }
    if (!stem_edge) continue;
    sf.flip(*stem_edge);
    EXPECT_FALSE(verify_sign_function(c.graph, sf, 0).passed());
  }
}

TEST(Compounds, ReducedGraphShape) {
  for (const auto& c : compounds()) {
    ReducedGraph r = reduced_graph(c);
    EXPECT_EQ(r.graph.vertex_count(), c.supergraph.vertex_count() + c.stems.size() + c.leaves.size());
    EXPECT_EQ(r.graph.edge_count(), 2 * c.stems.size() + c.leaves.size());
  }
}

TEST(Compounds, ZeroSumOnEveryFamily) {
  for (const auto& c : compounds())
    for (std::size_t l : c.leaves) {
      Family fam = family(c, c.graph.vertex(l).id);
      EXPECT_EQ(fam.members.size(), c.supergraph.vertex_count());
      auto rep = verify_zero_sum(fam);
      EXPECT_TRUE(rep.passed()) << write_pbg(c.graph);
    }
}

TEST(Compounds, Divisibility) {
  for (const auto& c : compounds()) {
    auto rep = verify_divisibility(c);
    EXPECT_TRUE(rep.passed()) << write_pbg(c.graph);
  }
}

TEST(Compounds, OddLeavesIffAllPlusReducedSignIsValid) {
  for (const auto& c : compounds()) {
    ReducedGraph r = reduced_graph(c);
    SignFunction plus(r.graph.edge_count());
    bool odd = check_odd_leaves(c, r);
    EXPECT_EQ(odd, verify_sign_function(r.graph, plus, 0).passed());
    if (odd && faces_correspond(c, r)) {
      SignFunction sf = compose_sign_function(c, r, construct_sign_function(c.base), plus);
      EXPECT_EQ(sign_weight(c, sf), c.graph);
    }
  }
}

TEST(Compounds, StemWeightsScaleTheCount) {
  for (std::size_t i = 0; i < compounds().size(); i += 4) {
    const auto& c = compounds()[i];
    std::vector<RingElement> w;
    for (std::size_t e = 0; e < c.graph.edge_count(); ++e) {
      bool stem_edge = c.is_stem(c.graph.edge(e).black);
      w.push_back(stem_edge ? c.graph.edge(e).weight * RingElement::variable("t") : c.graph.edge(e).weight);
    }
    RingElement plain = count_matchings(c.graph);
    RingElement scaled = count_matchings(c.graph.with_weights(w));
    // Each stem is matched exactly once, through one of its two edges.
    EXPECT_EQ(scaled, plain * pow(RingElement::variable("t"), static_cast<unsigned>(c.stems.size())));
  }
}
