#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "matchkast/kasteleyn.hpp"
#include "matchkast/oracle.hpp"
#include "matchkast/sign_function.hpp"

using namespace matchkast;

namespace {

const FaceWalk& only_inner(const Faces& f) {
  for (const auto& w : f.walks)
    if (!w.is_outer) return w;
  throw std::logic_error("no inner face");
}

SignFunction signs(const PlanarBipartiteGraph& g, std::initializer_list<std::pair<const char*, int>> minus) {
  SignFunction sf(g.edge_count());
  for (auto [id, v] : minus) sf.values[g.edge_index(id)] = static_cast<std::int8_t>(v);
  return sf;
}

}  // namespace

TEST(FaceSign, FourCycle) {
  auto g = fixtures::four_cycle();
  Faces f = trace_faces(g);
  auto all_plus = face_sign_product(g, SignFunction(4), only_inner(f));
  EXPECT_EQ(all_plus.product, 1);
  EXPECT_FALSE(all_plus.positive);
  auto one_minus = face_sign_product(g, signs(g, {{"e12", -1}}), only_inner(f));
  EXPECT_EQ(one_minus.product, -1);
  EXPECT_TRUE(one_minus.positive);
}

TEST(FaceSign, OuterFaceRejected) {
  auto g = fixtures::four_cycle();
  Faces f = trace_faces(g);
  try {
    face_sign_product(g, SignFunction(4), f.walks[f.face_of[g.outer_darts()[0]]]);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OuterFaceGiven);
  }
}

TEST(FaceSign, HexagonWithTreesAllPatterns) {
  // Tree edges are doubled in the walk, so positivity depends only on the
  // hexagon: it must multiply to (-1)^(6-1) = -1.
  auto g = fixtures::hexagon_with_trees();
  Faces f = trace_faces(g);
  const char* hex[] = {"h01", "h12", "h23", "h34", "h45", "h50"};
  const char* tree[] = {"t16", "t08", "t87"};
  int positive_patterns = 0;
  for (int mask = 0; mask < 512; ++mask) {
    SignFunction sf(g.edge_count());
    int hex_product = 1;
    for (int i = 0; i < 6; ++i)
      if (mask >> i & 1) {
        sf.values[g.edge_index(hex[i])] = -1;
        hex_product = -hex_product;
      }
    for (int i = 0; i < 3; ++i)
      if (mask >> (6 + i) & 1) sf.values[g.edge_index(tree[i])] = -1;
    auto r = face_sign_product(g, sf, only_inner(f));
    EXPECT_EQ(r.product, hex_product);
    EXPECT_EQ(r.positive, hex_product == -1);
    positive_patterns += r.positive;
  }
  EXPECT_EQ(positive_patterns, 256);
}

TEST(VerifySign, Examples) {
  auto c4 = fixtures::four_cycle();
  EXPECT_EQ(verify_sign_function(c4, signs(c4, {{"e01", -1}})).status, Status::Pass);
  auto g23 = fixtures::grid(2, 3);
  auto bad = verify_sign_function(g23, SignFunction(g23.edge_count()));
  EXPECT_EQ(bad.status, Status::Fail);
  EXPECT_FALSE(bad.reproducer.empty());
}

TEST(VerifySign, ThreeByThreeBoundaryCycle) {
  auto g = fixtures::grid(3, 3);
  SignFunction sf = construct_sign_function(g);
  auto report = verify_sign_function(g, sf);
  EXPECT_EQ(report.status, Status::Pass);
  // Boundary 8-cycle enclosing the centre: product (-1)^(4+1-1) = +1.
  Faces f = trace_faces(g);
  int product = 1;
  for (std::size_t d : f.walks[f.face_of[g.outer_darts()[0]]].darts) product *= sf[g.dart_edge(d)];
  EXPECT_EQ(product, 1);
}

TEST(ConstructSign, TreeIsAllPlus) {
  auto g = parse_pbg("pbg v1\nvertex a b\nvertex b w\nvertex c b\nedge e a b 1\nedge f c b 1\nrot a e\nrot b e f\nrot c f\n");
  EXPECT_EQ(construct_sign_function(g), SignFunction(2));
  EXPECT_EQ(verify_sign_function(g, SignFunction(2)).status, Status::Vacuous);
}

TEST(ConstructSign, FourCycleHasOddMinusCount) {
  auto g = fixtures::four_cycle();
  SignFunction sf = construct_sign_function(g);
  int minus = 0;
  for (auto v : sf.values) minus += v < 0;
  EXPECT_TRUE(minus == 1 || minus == 3);
  EXPECT_TRUE(verify_sign_function(g, sf).passed());
}

TEST(ConstructSign, FourByFourGridAllCycles) {
  auto g = fixtures::grid(4, 4);
  auto report = verify_sign_function(g, construct_sign_function(g), 10'000'000);
  EXPECT_EQ(report.status, Status::Pass);
  EXPECT_EQ(*report.find("inner_faces"), "9");
  EXPECT_EQ(*report.find("exhaustive"), "yes");
}

TEST(SimpleCycles, CountsOnSmallGrids) {
  // Simple cycles of the 2x3 grid: two squares plus the outer 6-cycle.
  auto g = fixtures::grid(2, 3);
  std::size_t n = 0;
  for_each_simple_cycle(g, [&](const std::vector<std::size_t>&) { return ++n, true; });
  EXPECT_EQ(n, 3u);
  // 3x3 grid: 4 unit squares, 4 dominoes (2x1), 4 L-shapes, 1 full boundary.
  g = fixtures::grid(3, 3);
  n = 0;
  for_each_simple_cycle(g, [&](const std::vector<std::size_t>&) { return ++n, true; });
  EXPECT_EQ(n, 13u);
}

TEST(KasteleynMatrix, SingleEdge) {
  auto g = fixtures::single_edge("w");
  auto k = kasteleyn_matrix(g, SignFunction(1));
  ASSERT_EQ(k.row_count(), 1u);
  EXPECT_EQ(k.at(0, 0), RingElement::variable("w"));
}

TEST(KasteleynMatrix, FourCycleDeterminant) {
  auto g = fixtures::four_cycle("a", "b", "c", "d");
  auto k = kasteleyn_matrix(g, signs(g, {{"e30", -1}}));
  EXPECT_EQ(k.rows, (std::vector<std::string>{"v0", "v2"}));
  EXPECT_EQ(k.cols, (std::vector<std::string>{"v1", "v3"}));
  RingElement det = determinant(k);
  RingElement expect = RingElement::parse("a*c+b*d");
  EXPECT_TRUE(det == expect || det == -expect) << det;
}

TEST(KasteleynMatrix, Unbalanced) {
  auto g = parse_pbg("pbg v1\nvertex a b\nvertex b w\nvertex c b\nedge e a b 1\nedge f c b 1\nrot a e\nrot b e f\nrot c f\n");
  try {
    kasteleyn_matrix(g, SignFunction(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnbalancedColors);
  }
  EXPECT_TRUE(count_matchings(g).is_zero());
}

TEST(Count, Examples) {
  EXPECT_EQ(count_matchings(fixtures::single_edge()), RingElement(1));
  EXPECT_EQ(count_matchings(fixtures::grid(2, 2)), RingElement(2));
  EXPECT_EQ(count_matchings(fixtures::grid(3, 4)), RingElement(11));
  EXPECT_EQ(count_matchings(fixtures::four_cycle("a", "b", "c", "d")), RingElement::parse("a*c+b*d"));
}

TEST(Count, SignFunctionInvariance) {
  // Flipping every edge at one vertex keeps a sign function valid; the
  // normalized count must not move.
  auto g = fixtures::grid(3, 4);
  std::vector<RingElement> w;
  for (std::size_t e = 0; e < g.edge_count(); ++e) w.push_back(RingElement::variable("x" + std::to_string(e)));
  g = g.with_weights(w);
  SignFunction base = construct_sign_function(g);
  RingElement expect = count_matchings(g, base);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    SignFunction sf = base;
    for (std::size_t e : g.rotation(v)) sf.flip(e);
    ASSERT_TRUE(verify_sign_function(g, sf).passed());
    EXPECT_EQ(count_matchings(g, sf), expect);
  }
}

TEST(Oracle, Examples) {
  EXPECT_EQ(enumerate_matchings(fixtures::single_edge()).size(), 1u);
  EXPECT_EQ(enumerate_matchings(fixtures::grid(2, 2)).size(), 2u);
  EXPECT_EQ(enumerate_matchings(fixtures::grid(2, 3)).size(), 3u);
  EXPECT_EQ(oracle_count(fixtures::single_edge("x")), RingElement::variable("x"));
  EXPECT_EQ(oracle_count(fixtures::four_cycle("a", "b", "c", "d")), RingElement::parse("a*c+b*d"));
  EXPECT_TRUE(oracle_count(fixtures::grid(3, 3)).is_zero());
}

TEST(Oracle, MatchingsAreDistinctAndPerfect) {
  auto g = fixtures::grid(4, 4);
  auto all = enumerate_matchings(g);
  EXPECT_EQ(all.size(), 36u);
  std::set<std::vector<std::size_t>> distinct;
  for (const auto& m : all) {
    distinct.insert(m.edges);
    std::vector<int> cover(g.vertex_count(), 0);
    for (std::size_t e : m.edges) {
      ++cover[g.edge(e).black];
      ++cover[g.edge(e).white];
    }
    EXPECT_TRUE(std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; }));
  }
  EXPECT_EQ(distinct.size(), all.size());
}

TEST(Oracle, BudgetExceeded) {
  try {
    oracle_count(fixtures::grid(6, 6), 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}
