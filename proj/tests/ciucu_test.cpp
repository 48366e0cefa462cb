#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "matchkast/ciucu.hpp"
#include "matchkast/oracle.hpp"

using namespace matchkast;

namespace {

std::string fig_id(int x, int y) { return "p" + std::to_string(x) + "_" + std::to_string(y); }

// Left block of the picture: x in 0..4, y in 0..7, without (0,7). Black
// where x + y is even, as drawn.
PlanarBipartiteGraph figure_eight_half() {
  Drawing d;
  auto in = [](int x, int y) { return x >= 0 && x <= 4 && y >= 0 && y <= 7 && !(x == 0 && y == 7); };
  for (int x = 0; x <= 4; ++x)
    for (int y = 0; y <= 7; ++y)
      if (in(x, y)) d.points.push_back({fig_id(x, y), (x + y) % 2 == 0 ? Color::Black : Color::White, double(x), double(y)});
  auto add = [&](std::string id, int x0, int y0, int x1, int y1) {
    d.segments.push_back({std::move(id), fig_id(x0, y0), fig_id(x1, y1)});
  };
  for (int x = 0; x <= 4; ++x)
    for (int y = 0; y <= 7; ++y) {
      if (!in(x, y)) continue;
      if (in(x + 1, y)) add("h" + fig_id(x, y), x, y, x + 1, y);
      if (in(x, y + 1)) add("v" + fig_id(x, y), x, y, x, y + 1);
    }
  return d.build();
}

const char* kFigureEightAxis = "L1:p4_0 S:p4_2 L1:p4_3 S:p4_4 L2:p4_6 S:p4_7";

// The whole pictured graph, straight from the figure: the 11 x 8 grid with
// four vertices and the erased unit segments removed.
PlanarBipartiteGraph figure_eight_drawn() {
  std::set<std::pair<int, int>> gone = {{0, 7}, {10, 7}, {5, 1}, {5, 5}};
  std::set<std::pair<int, int>> no_h = {{0, 7}, {9, 7}, {4, 6}, {4, 5}, {5, 5}, {5, 3}, {4, 1}, {5, 1}, {5, 0}};
  std::set<std::pair<int, int>> no_v = {{0, 6}, {10, 6}, {5, 0}, {5, 1}, {5, 2}, {5, 3}, {5, 4}, {5, 5}, {5, 6}};
  Drawing d;
  for (int x = 0; x <= 10; ++x)
    for (int y = 0; y <= 7; ++y)
      if (!gone.count({x, y}))
        d.points.push_back({fig_id(x, y), (x + y) % 2 == 0 ? Color::Black : Color::White, double(x), double(y)});
  for (int x = 0; x <= 10; ++x)
    for (int y = 0; y <= 7; ++y) {
      if (gone.count({x, y})) continue;
      if (x < 10 && !gone.count({x + 1, y}) && !no_h.count({x, y}))
        d.segments.push_back({"h" + fig_id(x, y), fig_id(x, y), fig_id(x + 1, y)});
      if (y < 7 && !gone.count({x, y + 1}) && !no_v.count({x, y}))
        d.segments.push_back({"v" + fig_id(x, y), fig_id(x, y), fig_id(x, y + 1)});
    }
  return d.build();
}

template <class F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    FAIL() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

int stem_product(const SymmetricCompound& sc, const SignFunction& sf, const std::string& stem) {
  const auto& H = sc.graph();
  return sf[H.edge_index(stem + "-X")] * sf[H.edge_index(stem + "-Y")];
}

}  // namespace

TEST(AxisSpec, RoundTrip) {
  auto spec = AxisSpec::parse("L1:a, S:b@c3  L2:c");
  ASSERT_EQ(spec.entries.size(), 3u);
  EXPECT_EQ(spec.entries[0].role, AxisRole::Leaf);
  EXPECT_EQ(spec.entries[0].side, 1);
  EXPECT_EQ(spec.entries[1].role, AxisRole::Stem);
  EXPECT_EQ(spec.entries[1].corner, std::optional<std::size_t>(3));
  EXPECT_EQ(spec.entries[2].side, 2);
  EXPECT_EQ(spec.to_string(), "L1:a S:b@c3 L2:c");
  EXPECT_EQ(AxisSpec::parse(spec.to_string()).entries, spec.entries);
}

TEST(AxisSpec, BadTokens) {
  for (const char* bad : {"Q:a", "S", "S:", "L3:a", "S:a@x1", "S:a@c1.2"})
    expect_error(ErrorCode::Parse, [&] { AxisSpec::parse(bad); });
}

TEST(BuildSymmetric, SingleEdgeStemAndLeaf) {
  auto sc = build_symmetric(fixtures::single_edge(), "S:b L1:a");
  EXPECT_EQ(sc.graph().vertex_count(), 6u);
  EXPECT_EQ(sc.w, 1u);
  EXPECT_EQ(sc.axis[0].color, Color::Black);
  EXPECT_EQ(sc.axis[1].color, Color::White);
  EXPECT_TRUE(sc.graph().balanced());
  EXPECT_EQ(count_matchings(sc.graph()), oracle_count(sc.graph()));
}

TEST(BuildSymmetric, Errors) {
  auto e = fixtures::single_edge();
  expect_error(ErrorCode::NonAlternating, [&] { build_symmetric(e, "S:b S:b L1:a"); });
  expect_error(ErrorCode::NonAlternating, [&] { build_symmetric(e, "S:b L1:a S:b"); });
  expect_error(ErrorCode::ColorImbalance, [&] { build_symmetric(e, "S:b L1:b"); });
  expect_error(ErrorCode::NotOuterFace, [&] { build_symmetric(fixtures::grid(3, 3), "S:g1_1 L1:g0_0"); });
  expect_error(ErrorCode::NotOuterFace, [&] { build_symmetric(e, "S:b@c0 L1:a"); });
  expect_error(ErrorCode::DanglingReference, [&] { build_symmetric(e, "S:zz L1:a"); });
}

TEST(BuildSymmetric, AxisMustFollowTheBoundary) {
  auto g = fixtures::four_cycle();
  auto corners = outer_corners(g);
  ASSERT_EQ(corners.size(), 4u);
  auto tok = [&](std::size_t k) { return "S:" + g.vertex(corners[k].vertex).id + "@c" + std::to_string(k); };
  // Walk order (either direction) is fine; a crossing order is not.
  EXPECT_NO_THROW(build_symmetric(g, tok(0) + " " + tok(1) + " " + tok(2) + " " + tok(3)));
  EXPECT_NO_THROW(build_symmetric(g, tok(3) + " " + tok(2) + " " + tok(1) + " " + tok(0)));
  expect_error(ErrorCode::NotGenusZero, [&] { build_symmetric(g, tok(0) + " " + tok(2) + " " + tok(1) + " " + tok(3)); });
}

TEST(BuildSymmetric, FigureEight) {
  auto half = figure_eight_half();
  EXPECT_EQ(half.vertex_count(), 39u);
  EXPECT_FALSE(half.balanced());
  auto sc = build_symmetric(half, kFigureEightAxis);
  EXPECT_EQ(sc.graph().vertex_count(), 84u);
  EXPECT_EQ(sc.w, 3u);
  std::vector<Color> colors;
  for (const auto& a : sc.axis) colors.push_back(a.color);
  EXPECT_EQ(colors, (std::vector<Color>{Color::White, Color::White, Color::Black, Color::White, Color::White,
                                        Color::Black}));
  // Every bounded reduced face is 6-sided and holds one leaf.
  ReducedGraph r = reduced_graph(sc.compound);
  Faces f = trace_faces(r.graph);
  std::size_t bounded = 0;
  for (const auto& w : f.walks)
    if (!w.is_outer) {
      ++bounded;
      EXPECT_EQ(w.darts.size(), 6u);
    }
  EXPECT_EQ(bounded, 2u);
  for (std::size_t n : leaves_per_inner_face(sc.compound, r)) EXPECT_EQ(n, 1u);
}

TEST(BuildSymmetric, FigureEightMatchesThePicture) {
  auto sc = build_symmetric(figure_eight_half(), kFigureEightAxis);
  auto drawn = figure_eight_drawn();
  EXPECT_EQ(drawn.vertex_count(), 84u);
  EXPECT_EQ(drawn.edge_count(), sc.graph().edge_count());
  EXPECT_EQ(count_matchings(sc.graph()), count_matchings(drawn));
  EXPECT_EQ(count_matchings(drawn).evaluate_at_ones(), 4753326);
}

TEST(CiucuSign, BlackStemsShareASign) {
  // Half b-w-b-w path; stems at the white ends are black.
  Drawing d;
  d.points = {{"a", Color::Black, 0, 0}, {"b", Color::White, 1, 0}, {"c", Color::Black, 2, 0}, {"d", Color::White, 3, 0}};
  d.segments = {{"ab", "a", "b"}, {"bc", "b", "c"}, {"cd", "c", "d"}};
  auto half = d.build();
  auto sc = build_symmetric(half, "S:b L1:a S:d L2:c");
  auto sf = ciucu_sign_function(sc);
  EXPECT_EQ(stem_product(sc, sf, sc.axis[0].id), 1);
  EXPECT_EQ(stem_product(sc, sf, sc.axis[2].id), 1);
  EXPECT_TRUE(verify_sign_function(sc.graph(), sf).passed());
}

TEST(CiucuSign, WhiteStemIsOpposite) {
  auto sc = build_symmetric(figure_eight_half(), kFigureEightAxis);
  auto sf = ciucu_sign_function(sc);
  for (const auto& a : sc.axis) {
    if (a.role != AxisRole::Stem) continue;
    EXPECT_EQ(stem_product(sc, sf, a.id), a.color == Color::Black ? 1 : -1) << a.id;
  }
  auto rep = verify_sign_function(sc.graph(), sf, 2000);
  EXPECT_TRUE(rep.passed()) << (rep.find("at") ? *rep.find("at") : "");
  // Base signs respect equivalence.
  EXPECT_NO_THROW(restrict_to_base(sc.compound, sf));
}

TEST(CiucuSign, LeaflessAxisNeedsTheTwist) {
  // Two stems on a single edge make a 6-cycle; equal color rules alone
  // would leave it negative.
  auto sc = build_symmetric(fixtures::single_edge(), "S:b S:a");
  auto sf = ciucu_sign_function(sc);
  EXPECT_TRUE(verify_sign_function(sc.graph(), sf).passed());
  EXPECT_EQ(stem_product(sc, sf, sc.axis[0].id), 1);   // black, first
  EXPECT_EQ(stem_product(sc, sf, sc.axis[1].id), 1);   // white, twisted
}

TEST(CiucuLemma, SingleEdge) {
  auto sc = build_symmetric(fixtures::single_edge(), "S:b L1:a");
  auto r = verify_ciucu_lemma(sc, sc.axis[1].id);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(*r.find("count_1"), *r.find("count_2"));
  EXPECT_EQ(*r.find("shared_sign"), "yes");
  expect_error(ErrorCode::InvalidArgument, [&] { verify_ciucu_lemma(sc, sc.axis[0].id); });
}

TEST(CiucuLemma, FigureEightEveryLeaf) {
  auto sc = build_symmetric(figure_eight_half(), kFigureEightAxis);
  for (const auto& a : sc.axis) {
    if (a.role != AxisRole::Leaf) continue;
    auto r = verify_ciucu_lemma(sc, a.id);
    EXPECT_TRUE(r.passed()) << a.id;
    EXPECT_EQ(*r.find("count_1"), "4753326");
  }
}

TEST(CiucuLemma, VariableWeightsAgreeAsPolynomials) {
  auto half = fixtures::grid(2, 3);
  std::vector<RingElement> w;
  for (std::size_t e = 0; e < half.edge_count(); ++e) w.push_back(RingElement::variable("y" + std::to_string(e)));
  half = half.with_weights(w);
  // Consecutive boundary vertices g0_1 w, g0_2 b, g1_2 w, g1_1 b.
  auto sc = build_symmetric(half, "L1:g0_1 S:g0_2 L2:g1_2 S:g1_1");
  EXPECT_EQ(count_matchings(sc.graph()), oracle_count(sc.graph()));
  for (const auto& a : sc.axis) {
    if (a.role != AxisRole::Leaf) continue;
    EXPECT_TRUE(verify_ciucu_lemma(sc, a.id).passed());
  }
}

TEST(CiucuLemma, MirrorSymmetry) {
  auto half = figure_eight_half();
  auto sc = build_symmetric(half, kFigureEightAxis);
  AxisSpec swapped = AxisSpec::parse(kFigureEightAxis);
  for (auto& e : swapped.entries)
    if (e.role == AxisRole::Leaf) e.side = 3 - e.side;
  auto other = build_symmetric(mirror(half), swapped);
  EXPECT_EQ(count_matchings(other.graph()), count_matchings(sc.graph()));
}

TEST(SplitEvenOdd, SingleEdge) {
  auto sc = build_symmetric(fixtures::single_edge(), "S:b S:a");
  auto [bw, wb] = split_even_odd(sc);
  // First stem black and odd, second white and even: both cut into G_wb.
  EXPECT_EQ(bw.vertex_count(), 2u);
  EXPECT_EQ(wb.vertex_count(), 0u);
  auto r = verify_factorization(sc);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(*r.find("count_H"), "2");
}

TEST(SplitEvenOdd, NoStems) {
  auto half = fixtures::four_cycle();
  auto sc = build_symmetric(half, "");
  EXPECT_EQ(sc.graph().component_count(), 2u);
  auto [bw, wb] = split_even_odd(sc);
  EXPECT_EQ(bw, half);
  EXPECT_EQ(wb, half);
  auto r = verify_factorization(sc);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(*r.find("count_H"), "4");
}

TEST(SplitEvenOdd, LeavesRejected) {
  auto sc = build_symmetric(fixtures::single_edge(), "S:b L1:a");
  expect_error(ErrorCode::InvalidArgument, [&] { split_even_odd(sc); });
}

TEST(Factorization, PathOfTwoEdges) {
  Drawing d;
  d.points = {{"a", Color::Black, 0, 0}, {"b", Color::White, 1, 0}, {"c", Color::Black, 2, 0}};
  d.segments = {{"ab", "a", "b"}, {"bc", "b", "c"}};
  auto sc = build_symmetric(d.build(), "S:a S:c");
  EXPECT_EQ(count_matchings(sc.graph()), oracle_count(sc.graph()));
  auto r = verify_factorization(sc);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(*r.find("count_H"), "2");
  EXPECT_EQ(*r.find("count_bw"), "1");
  EXPECT_EQ(*r.find("count_wb"), "1");
}

TEST(Factorization, VariableGrid) {
  auto half = fixtures::grid(3, 3);
  std::vector<RingElement> w;
  for (std::size_t e = 0; e < half.edge_count(); ++e) w.push_back(RingElement::variable("z" + std::to_string(e)));
  half = half.with_weights(w);
  // 3x3 has one extra black vertex, so the stems need two more black
  // attachments than white ones: g0_2, g2_2, g2_0 black, g1_2 white.
  auto sc = build_symmetric(half, "S:g0_2 S:g1_2 S:g2_2 S:g2_0");
  EXPECT_EQ(sc.w, 4u);
  EXPECT_EQ(count_matchings(sc.graph()), oracle_count(sc.graph()));
  auto r = verify_factorization(sc);
  EXPECT_TRUE(r.passed()) << *r.find("count_H") << " vs " << *r.find("product");
}

TEST(SymmetricCorpus, EverythingVerifies) {
  auto corpus = symmetric_corpus(11, 40);
  ASSERT_EQ(corpus.size(), 40u);
  std::size_t lemma = 0, theorem = 0, variable = 0, with_stems = 0;
  for (const auto& sc : corpus) {
    if (count_matchings(sc.graph()).evaluate_at_ones() != count_matchings(sc.graph())) ++variable;
    EXPECT_EQ(count_matchings(sc.graph()), oracle_count(sc.graph())) << sc.spec.to_string();
    auto sign = verify_sign_function(sc.graph(), ciucu_sign_function(sc), 5000);
    EXPECT_TRUE(sign.passed()) << sc.spec.to_string();
    if (sc.theorem_form()) {
      ++theorem;
      if (sc.w > 0) ++with_stems;
      EXPECT_TRUE(verify_factorization(sc).passed()) << sc.spec.to_string();
    } else {
      for (const auto& a : sc.axis)
        if (a.role == AxisRole::Leaf) {
          ++lemma;
          EXPECT_TRUE(verify_ciucu_lemma(sc, a.id).passed()) << sc.spec.to_string() << " " << a.id;
        }
    }
  }
  EXPECT_GT(lemma, 20u);
  EXPECT_GT(theorem, 10u);
  EXPECT_GT(with_stems, 5u);
  EXPECT_GT(variable, 5u);
}

TEST(SymmetricCorpus, Deterministic) {
  auto a = symmetric_corpus(3, 10), b = symmetric_corpus(3, 10);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].graph(), b[i].graph());
    EXPECT_EQ(a[i].spec.to_string(), b[i].spec.to_string());
  }
}
