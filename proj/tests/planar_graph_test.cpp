#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "fixtures.hpp"
#include "matchkast/pbg_io.hpp"
#include "matchkast/planar_graph.hpp"

using namespace matchkast;

namespace {

ErrorCode build_error(const std::string& text) {
  try {
    parse_pbg(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "graph accepted:\n" << text;
  return ErrorCode::InvalidArgument;
}

std::size_t inner_faces(const Faces& f) {
  return static_cast<std::size_t>(std::count_if(f.walks.begin(), f.walks.end(), [](auto& w) { return !w.is_outer; }));
}

// Darts of the boundary of the outer face, reversed so that the graph lies
// inside: the cycle as seen from the outer face.
std::vector<std::size_t> outer_cycle(const PlanarBipartiteGraph& g) {
  Faces f = trace_faces(g);
  return f.walks[f.face_of[g.outer_darts().front()]].darts;
}

}  // namespace

TEST(PlanarGraph, SingleEdge) {
  auto g = fixtures::single_edge();
  Faces f = trace_faces(g);
  ASSERT_EQ(f.walks.size(), 1u);
  EXPECT_EQ(f.walks[0].darts.size(), 2u);
  EXPECT_TRUE(f.walks[0].is_outer);
}

TEST(PlanarGraph, FourCycleHasTwoFaces) {
  auto g = fixtures::four_cycle();
  Faces f = trace_faces(g);
  ASSERT_EQ(f.walks.size(), 2u);
  EXPECT_EQ(inner_faces(f), 1u);
  for (const auto& w : f.walks) EXPECT_EQ(w.darts.size(), 4u);
}

TEST(PlanarGraph, UnitSquareGrid) {
  auto g = fixtures::grid(2, 2);
  Faces f = trace_faces(g);
  ASSERT_EQ(f.walks.size(), 2u);
  EXPECT_EQ(inner_faces(f), 1u);
}

TEST(PlanarGraph, CompleteBipartiteK33IsNeverPlanar) {
  // Every vertex has degree 3, so it has exactly two cyclic orders: 2^6 maps.
  const char* black[] = {"a0", "a1", "a2"};
  const char* white[] = {"b0", "b1", "b2"};
  for (int mask = 0; mask < 64; ++mask) {
    GraphDescription d;
    for (auto* b : black) d.vertices.emplace_back(b, Color::Black);
    for (auto* w : white) d.vertices.emplace_back(w, Color::White);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        d.edges.push_back({"e" + std::to_string(i) + std::to_string(j), black[i], white[j], RingElement(1)});
    auto rot = [&](int k, std::vector<std::string> ids) {
      if (mask >> k & 1) std::swap(ids[1], ids[2]);
      return ids;
    };
    for (int i = 0; i < 3; ++i) {
      std::string s = std::to_string(i);
      d.rotations.emplace_back(black[i], rot(i, {"e" + s + "0", "e" + s + "1", "e" + s + "2"}));
      d.rotations.emplace_back(white[i], rot(3 + i, {"e0" + s, "e1" + s, "e2" + s}));
    }
    d.outer.emplace_back("e00", "a0");
    try {
      build_graph(d);
      FAIL() << "rotation system " << mask << " accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotGenusZero) << e.what();
    }
  }
}

TEST(PlanarGraph, RejectsBadInput) {
  const std::string head = "pbg v1\nvertex a b\nvertex b w\nvertex c b\n";
  EXPECT_EQ(build_error(head + "edge e a c 1\nrot a e\nrot c e\nouter e a\n"), ErrorCode::NotBipartite);
  EXPECT_EQ(build_error(head + "edge e a b 1\nrot a e e\nrot b e\nouter e a\n"), ErrorCode::BadRotation);
  EXPECT_EQ(build_error(head + "edge e a b 1\nrot a\nrot b e\nouter e a\n"), ErrorCode::BadRotation);
  EXPECT_EQ(build_error(head + "edge e a z 1\nrot a e\nouter e a\n"), ErrorCode::DanglingReference);
  EXPECT_EQ(build_error(head + "edge e a b 1\nrot a f\nrot b e\nouter e a\n"), ErrorCode::DanglingReference);
  EXPECT_EQ(build_error(head + "vertex a w\n"), ErrorCode::DuplicateId);
  EXPECT_EQ(build_error("pbg v2\n"), ErrorCode::Parse);
  EXPECT_EQ(build_error(head + "edge e a b\n"), ErrorCode::Parse);
}

TEST(PlanarGraph, ParseErrorsCarryLineNumbers) {
  try {
    parse_pbg("pbg v1\n# comment\nvertex a q\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(PlanarGraph, HexagonWithTreesInnerWalk) {
  auto g = fixtures::hexagon_with_trees();
  Faces f = trace_faces(g);
  ASSERT_EQ(f.walks.size(), 2u);
  const FaceWalk* inner = f.walks[0].is_outer ? &f.walks[1] : &f.walks[0];
  ASSERT_EQ(inner->darts.size(), 12u);
  std::map<std::string, int> multiplicity;
  for (std::size_t d : inner->darts) ++multiplicity[g.edge(g.dart_edge(d)).id];
  EXPECT_EQ(multiplicity["t16"], 2);
  EXPECT_EQ(multiplicity["t08"], 2);
  EXPECT_EQ(multiplicity["t87"], 2);
  for (const char* h : {"h01", "h12", "h23", "h34", "h45", "h50"}) EXPECT_EQ(multiplicity[h], 1) << h;
  // Consecutive darts chain head to tail.
  for (std::size_t i = 0; i < inner->darts.size(); ++i)
    EXPECT_EQ(g.dart_head(inner->darts[i]), g.dart_tail(inner->darts[(i + 1) % inner->darts.size()]));
}

TEST(PlanarGraph, HexagonEnclosesThreeVertices) {
  // The walk has |C'| = 12 = |C| + 2A with |C| = 6.
  auto g = fixtures::hexagon_with_trees();
  EXPECT_EQ(enclosed_vertices(g, outer_cycle(g)), 3u);
}

TEST(PlanarGraph, EnclosedVertices) {
  auto sq = fixtures::grid(2, 2);
  Faces f = trace_faces(sq);
  const auto& inner = f.walks[0].is_outer ? f.walks[1] : f.walks[0];
  EXPECT_EQ(enclosed_vertices(sq, inner.darts), 0u);
  auto g3 = fixtures::grid(3, 3);
  EXPECT_EQ(enclosed_vertices(g3, outer_cycle(g3)), 1u);
  auto g45 = fixtures::grid(4, 5);
  EXPECT_EQ(enclosed_vertices(g45, outer_cycle(g45)) + 14, g45.vertex_count());
}

TEST(PlanarGraph, EnclosedVerticesRejectsNonSimpleCycles) {
  auto g = fixtures::hexagon_with_trees();
  Faces f = trace_faces(g);
  const auto& inner = f.walks[0].is_outer ? f.walks[1] : f.walks[0];
  try {
    enclosed_vertices(g, inner.darts, f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotASimpleCycle);
  }
}

TEST(PlanarGraph, EulerAndDartPartition) {
  for (auto g : {fixtures::grid(3, 4), fixtures::hexagon_with_trees(), fixtures::four_cycle()}) {
    Faces f = trace_faces(g);
    std::size_t total = 0;
    for (const auto& w : f.walks) total += w.darts.size();
    EXPECT_EQ(total, g.dart_count());
    EXPECT_EQ(long(g.vertex_count()) - long(g.edge_count()) + long(f.walks.size()), 1 + long(g.component_count()));
  }
}

TEST(PlanarGraph, MirrorIsAnInvolution) {
  for (auto g : {fixtures::single_edge(), fixtures::four_cycle(), fixtures::grid(3, 4), fixtures::hexagon_with_trees()}) {
    PlanarBipartiteGraph m = mirror(g);
    EXPECT_EQ(trace_faces(m).walks.size(), trace_faces(g).walks.size());
    EXPECT_EQ(mirror(m), g);
  }
  EXPECT_EQ(mirror(fixtures::single_edge()), fixtures::single_edge());
}

TEST(PlanarGraph, MirrorReversesRotations) {
  auto g = fixtures::grid(3, 3);
  auto m = mirror(g);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    auto r = g.rotation(v);
    std::reverse(r.begin(), r.end());
    std::rotate(r.begin(), std::min_element(r.begin(), r.end()), r.end());
    EXPECT_EQ(m.rotation(v), r);
  }
}

TEST(PlanarGraph, RoundTripAndOrderIndependence) {
  auto g = fixtures::grid(3, 4);
  std::string text = write_pbg(g);
  EXPECT_EQ(write_pbg(parse_pbg(text)), text);

  GraphDescription d = g.describe();
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(d.vertices.begin(), d.vertices.end(), rng);
    std::shuffle(d.edges.begin(), d.edges.end(), rng);
    std::shuffle(d.rotations.begin(), d.rotations.end(), rng);
    for (auto& [v, list] : d.rotations) std::rotate(list.begin(), list.begin() + rng() % list.size(), list.end());
    auto h = build_graph(d);
    EXPECT_EQ(write_pbg(h), text);
    auto fa = trace_faces(g), fb = trace_faces(h);
    ASSERT_EQ(fa.walks.size(), fb.walks.size());
    for (std::size_t i = 0; i < fa.walks.size(); ++i) EXPECT_EQ(fa.walks[i].darts, fb.walks[i].darts);
  }
}

TEST(PlanarGraph, OuterDartIsCanonicalized) {
  auto g = fixtures::four_cycle();
  GraphDescription d = g.describe();
  Faces f = trace_faces(g);
  const auto& outer = f.walks[f.face_of[g.outer_darts().front()]];
  for (std::size_t dart : outer.darts) {
    d.outer = {{g.edge(g.dart_edge(dart)).id, g.vertex(g.dart_tail(dart)).id}};
    EXPECT_EQ(build_graph(d), g);
  }
}

TEST(PlanarGraph, DisconnectedGraphsNeedAnOuterFacePerComponent) {
  const std::string two_squares =
      "pbg v1\n"
      "vertex a0 b\nvertex a1 w\nvertex a2 b\nvertex a3 w\n"
      "vertex c0 b\nvertex c1 w\nvertex c2 b\nvertex c3 w\n"
      "edge x01 a0 a1 1\nedge x12 a2 a1 1\nedge x23 a2 a3 1\nedge x30 a0 a3 1\n"
      "edge y01 c0 c1 1\nedge y12 c2 c1 1\nedge y23 c2 c3 1\nedge y30 c0 c3 1\n"
      "rot a0 x30 x01\nrot a1 x01 x12\nrot a2 x12 x23\nrot a3 x23 x30\n"
      "rot c0 y30 y01\nrot c1 y01 y12\nrot c2 y12 y23\nrot c3 y23 y30\n";
  EXPECT_EQ(build_error(two_squares + "outer x01 a0\n"), ErrorCode::BadOuterFace);
  auto g = parse_pbg(two_squares + "outer x01 a0\nouter y01 c0\n");
  EXPECT_EQ(g.component_count(), 2u);
  EXPECT_EQ(g.outer_darts().size(), 2u);
  EXPECT_EQ(inner_faces(trace_faces(g)), 2u);
}

TEST(PlanarGraph, TreesGetTheirOuterFaceAutomatically) {
  auto g = parse_pbg("pbg v1\nvertex a b\nvertex b w\nvertex c b\nedge e a b 1\nedge f c b 1\nrot a e\nrot b e f\nrot c f\n");
  EXPECT_EQ(g.outer_darts().size(), 1u);
}
