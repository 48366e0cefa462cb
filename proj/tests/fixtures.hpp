#pragma once

// Small hand-made graphs shared by the unit tests.

#include <cmath>
#include <numbers>
#include <string>

#include "matchkast/pbg_io.hpp"
#include "matchkast/planar_graph.hpp"

namespace fixtures {

using namespace matchkast;

inline PlanarBipartiteGraph single_edge(const std::string& weight = "1") {
  return parse_pbg("pbg v1\nvertex a b\nvertex b w\nedge e a b " + weight + "\nrot a e\nrot b e\nouter e a\n");
}

/// Square b0 w1 b2 w3 drawn counterclockwise from the lower left; edges
/// e01, e12, e23, e30 carry the given weights.
inline PlanarBipartiteGraph four_cycle(const std::string& a = "1", const std::string& b = "1",
                                       const std::string& c = "1", const std::string& d = "1") {
  Drawing dr;
  dr.points = {{"v0", Color::Black, 0, 0}, {"v1", Color::White, 1, 0}, {"v2", Color::Black, 1, 1},
               {"v3", Color::White, 0, 1}};
  dr.segments = {{"e01", "v0", "v1", RingElement::parse(a)},
                 {"e12", "v1", "v2", RingElement::parse(b)},
                 {"e23", "v2", "v3", RingElement::parse(c)},
                 {"e30", "v3", "v0", RingElement::parse(d)}};
  return dr.build();
}

/// rows x cols grid of vertices, ids g<r>_<c>, (0,0) black.
inline PlanarBipartiteGraph grid(int rows, int cols) {
  Drawing dr;
  auto id = [](int r, int c) { return "g" + std::to_string(r) + "_" + std::to_string(c); };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      dr.points.push_back({id(r, c), (r + c) % 2 == 0 ? Color::Black : Color::White, double(c), double(-r)});
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) dr.segments.push_back({"h" + id(r, c), id(r, c), id(r, c + 1), RingElement(1)});
      if (r + 1 < rows) dr.segments.push_back({"v" + id(r, c), id(r, c), id(r + 1, c), RingElement(1)});
    }
  return dr.build();
}

/// Hexagon p0..p5 with two trees hanging into it: p1-p6 and p0-p8-p7.
inline PlanarBipartiteGraph hexagon_with_trees() {
  auto polar = [](double deg, double r) {
    double t = deg * std::numbers::pi / 180.0;
    return std::pair{r * std::cos(t), r * std::sin(t)};
  };
  struct P {
    const char* id;
    Color c;
    double deg, r;
  };
  const P pts[] = {{"p0", Color::Black, 90, 3},  {"p1", Color::White, 30, 3},    {"p2", Color::Black, 330, 3},
                   {"p3", Color::White, 270, 3}, {"p4", Color::Black, 210, 3},   {"p5", Color::White, 150, 3},
                   {"p6", Color::Black, 30, 1},  {"p7", Color::Black, 280, 1.2}, {"p8", Color::White, 150, 1.1}};
  Drawing dr;
  for (const auto& p : pts) {
    auto [x, y] = polar(p.deg, p.r);
    dr.points.push_back({p.id, p.c, x, y});
  }
  dr.segments = {{"h01", "p0", "p1"}, {"h12", "p1", "p2"}, {"h23", "p2", "p3"}, {"h34", "p3", "p4"},
                 {"h45", "p4", "p5"}, {"h50", "p5", "p0"}, {"t16", "p1", "p6"}, {"t08", "p0", "p8"},
                 {"t87", "p8", "p7"}};
  return dr.build();
}

}  // namespace fixtures
