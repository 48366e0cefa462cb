#pragma once

// Deterministic pseudo-random test corpus. All randomness comes from one
// mt19937_64 seed; draws use plain modulo so the sequence is identical on
// every standard library.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "matchkast/compound.hpp"
#include "matchkast/planar_graph.hpp"

namespace matchkast {

enum class WeightMode { Unit, Variables, Integers };

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(gen_() % n); }
  bool chance(unsigned percent) { return below(100) < percent; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

 private:
  std::mt19937_64 gen_;
};

namespace detail {

inline RingElement corpus_weight(Rng& rng, WeightMode mode, std::size_t index) {
  switch (mode) {
    case WeightMode::Unit: return RingElement(1);
    case WeightMode::Variables: return RingElement::variable("x" + std::to_string(index));
    case WeightMode::Integers: {
      // Positive, so the normalized count is the weighted count itself.
      return RingElement(static_cast<long>(1 + rng.below(4)));
    }
  }
  return RingElement(1);
}

struct Corner {
  std::size_t vertex;
  std::size_t anchor;  // new edges go immediately clockwise after this edge
};

inline std::vector<Corner> face_corners(const MapBuilder& b, const std::vector<std::size_t>& walk) {
  std::vector<Corner> out;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    std::size_t next = walk[(i + 1) % walk.size()];
    out.push_back({b.dart_tail(next), next / 2});
  }
  return out;
}

}  // namespace detail

/// Random connected planar bipartite map grown by corner operations:
/// pendant vertices, chords between opposite colors across a face, and
/// two-edge paths between equal colors across a face.
inline PlanarBipartiteGraph random_planar_map(Rng& rng, std::size_t max_vertices, WeightMode mode,
                                              std::size_t extra_edges) {
  MapBuilder b;
  b.add_vertex("v00", Color::Black);
  b.add_vertex("v01", Color::White);
  std::size_t e0 = b.add_edge("e00", 0, 1);
  b.append(0, e0);
  b.append(1, e0);
  auto vid = [](std::size_t i) { return std::string("v") + (i < 10 ? "0" : "") + std::to_string(i); };
  auto eid = [](std::size_t i) { return std::string("e") + (i < 10 ? "0" : "") + std::to_string(i); };
  std::size_t chords = 0;
  for (int guard = 0; guard < 1000; ++guard) {
    bool want_vertex = b.vertex_count() < max_vertices;
    if (!want_vertex && chords >= extra_edges) break;
    Faces f = b.faces();
    const auto& walk = f.walks[rng.below(f.walks.size())].darts;
    auto corners = detail::face_corners(b, walk);
    std::size_t op = want_vertex ? rng.below(3) : 1;
    if (op == 0) {
      const auto& c = corners[rng.below(corners.size())];
      std::size_t v = b.add_vertex(vid(b.vertex_count()), opposite(b.color(c.vertex)));
      std::size_t e = b.add_edge(eid(b.edge_count()), c.vertex, v);
      b.insert_after(c.vertex, c.anchor, e);
      b.append(v, e);
    } else {
      const auto& c1 = corners[rng.below(corners.size())];
      const auto& c2 = corners[rng.below(corners.size())];
      if (c1.vertex == c2.vertex) continue;
      bool same = b.color(c1.vertex) == b.color(c2.vertex);
      if (op == 1 && !same) {
        if (chords >= extra_edges) continue;
        std::size_t e = b.add_edge(eid(b.edge_count()), c1.vertex, c2.vertex);
        b.insert_after(c1.vertex, c1.anchor, e);
        b.insert_after(c2.vertex, c2.anchor, e);
        ++chords;
      } else if (same && want_vertex) {
        std::size_t v = b.add_vertex(vid(b.vertex_count()), opposite(b.color(c1.vertex)));
        std::size_t ea = b.add_edge(eid(b.edge_count()), c1.vertex, v);
        std::size_t eb = b.add_edge(eid(b.edge_count()), c2.vertex, v);
        b.insert_after(c1.vertex, c1.anchor, ea);
        b.insert_after(c2.vertex, c2.anchor, eb);
        b.append(v, eb);
        b.append(v, ea);
      }
    }
  }
  for (std::size_t e = 0; e < b.edge_count(); ++e) b.set_weight(e, detail::corpus_weight(rng, mode, e));
  Faces f = b.faces();
  const auto& outer = f.walks[rng.below(f.walks.size())].darts;
  b.add_outer(outer.front() / 2, b.dart_tail(outer.front()));
  return b.build();
}

/// Connected induced subgraph of the square lattice with up to max_vertices
/// points, optionally thinned by deleting edges; embedded by its drawing.
inline PlanarBipartiteGraph random_grid_subgraph(Rng& rng, std::size_t max_vertices, WeightMode mode) {
  const int side = 5;
  std::vector<std::pair<int, int>> cells{{static_cast<int>(rng.below(side)), static_cast<int>(rng.below(side))}};
  auto has = [&](int r, int c) { return std::find(cells.begin(), cells.end(), std::pair{r, c}) != cells.end(); };
  std::size_t target = 2 + rng.below(max_vertices - 1);
  for (int guard = 0; cells.size() < target && guard < 1000; ++guard) {
    auto [r, c] = cells[rng.below(cells.size())];
    static const int dr[] = {1, -1, 0, 0}, dc[] = {0, 0, 1, -1};
    std::size_t k = rng.below(4);
    int nr = r + dr[k], nc = c + dc[k];
    if (nr < 0 || nc < 0 || nr >= side || nc >= side || has(nr, nc)) continue;
    cells.emplace_back(nr, nc);
  }
  Drawing d;
  auto id = [](int r, int c) { return "p" + std::to_string(r) + std::to_string(c); };
  for (auto [r, c] : cells) d.points.push_back({id(r, c), (r + c) % 2 == 0 ? Color::Black : Color::White, double(c), double(-r)});
  // Spanning tree edges first (always kept) so the graph stays connected.
  std::vector<std::pair<int, int>> in_tree{cells.front()};
  std::size_t index = 0;
  auto add = [&](std::pair<int, int> a, std::pair<int, int> b) {
    d.segments.push_back({"e" + id(a.first, a.second) + "_" + id(b.first, b.second), id(a.first, a.second),
                          id(b.first, b.second), detail::corpus_weight(rng, mode, index++)});
  };
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> extra;
  for (std::size_t i = 0; i < in_tree.size(); ++i) {
    auto [r, c] = in_tree[i];
    for (auto nb : {std::pair{r + 1, c}, std::pair{r, c + 1}, std::pair{r - 1, c}, std::pair{r, c - 1}}) {
      if (!has(nb.first, nb.second)) continue;
      if (std::find(in_tree.begin(), in_tree.end(), nb) == in_tree.end()) {
        in_tree.push_back(nb);
        add({r, c}, nb);
      } else if (std::pair{r, c} < nb) {
        bool already = false;
        for (const auto& s : d.segments)
          if (s.id == "e" + id(nb.first, nb.second) + "_" + id(r, c) || s.id == "e" + id(r, c) + "_" + id(nb.first, nb.second))
            already = true;
        if (!already) extra.push_back({{r, c}, nb});
      }
    }
  }
  for (const auto& [a, b] : extra)
    if (!rng.chance(20)) add(a, b);
  return d.build();
}

/// Graphs for the count cross-checks: random maps and grid subgraphs in all
/// three weight modes, mostly with balanced color classes.
inline std::vector<PlanarBipartiteGraph> graph_corpus(std::uint64_t seed, std::size_t count, std::size_t max_vertices) {
  Rng rng(seed);
  std::vector<PlanarBipartiteGraph> out;
  while (out.size() < count) {
    WeightMode mode = static_cast<WeightMode>(out.size() % 3);
    std::size_t n = 2 + rng.below(max_vertices - 1);
    PlanarBipartiteGraph g = rng.chance(60) ? random_planar_map(rng, n, mode, rng.below(4))
                                            : random_grid_subgraph(rng, n, mode);
    if (!g.balanced() && !rng.chance(10)) continue;
    out.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Compound corpus.

inline std::vector<PlanarBipartiteGraph> corpus_bases() {
  auto from_drawing = [](std::vector<Drawing::Point> pts, std::vector<Drawing::Segment> segs) {
    Drawing d;
    d.points = std::move(pts);
    d.segments = std::move(segs);
    return d.build();
  };
  const Color B = Color::Black, W = Color::White;
  std::vector<PlanarBipartiteGraph> bases;
  bases.push_back(from_drawing({{"a", B, 0, 0}, {"b", W, 1, 0}}, {{"ab", "a", "b"}}));
  bases.push_back(from_drawing({{"a", B, 0, 0}, {"b", W, 1, 0}, {"c", B, 2, 0}, {"d", W, 3, 0}},
                               {{"ab", "a", "b"}, {"bc", "b", "c"}, {"cd", "c", "d"}}));
  bases.push_back(from_drawing({{"a", B, 0, 0}, {"b", W, 1, 0}, {"c", B, 1, 1}, {"d", W, 0, 1}},
                               {{"ab", "a", "b"}, {"bc", "b", "c"}, {"cd", "c", "d"}, {"da", "d", "a"}}));
  bases.push_back(from_drawing({{"a", B, 0, 0}, {"b", W, 1, 0}, {"c", B, 2, 0}, {"d", W, 0, 1}, {"e", B, 1, 1},
                                {"f", W, 2, 1}},
                               {{"ab", "a", "b"}, {"bc", "b", "c"}, {"de", "d", "e"}, {"ef", "e", "f"},
                                {"ad", "a", "d"}, {"be", "b", "e"}, {"cf", "c", "f"}}));
  // Star-like tree with a pendant pair: not every vertex is on a cycle.
  bases.push_back(from_drawing({{"a", B, 0, 0}, {"b", W, 1, 0}, {"c", B, 1, 1}, {"d", W, 0, 1}, {"e", B, 2, 0},
                                {"f", W, 3, 0}},
                               {{"ab", "a", "b"}, {"bc", "b", "c"}, {"cd", "c", "d"}, {"da", "d", "a"},
                                {"be", "b", "e"}, {"ef", "e", "f"}}));
  return bases;
}

inline std::vector<PlanarBipartiteGraph> corpus_supergraphs() {
  auto from_drawing = [](std::vector<Drawing::Point> pts, std::vector<Drawing::Segment> segs) {
    Drawing d;
    d.points = std::move(pts);
    d.segments = std::move(segs);
    return d.build();
  };
  const Color B = Color::Black, W = Color::White;
  std::vector<PlanarBipartiteGraph> s;
  s.push_back(from_drawing({{"X", B, 0, 0}, {"Y", W, 1, 0}}, {{"XY", "X", "Y"}}));
  s.push_back(from_drawing({{"X", B, 0, 0}, {"Y", W, 1, 0}, {"Z", B, 2, 0}}, {{"XY", "X", "Y"}, {"YZ", "Y", "Z"}}));
  s.push_back(from_drawing({{"C", B, 0, 0}, {"P", W, 1, 0}, {"Q", W, -1, 0}, {"R", W, 0, 1}},
                           {{"CP", "C", "P"}, {"CQ", "C", "Q"}, {"CR", "C", "R"}}));
  s.push_back(from_drawing({{"X", B, 0, 0}, {"Y", W, 1, 0}, {"Z", B, 1, 1}, {"T", W, 0, 1}},
                           {{"XY", "X", "Y"}, {"YZ", "Y", "Z"}, {"ZT", "Z", "T"}, {"TX", "T", "X"}}));
  s.push_back(from_drawing({{"X", W, 0, 0}, {"Y", B, 1, 0}}, {{"XY", "X", "Y"}}));
  return s;
}

/// Random placement script on a given base and supergraph; building may
/// still fail when stems cannot be embedded, in which case callers retry.
inline PlacementScript random_script(Rng& rng, const PlanarBipartiteGraph& base, const PlanarBipartiteGraph& super,
                                     std::size_t max_stems_per_edge) {
  auto corners = outer_corners(base);
  std::vector<std::size_t> white_corners, black_corners;
  for (std::size_t k = 0; k < corners.size(); ++k)
    (base.vertex(corners[k].vertex).color == Color::White ? white_corners : black_corners).push_back(k);
  PlacementScript s;
  for (std::size_t e = 0; e < super.edge_count(); ++e) {
    std::size_t k = 1 + rng.below(max_stems_per_edge);
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t c = rng.pick(white_corners);
      FaceSpec f;
      if (rng.chance(70)) f.corner = c;
      s.stems.push_back({super.edge(e).id, base.vertex(corners[c].vertex).id, f});
    }
  }
  std::size_t placed = 0;
  while (s.leaves.size() < s.stems.size()) {
    std::size_t c = rng.pick(black_corners);
    FaceSpec f;
    f.corner = c;
    // Earlier stems and leaves may already occupy this corner.
    if (rng.chance(50)) f.sub = rng.below(1 + placed % 3);
    s.leaves.push_back({super.vertex(rng.below(super.vertex_count())).id, base.vertex(corners[c].vertex).id, f});
    ++placed;
  }
  return s;
}

inline std::vector<CompoundGraph> compound_corpus(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  auto bases = corpus_bases();
  auto supers = corpus_supergraphs();
  std::vector<CompoundGraph> out;
  for (int guard = 0; out.size() < count && guard < 100 * static_cast<int>(count); ++guard) {
    PlanarBipartiteGraph base = rng.pick(bases);
    const auto& super = rng.pick(supers);
    if (rng.chance(30)) {
      std::vector<RingElement> w;
      for (std::size_t e = 0; e < base.edge_count(); ++e) w.push_back(RingElement::variable("x" + std::to_string(e)));
      base = base.with_weights(w);
    }
    if (base.vertex_count() * super.vertex_count() > 24) continue;
    PlacementScript script = random_script(rng, base, super, 2);
    try {
      out.push_back(build_compound(base, super, script));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotGenusZero && e.code() != ErrorCode::InvalidArgument) throw;
    }
  }
  return out;
}

}  // namespace matchkast
