#pragma once

// Compound graphs: copies of a base graph placed at the vertices of a
// supergraph, joined by stems (black, degree 2) and carrying leaves (white,
// degree 1). Copies at black supervertices keep the base embedding, copies at
// white supervertices carry its reflection.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "matchkast/kasteleyn.hpp"
#include "matchkast/planar_graph.hpp"
#include "matchkast/report.hpp"
#include "matchkast/sign_function.hpp"

namespace matchkast {

struct CopyVertex {
  std::size_t super;
  std::size_t base;
  friend bool operator==(const CopyVertex&, const CopyVertex&) = default;
};

/// One corner of the base graph's outer walk: the gap at `vertex` that runs
/// clockwise from edge `out` (left by the walk) to edge `in` (arrived by).
struct OuterCorner {
  std::size_t vertex;
  std::size_t out;
  std::size_t in;
};

inline std::vector<OuterCorner> outer_corners(const PlanarBipartiteGraph& base) {
  std::vector<OuterCorner> corners;
  if (base.outer_darts().empty()) return corners;
  Faces f = trace_faces(base);
  const auto& walk = f.walks[f.face_of[base.outer_darts().front()]].darts;
  for (std::size_t k = 0; k < walk.size(); ++k) {
    std::size_t prev = walk[(k + walk.size() - 1) % walk.size()];
    corners.push_back({base.dart_tail(walk[k]), base.dart_edge(walk[k]), base.dart_edge(prev)});
  }
  return corners;
}

struct CompoundGraph {
  PlanarBipartiteGraph graph;
  PlanarBipartiteGraph base;
  PlanarBipartiteGraph supergraph;
  std::vector<std::optional<CopyVertex>> copy_of;     // per vertex of graph
  std::vector<std::optional<std::size_t>> edge_class;  // per edge of graph: base edge
  std::vector<int> parity;                             // per supervertex
  std::vector<std::size_t> stems;                      // sorted vertex indices of graph
  std::vector<std::size_t> leaves;
  bool relaxed_colors = false;  // stems/leaves of either color, no count balance

  bool is_stem(std::size_t v) const { return std::binary_search(stems.begin(), stems.end(), v); }
  bool is_leaf(std::size_t v) const { return std::binary_search(leaves.begin(), leaves.end(), v); }
  bool is_base_edge(std::size_t e) const { return edge_class[e].has_value(); }

  std::size_t copy_vertex(std::size_t super, std::size_t base_vertex) const {
    for (std::size_t v = 0; v < copy_of.size(); ++v)
      if (copy_of[v] && copy_of[v]->super == super && copy_of[v]->base == base_vertex) return v;
    throw Error(ErrorCode::DanglingReference, "no copy vertex for that pair");
  }
};

/// Untrusted pieces of a compound graph, referenced by id. Missing emap
/// entries are derived from endpoint equivalence (unambiguous only without
/// parallel base edges).
struct CompoundParts {
  PlanarBipartiteGraph graph;
  PlanarBipartiteGraph base;
  PlanarBipartiteGraph supergraph;
  std::vector<std::tuple<std::string, std::string, std::string>> vmap;  // H vertex, supervertex, base vertex
  std::vector<std::tuple<std::string, std::string, std::string>> emap;  // H edge, supervertex, base edge
  std::vector<std::string> stems;
  std::vector<std::string> leaves;
  bool relaxed_colors = false;
};

namespace detail {

inline bool connected(const PlanarBipartiteGraph& g) { return g.vertex_count() <= 1 || g.component_count() == 1; }

inline std::vector<std::size_t> canonical_cycle(std::vector<std::size_t> v) {
  if (!v.empty()) std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
  return v;
}

inline bool is_outer_vertex(const std::vector<OuterCorner>& corners, std::size_t v) {
  return std::any_of(corners.begin(), corners.end(), [v](const OuterCorner& c) { return c.vertex == v; });
}

}  // namespace detail

/// Checks every structural invariant and returns the indexed form.
inline CompoundGraph assemble_compound(const CompoundParts& parts) {
  CompoundGraph c;
  c.graph = parts.graph;
  c.base = parts.base;
  c.supergraph = parts.supergraph;
  c.relaxed_colors = parts.relaxed_colors;
  const auto& H = c.graph;
  const auto& G = c.base;
  const auto& S = c.supergraph;

  // Ciucu halves need not be balanced; only H does.
  if (!c.relaxed_colors && !G.balanced())
    throw Error(ErrorCode::UnbalancedColors, "base graph has unequal color classes");
  if (!detail::connected(G)) throw Error(ErrorCode::NotConnected, "base graph must be connected");
  if (G.vertex_count() < 2) throw Error(ErrorCode::InvalidArgument, "base graph needs at least one edge");

  for (std::size_t s = 0; s < S.vertex_count(); ++s)
    c.parity.push_back(S.vertex(s).color == Color::Black ? 1 : -1);

  c.copy_of.assign(H.vertex_count(), std::nullopt);
  std::vector<std::optional<std::size_t>> slot(S.vertex_count() * G.vertex_count());
  for (const auto& [hv, sv, bv] : parts.vmap) {
    std::size_t v = H.vertex_index(hv), s = S.vertex_index(sv), b = G.vertex_index(bv);
    if (c.copy_of[v]) throw Error(ErrorCode::DuplicateId, "vertex '" + hv + "' mapped twice");
    auto& cell = slot[s * G.vertex_count() + b];
    if (cell) throw Error(ErrorCode::DuplicateId, "copy " + sv + " has two vertices for '" + bv + "'");
    if (H.vertex(v).color != G.vertex(b).color)
      throw Error(ErrorCode::InvalidArgument, "vertex '" + hv + "' has the wrong color for '" + bv + "'");
    cell = v;
    c.copy_of[v] = CopyVertex{s, b};
  }
  for (std::size_t i = 0; i < slot.size(); ++i)
    if (!slot[i])
      throw Error(ErrorCode::DanglingReference, "copy " + S.vertex(i / G.vertex_count()).id + " lacks vertex '" +
                                                    G.vertex(i % G.vertex_count()).id + "'");

  for (const auto& id : parts.stems) c.stems.push_back(H.vertex_index(id));
  for (const auto& id : parts.leaves) c.leaves.push_back(H.vertex_index(id));
  std::sort(c.stems.begin(), c.stems.end());
  std::sort(c.leaves.begin(), c.leaves.end());
  // The reduced graph names copies after supervertices.
  for (const auto* ids : {&parts.stems, &parts.leaves})
    for (const auto& id : *ids)
      if (S.find_vertex(id))
        throw Error(ErrorCode::DuplicateId, "'" + id + "' names both a stem or leaf and a supervertex");
  for (std::size_t v = 0; v < H.vertex_count(); ++v) {
    int roles = (c.copy_of[v] ? 1 : 0) + (c.is_stem(v) ? 1 : 0) + (c.is_leaf(v) ? 1 : 0);
    if (roles != 1)
      throw Error(ErrorCode::InvalidArgument, "vertex '" + H.vertex(v).id + "' must be exactly one of copy/stem/leaf");
  }

  // Base edges.
  c.edge_class.assign(H.edge_count(), std::nullopt);
  for (const auto& [he, sv, be] : parts.emap) {
    std::size_t e = H.edge_index(he), b = G.edge_index(be);
    S.vertex_index(sv);
    c.edge_class[e] = b;
  }
  for (std::size_t e = 0; e < H.edge_count(); ++e) {
    const auto &cb = c.copy_of[H.edge(e).black], &cw = c.copy_of[H.edge(e).white];
    if (!cb || !cw) {
      if (c.edge_class[e]) throw Error(ErrorCode::InvalidArgument, "edge '" + H.edge(e).id + "' is not a base edge");
      continue;
    }
    if (cb->super != cw->super)
      throw Error(ErrorCode::InvalidArgument, "edge '" + H.edge(e).id + "' joins two different copies");
    if (!c.edge_class[e]) {
      std::optional<std::size_t> match;
      for (std::size_t b = 0; b < G.edge_count(); ++b)
        if (G.edge(b).black == cb->base && G.edge(b).white == cw->base) {
          if (match)
            throw Error(ErrorCode::InvalidArgument, "edge '" + H.edge(e).id + "' is ambiguous; give an emap entry");
          match = b;
        }
      if (!match) throw Error(ErrorCode::InvalidArgument, "edge '" + H.edge(e).id + "' has no base counterpart");
      c.edge_class[e] = match;
    }
    const Edge& be = G.edge(*c.edge_class[e]);
    if (be.black != cb->base || be.white != cw->base)
      throw Error(ErrorCode::InvalidArgument, "edge '" + H.edge(e).id + "' endpoints do not match its class");
    if (be.weight != H.edge(e).weight)
      throw Error(ErrorCode::InvalidArgument, "edge '" + H.edge(e).id + "' weight differs from its base edge");
  }
  std::vector<int> seen_class(S.vertex_count() * G.edge_count(), 0);
  for (std::size_t e = 0; e < H.edge_count(); ++e)
    if (c.edge_class[e]) ++seen_class[c.copy_of[H.edge(e).black]->super * G.edge_count() + *c.edge_class[e]];
  for (std::size_t i = 0; i < seen_class.size(); ++i)
    if (seen_class[i] != 1)
      throw Error(ErrorCode::InvalidArgument, "copy " + S.vertex(i / G.edge_count()).id + " has " +
                                                  std::to_string(seen_class[i]) + " copies of edge '" +
                                                  G.edge(i % G.edge_count()).id + "'");

  const auto corners = outer_corners(G);

  // Copy embeddings: base rotation, reflected at white supervertices; every
  // foreign edge sits in an outer corner.
  for (std::size_t v = 0; v < H.vertex_count(); ++v) {
    if (!c.copy_of[v]) continue;
    auto [s, b] = *c.copy_of[v];
    const auto& rot = H.rotation(v);
    std::vector<std::size_t> classes;
    for (std::size_t e : rot)
      if (c.edge_class[e]) classes.push_back(*c.edge_class[e]);
    std::vector<std::size_t> expect = G.rotation(b);
    if (c.parity[s] < 0) std::reverse(expect.begin(), expect.end());
    if (detail::canonical_cycle(classes) != detail::canonical_cycle(expect))
      throw Error(ErrorCode::BadRotation, "copy vertex '" + H.vertex(v).id + "' does not carry the " +
                                              (c.parity[s] > 0 ? "base" : "reflected") + " rotation");
    for (std::size_t i = 0; i < rot.size(); ++i) {
      if (c.edge_class[rot[i]]) continue;
      std::size_t p = i, q = i;
      while (!c.edge_class[rot[p]]) p = (p + rot.size() - 1) % rot.size();
      while (!c.edge_class[rot[q]]) q = (q + 1) % rot.size();
      std::size_t from = *c.edge_class[rot[p]], to = *c.edge_class[rot[q]];
      if (c.parity[s] < 0) std::swap(from, to);
      bool ok = std::any_of(corners.begin(), corners.end(), [&](const OuterCorner& k) {
        return k.vertex == b && k.out == from && k.in == to;
      });
      if (!ok)
        throw Error(ErrorCode::NotOuterFaceVertex, "edge '" + H.edge(rot[i]).id + "' leaves copy vertex '" +
                                                       H.vertex(v).id + "' inside a base face");
    }
  }

  std::vector<int> stems_on(S.edge_count(), 0);
  for (std::size_t p : c.stems) {
    const std::string& id = H.vertex(p).id;
    if (H.degree(p) != 2) throw Error(ErrorCode::InvalidArgument, "stem '" + id + "' must have degree 2");
    std::size_t x = H.other_end(H.rotation(p)[0], p), y = H.other_end(H.rotation(p)[1], p);
    if (!c.copy_of[x] || !c.copy_of[y]) throw Error(ErrorCode::InvalidArgument, "stem '" + id + "' must join two copies");
    if (!c.relaxed_colors && (H.vertex(p).color != Color::Black))
      throw Error(ErrorCode::StemColorViolation, "stem '" + id + "' must be black");
    if (c.copy_of[x]->base != c.copy_of[y]->base)
      throw Error(ErrorCode::InequivalentStemEndpoints, "stem '" + id + "' joins '" + H.vertex(x).id + "' and '" +
                                                            H.vertex(y).id + "'");
    if (!detail::is_outer_vertex(corners, c.copy_of[x]->base))
      throw Error(ErrorCode::NotOuterFaceVertex, "stem '" + id + "' attaches off the outer face");
    std::optional<std::size_t> super_edge;
    for (std::size_t e = 0; e < S.edge_count(); ++e) {
      auto [a, bb] = S.ends()[e];
      if ((a == c.copy_of[x]->super && bb == c.copy_of[y]->super) ||
          (bb == c.copy_of[x]->super && a == c.copy_of[y]->super))
        super_edge = e;
    }
    if (!super_edge) throw Error(ErrorCode::InvalidArgument, "stem '" + id + "' joins copies that are not adjacent");
    ++stems_on[*super_edge];
  }
  for (std::size_t l : c.leaves) {
    const std::string& id = H.vertex(l).id;
    if (H.degree(l) != 1) throw Error(ErrorCode::InvalidArgument, "leaf '" + id + "' must have degree 1");
    std::size_t q = H.other_end(H.rotation(l)[0], l);
    if (!c.copy_of[q]) throw Error(ErrorCode::InvalidArgument, "leaf '" + id + "' must hang off a copy");
    if (!c.relaxed_colors && H.vertex(l).color != Color::White)
      throw Error(ErrorCode::LeafColorViolation, "leaf '" + id + "' must be white");
    if (!detail::is_outer_vertex(corners, c.copy_of[q]->base))
      throw Error(ErrorCode::NotOuterFaceVertex, "leaf '" + id + "' attaches off the outer face");
  }
  if (!c.relaxed_colors) {
    for (std::size_t e = 0; e < S.edge_count(); ++e)
      if (stems_on[e] == 0)
        throw Error(ErrorCode::InvalidArgument, "supergraph edge '" + S.edge(e).id + "' carries no stem");
    if (c.stems.size() != c.leaves.size())
      throw Error(ErrorCode::CountMismatch, std::to_string(c.stems.size()) + " stems but " +
                                                std::to_string(c.leaves.size()) + " leaves");
  }
  return c;
}

/// Serializable mapping of a compound graph onto its parts.
inline CompoundParts compound_parts(const CompoundGraph& c) {
  CompoundParts p{c.graph, c.base, c.supergraph, {}, {}, {}, {}, c.relaxed_colors};
  for (std::size_t v = 0; v < c.graph.vertex_count(); ++v)
    if (c.copy_of[v])
      p.vmap.emplace_back(c.graph.vertex(v).id, c.supergraph.vertex(c.copy_of[v]->super).id,
                          c.base.vertex(c.copy_of[v]->base).id);
  for (std::size_t e = 0; e < c.graph.edge_count(); ++e)
    if (c.edge_class[e])
      p.emap.emplace_back(c.graph.edge(e).id, c.supergraph.vertex(c.copy_of[c.graph.edge(e).black]->super).id,
                          c.base.edge(*c.edge_class[e]).id);
  for (std::size_t v : c.stems) p.stems.push_back(c.graph.vertex(v).id);
  for (std::size_t v : c.leaves) p.leaves.push_back(c.graph.vertex(v).id);
  return p;
}

// ---------------------------------------------------------------------------
// Construction from a placement script.

/// Where an attachment goes: corner k of the base outer walk, optionally a
/// sub-sector among edges already placed in that corner. An absent corner
/// means the first corner at the vertex.
struct FaceSpec {
  std::optional<std::size_t> corner;
  std::optional<std::size_t> sub;

  static FaceSpec parse(const std::string& text) {
    if (text == "auto") return {};
    FaceSpec f;
    auto bad = [&] { return Error(ErrorCode::Parse, "bad face spec '" + text + "' (want auto, c<k> or c<k>.<s>)"); };
    if (text.size() < 2 || text[0] != 'c') throw bad();
    auto dot = text.find('.');
    try {
      std::size_t used = 0;
      std::string head = text.substr(1, dot == std::string::npos ? std::string::npos : dot - 1);
      f.corner = std::stoul(head, &used);
      if (used != head.size()) throw bad();
      if (dot != std::string::npos) {
        std::string tail = text.substr(dot + 1);
        f.sub = std::stoul(tail, &used);
        if (used != tail.size()) throw bad();
      }
    } catch (const std::logic_error&) {
      throw bad();
    }
    return f;
  }

  std::string to_string() const {
    if (!corner) return "auto";
    return "c" + std::to_string(*corner) + (sub ? "." + std::to_string(*sub) : "");
  }
};

struct StemPlacement {
  std::string super_edge;
  std::string base_vertex;
  FaceSpec face;
};

struct LeafPlacement {
  std::string super_vertex;
  std::string base_vertex;
  FaceSpec face;
};

struct PlacementScript {
  std::vector<StemPlacement> stems;
  std::vector<LeafPlacement> leaves;
};

namespace detail {

inline bool genus_zero(const MapBuilder& b) {
  Faces f = b.faces();
  auto comp = b.component_labels();
  std::size_t n = b.vertex_count();
  std::vector<long> chi(n, 0), edges(n, 0);
  for (std::size_t v = 0; v < n; ++v) ++chi[comp[v]];
  for (std::size_t e = 0; e < b.edge_count(); ++e) {
    std::size_t c = comp[b.dart_tail(2 * e)];
    --chi[c];
    ++edges[c];
  }
  for (const auto& w : f.walks) ++chi[comp[b.dart_tail(w.darts.front())]];
  for (std::size_t c = 0; c < n; ++c)
    if (edges[c] > 0 && chi[c] != 2) return false;
  return true;
}

inline std::string padded(std::size_t i, std::size_t total) {
  std::string s = std::to_string(i);
  std::size_t width = std::to_string(total == 0 ? 0 : total - 1).size();
  return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

// Assembles H in a MapBuilder, tracking which builder edges are base edges.
class CompoundAssembler {
 public:
  CompoundAssembler(const PlanarBipartiteGraph& base, const PlanarBipartiteGraph& super)
      : base_(base), super_(super), corners_(outer_corners(base)) {
    for (std::size_t s = 0; s < super.vertex_count(); ++s) {
      bool reflect = super.vertex(s).color == Color::White;
      for (std::size_t v = 0; v < base.vertex_count(); ++v)
        b_.add_vertex(super.vertex(s).id + "." + base.vertex(v).id, base.vertex(v).color);
      for (std::size_t e = 0; e < base.edge_count(); ++e) {
        const Edge& be = base.edge(e);
        b_.add_edge(super.vertex(s).id + "." + be.id, vertex(s, be.black), vertex(s, be.white), be.weight);
        edge_class_.push_back(e);
      }
      for (std::size_t v = 0; v < base.vertex_count(); ++v) {
        auto& r = b_.rotation(vertex(s, v));
        for (std::size_t e : base.rotation(v)) r.push_back(s * base.edge_count() + e);
        if (reflect) std::reverse(r.begin(), r.end());
      }
    }
  }

  std::size_t vertex(std::size_t s, std::size_t v) const { return s * base_.vertex_count() + v; }
  MapBuilder& builder() { return b_; }
  const std::vector<OuterCorner>& corners() const { return corners_; }

  std::size_t resolve_corner(std::size_t base_vertex, const FaceSpec& f) const {
    if (!f.corner) {
      for (std::size_t k = 0; k < corners_.size(); ++k)
        if (corners_[k].vertex == base_vertex) return k;
      throw Error(ErrorCode::NotOuterFaceVertex, "'" + base_.vertex(base_vertex).id + "' is not on the outer face");
    }
    if (*f.corner >= corners_.size())
      throw Error(ErrorCode::NotOuterFaceVertex, "corner " + std::to_string(*f.corner) + " does not exist");
    if (corners_[*f.corner].vertex != base_vertex)
      throw Error(ErrorCode::NotOuterFaceVertex, "corner " + std::to_string(*f.corner) + " is not at '" +
                                                     base_.vertex(base_vertex).id + "'");
    return *f.corner;
  }

  // Edges bounding the sub-sectors of a corner in copy s: the clockwise run
  // starting at the corner's first base edge, up to the next base edge.
  std::vector<std::size_t> sector_anchors(std::size_t s, std::size_t corner) const {
    const OuterCorner& k = corners_[corner];
    std::size_t first = s * base_.edge_count() + (super_.vertex(s).color == Color::Black ? k.out : k.in);
    const auto& r = b_.rotation(vertex(s, k.vertex));
    std::size_t i = static_cast<std::size_t>(std::find(r.begin(), r.end(), first) - r.begin());
    std::vector<std::size_t> anchors{first};
    for (std::size_t j = (i + 1) % r.size(); j != i && !is_base(r[j]); j = (j + 1) % r.size()) anchors.push_back(r[j]);
    return anchors;
  }

  bool is_base(std::size_t e) const { return e < edge_class_.size(); }

 private:
  const PlanarBipartiteGraph& base_;
  const PlanarBipartiteGraph& super_;
  std::vector<OuterCorner> corners_;
  MapBuilder b_;
  std::vector<std::size_t> edge_class_;
};

}  // namespace detail

/// Builds H from a placement script; stems are placed first, in script
/// order, then leaves.
inline CompoundGraph build_compound(const PlanarBipartiteGraph& base, const PlanarBipartiteGraph& super,
                                    const PlacementScript& script) {
  if (!base.balanced()) throw Error(ErrorCode::UnbalancedColors, "base graph has unequal color classes");
  if (!detail::connected(base)) throw Error(ErrorCode::NotConnected, "base graph must be connected");
  if (base.edge_count() == 0) throw Error(ErrorCode::InvalidArgument, "base graph needs at least one edge");
  if (!detail::connected(super)) throw Error(ErrorCode::NotConnected, "supergraph must be connected");
  if (script.stems.size() != script.leaves.size())
    throw Error(ErrorCode::CountMismatch, std::to_string(script.stems.size()) + " stems but " +
                                              std::to_string(script.leaves.size()) + " leaves");
  detail::CompoundAssembler as(base, super);
  MapBuilder& b = as.builder();
  std::vector<std::string> stem_ids, leaf_ids;

  for (std::size_t i = 0; i < script.stems.size(); ++i) {
    const auto& st = script.stems[i];
    std::size_t se = super.edge_index(st.super_edge);
    std::size_t bv = base.vertex_index(st.base_vertex);
    if (base.vertex(bv).color != Color::White)
      throw Error(ErrorCode::StemColorViolation, "stem at '" + st.base_vertex + "' needs a white base vertex");
    std::size_t corner = as.resolve_corner(bv, st.face);
    std::string id = "s" + detail::padded(i, script.stems.size());
    std::size_t p = b.add_vertex(id, Color::Black);
    stem_ids.push_back(id);
    std::size_t sx = super.ends()[se][0], sy = super.ends()[se][1];
    std::size_t x = as.vertex(sx, bv), y = as.vertex(sy, bv);
    std::size_t ex = b.add_edge(id + "-" + super.vertex(sx).id, p, x);
    std::size_t ey = b.add_edge(id + "-" + super.vertex(sy).id, p, y);
    b.append(p, ex);
    b.append(p, ey);
    auto ax = as.sector_anchors(sx, corner);
    auto ay = as.sector_anchors(sy, corner);
    bool placed = false;
    for (std::size_t i1 = 0; i1 < ax.size() && !placed; ++i1) {
      if (st.face.sub && i1 != *st.face.sub) continue;
      for (std::size_t i2 = 0; i2 < ay.size() && !placed; ++i2) {
        if (st.face.sub && i2 != *st.face.sub) continue;
        b.insert_after(x, ax[i1], ex);
        b.insert_after(y, ay[i2], ey);
        if (detail::genus_zero(b)) {
          placed = true;
        } else {
          b.remove_from_rotation(x, ex);
          b.remove_from_rotation(y, ey);
        }
      }
    }
    if (!placed)
      throw Error(ErrorCode::NotGenusZero, "stem " + id + " on '" + st.super_edge + "' cannot be placed planarly");
  }

  for (std::size_t i = 0; i < script.leaves.size(); ++i) {
    const auto& lf = script.leaves[i];
    std::size_t sv = super.vertex_index(lf.super_vertex);
    std::size_t bv = base.vertex_index(lf.base_vertex);
    if (base.vertex(bv).color != Color::Black)
      throw Error(ErrorCode::LeafColorViolation, "leaf at '" + lf.base_vertex + "' needs a black base vertex");
    std::size_t corner = as.resolve_corner(bv, lf.face);
    auto anchors = as.sector_anchors(sv, corner);
    std::size_t sub = lf.face.sub.value_or(0);
    if (sub >= anchors.size())
      throw Error(ErrorCode::InvalidArgument, "corner has only " + std::to_string(anchors.size()) + " sub-sectors");
    std::string id = "l" + detail::padded(i, script.leaves.size());
    std::size_t l = b.add_vertex(id, Color::White);
    leaf_ids.push_back(id);
    std::size_t q = as.vertex(sv, bv);
    std::size_t e = b.add_edge(id + "-" + super.vertex(sv).id, l, q);
    b.append(l, e);
    b.insert_after(q, anchors[sub], e);
  }

  // Outer face: the face through sub-sector 0 of corner 0 of the first copy.
  // It contains the dart leaving along that sub-sector's first anchor.
  b.clear_outer();
  b.add_outer(as.sector_anchors(0, 0).front(), as.vertex(0, as.corners().front().vertex));

  CompoundParts parts;
  parts.base = base;
  parts.supergraph = super;
  parts.graph = b.build();
  for (std::size_t s = 0; s < super.vertex_count(); ++s) {
    for (std::size_t v = 0; v < base.vertex_count(); ++v)
      parts.vmap.emplace_back(b.vertex_id(as.vertex(s, v)), super.vertex(s).id, base.vertex(v).id);
    for (std::size_t e = 0; e < base.edge_count(); ++e)
      parts.emap.emplace_back(b.edge_id(s * base.edge_count() + e), super.vertex(s).id, base.edge(e).id);
  }
  parts.stems = stem_ids;
  parts.leaves = leaf_ids;
  return assemble_compound(parts);
}

// ---------------------------------------------------------------------------
// Reduced graph.

struct ReducedGraph {
  PlanarBipartiteGraph graph;          // copies white, stems and leaves black
  std::vector<std::size_t> h_edge;     // reduced edge -> edge of H
  std::vector<std::optional<std::size_t>> reduced_edge;  // edge of H -> reduced edge
};

/// Contracts every copy to a single vertex (named after its supervertex) by
/// contracting a spanning tree and dropping the resulting loops.
inline ReducedGraph reduced_graph(const CompoundGraph& c) {
  const auto& H = c.graph;
  const std::size_t n = H.vertex_count();
  std::vector<std::vector<std::size_t>> rot(n);
  for (std::size_t v = 0; v < n; ++v) rot[v] = H.rotation(v);
  std::vector<std::size_t> group(n);
  for (std::size_t v = 0; v < n; ++v) group[v] = v;

  for (std::size_t s = 0; s < c.supergraph.vertex_count(); ++s) {
    std::size_t root = c.copy_vertex(s, 0);
    std::vector<bool> in_tree(n, false);
    in_tree[root] = true;
    std::vector<std::size_t> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t u = queue[qi];
      for (std::size_t e : H.rotation(u)) {
        if (!c.is_base_edge(e)) continue;
        std::size_t v = H.other_end(e, u);
        if (in_tree[v]) continue;
        in_tree[v] = true;
        queue.push_back(v);
        // Contract e: [e, A...] at the group, [e, B...] at v -> [A..., B...].
        auto& ru = rot[root];
        auto& rv = rot[v];
        std::rotate(ru.begin(), std::find(ru.begin(), ru.end(), e), ru.end());
        std::rotate(rv.begin(), std::find(rv.begin(), rv.end(), e), rv.end());
        std::vector<std::size_t> merged(ru.begin() + 1, ru.end());
        merged.insert(merged.end(), rv.begin() + 1, rv.end());
        ru = std::move(merged);
        rv.clear();
        group[v] = root;
      }
    }
    auto& r = rot[root];
    r.erase(std::remove_if(r.begin(), r.end(), [&](std::size_t e) { return c.is_base_edge(e); }), r.end());
  }

  GraphDescription d;
  auto name = [&](std::size_t v) {
    return c.copy_of[v] ? c.supergraph.vertex(c.copy_of[v]->super).id : H.vertex(v).id;
  };
  for (std::size_t s = 0; s < c.supergraph.vertex_count(); ++s) d.vertices.emplace_back(c.supergraph.vertex(s).id, Color::White);
  for (std::size_t v = 0; v < n; ++v)
    if (!c.copy_of[v]) d.vertices.emplace_back(H.vertex(v).id, Color::Black);
  for (std::size_t e = 0; e < H.edge_count(); ++e) {
    if (c.is_base_edge(e)) continue;
    d.edges.push_back({H.edge(e).id, name(H.edge(e).black), name(H.edge(e).white), H.edge(e).weight});
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (group[v] != v || rot[v].empty()) continue;
    std::vector<std::string> ids;
    for (std::size_t e : rot[v]) ids.push_back(H.edge(e).id);
    d.rotations.emplace_back(name(v), std::move(ids));
  }
  Faces hf = trace_faces(H);
  for (std::size_t o : H.outer_darts()) {
    for (std::size_t dart : hf.walks[hf.face_of[o]].darts)
      if (!c.is_base_edge(H.dart_edge(dart))) {
        d.outer.emplace_back(H.edge(H.dart_edge(dart)).id, name(H.dart_tail(dart)));
        break;
      }
  }
  ReducedGraph out;
  out.graph = PlanarBipartiteGraph::build(d);
  out.reduced_edge.assign(H.edge_count(), std::nullopt);
  for (std::size_t e = 0; e < out.graph.edge_count(); ++e) {
    std::size_t he = H.edge_index(out.graph.edge(e).id);
    out.h_edge.push_back(he);
    out.reduced_edge[he] = e;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sign functions on compound graphs.

namespace detail {

inline SignFunction glue(const CompoundGraph& c, const ReducedGraph& r, const SignFunction& sf_base,
                         const SignFunction& sf_red) {
  SignFunction sf(c.graph.edge_count());
  for (std::size_t e = 0; e < c.graph.edge_count(); ++e)
    sf.values[e] = static_cast<std::int8_t>(c.edge_class[e] ? sf_base[*c.edge_class[e]] : sf_red[*r.reduced_edge[e]]);
  return sf;
}

}  // namespace detail

/// True when every bounded face of H that is not a face of a copy has the
/// same sign condition as its face in the reduced graph. This fails when a
/// face runs all the way around a copy's outer boundary (a copy hanging into
/// a bounded face, or two stems at one vertex enclosing the rest of the
/// copy); the base/reduced correspondence of sign functions needs it.
inline bool faces_correspond(const CompoundGraph& c, const ReducedGraph& r) {
  SignFunction sf = detail::glue(c, r, construct_sign_function(c.base), construct_sign_function(r.graph));
  return verify_sign_function(c.graph, sf, 0).passed();
}

inline bool faces_correspond(const CompoundGraph& c) { return faces_correspond(c, reduced_graph(c)); }

inline SignFunction compose_sign_function(const CompoundGraph& c, const ReducedGraph& r, const SignFunction& sf_base,
                                          const SignFunction& sf_red) {
  if (!verify_sign_function(c.base, sf_base, 0).passed())
    throw Error(ErrorCode::InvalidInputSign, "base sign function is not a sign function");
  if (!verify_sign_function(r.graph, sf_red, 0).passed())
    throw Error(ErrorCode::InvalidInputSign, "reduced sign function is not a sign function");
  SignFunction sf = detail::glue(c, r, sf_base, sf_red);
  // Valid inputs glue to a valid sign exactly when the faces correspond.
  auto rep = verify_sign_function(c.graph, sf, 0);
  if (!rep.passed())
    throw Error(ErrorCode::UnfaithfulEmbedding,
                "a face of H winds around a copy; " + (rep.find("at") ? *rep.find("at") : std::string("no witness")));
  return sf;
}

inline SignFunction compose_sign_function(const CompoundGraph& c, const SignFunction& sf_base,
                                          const SignFunction& sf_red) {
  return compose_sign_function(c, reduced_graph(c), sf_base, sf_red);
}

/// Restriction to the base graph; requires equivalent edges to agree.
inline SignFunction restrict_to_base(const CompoundGraph& c, const SignFunction& sf) {
  SignFunction out(c.base.edge_count(), 0);
  for (std::size_t e = 0; e < c.graph.edge_count(); ++e) {
    if (!c.edge_class[e]) continue;
    auto& slot = out.values[*c.edge_class[e]];
    if (slot != 0 && slot != sf[e])
      throw Error(ErrorCode::InvalidInputSign, "sign function does not respect edge equivalence");
    slot = static_cast<std::int8_t>(sf[e]);
  }
  return out;
}

inline SignFunction restrict_to_reduced(const ReducedGraph& r, const SignFunction& sf) {
  SignFunction out(r.graph.edge_count());
  for (std::size_t e = 0; e < r.graph.edge_count(); ++e) out.values[e] = static_cast<std::int8_t>(sf[r.h_edge[e]]);
  return out;
}

/// H-bar: stem and leaf edge weights multiplied by their sign.
inline PlanarBipartiteGraph sign_weight(const CompoundGraph& c, const SignFunction& sf) {
  std::vector<RingElement> w;
  for (std::size_t e = 0; e < c.graph.edge_count(); ++e) {
    const RingElement& x = c.graph.edge(e).weight;
    w.push_back(c.is_base_edge(e) || sf[e] > 0 ? x : -x);
  }
  return c.graph.with_weights(w);
}

/// A sign function on H respecting equivalence: sf_base on base edges, the
/// stem and leaf edges solved face by face. Exists for every compound graph,
/// including those where faces_correspond fails.
inline SignFunction equivariant_sign(const CompoundGraph& c, const ReducedGraph& r, const SignFunction& sf_base) {
  std::vector<bool> movable(c.graph.edge_count());
  for (std::size_t e = 0; e < movable.size(); ++e) movable[e] = !c.is_base_edge(e);
  SignFunction start = detail::glue(c, r, sf_base, construct_sign_function(r.graph));
  return complete_sign_function(c.graph, start, movable);
}

/// The standard sign: constructed base sign, constructed reduced sign, with
/// stem and leaf edges repaired where the faces do not correspond.
inline SignFunction standard_sign(const CompoundGraph& c, const ReducedGraph& r) {
  return equivariant_sign(c, r, construct_sign_function(c.base));
}

// ---------------------------------------------------------------------------
// Families and the verifications built on them.

struct Family {
  std::vector<CompoundGraph> members;  // ordered by supervertex of the moving leaf's anchor
  std::string moving_leaf;
  std::size_t anchor_class = 0;        // base vertex q
  std::size_t original = 0;            // index of the input graph among members
};

namespace detail {

// Darts of the face walk through `start`, using plain rotation lists.
inline std::vector<std::size_t> walk_from(const Ends& ends, const Rotations& rot, std::size_t start) {
  std::vector<std::size_t> darts;
  std::size_t d = start;
  do {
    darts.push_back(d);
    std::size_t e = d / 2;
    std::size_t head = ends[e][1 - (d & 1)];
    const auto& r = rot[head];
    std::size_t p = static_cast<std::size_t>(std::find(r.begin(), r.end(), e) - r.begin());
    d = dart_of(ends, r[(p + r.size() - 1) % r.size()], head);
  } while (d != start && darts.size() <= 2 * ends.size());
  return darts;
}

}  // namespace detail

/// Moves `leaf` to every vertex equivalent to its anchor. At the new vertex
/// the leaf goes into a corner of the same face of H-minus-leaf when one
/// exists, otherwise into the first outer corner of that copy.
inline Family family(const CompoundGraph& c, const std::string& leaf_id) {
  const auto& H = c.graph;
  std::size_t leaf = H.vertex_index(leaf_id);
  if (!c.is_leaf(leaf)) throw Error(ErrorCode::InvalidArgument, "'" + leaf_id + "' is not a leaf");
  if (c.supergraph.vertex_count() < 2)
    throw Error(ErrorCode::PlacementImpossible, "a single copy has no siblings");
  std::size_t el = H.rotation(leaf).front();
  std::size_t q = H.other_end(el, leaf);
  std::size_t anchor = c.copy_of[q]->base;
  std::size_t follow = H.next_in_face(H.dart(el, leaf));

  Family fam;
  fam.moving_leaf = leaf_id;
  fam.anchor_class = anchor;
  auto corners = outer_corners(c.base);
  for (std::size_t s = 0; s < c.supergraph.vertex_count(); ++s) {
    std::size_t target = c.copy_vertex(s, anchor);
    if (target == q) {
      fam.original = fam.members.size();
      fam.members.push_back(c);
      continue;
    }
    GraphDescription d = H.describe();
    detail::Ends ends = H.ends();
    detail::Rotations rot = H.rotations();
    auto drop = [&](std::vector<std::size_t>& r) { r.erase(std::remove(r.begin(), r.end(), el), r.end()); };
    drop(rot[q]);
    rot[leaf].clear();
    std::optional<std::size_t> anchor_edge;
    for (std::size_t dart : detail::walk_from(ends, rot, follow)) {
      std::size_t e = dart / 2;
      if (ends[e][1 - (dart & 1)] != target) continue;
      // Entering `target` along e: the corner is clockwise from cw-pred(e) to e.
      const auto& r = rot[target];
      std::size_t p = static_cast<std::size_t>(std::find(r.begin(), r.end(), e) - r.begin());
      anchor_edge = r[(p + r.size() - 1) % r.size()];
      break;
    }
    if (!anchor_edge) {
      const OuterCorner* k = nullptr;
      for (const auto& corner : corners)
        if (corner.vertex == anchor) {
          k = &corner;
          break;
        }
      std::size_t base_edge = c.parity[s] > 0 ? k->out : k->in;
      for (std::size_t e : rot[target])
        if (c.edge_class[e] == base_edge) anchor_edge = e;
    }
    auto& rt = rot[target];
    rt.insert(std::find(rt.begin(), rt.end(), *anchor_edge) + 1, el);
    rot[leaf] = {el};
    // Rewrite the description with the new endpoint and rotations.
    for (auto& e : d.edges)
      if (e.id == H.edge(el).id) {
        e.u = H.vertex(target).id;
        e.v = leaf_id;
      }
    d.rotations.clear();
    for (std::size_t v = 0; v < H.vertex_count(); ++v) {
      if (rot[v].empty()) continue;
      std::vector<std::string> ids;
      for (std::size_t e : rot[v]) ids.push_back(H.edge(e).id);
      d.rotations.emplace_back(H.vertex(v).id, std::move(ids));
    }
    // Outer dart: keep the old one unless it belonged to the moved leaf.
    d.outer.clear();
    std::size_t o = H.outer_darts().front();
    while (H.dart_edge(o) == el) o = H.next_in_face(o);
    d.outer.emplace_back(H.edge(H.dart_edge(o)).id, H.vertex(H.dart_tail(o)).id);
    CompoundParts parts = compound_parts(c);
    parts.graph = PlanarBipartiteGraph::build(d);
    fam.members.push_back(assemble_compound(parts));
  }
  return fam;
}

/// Counts of the sign-weighted members; all members share the constructed
/// base sign, so their signs agree on base vertices.
inline std::vector<RingElement> family_counts(const Family& fam) {
  SignFunction sf_base = construct_sign_function(fam.members.front().base);
  std::vector<RingElement> counts;
  for (const auto& m : fam.members) {
    ReducedGraph r = reduced_graph(m);
    SignFunction sf = equivariant_sign(m, r, sf_base);
    counts.push_back(count_matchings(sign_weight(m, sf)));
  }
  return counts;
}

inline std::string format_signs(const std::vector<int>& eps) {
  std::string s;
  for (int e : eps) s += e > 0 ? '+' : '-';
  return s;
}

/// Searches eps in {+1,-1}^k with eps_1 = +1 such that sum eps_i c_i = 0.
inline VerificationReport verify_zero_sum(const Family& fam) {
  VerificationReport r;
  r.subject = "family:" + fam.moving_leaf;
  r.claim = "zero-sum: sum of eps_i #Hbar_i vanishes for some signs";
  auto counts = family_counts(fam);
  std::string listing;
  for (const auto& c : counts) listing += (listing.empty() ? "" : ",") + c.to_string();
  r.with("members", std::to_string(counts.size())).with("counts", listing);
  const std::size_t k = counts.size();
  if (k > 24) throw Error(ErrorCode::InvalidArgument, "family too large for exhaustive sign search");
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (k - 1)); ++mask) {
    RingElement total = counts[0];
    std::vector<int> eps{1};
    for (std::size_t i = 1; i < k; ++i) {
      int e = (mask >> (i - 1) & 1) ? -1 : 1;
      eps.push_back(e);
      if (e > 0)
        total += counts[i];
      else
        total -= counts[i];
    }
    if (total.is_zero()) {
      r.with("epsilon", format_signs(eps));
      return r;
    }
  }
  r.status = Status::Fail;
  r.reproducer = write_pbg(fam.members.front().graph);
  return r;
}

inline VerificationReport verify_divisibility(const CompoundGraph& c) {
  VerificationReport r;
  r.subject = "compound";
  r.claim = "divisibility: #G divides #Hbar";
  ReducedGraph red = reduced_graph(c);
  RingElement hbar = count_matchings(sign_weight(c, standard_sign(c, red)));
  RingElement g = count_matchings(c.base);
  r.with("count_base", g.to_string()).with("count_hbar", hbar.to_string());
  if (g.is_zero()) {
    r.status = hbar.is_zero() ? Status::Vacuous : Status::Fail;
    if (r.status == Status::Fail) r.reproducer = write_pbg(c.graph);
    return r;
  }
  try {
    RingElement q = exact_div(hbar, g);
    r.with("quotient", q.to_string());
    if (q * g != hbar) throw Error(ErrorCode::NotDivisible, "quotient check failed");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotDivisible) throw;
    r.status = Status::Fail;
    r.with("error", e.what());
    r.reproducer = write_pbg(c.graph);
  }
  return r;
}

/// Leaves lying in each bounded face of the reduced graph.
inline std::vector<std::size_t> leaves_per_inner_face(const CompoundGraph& c, const ReducedGraph& r) {
  Faces f = trace_faces(r.graph);
  std::vector<std::size_t> count(f.walks.size(), 0);
  for (std::size_t l : c.leaves) {
    std::size_t e = *r.reduced_edge[c.graph.rotation(l).front()];
    count[f.face_of[2 * e]]++;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.walks.size(); ++i)
    if (!f.walks[i].is_outer) out.push_back(count[i]);
  return out;
}

inline bool check_odd_leaves(const CompoundGraph& c, const ReducedGraph& r) {
  auto counts = leaves_per_inner_face(c, r);
  return std::all_of(counts.begin(), counts.end(), [](std::size_t n) { return n % 2 == 1; });
}

inline bool check_odd_leaves(const CompoundGraph& c) { return check_odd_leaves(c, reduced_graph(c)); }

}  // namespace matchkast
