#pragma once

// Symmetric compound graphs over P2: a half G1, its mirror image G2, and
// stems and leaves of either color on the axis between them. Ciucu's lemma
// (two-member families have equal counts) and the factorization
// #H = 2^w #G_bw #G_wb.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "matchkast/compound.hpp"
#include "matchkast/corpus.hpp"
#include "matchkast/kasteleyn.hpp"
#include "matchkast/pbg_io.hpp"
#include "matchkast/report.hpp"
#include "matchkast/sign_function.hpp"

namespace matchkast {

enum class AxisRole { Stem, Leaf };

/// One vertex on the axis as requested: a stem joining `vertex` in both
/// copies, or a leaf on `vertex` in copy `side` (1 = G1, 2 = G2). `corner`
/// pins the outer corner of the half when the vertex has several.
struct AxisEntry {
  AxisRole role = AxisRole::Stem;
  std::string vertex;
  int side = 0;
  std::optional<std::size_t> corner;
  friend bool operator==(const AxisEntry&, const AxisEntry&) = default;
};

/// Axis entries in order along the line. Text form: tokens S:<v>, L1:<v>,
/// L2:<v>, each optionally suffixed @c<k>, separated by spaces or commas.
struct AxisSpec {
  std::vector<AxisEntry> entries;

  static AxisSpec parse(const std::string& text) {
    AxisSpec spec;
    std::string cleaned = text;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream in(cleaned);
    std::string tok;
    while (in >> tok) {
      auto bad = [&](const std::string& why) {
        return Error(ErrorCode::Parse, "bad axis token '" + tok + "': " + why);
      };
      auto colon = tok.find(':');
      if (colon == std::string::npos) throw bad("want S:<v>, L1:<v> or L2:<v>");
      std::string head = tok.substr(0, colon), rest = tok.substr(colon + 1);
      AxisEntry e;
      if (head == "S") {
        e.role = AxisRole::Stem;
      } else if (head == "L1" || head == "L2") {
        e.role = AxisRole::Leaf;
        e.side = head == "L1" ? 1 : 2;
      } else {
        throw bad("unknown kind '" + head + "'");
      }
      auto at = rest.find('@');
      if (at != std::string::npos) {
        FaceSpec f = FaceSpec::parse(rest.substr(at + 1));
        if (!f.corner || f.sub) throw bad("corner must be c<k>");
        e.corner = f.corner;
        rest = rest.substr(0, at);
      }
      if (rest.empty()) throw bad("missing vertex");
      e.vertex = rest;
      spec.entries.push_back(std::move(e));
    }
    return spec;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& e : entries) {
      if (!out.empty()) out += ' ';
      out += e.role == AxisRole::Stem ? "S" : (e.side == 1 ? "L1" : "L2");
      out += ":" + e.vertex;
      if (e.corner) out += "@c" + std::to_string(*e.corner);
    }
    return out;
  }
};

/// An axis vertex of H, in axis order.
struct AxisVertex {
  AxisRole role;
  Color color;
  std::string id;           // vertex id in H
  std::size_t base_vertex;  // attachment, as a vertex of the half
  int side;                 // leaves: 1 or 2; stems: 0
  std::size_t corner;       // outer corner of the half used
};

struct SymmetricCompound {
  PlanarBipartiteGraph half;
  AxisSpec spec;  // with every corner resolved
  std::vector<AxisVertex> axis;
  CompoundGraph compound;  // supervertices X (G1, black) and Y (G2, white, mirrored)
  std::size_t w = 0;       // number of stems
  bool reversed = false;   // axis order runs against the half's outer walk

  const PlanarBipartiteGraph& graph() const { return compound.graph; }
  bool theorem_form() const {
    return std::none_of(axis.begin(), axis.end(), [](const AxisVertex& a) { return a.role == AxisRole::Leaf; });
  }
};

namespace detail {

inline PlanarBipartiteGraph path_p2() {
  return parse_pbg("pbg v1\nvertex X b\nvertex Y w\nedge XY X Y 1\nrot X XY\nrot Y XY\nouter XY X\n");
}

inline Color opposite(Color c) { return c == Color::Black ? Color::White : Color::Black; }

// Corner per entry, taken in `order`, such that the corners advance along
// the outer walk by less than one full turn. Empty when impossible.
inline std::optional<std::vector<std::size_t>> walk_corners(const std::vector<OuterCorner>& corners,
                                                            const std::vector<std::vector<std::size_t>>& options,
                                                            const std::vector<std::size_t>& order) {
  const std::size_t C = corners.size();
  if (order.empty()) return std::vector<std::size_t>{};
  for (std::size_t first : options[order.front()]) {
    std::vector<std::size_t> pick(options.size());
    pick[order.front()] = first;
    std::size_t prev = first, total = 0;
    bool ok = true;
    for (std::size_t i = 1; i < order.size() && ok; ++i) {
      std::size_t best = 0, gap = C;
      for (std::size_t k : options[order[i]]) {
        std::size_t g = (k + C - prev) % C;
        if (g < gap) {
          gap = g;
          best = k;
        }
      }
      total += gap;
      ok = total < C;
      pick[order[i]] = best;
      prev = best;
    }
    if (ok) return pick;
  }
  return std::nullopt;
}

}  // namespace detail

/// Builds H: G1 as supervertex X, its reflection G2 as Y, and the axis
/// vertices attached in order along the part of G1's outer boundary that
/// faces the axis.
inline SymmetricCompound build_symmetric(const PlanarBipartiteGraph& half, const AxisSpec& spec) {
  if (half.edge_count() == 0) throw Error(ErrorCode::InvalidArgument, "the half needs at least one edge");
  if (!detail::connected(half)) throw Error(ErrorCode::NotConnected, "the half must be connected");
  const auto& entries = spec.entries;
  const auto corners = outer_corners(half);

  std::size_t stems = 0, leaves = 0;
  for (const auto& e : entries) (e.role == AxisRole::Stem ? stems : leaves)++;
  if (leaves > 0) {
    for (std::size_t i = 1; i < entries.size(); ++i)
      if (entries[i].role == entries[i - 1].role)
        throw Error(ErrorCode::NonAlternating, "axis entries " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                                   " are both " +
                                                   (entries[i].role == AxisRole::Stem ? "stems" : "leaves"));
    if (stems != leaves)
      throw Error(ErrorCode::NonAlternating, std::to_string(stems) + " stems but " + std::to_string(leaves) +
                                                 " leaves on the axis");
  }

  std::vector<std::vector<std::size_t>> options(entries.size());
  long balance = 2 * (long(half.count(Color::Black)) - long(half.count(Color::White)));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.role == AxisRole::Leaf && e.side != 1 && e.side != 2)
      throw Error(ErrorCode::InvalidArgument, "leaf side must be 1 or 2");
    std::size_t v = half.vertex_index(e.vertex);
    for (std::size_t k = 0; k < corners.size(); ++k)
      if (corners[k].vertex == v && (!e.corner || *e.corner == k)) options[i].push_back(k);
    if (options[i].empty())
      throw Error(ErrorCode::NotOuterFace, e.corner ? "corner c" + std::to_string(*e.corner) + " is not at '" +
                                                          e.vertex + "'"
                                                    : "'" + e.vertex + "' is not on the outer face of the half");
    balance += half.vertex(v).color == Color::White ? 1 : -1;  // the axis vertex takes the other color
  }
  if (balance != 0)
    throw Error(ErrorCode::ColorImbalance, "H would have " + std::to_string(std::labs(balance)) + " more " +
                                               (balance > 0 ? "black" : "white") + " vertices");

  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  bool reversed = false;
  auto picked = detail::walk_corners(corners, options, order);
  if (!picked) {
    std::reverse(order.begin(), order.end());
    picked = detail::walk_corners(corners, options, order);
    reversed = true;
  }
  if (!picked)
    throw Error(ErrorCode::NotGenusZero, "axis order does not follow the outer boundary of the half");

  const PlanarBipartiteGraph P2 = detail::path_p2();
  detail::CompoundAssembler as(half, P2);
  MapBuilder& b = as.builder();
  const std::size_t E = half.edge_count();

  SymmetricCompound sc;
  sc.half = half;
  sc.reversed = reversed;
  sc.w = stems;
  sc.spec = spec;
  sc.axis.resize(entries.size());
  std::map<std::size_t, std::size_t> last_in_y;  // corner -> last edge placed there in Y
  std::optional<std::size_t> outer_corner;
  std::vector<std::string> stem_ids, leaf_ids;
  for (std::size_t i : order) {
    const auto& e = entries[i];
    std::size_t bv = half.vertex_index(e.vertex), k = (*picked)[i];
    sc.spec.entries[i].corner = k;
    std::string id = "a" + detail::padded(i, entries.size());
    Color color = detail::opposite(half.vertex(bv).color);
    sc.axis[i] = {e.role, color, id, bv, e.role == AxisRole::Leaf ? e.side : 0, k};
    std::size_t p = b.add_vertex(id, color);
    // In X the walk meets a corner's new edges from `in` towards `out`, so
    // each later one goes right after `out`; Y holds the mirror order.
    auto put_x = [&](std::size_t edge) {
      b.insert_after(as.vertex(0, bv), E * 0 + corners[k].out, edge);
      if (!outer_corner) outer_corner = k;
    };
    auto put_y = [&](std::size_t edge) {
      auto it = last_in_y.find(k);
      b.insert_after(as.vertex(1, bv), it == last_in_y.end() ? E + corners[k].in : it->second, edge);
      last_in_y[k] = edge;
    };
    if (e.role == AxisRole::Stem) {
      std::size_t ex = b.add_edge(id + "-X", p, as.vertex(0, bv));
      std::size_t ey = b.add_edge(id + "-Y", p, as.vertex(1, bv));
      b.append(p, ex);
      b.append(p, ey);
      put_x(ex);
      put_y(ey);
      stem_ids.push_back(id);
    } else {
      std::size_t s = e.side == 1 ? 0 : 1;
      std::size_t edge = b.add_edge(id + (s == 0 ? "-X" : "-Y"), p, as.vertex(s, bv));
      b.append(p, edge);
      if (s == 0)
        put_x(edge);
      else
        put_y(edge);
      leaf_ids.push_back(id);
    }
  }
  if (!detail::genus_zero(b)) throw Error(ErrorCode::NotGenusZero, "axis attachments do not embed planarly");

  // The unbounded face lies beyond the first attachment in X, on the far
  // side of G1; without stems each copy keeps its own outer face.
  b.clear_outer();
  if (stems > 0) {
    const OuterCorner& c = corners[*outer_corner];
    b.add_outer(c.in, as.vertex(0, half.other_end(c.in, c.vertex)));
  } else {
    const OuterCorner& c = corners.front();
    b.add_outer(c.out, as.vertex(0, c.vertex));
    b.add_outer(E + c.out, as.vertex(1, half.other_end(c.out, c.vertex)));
  }

  CompoundParts parts;
  parts.base = half;
  parts.supergraph = P2;
  parts.graph = b.build();
  parts.relaxed_colors = true;
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t v = 0; v < half.vertex_count(); ++v)
      parts.vmap.emplace_back(b.vertex_id(as.vertex(s, v)), P2.vertex(s).id, half.vertex(v).id);
    for (std::size_t e = 0; e < E; ++e) parts.emap.emplace_back(b.edge_id(s * E + e), P2.vertex(s).id, half.edge(e).id);
  }
  parts.stems = stem_ids;
  parts.leaves = leaf_ids;
  sc.compound = assemble_compound(parts);
  if (!sc.graph().balanced()) throw Error(ErrorCode::ColorImbalance, "H has unequal color classes");
  return sc;
}

inline SymmetricCompound build_symmetric(const PlanarBipartiteGraph& half, const std::string& axis_spec) {
  return build_symmetric(half, AxisSpec::parse(axis_spec));
}

/// Base sign on both copies and leaf edges +1. On an alternating axis the
/// two edges at a black stem are equal and at a white stem opposite. A
/// face between consecutive stems needs the product of their two stem
/// products to be (-1)^(leaves in it + 1) times the color match, so with k
/// leaves before the i-th stem the rule is twisted by (-1)^(i + k), counted
/// from the first stem; alternating axes get no twist at all.
inline SignFunction ciucu_sign_function(const SymmetricCompound& sc) {
  const auto& c = sc.compound;
  const auto& H = c.graph;
  std::map<std::string, int> stem_sign;  // product of the two edge signs
  std::optional<std::size_t> first;
  std::size_t stems = 0, leaves = 0;
  for (const auto& a : sc.axis) {
    if (a.role == AxisRole::Leaf) {
      ++leaves;
      continue;
    }
    std::size_t twist = stems + leaves;
    if (!first) first = twist;
    int sign = a.color == Color::Black ? 1 : -1;
    if ((twist - *first) % 2 == 1) sign = -sign;
    stem_sign[a.id] = sign;
    ++stems;
  }
  SignFunction f = construct_sign_function(sc.half);
  SignFunction sf(H.edge_count());
  for (std::size_t e = 0; e < H.edge_count(); ++e) {
    if (c.edge_class[e]) {
      sf.values[e] = static_cast<std::int8_t>(f[*c.edge_class[e]]);
      continue;
    }
    std::size_t b = H.edge(e).black, w = H.edge(e).white;
    std::size_t p = c.copy_of[b] ? w : b, q = H.other_end(e, p);
    if (c.is_stem(p) && c.copy_of[q]->super == 1) sf.values[e] = static_cast<std::int8_t>(stem_sign.at(H.vertex(p).id));
  }
  return sf;
}

namespace detail {

inline std::string symmetric_reproducer(const SymmetricCompound& sc) {
  return write_pbg(sc.half) + "# axis " + sc.spec.to_string() + "\n";
}

inline std::size_t axis_index(const SymmetricCompound& sc, const std::string& id) {
  for (std::size_t i = 0; i < sc.axis.size(); ++i)
    if (sc.axis[i].id == id) return i;
  throw Error(ErrorCode::DanglingReference, "'" + id + "' is not an axis vertex");
}

}  // namespace detail

/// The other member of a leaf's family: the same axis with that leaf moved
/// to the mirror vertex in the other copy, in the same face.
inline SymmetricCompound ciucu_sibling(const SymmetricCompound& sc, const std::string& leaf_id) {
  std::size_t i = detail::axis_index(sc, leaf_id);
  if (sc.axis[i].role != AxisRole::Leaf) throw Error(ErrorCode::InvalidArgument, "'" + leaf_id + "' is a stem");
  AxisSpec spec = sc.spec;
  spec.entries[i].side = 3 - spec.entries[i].side;
  return build_symmetric(sc.half, spec);
}

/// #H1 = #H2 for the family of one axis leaf, with no sign-weighting. Also
/// checks that the sign function of H1 stays valid on H2.
inline VerificationReport verify_ciucu_lemma(const SymmetricCompound& sc, const std::string& leaf_id) {
  VerificationReport r;
  r.subject = "ciucu-lemma:" + leaf_id;
  r.claim = "the two members of a leaf's family have equal weighted counts";
  SymmetricCompound other = ciucu_sibling(sc, leaf_id);
  RingElement c1 = count_matchings(sc.graph()), c2 = count_matchings(other.graph());
  r.with("count_1", c1.to_string()).with("count_2", c2.to_string());

  SignFunction sf = ciucu_sign_function(sc);
  SignFunction shared(other.graph().edge_count());
  const std::string moved = leaf_id + (sc.axis[detail::axis_index(sc, leaf_id)].side == 1 ? "-X" : "-Y");
  for (std::size_t e = 0; e < other.graph().edge_count(); ++e) {
    const std::string& id = other.graph().edge(e).id;
    auto src = sc.graph().find_edge(id.rfind(leaf_id + "-", 0) == 0 ? moved : id);
    shared.values[e] = static_cast<std::int8_t>(sf[*src]);
  }
  bool reused = verify_sign_function(other.graph(), shared, 0).passed();
  r.with("shared_sign", reused ? "yes" : "no");
  if (c1 != c2 || !reused) {
    r.status = Status::Fail;
    r.reproducer = detail::symmetric_reproducer(sc) + "# leaf " + leaf_id + "\n";
  }
  return r;
}

/// G_bw and G_wb of a leafless symmetric graph. Stems are numbered from 1
/// along the axis; odd positions are "odd".
inline std::pair<PlanarBipartiteGraph, PlanarBipartiteGraph> split_even_odd(const SymmetricCompound& sc) {
  if (!sc.theorem_form()) throw Error(ErrorCode::InvalidArgument, "factorization needs an axis without leaves");
  std::vector<bool> keep_bw(sc.half.vertex_count(), true), keep_wb(sc.half.vertex_count(), true);
  for (std::size_t i = 0; i < sc.axis.size(); ++i) {
    bool even = (i + 1) % 2 == 0;
    bool black = sc.axis[i].color == Color::Black;
    (black == even ? keep_bw : keep_wb)[sc.axis[i].base_vertex] = false;
  }
  std::vector<bool> all(sc.half.edge_count(), true);
  return {subgraph(sc.half, keep_bw, all), subgraph(sc.half, keep_wb, all)};
}

namespace detail {

inline RingElement count_or_zero(const PlanarBipartiteGraph& g) {
  if (g.vertex_count() == 0) return RingElement(1);
  if (!g.balanced()) return RingElement(0);
  return count_matchings(g);
}

}  // namespace detail

/// #H = 2^(w/2) #G_bw #G_wb, where w is the (even) number of stems.
inline VerificationReport verify_factorization(const SymmetricCompound& sc) {
  VerificationReport r;
  r.subject = "ciucu-factorization";
  r.claim = "#H = 2^w #G_bw #G_wb with 2w stems labeled even/odd alternately";
  auto [bw, wb] = split_even_odd(sc);
  RingElement h = count_matchings(sc.graph());
  RingElement a = detail::count_or_zero(bw), b = detail::count_or_zero(wb);
  RingElement rhs = RingElement(1);
  for (std::size_t i = 0; i < sc.w / 2; ++i) rhs = rhs * RingElement(2);
  rhs = rhs * a * b;
  r.with("stems", std::to_string(sc.w))
      .with("count_H", h.to_string())
      .with("count_bw", a.to_string())
      .with("count_wb", b.to_string())
      .with("product", rhs.to_string());
  if (sc.w % 2 != 0 || h != rhs) {
    r.status = Status::Fail;
    r.reproducer = detail::symmetric_reproducer(sc);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Corpus.

/// Random symmetric instances on small halves: lemma form (alternating
/// stems and leaves) and theorem form (stems only), a third of them with a
/// variable per edge. Corners are pinned in the stored axis spec.
inline std::vector<SymmetricCompound> symmetric_corpus(std::uint64_t seed, std::size_t count,
                                                       std::size_t max_half_vertices = 8) {
  Rng rng(seed);
  std::vector<SymmetricCompound> out;
  for (std::size_t guard = 0; out.size() < count && guard < 2000 * count; ++guard) {
    WeightMode mode = out.size() % 3 == 1 ? WeightMode::Variables : WeightMode::Unit;
    std::size_t n = 2 + rng.below(max_half_vertices - 1);
    PlanarBipartiteGraph half =
        rng.chance(60) ? random_planar_map(rng, n, mode, rng.below(3)) : random_grid_subgraph(rng, n, mode);
    if (half.edge_count() == 0 || !detail::connected(half)) continue;
    auto corners = outer_corners(half);
    bool lemma = out.size() % 2 == 0;
    std::size_t len = lemma ? 2 * (1 + rng.below(3)) : 2 * rng.below(3);
    // Walk-ordered corners: sorted offsets from a random start.
    std::vector<std::size_t> offsets;
    for (std::size_t i = 0; i < len; ++i) offsets.push_back(rng.below(corners.size()));
    std::sort(offsets.begin(), offsets.end());
    std::size_t start = rng.below(corners.size());
    bool stem_first = rng.chance(50);
    AxisSpec spec;
    for (std::size_t i = 0; i < len; ++i) {
      AxisEntry e;
      std::size_t k = (start + offsets[i]) % corners.size();
      e.vertex = half.vertex(corners[k].vertex).id;
      e.corner = k;
      e.role = !lemma || (i % 2 == 0) == stem_first ? AxisRole::Stem : AxisRole::Leaf;
      if (e.role == AxisRole::Leaf) e.side = 1 + int(rng.below(2));
      spec.entries.push_back(std::move(e));
    }
    if (rng.chance(30)) std::reverse(spec.entries.begin(), spec.entries.end());
    try {
      out.push_back(build_symmetric(half, spec));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ColorImbalance) throw;
    }
  }
  return out;
}

}  // namespace matchkast
