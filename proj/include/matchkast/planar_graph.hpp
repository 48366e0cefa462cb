#pragma once

// Planar bipartite graphs as combinatorial maps.
//
// Embedding conventions used throughout the library:
//  * rotation(v) lists the edges at v in clockwise order;
//  * a dart is a directed edge, identified by 2*edge + (tail is the white end);
//  * face tracing: after arriving at v along edge e, the walk leaves along the
//    edge preceding e in the clockwise rotation at v (the counterclockwise
//    successor). Inner faces are therefore walked clockwise, and the corner
//    "clockwise from a to b" at v belongs to the walk of the dart entering v
//    along b.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matchkast/error.hpp"
#include "matchkast/ring.hpp"

namespace matchkast {

enum class Color : std::uint8_t { Black, White };

constexpr Color opposite(Color c) { return c == Color::Black ? Color::White : Color::Black; }
constexpr char color_char(Color c) { return c == Color::Black ? 'b' : 'w'; }

struct Vertex {
  std::string id;
  Color color;
};

struct Edge {
  std::string id;
  std::size_t black;  // endpoint indices; black end first
  std::size_t white;
  RingElement weight;
};

/// Unvalidated graph data, as read from a file or produced by a generator.
struct GraphDescription {
  struct RawEdge {
    std::string id, u, v;
    RingElement weight;
  };
  std::vector<std::pair<std::string, Color>> vertices;
  std::vector<RawEdge> edges;
  std::vector<std::pair<std::string, std::vector<std::string>>> rotations;  // clockwise
  std::vector<std::pair<std::string, std::string>> outer;                   // (edge id, tail id)
};

struct FaceWalk {
  std::vector<std::size_t> darts;
  bool is_outer = false;
};

struct Faces {
  std::vector<FaceWalk> walks;        // ordered by smallest contained dart
  std::vector<std::size_t> face_of;   // dart -> walk index
};

namespace detail {

using Ends = std::vector<std::array<std::size_t, 2>>;
using Rotations = std::vector<std::vector<std::size_t>>;

inline std::size_t dart_of(const Ends& ends, std::size_t edge, std::size_t tail) {
  return 2 * edge + (ends[edge][0] == tail ? 0 : 1);
}

// pos[d] = index of edge(d) in the rotation at tail(d).
inline std::vector<std::size_t> rotation_positions(const Ends& ends, const Rotations& rot) {
  std::vector<std::size_t> pos(2 * ends.size(), 0);
  for (std::size_t v = 0; v < rot.size(); ++v)
    for (std::size_t i = 0; i < rot[v].size(); ++i) pos[dart_of(ends, rot[v][i], v)] = i;
  return pos;
}

inline std::size_t next_dart(const Ends& ends, const Rotations& rot,
                             const std::vector<std::size_t>& pos, std::size_t d) {
  std::size_t e = d / 2;
  std::size_t head = ends[e][1 - (d & 1)];
  const auto& r = rot[head];
  std::size_t p = pos[d ^ 1];
  std::size_t f = r[(p + r.size() - 1) % r.size()];
  return dart_of(ends, f, head);
}

/// Face walks of a rotation system (no validation, no outer flags).
inline Faces trace(const Ends& ends, const Rotations& rot) {
  Faces faces;
  auto pos = rotation_positions(ends, rot);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  faces.face_of.assign(2 * ends.size(), kNone);
  for (std::size_t start = 0; start < 2 * ends.size(); ++start) {
    if (faces.face_of[start] != kNone) continue;
    FaceWalk walk;
    std::size_t d = start;
    do {
      faces.face_of[d] = faces.walks.size();
      walk.darts.push_back(d);
      d = next_dart(ends, rot, pos, d);
    } while (d != start);
    faces.walks.push_back(std::move(walk));
  }
  return faces;
}

inline std::vector<std::size_t> components(std::size_t n, const Ends& ends) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : ends) parent[find(e[0])] = find(e[1]);
  std::vector<std::size_t> label(n, static_cast<std::size_t>(-1)), comp(n);
  std::size_t next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t r = find(v);
    if (label[r] == static_cast<std::size_t>(-1)) label[r] = next++;
    comp[v] = label[r];
  }
  return comp;
}

template <class T>
std::optional<std::size_t> index_in_sorted(const std::vector<T>& items, const std::string& id) {
  auto it = std::lower_bound(items.begin(), items.end(), id,
                             [](const T& item, const std::string& key) { return item.id < key; });
  if (it == items.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - items.begin());
}

}  // namespace detail

class PlanarBipartiteGraph {
 public:
  PlanarBipartiteGraph() = default;

  /// Validates and canonicalizes: vertices and edges sorted by id, each
  /// rotation started at its smallest edge, each outer dart replaced by the
  /// smallest dart of its walk.
  static PlanarBipartiteGraph build(const GraphDescription& raw);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t dart_count() const { return 2 * edges_.size(); }

  const Vertex& vertex(std::size_t v) const { return vertices_[v]; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<std::size_t> find_vertex(const std::string& id) const {
    return detail::index_in_sorted(vertices_, id);
  }
  std::optional<std::size_t> find_edge(const std::string& id) const {
    return detail::index_in_sorted(edges_, id);
  }
  std::size_t vertex_index(const std::string& id) const {
    auto v = find_vertex(id);
    if (!v) throw Error(ErrorCode::DanglingReference, "unknown vertex '" + id + "'");
    return *v;
  }
  std::size_t edge_index(const std::string& id) const {
    auto e = find_edge(id);
    if (!e) throw Error(ErrorCode::DanglingReference, "unknown edge '" + id + "'");
    return *e;
  }

  /// Clockwise edge order at v.
  const std::vector<std::size_t>& rotation(std::size_t v) const { return rot_[v]; }
  std::size_t degree(std::size_t v) const { return rot_[v].size(); }
  std::size_t other_end(std::size_t e, std::size_t v) const {
    return ends_[e][0] == v ? ends_[e][1] : ends_[e][0];
  }

  std::size_t dart(std::size_t e, std::size_t tail) const { return detail::dart_of(ends_, e, tail); }
  std::size_t dart_edge(std::size_t d) const { return d / 2; }
  std::size_t dart_tail(std::size_t d) const { return ends_[d / 2][d & 1]; }
  std::size_t dart_head(std::size_t d) const { return ends_[d / 2][1 - (d & 1)]; }
  std::size_t next_in_face(std::size_t d) const { return detail::next_dart(ends_, rot_, pos_, d); }

  /// One designated outer dart per connected component that has edges.
  const std::vector<std::size_t>& outer_darts() const { return outer_; }

  std::size_t component_count() const { return component_count_; }
  std::size_t component_of(std::size_t v) const { return comp_[v]; }

  std::size_t count(Color c) const {
    return static_cast<std::size_t>(std::count_if(vertices_.begin(), vertices_.end(),
                                                  [c](const Vertex& v) { return v.color == c; }));
  }
  bool balanced() const { return count(Color::Black) == count(Color::White); }

  const detail::Ends& ends() const { return ends_; }
  const detail::Rotations& rotations() const { return rot_; }

  GraphDescription describe() const;

  /// Same map with new edge weights (indexed like edges()).
  PlanarBipartiteGraph with_weights(const std::vector<RingElement>& weights) const {
    if (weights.size() != edges_.size())
      throw Error(ErrorCode::InvalidArgument, "weight vector has wrong length");
    PlanarBipartiteGraph g = *this;
    for (std::size_t e = 0; e < edges_.size(); ++e) g.edges_[e].weight = weights[e];
    return g;
  }

  friend bool operator==(const PlanarBipartiteGraph& a, const PlanarBipartiteGraph& b) {
    if (a.vertices_.size() != b.vertices_.size() || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t v = 0; v < a.vertices_.size(); ++v)
      if (a.vertices_[v].id != b.vertices_[v].id || a.vertices_[v].color != b.vertices_[v].color)
        return false;
    for (std::size_t e = 0; e < a.edges_.size(); ++e) {
      const auto &x = a.edges_[e], &y = b.edges_[e];
      if (x.id != y.id || x.black != y.black || x.white != y.white || x.weight != y.weight) return false;
    }
    return a.rot_ == b.rot_ && a.outer_ == b.outer_;
  }

 private:
  void finalize(const std::vector<std::size_t>& requested_outer);

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  detail::Ends ends_;  // {black, white}
  detail::Rotations rot_;
  std::vector<std::size_t> pos_;
  std::vector<std::size_t> outer_;
  std::vector<std::size_t> comp_;
  std::size_t component_count_ = 0;
};

inline PlanarBipartiteGraph PlanarBipartiteGraph::build(const GraphDescription& raw) {
  PlanarBipartiteGraph g;
  for (const auto& [id, color] : raw.vertices) g.vertices_.push_back({id, color});
  std::sort(g.vertices_.begin(), g.vertices_.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < g.vertices_.size(); ++i)
    if (g.vertices_[i].id == g.vertices_[i - 1].id)
      throw Error(ErrorCode::DuplicateId, "vertex '" + g.vertices_[i].id + "' declared twice");

  std::vector<const GraphDescription::RawEdge*> order;
  for (const auto& e : raw.edges) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (order[i]->id == order[i - 1]->id)
      throw Error(ErrorCode::DuplicateId, "edge '" + order[i]->id + "' declared twice");
  for (const auto* e : order) {
    auto u = g.find_vertex(e->u), v = g.find_vertex(e->v);
    if (!u || !v)
      throw Error(ErrorCode::DanglingReference, "edge '" + e->id + "' references an unknown vertex");
    if (g.vertices_[*u].color == g.vertices_[*v].color)
      throw Error(ErrorCode::NotBipartite, "edge '" + e->id + "' joins two vertices of the same color");
    std::size_t b = g.vertices_[*u].color == Color::Black ? *u : *v;
    std::size_t w = b == *u ? *v : *u;
    g.edges_.push_back({e->id, b, w, e->weight});
    g.ends_.push_back({b, w});
  }

  const std::size_t n = g.vertices_.size();
  g.rot_.assign(n, {});
  std::vector<bool> seen(n, false);
  for (const auto& [vid, list] : raw.rotations) {
    auto v = g.find_vertex(vid);
    if (!v) throw Error(ErrorCode::DanglingReference, "rotation for unknown vertex '" + vid + "'");
    if (seen[*v]) throw Error(ErrorCode::BadRotation, "two rotations given for vertex '" + vid + "'");
    seen[*v] = true;
    for (const auto& eid : list) {
      auto e = g.find_edge(eid);
      if (!e) throw Error(ErrorCode::DanglingReference, "rotation of '" + vid + "' names unknown edge '" + eid + "'");
      if (g.ends_[*e][0] != *v && g.ends_[*e][1] != *v)
        throw Error(ErrorCode::BadRotation, "edge '" + eid + "' is not incident to '" + vid + "'");
      g.rot_[*v].push_back(*e);
    }
  }
  std::vector<std::size_t> incidence(2 * g.edges_.size(), 0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t e : g.rot_[v]) ++incidence[g.dart(e, v)];
  for (std::size_t e = 0; e < g.edges_.size(); ++e)
    for (std::size_t side = 0; side < 2; ++side)
      if (incidence[2 * e + side] != 1)
        throw Error(ErrorCode::BadRotation,
                    "edge '" + g.edges_[e].id + "' appears " + std::to_string(incidence[2 * e + side]) +
                        " times in the rotation of '" + g.vertices_[g.ends_[e][side]].id + "'");
  for (auto& r : g.rot_)
    if (!r.empty()) std::rotate(r.begin(), std::min_element(r.begin(), r.end()), r.end());

  std::vector<std::size_t> requested;
  for (const auto& [eid, tid] : raw.outer) {
    auto e = g.find_edge(eid);
    auto t = g.find_vertex(tid);
    if (!e || !t) throw Error(ErrorCode::DanglingReference, "outer dart (" + eid + ", " + tid + ") is unknown");
    if (g.ends_[*e][0] != *t && g.ends_[*e][1] != *t)
      throw Error(ErrorCode::DanglingReference, "outer dart tail '" + tid + "' is not an end of '" + eid + "'");
    requested.push_back(g.dart(*e, *t));
  }
  g.finalize(requested);
  return g;
}

inline void PlanarBipartiteGraph::finalize(const std::vector<std::size_t>& requested_outer) {
  pos_ = detail::rotation_positions(ends_, rot_);
  comp_ = detail::components(vertices_.size(), ends_);
  component_count_ = vertices_.empty() ? 0 : *std::max_element(comp_.begin(), comp_.end()) + 1;

  Faces faces = detail::trace(ends_, rot_);
  std::vector<long> euler(component_count_, 0);
  std::vector<std::size_t> walks_in(component_count_, 0), edges_in(component_count_, 0);
  for (std::size_t v = 0; v < vertices_.size(); ++v) ++euler[comp_[v]];
  for (const auto& e : ends_) ++edges_in[comp_[e[0]]];
  for (const auto& w : faces.walks) ++walks_in[comp_[dart_tail(w.darts.front())]];
  for (std::size_t c = 0; c < component_count_; ++c) {
    if (edges_in[c] == 0) continue;
    long chi = euler[c] - static_cast<long>(edges_in[c]) + static_cast<long>(walks_in[c]);
    if (chi != 2)
      throw Error(ErrorCode::NotGenusZero, "component " + std::to_string(c) + " has Euler characteristic " +
                                               std::to_string(chi) + " (V-E+F must be 2)");
  }

  std::vector<std::optional<std::size_t>> outer_walk(component_count_);
  for (std::size_t d : requested_outer) {
    std::size_t c = comp_[dart_tail(d)];
    std::size_t w = faces.face_of[d];
    if (outer_walk[c] && *outer_walk[c] != w)
      throw Error(ErrorCode::BadOuterFace, "component of '" + vertices_[dart_tail(d)].id +
                                               "' has two different outer faces");
    outer_walk[c] = w;
  }
  for (std::size_t c = 0; c < component_count_; ++c) {
    if (edges_in[c] == 0 || outer_walk[c]) continue;
    if (walks_in[c] != 1)
      throw Error(ErrorCode::BadOuterFace, "component " + std::to_string(c) + " has no designated outer face");
    for (std::size_t w = 0; w < faces.walks.size(); ++w)
      if (comp_[dart_tail(faces.walks[w].darts.front())] == c) outer_walk[c] = w;
  }
  outer_.clear();
  for (const auto& w : outer_walk)
    if (w) outer_.push_back(faces.walks[*w].darts.front());
  std::sort(outer_.begin(), outer_.end());
}

inline GraphDescription PlanarBipartiteGraph::describe() const {
  GraphDescription d;
  for (const auto& v : vertices_) d.vertices.emplace_back(v.id, v.color);
  for (const auto& e : edges_) d.edges.push_back({e.id, vertices_[e.black].id, vertices_[e.white].id, e.weight});
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (rot_[v].empty()) continue;
    std::vector<std::string> ids;
    for (std::size_t e : rot_[v]) ids.push_back(edges_[e].id);
    d.rotations.emplace_back(vertices_[v].id, std::move(ids));
  }
  for (std::size_t o : outer_) d.outer.emplace_back(edges_[dart_edge(o)].id, vertices_[dart_tail(o)].id);
  return d;
}

/// Face walks; the walk holding each component's outer dart is flagged.
inline Faces trace_faces(const PlanarBipartiteGraph& g) {
  Faces faces = detail::trace(g.ends(), g.rotations());
  for (std::size_t d : g.outer_darts()) faces.walks[faces.face_of[d]].is_outer = true;
  return faces;
}

inline PlanarBipartiteGraph build_graph(const GraphDescription& raw) { return PlanarBipartiteGraph::build(raw); }

/// Reflection of the embedding: every rotation reversed, the outer face
/// walked backwards. mirror(mirror(g)) == g.
inline PlanarBipartiteGraph mirror(const PlanarBipartiteGraph& g) {
  GraphDescription d = g.describe();
  for (auto& [v, list] : d.rotations) std::reverse(list.begin(), list.end());
  d.outer.clear();
  for (std::size_t o : g.outer_darts())
    d.outer.emplace_back(g.edge(g.dart_edge(o)).id, g.vertex(g.dart_head(o)).id);
  return PlanarBipartiteGraph::build(d);
}

/// Subgraph on the kept vertices and edges (edges need both ends kept), with
/// the inherited embedding. Each component's outer face is the one holding
/// a surviving dart of the old outer face, or else its longest walk.
inline PlanarBipartiteGraph subgraph(const PlanarBipartiteGraph& g, const std::vector<bool>& keep_vertex,
                                     const std::vector<bool>& keep_edge) {
  std::vector<bool> edge_ok(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    edge_ok[e] = keep_edge[e] && keep_vertex[g.edge(e).black] && keep_vertex[g.edge(e).white];
  GraphDescription d;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (keep_vertex[v]) d.vertices.emplace_back(g.vertex(v).id, g.vertex(v).color);
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (edge_ok[e])
      d.edges.push_back({g.edge(e).id, g.vertex(g.edge(e).black).id, g.vertex(g.edge(e).white).id, g.edge(e).weight});
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::vector<std::string> ids;
    for (std::size_t e : g.rotation(v))
      if (edge_ok[e]) ids.push_back(g.edge(e).id);
    if (!ids.empty()) d.rotations.emplace_back(g.vertex(v).id, std::move(ids));
  }
  // Trace the new map with the old indexing, dropping removed edges.
  detail::Rotations rot(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (std::size_t e : g.rotation(v))
      if (edge_ok[e]) rot[v].push_back(e);
  detail::Ends ends = g.ends();
  auto pos = detail::rotation_positions(ends, rot);
  std::vector<bool> old_outer(g.dart_count(), false);
  Faces old_faces = trace_faces(g);
  for (const auto& w : old_faces.walks)
    if (w.is_outer)
      for (std::size_t dd : w.darts) old_outer[dd] = true;
  detail::Ends kept_ends;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (edge_ok[e]) kept_ends.push_back(ends[e]);
  auto comp = detail::components(g.vertex_count(), kept_ends);
  struct Best {
    bool outer = false;
    std::size_t length = 0;
    std::size_t dart = 0;
    bool set = false;
  };
  std::map<std::size_t, Best> best;
  std::vector<bool> seen(g.dart_count(), false);
  for (std::size_t start = 0; start < g.dart_count(); ++start) {
    if (!edge_ok[start / 2] || seen[start]) continue;
    std::size_t length = 0, first_outer = static_cast<std::size_t>(-1), dd = start;
    do {
      seen[dd] = true;
      ++length;
      if (old_outer[dd] && first_outer == static_cast<std::size_t>(-1)) first_outer = dd;
      dd = detail::next_dart(ends, rot, pos, dd);
    } while (dd != start);
    Best& b = best[comp[ends[start / 2][start & 1]]];
    bool outer = first_outer != static_cast<std::size_t>(-1);
    if (!b.set || (outer && !b.outer) || (outer == b.outer && !outer && length > b.length)) {
      b = {outer, length, outer ? first_outer : start, true};
    }
  }
  for (const auto& [c, b] : best)
    d.outer.emplace_back(g.edge(b.dart / 2).id, g.vertex(g.dart_tail(b.dart)).id);
  return PlanarBipartiteGraph::build(d);
}

/// Number of vertices strictly inside a simple cycle (given as a closed
/// sequence of darts). Inside faces are those not reachable from the outer
/// face in the dual without crossing the cycle; the count then follows from
/// Euler's formula on the enclosed disk.
inline std::size_t enclosed_vertices(const PlanarBipartiteGraph& g, const std::vector<std::size_t>& cycle,
                                     const Faces& faces) {
  if (cycle.size() < 2) throw Error(ErrorCode::NotASimpleCycle, "a cycle needs at least two darts");
  std::vector<bool> on_cycle_vertex(g.vertex_count(), false), on_cycle_edge(g.edge_count(), false);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    std::size_t d = cycle[i];
    if (d >= g.dart_count()) throw Error(ErrorCode::NotASimpleCycle, "dart out of range");
    std::size_t next = cycle[(i + 1) % cycle.size()];
    if (g.dart_head(d) != g.dart_tail(next))
      throw Error(ErrorCode::NotASimpleCycle, "consecutive darts do not chain");
    if (on_cycle_vertex[g.dart_tail(d)]) throw Error(ErrorCode::NotASimpleCycle, "vertex repeated");
    if (on_cycle_edge[g.dart_edge(d)]) throw Error(ErrorCode::NotASimpleCycle, "edge repeated");
    on_cycle_vertex[g.dart_tail(d)] = true;
    on_cycle_edge[g.dart_edge(d)] = true;
  }
  std::size_t comp = g.component_of(g.dart_tail(cycle.front()));
  std::optional<std::size_t> outer;
  for (std::size_t o : g.outer_darts())
    if (g.component_of(g.dart_tail(o)) == comp) outer = faces.face_of[o];
  if (!outer) throw Error(ErrorCode::BadOuterFace, "cycle component has no outer face");

  std::vector<bool> reached(faces.walks.size(), false);
  std::vector<std::size_t> queue{*outer};
  reached[*outer] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (std::size_t d : faces.walks[queue[qi]].darts) {
      if (on_cycle_edge[g.dart_edge(d)]) continue;
      std::size_t f = faces.face_of[d ^ 1];
      if (!reached[f]) {
        reached[f] = true;
        queue.push_back(f);
      }
    }
  }
  std::size_t inside_faces = 0;
  std::vector<bool> disk_edge(g.edge_count(), false);
  for (std::size_t f = 0; f < faces.walks.size(); ++f) {
    if (reached[f] || g.component_of(g.dart_tail(faces.walks[f].darts.front())) != comp) continue;
    ++inside_faces;
    for (std::size_t d : faces.walks[f].darts) disk_edge[g.dart_edge(d)] = true;
  }
  if (inside_faces == 0) throw Error(ErrorCode::NotASimpleCycle, "cycle separates nothing");
  auto disk_edges = static_cast<long>(std::count(disk_edge.begin(), disk_edge.end(), true));
  long a = disk_edges - static_cast<long>(inside_faces) + 1 - static_cast<long>(cycle.size());
  return static_cast<std::size_t>(a);
}

inline std::size_t enclosed_vertices(const PlanarBipartiteGraph& g, const std::vector<std::size_t>& cycle) {
  return enclosed_vertices(g, cycle, trace_faces(g));
}

/// Mutable rotation system used while assembling graphs. Edges are inserted
/// into explicit angular positions; nothing is validated until build().
class MapBuilder {
 public:
  std::size_t add_vertex(std::string id, Color color) {
    vertices_.emplace_back(std::move(id), color);
    rot_.emplace_back();
    return vertices_.size() - 1;
  }

  /// New edge; it is not yet placed in either rotation.
  std::size_t add_edge(std::string id, std::size_t u, std::size_t v, RingElement weight = RingElement(1)) {
    edges_.push_back({std::move(id), {u, v}, std::move(weight)});
    ends_.push_back({u, v});
    return edges_.size() - 1;
  }

  /// Places `edge` at v immediately clockwise after `anchor`.
  void insert_after(std::size_t v, std::size_t anchor, std::size_t edge) {
    auto& r = rot_[v];
    auto it = std::find(r.begin(), r.end(), anchor);
    if (it == r.end()) throw Error(ErrorCode::BadRotation, "anchor edge is not at this vertex");
    r.insert(it + 1, edge);
  }
  void append(std::size_t v, std::size_t edge) { rot_[v].push_back(edge); }
  void remove_from_rotation(std::size_t v, std::size_t edge) {
    auto& r = rot_[v];
    r.erase(std::remove(r.begin(), r.end(), edge), r.end());
  }
  void set_endpoint(std::size_t edge, std::size_t side, std::size_t v) {
    ends_[edge][side] = v;
    edges_[edge].ends[side] = v;
  }

  std::vector<std::size_t>& rotation(std::size_t v) { return rot_[v]; }
  const std::vector<std::size_t>& rotation(std::size_t v) const { return rot_[v]; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& vertex_id(std::size_t v) const { return vertices_[v].first; }
  Color color(std::size_t v) const { return vertices_[v].second; }
  const std::string& edge_id(std::size_t e) const { return edges_[e].id; }
  std::size_t other_end(std::size_t e, std::size_t v) const { return ends_[e][0] == v ? ends_[e][1] : ends_[e][0]; }
  std::size_t dart(std::size_t e, std::size_t tail) const { return detail::dart_of(ends_, e, tail); }
  std::size_t dart_tail(std::size_t d) const { return ends_[d / 2][d & 1]; }
  void set_weight(std::size_t e, RingElement w) { edges_[e].weight = std::move(w); }

  void add_outer(std::size_t edge, std::size_t tail) { outer_.emplace_back(edge, tail); }
  void clear_outer() { outer_.clear(); }

  /// Walks of the current (possibly incomplete) rotation system.
  Faces faces() const { return detail::trace(ends_, rot_); }
  std::vector<std::size_t> component_labels() const { return detail::components(vertices_.size(), ends_); }

  GraphDescription description() const {
    GraphDescription d;
    for (const auto& [id, c] : vertices_) d.vertices.emplace_back(id, c);
    for (const auto& e : edges_)
      d.edges.push_back({e.id, vertices_[e.ends[0]].first, vertices_[e.ends[1]].first, e.weight});
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      if (rot_[v].empty()) continue;
      std::vector<std::string> ids;
      for (std::size_t e : rot_[v]) ids.push_back(edges_[e].id);
      d.rotations.emplace_back(vertices_[v].first, std::move(ids));
    }
    for (const auto& [e, t] : outer_) d.outer.emplace_back(edges_[e].id, vertices_[t].first);
    return d;
  }
  PlanarBipartiteGraph build() const { return PlanarBipartiteGraph::build(description()); }

 private:
  struct BuilderEdge {
    std::string id;
    std::array<std::size_t, 2> ends;
    RingElement weight;
  };
  std::vector<std::pair<std::string, Color>> vertices_;
  std::vector<BuilderEdge> edges_;
  detail::Ends ends_;
  detail::Rotations rot_;
  std::vector<std::pair<std::size_t, std::size_t>> outer_;
};

/// A straight-line drawing: vertex coordinates plus edges. The rotation
/// system and one outer dart per component are read off the geometry; the
/// drawing must be crossing-free.
struct Drawing {
  struct Point {
    std::string id;
    Color color;
    double x, y;
  };
  struct Segment {
    std::string id;
    std::string u, v;
    RingElement weight{1};
  };
  std::vector<Point> points;
  std::vector<Segment> segments;

  GraphDescription describe() const;
  PlanarBipartiteGraph build() const { return PlanarBipartiteGraph::build(describe()); }
};

inline GraphDescription Drawing::describe() const {
  GraphDescription d;
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a].id < points[b].id; });
  auto index = [&](const std::string& id) -> std::size_t {
    auto it = std::lower_bound(order.begin(), order.end(), id,
                               [&](std::size_t i, const std::string& key) { return points[i].id < key; });
    if (it == order.end() || points[*it].id != id)
      throw Error(ErrorCode::DanglingReference, "segment references unknown point '" + id + "'");
    return *it;
  };
  std::vector<std::vector<std::pair<double, std::size_t>>> around(points.size());
  detail::Ends ends;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    std::size_t u = index(segments[s].u), v = index(segments[s].v);
    ends.push_back({u, v});
    around[u].emplace_back(std::atan2(points[v].y - points[u].y, points[v].x - points[u].x), s);
    around[v].emplace_back(std::atan2(points[u].y - points[v].y, points[u].x - points[v].x), s);
  }
  for (const auto& p : points) d.vertices.emplace_back(p.id, p.color);
  for (const auto& s : segments) d.edges.push_back({s.id, s.u, s.v, s.weight});
  for (std::size_t v = 0; v < points.size(); ++v) {
    auto& list = around[v];
    if (list.empty()) continue;
    // Decreasing angle is clockwise.
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::string> ids;
    for (const auto& [angle, s] : list) ids.push_back(segments[s].id);
    d.rotations.emplace_back(points[v].id, std::move(ids));
  }
  // Leftmost (then lowest) vertex of each component: the corner facing west
  // lies on the outer face, between the last and the first edge clockwise.
  auto comp = detail::components(points.size(), ends);
  std::vector<std::optional<std::size_t>> extreme(points.size());
  for (std::size_t v = 0; v < points.size(); ++v) {
    if (around[v].empty()) continue;
    auto& best = extreme[comp[v]];
    if (!best || points[v].x < points[*best].x ||
        (points[v].x == points[*best].x && points[v].y < points[*best].y))
      best = v;
  }
  for (const auto& best : extreme) {
    if (!best) continue;
    std::size_t s = around[*best].front().second;
    std::size_t tail = ends[s][0] == *best ? ends[s][1] : ends[s][0];
    d.outer.emplace_back(segments[s].id, points[tail].id);
  }
  return d;
}

}  // namespace matchkast
