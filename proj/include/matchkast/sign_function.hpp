#pragma once

// Sign functions: edge labelings by +-1 under which every inner face with 2m
// boundary edges (counted with multiplicity) has product (-1)^(m-1).

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "matchkast/pbg_io.hpp"
#include "matchkast/planar_graph.hpp"
#include "matchkast/report.hpp"

namespace matchkast {

struct SignFunction {
  std::vector<std::int8_t> values;  // indexed like g.edges()

  SignFunction() = default;
  explicit SignFunction(std::size_t edges, std::int8_t fill = 1) : values(edges, fill) {}

  int operator[](std::size_t e) const { return values[e]; }
  void flip(std::size_t e) { values[e] = static_cast<std::int8_t>(-values[e]); }
  std::size_t size() const { return values.size(); }
  friend bool operator==(const SignFunction&, const SignFunction&) = default;
};

/// `<edge-id> <+1|-1>` lines in edge order.
inline std::string write_signs(const PlanarBipartiteGraph& g, const SignFunction& sf) {
  std::ostringstream out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) out << g.edge(e).id << ' ' << (sf[e] > 0 ? "+1" : "-1") << '\n';
  return out.str();
}

inline SignFunction parse_signs(const PlanarBipartiteGraph& g, const std::string& text) {
  SignFunction sf(g.edge_count(), 0);
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = detail::split_tokens(detail::strip_comment(line));
    if (tok.empty()) continue;
    if (tok.size() != 2 || (tok[1] != "+1" && tok[1] != "-1")) detail::parse_fail(lineno, "expected '<edge> <+1|-1>'");
    auto e = g.find_edge(tok[0]);
    if (!e) detail::parse_fail(lineno, "unknown edge '" + tok[0] + "'");
    sf.values[*e] = tok[1] == "+1" ? 1 : -1;
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (sf[e] == 0) throw Error(ErrorCode::Parse, "no sign given for edge '" + g.edge(e).id + "'");
  return sf;
}

struct FaceSign {
  int product;
  bool positive;
};

inline FaceSign face_sign_product(const PlanarBipartiteGraph& g, const SignFunction& sf, const FaceWalk& face) {
  if (face.is_outer) throw Error(ErrorCode::OuterFaceGiven, "positivity is defined for inner faces only");
  int product = 1;
  for (std::size_t d : face.darts) product *= sf[g.dart_edge(d)];
  std::size_t m = face.darts.size() / 2;
  int wanted = (m - 1) % 2 == 0 ? 1 : -1;
  return {product, product == wanted};
}

/// Calls visit(darts) once for every simple cycle (either orientation is
/// reported once) until visit returns false. Parallel edges form 2-cycles.
/// The search gives up after max_steps path extensions; returns false then.
inline bool for_each_simple_cycle(const PlanarBipartiteGraph& g,
                                  const std::function<bool(const std::vector<std::size_t>&)>& visit,
                                  std::size_t max_steps = static_cast<std::size_t>(-1)) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> on_path(n, false);
  std::vector<std::size_t> path;
  bool stop = false, cut = false;
  // The step budget is shared out per start vertex so the sample is not
  // all cycles through vertex 0.
  const std::size_t per_start =
      max_steps == static_cast<std::size_t>(-1) ? max_steps : std::max<std::size_t>(1, max_steps / std::max<std::size_t>(n, 1));
  std::size_t steps = 0;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t s, std::size_t u) {
    for (std::size_t e : g.rotation(u)) {
      if (stop) return;
      std::size_t w = g.other_end(e, u);
      if (w == s && !path.empty() && g.dart_edge(path.front()) < e) {
        path.push_back(g.dart(e, u));
        if (!visit(path)) stop = true;
        path.pop_back();
      } else if (w > s && !on_path[w]) {
        if (++steps > per_start) {
          cut = true;
          return;
        }
        on_path[w] = true;
        path.push_back(g.dart(e, u));
        dfs(s, w);
        path.pop_back();
        on_path[w] = false;
      }
    }
  };
  for (std::size_t s = 0; s < n && !stop; ++s) {
    steps = 0;
    on_path[s] = true;
    dfs(s, s);
    on_path[s] = false;
  }
  return !cut;
}

inline std::string describe_darts(const PlanarBipartiteGraph& g, const std::vector<std::size_t>& darts) {
  std::string out;
  for (std::size_t d : darts) {
    if (!out.empty()) out += ' ';
    out += g.edge(g.dart_edge(d)).id + ":" + g.vertex(g.dart_tail(d)).id;
  }
  return out;
}

/// Checks positivity of every inner face, then the cycle identity
/// prod sf = (-1)^(|C|/2 + A(C) - 1) on up to cycle_budget simple cycles.
inline VerificationReport verify_sign_function(const PlanarBipartiteGraph& g, const SignFunction& sf,
                                               std::size_t cycle_budget = 100000) {
  VerificationReport r;
  r.subject = "sign-function";
  r.claim = "inner faces positive; cycle product (-1)^(|C|/2+A(C)-1)";
  auto fail = [&](std::string what, std::string where) {
    r.status = Status::Fail;
    r.with("violation", std::move(what)).with("at", std::move(where));
    r.reproducer = write_pbg(g) + "# signs\n" + write_signs(g, sf);
  };
  if (sf.size() != g.edge_count()) {
    fail("domain", "sign function has " + std::to_string(sf.size()) + " values");
    return r;
  }
  Faces faces = trace_faces(g);
  std::size_t inner = 0;
  for (const auto& f : faces.walks) {
    if (f.is_outer) continue;
    ++inner;
    if (!face_sign_product(g, sf, f).positive) {
      fail("negative face", describe_darts(g, f.darts));
      return r;
    }
  }
  std::size_t checked = 0;
  bool exhaustive = true;
  // Long self-avoiding paths that never close dominate on big graphs, so
  // the search is also capped in steps.
  const std::size_t max_steps = cycle_budget > (std::size_t(-1) >> 12) ? std::size_t(-1) : cycle_budget << 10;
  bool finished = for_each_simple_cycle(g, [&](const std::vector<std::size_t>& cycle) {
    if (checked == cycle_budget) {
      exhaustive = false;
      return false;
    }
    ++checked;
    int product = 1;
    for (std::size_t d : cycle) product *= sf[g.dart_edge(d)];
    std::size_t a = enclosed_vertices(g, cycle, faces);
    int wanted = (cycle.size() / 2 + a + 1) % 2 == 0 ? 1 : -1;
    if (product != wanted) {
      fail("cycle identity", describe_darts(g, cycle) + " enclosing " + std::to_string(a));
      return false;
    }
    return true;
  }, max_steps);
  if (!finished) exhaustive = false;
  if (r.status == Status::Fail) return r;
  r.with("inner_faces", std::to_string(inner))
      .with("cycles_checked", std::to_string(checked))
      .with("exhaustive", exhaustive ? "yes" : "no");
  if (inner == 0) r.status = Status::Vacuous;
  return r;
}

/// Dual spanning forest rooted at the outer faces; inner faces are fixed in
/// reverse BFS order by flipping the edge shared with the BFS parent.
/// Repairs sf face by face, changing only edges with movable[e] set: a dual
/// BFS forest from the outer faces through movable edges, then faces in
/// reverse order flip their parent edge when negative. Faces the forest
/// cannot reach are left as they are.
inline SignFunction complete_sign_function(const PlanarBipartiteGraph& g, SignFunction sf,
                                           const std::vector<bool>& movable) {
  Faces faces = trace_faces(g);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent_edge(faces.walks.size(), kNone);
  std::vector<bool> seen(faces.walks.size(), false);
  std::vector<std::size_t> order;
  for (std::size_t f = 0; f < faces.walks.size(); ++f)
    if (faces.walks[f].is_outer) {
      seen[f] = true;
      order.push_back(f);
    }
  for (std::size_t qi = 0; qi < order.size(); ++qi)
    for (std::size_t d : faces.walks[order[qi]].darts) {
      if (!movable[g.dart_edge(d)]) continue;
      std::size_t f = faces.face_of[d ^ 1];
      if (seen[f]) continue;
      seen[f] = true;
      parent_edge[f] = g.dart_edge(d);
      order.push_back(f);
    }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& face = faces.walks[*it];
    if (face.is_outer) continue;
    if (!face_sign_product(g, sf, face).positive) sf.flip(parent_edge[*it]);
  }
  return sf;
}

inline SignFunction construct_sign_function(const PlanarBipartiteGraph& g) {
  return complete_sign_function(g, SignFunction(g.edge_count()), std::vector<bool>(g.edge_count(), true));
}

}  // namespace matchkast
