#pragma once

// Kasteleyn-Percus matching counts.

#include "matchkast/matrix.hpp"
#include "matchkast/planar_graph.hpp"
#include "matchkast/sign_function.hpp"

namespace matchkast {

/// Rows are black vertices, columns white vertices, both in id order.
/// Parallel edges add up.
inline RingMatrix kasteleyn_matrix(const PlanarBipartiteGraph& g, const SignFunction& sf) {
  if (!g.balanced())
    throw Error(ErrorCode::UnbalancedColors, std::to_string(g.count(Color::Black)) + " black vs " +
                                                 std::to_string(g.count(Color::White)) + " white vertices");
  std::vector<std::size_t> row_of(g.vertex_count()), col_of(g.vertex_count());
  std::vector<std::string> rows, cols;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.vertex(v).color == Color::Black) {
      row_of[v] = rows.size();
      rows.push_back(g.vertex(v).id);
    } else {
      col_of[v] = cols.size();
      cols.push_back(g.vertex(v).id);
    }
  }
  RingMatrix k(std::move(rows), std::move(cols));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    RingElement& slot = k.at(row_of[edge.black], col_of[edge.white]);
    if (sf[e] > 0)
      slot += edge.weight;
    else
      slot -= edge.weight;
  }
  return k;
}

/// Fixes the sign ambiguity of a determinant: nonnegative at all-ones, or
/// positive leading coefficient when that value is 0.
inline RingElement normalize_sign(RingElement r) {
  if (r.is_zero()) return r;
  int s = sgn(r.evaluate_at_ones());
  if (s < 0 || (s == 0 && sgn(r.leading_coefficient()) < 0)) return -r;
  return r;
}

inline RingElement count_matchings(const PlanarBipartiteGraph& g, const SignFunction& sf) {
  if (!g.balanced()) return RingElement();
  return normalize_sign(determinant(kasteleyn_matrix(g, sf)));
}

inline RingElement count_matchings(const PlanarBipartiteGraph& g) {
  if (!g.balanced()) return RingElement();
  return count_matchings(g, construct_sign_function(g));
}

}  // namespace matchkast
