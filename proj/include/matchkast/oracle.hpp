#pragma once

// Brute-force perfect matching enumeration: the independent ground truth for
// everything the determinant code computes. Deliberately naive.

#include <algorithm>
#include <functional>
#include <vector>

#include "matchkast/planar_graph.hpp"

namespace matchkast {

struct Matching {
  std::vector<std::size_t> edges;  // ascending edge indices
};

constexpr std::size_t kDefaultOracleBudget = 10'000'000;

/// Backtracking: always branch on an uncovered vertex of minimum remaining
/// degree (lowest index on ties), trying its edges in index order. visit()
/// receives each perfect matching once; the order is deterministic.
inline void for_each_matching(const PlanarBipartiteGraph& g,
                              const std::function<void(const std::vector<std::size_t>&)>& visit,
                              std::size_t budget = kDefaultOracleBudget) {
  const std::size_t n = g.vertex_count();
  if (n % 2 != 0 || !g.balanced()) return;
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t v = 0; v < n; ++v) {
    incident[v] = g.rotation(v);
    std::sort(incident[v].begin(), incident[v].end());
  }
  std::vector<bool> covered(n, false);
  std::vector<std::size_t> degree(n);
  for (std::size_t v = 0; v < n; ++v) degree[v] = incident[v].size();
  std::vector<std::size_t> chosen;
  std::size_t nodes = 0;

  auto cover = [&](std::size_t v, int delta) {
    for (std::size_t e : incident[v]) {
      std::size_t w = g.other_end(e, v);
      degree[w] = static_cast<std::size_t>(static_cast<long>(degree[w]) + delta);
    }
  };

  std::function<void(std::size_t)> search = [&](std::size_t remaining) {
    if (++nodes > budget)
      throw Error(ErrorCode::BudgetExceeded, "oracle exceeded " + std::to_string(budget) + " search nodes");
    if (remaining == 0) {
      std::vector<std::size_t> sorted = chosen;
      std::sort(sorted.begin(), sorted.end());
      visit(sorted);
      return;
    }
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (covered[v]) continue;
      if (degree[v] == 0) return;
      if (best == n || degree[v] < degree[best]) best = v;
    }
    for (std::size_t e : incident[best]) {
      std::size_t w = g.other_end(e, best);
      if (covered[w]) continue;
      covered[best] = covered[w] = true;
      cover(best, -1);
      cover(w, -1);
      chosen.push_back(e);
      search(remaining - 2);
      chosen.pop_back();
      cover(w, +1);
      cover(best, +1);
      covered[best] = covered[w] = false;
    }
  };
  search(n);
}

inline std::vector<Matching> enumerate_matchings(const PlanarBipartiteGraph& g,
                                                 std::size_t budget = kDefaultOracleBudget) {
  std::vector<Matching> out;
  for_each_matching(g, [&](const std::vector<std::size_t>& m) { out.push_back({m}); }, budget);
  return out;
}

/// Sum over perfect matchings of the product of edge weights.
inline RingElement oracle_count(const PlanarBipartiteGraph& g, std::size_t budget = kDefaultOracleBudget) {
  RingElement total;
  bool unit = std::all_of(g.edges().begin(), g.edges().end(),
                          [](const Edge& e) { return e.weight == RingElement(1); });
  Integer plain = 0;
  for_each_matching(
      g,
      [&](const std::vector<std::size_t>& m) {
        if (unit) {
          ++plain;
          return;
        }
        RingElement term(1);
        for (std::size_t e : m) term *= g.edge(e).weight;
        total += term;
      },
      budget);
  return unit ? RingElement(plain) : total;
}

}  // namespace matchkast
