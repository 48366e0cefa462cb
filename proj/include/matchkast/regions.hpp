#pragma once

// Rectangles and their block decomposition into compound graphs, the
// cosine product formula, Aztec 3-pillows, and the divisibility scans.

#include <mpfr.h>

#include <bit>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "matchkast/compound.hpp"
#include "matchkast/kasteleyn.hpp"
#include "matchkast/pbg_io.hpp"
#include "matchkast/report.hpp"

namespace matchkast {

struct RectangleSpec {
  std::size_t m = 1;  // rows
  std::size_t n = 1;  // columns
  bool variables = false;
};

struct PillowSpec {
  std::size_t order = 1;
};

namespace detail {

inline std::string zero_pad(std::size_t i, std::size_t width) {
  std::string s = std::to_string(i);
  return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

inline std::size_t id_width(std::size_t m, std::size_t n) { return std::to_string(std::max(m, n)).size(); }

}  // namespace detail

/// Vertex (i, j) of an m x n rectangle: row i from the top, column j from
/// the left, both from 1.
inline std::string rect_vertex_id(std::size_t i, std::size_t j, std::size_t width) {
  return "r" + detail::zero_pad(i, width) + "c" + detail::zero_pad(j, width);
}

inline Color rect_color(std::size_t i, std::size_t j) { return (i + j) % 2 == 0 ? Color::Black : Color::White; }

/// R(m, n): the m x n grid, drawn with (1,1) at the upper left and colored
/// black there. Horizontal edges are h<vertex>, vertical edges v<vertex>,
/// named after their upper or left end.
inline PlanarBipartiteGraph rectangle(const RectangleSpec& spec) {
  if (spec.m == 0 || spec.n == 0) throw Error(ErrorCode::InvalidArgument, "rectangle sides must be positive");
  const std::size_t w = detail::id_width(spec.m, spec.n);
  Drawing d;
  for (std::size_t i = 1; i <= spec.m; ++i)
    for (std::size_t j = 1; j <= spec.n; ++j)
      d.points.push_back({rect_vertex_id(i, j, w), rect_color(i, j), double(j), -double(i)});
  auto add = [&](std::string id, std::string u, std::string v) {
    RingElement weight = spec.variables ? RingElement::variable("w_" + id) : RingElement(1);
    d.segments.push_back({std::move(id), std::move(u), std::move(v), std::move(weight)});
  };
  for (std::size_t i = 1; i <= spec.m; ++i)
    for (std::size_t j = 1; j <= spec.n; ++j) {
      std::string here = rect_vertex_id(i, j, w);
      if (j < spec.n) add("h" + here, here, rect_vertex_id(i, j + 1, w));
      if (i < spec.m) add("v" + here, here, rect_vertex_id(i + 1, j, w));
    }
  return d.build();
}

inline PlanarBipartiteGraph rectangle(std::size_t m, std::size_t n) { return rectangle(RectangleSpec{m, n, false}); }

// ---------------------------------------------------------------------------
// Product formula.

namespace detail {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

inline unsigned starting_precision() {
  if (const char* env = std::getenv("MATCHKAST_PRECISION")) {
    char* end = nullptr;
    unsigned long bits = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && bits >= MPFR_PREC_MIN && bits <= 1u << 20) return static_cast<unsigned>(bits);
    throw Error(ErrorCode::InvalidArgument, std::string("MATCHKAST_PRECISION must be a bit count, got '") + env + "'");
  }
  return 128;
}

// 4cos^2(pi j/(m+1)) + 4cos^2(pi k/(n+1)) over all j, k, then the fourth
// root; nullopt when the result is not within 1/4 of an integer, or when
// the precision does not cover the result's size plus the rounding error
// accumulated over m*n factors (a small residual alone can be a wrong
// integer at low precision).
inline std::optional<Integer> product_formula_at(std::size_t m, std::size_t n, unsigned bits) {
  Mpfr pi(bits), prod(bits), a(bits), b(bits), t(bits);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  mpfr_set_ui(prod.get(), 1, MPFR_RNDN);
  auto four_cos_sq = [&](mpfr_ptr out, std::size_t j, std::size_t m1) {
    mpfr_mul_ui(out, pi.get(), static_cast<unsigned long>(j), MPFR_RNDN);
    mpfr_div_ui(out, out, static_cast<unsigned long>(m1), MPFR_RNDN);
    mpfr_cos(out, out, MPFR_RNDN);
    mpfr_sqr(out, out, MPFR_RNDN);
    mpfr_mul_ui(out, out, 4, MPFR_RNDN);
  };
  for (std::size_t j = 1; j <= m; ++j) {
    four_cos_sq(a.get(), j, m + 1);
    for (std::size_t k = 1; k <= n; ++k) {
      four_cos_sq(b.get(), k, n + 1);
      mpfr_add(t.get(), a.get(), b.get(), MPFR_RNDN);
      mpfr_mul(prod.get(), prod.get(), t.get(), MPFR_RNDN);
    }
  }
  mpfr_sqrt(prod.get(), prod.get(), MPFR_RNDN);
  mpfr_sqrt(prod.get(), prod.get(), MPFR_RNDN);
  if (!mpfr_number_p(prod.get())) return std::nullopt;
  const long needed = long(mpfr_get_exp(prod.get())) + long(std::bit_width(4 * m * n)) + 8;
  if (long(bits) < needed) return std::nullopt;
  Integer z;
  mpfr_get_z(z.get_mpz_t(), prod.get(), MPFR_RNDN);
  mpfr_sub_z(t.get(), prod.get(), z.get_mpz_t(), MPFR_RNDN);
  mpfr_abs(t.get(), t.get(), MPFR_RNDN);
  if (mpfr_cmp_d(t.get(), 0.25) > 0) return std::nullopt;
  return z;
}

}  // namespace detail

/// Kasteleyn's cosine product for R(m, n), evaluated in floating point and
/// rounded. Precision starts at `bits` (0: MATCHKAST_PRECISION or 128) and
/// doubles up to 1024 while the rounding residual exceeds 1/4.
inline Integer product_formula_count(std::size_t m, std::size_t n, unsigned bits = 0) {
  if (m == 0 || n == 0) throw Error(ErrorCode::InvalidArgument, "rectangle sides must be positive");
  if ((m * n) % 2 == 1) return Integer(0);
  if (bits == 0) bits = detail::starting_precision();
  const unsigned limit = std::max(bits, 1024u);
  for (;; bits *= 2) {
    if (auto z = detail::product_formula_at(m, n, bits)) return *z;
    if (bits >= limit)
      throw Error(ErrorCode::PrecisionInsufficient, "R(" + std::to_string(m) + "," + std::to_string(n) +
                                                        ") does not round cleanly at " + std::to_string(bits) +
                                                        " bits");
  }
}

// ---------------------------------------------------------------------------
// Block decomposition of R(A, B).

struct GridPoint {
  std::size_t i, j;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

/// One term of the decomposition: the root dominoes S, the direction chosen
/// by each remaining white root (root -> copy neighbour), and R''.
struct DecompositionTerm {
  std::vector<std::pair<GridPoint, GridPoint>> dominoes;
  std::vector<std::pair<GridPoint, GridPoint>> directions;
  CompoundGraph graph;
};

/// Fixed data for one (A, B, a, b): copies, roots, and the pieces every R''
/// shares.
class RectangleDecomposer {
 public:
  RectangleDecomposer(std::size_t A, std::size_t B, std::size_t a, std::size_t b)
      : A_(A), B_(B), a_(a), b_(b) {
    if (a == 0 || b == 0 || A == 0 || B == 0)
      throw Error(ErrorCode::DivisibilityPreconditionViolated, "rectangle sides must be positive");
    if ((A + 1) % (a + 1) != 0 || (B + 1) % (b + 1) != 0)
      throw Error(ErrorCode::DivisibilityPreconditionViolated,
                  "need a+1 | A+1 and b+1 | B+1, got (A,B,a,b) = (" + std::to_string(A) + "," + std::to_string(B) +
                      "," + std::to_string(a) + "," + std::to_string(b) + ")");
    if ((A * B) % 2 == 1) throw Error(ErrorCode::DivisibilityPreconditionViolated, "R(A,B) has odd area");
    k_ = (A + 1) / (a + 1);
    l_ = (B + 1) / (b + 1);
    width_ = detail::id_width(A, B);
    super_width_ = detail::id_width(k_, l_);
    base_width_ = detail::id_width(a, b);
    base_ = rectangle(a, b);
    for (std::size_t i = 1; i <= A; ++i)
      for (std::size_t j = 1; j <= B; ++j)
        if (is_root({i, j})) roots_.push_back({i, j});
  }

  std::size_t k() const { return k_; }
  std::size_t l() const { return l_; }
  const PlanarBipartiteGraph& base() const { return base_; }
  const std::vector<GridPoint>& roots() const { return roots_; }

  bool is_root(GridPoint p) const { return p.i % (a_ + 1) == 0 || p.j % (b_ + 1) == 0; }
  bool is_crossing(GridPoint p) const { return p.i % (a_ + 1) == 0 && p.j % (b_ + 1) == 0; }

  std::vector<GridPoint> neighbours(GridPoint p) const {
    std::vector<GridPoint> out;
    if (p.i > 1) out.push_back({p.i - 1, p.j});
    if (p.j > 1) out.push_back({p.i, p.j - 1});
    if (p.j < B_) out.push_back({p.i, p.j + 1});
    if (p.i < A_) out.push_back({p.i + 1, p.j});
    return out;
  }

  std::string id(GridPoint p) const { return rect_vertex_id(p.i, p.j, width_); }

  /// Calls fn for every set of disjoint root dominoes covering all crossing
  /// vertices.
  void for_each_domino_set(const std::function<void(const std::vector<std::pair<GridPoint, GridPoint>>&)>& fn) const {
    std::map<GridPoint, std::size_t> index;
    for (std::size_t r = 0; r < roots_.size(); ++r) index[roots_[r]] = r;
    std::vector<bool> used(roots_.size(), false);
    std::vector<std::pair<GridPoint, GridPoint>> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
      while (pos < roots_.size() && used[pos]) ++pos;
      if (pos == roots_.size()) {
        fn(chosen);
        return;
      }
      GridPoint p = roots_[pos];
      used[pos] = true;
      if (!is_crossing(p)) rec(pos + 1);
      for (GridPoint q : neighbours(p)) {
        auto it = index.find(q);
        if (it == index.end() || it->second < pos || used[it->second]) continue;
        used[it->second] = true;
        chosen.emplace_back(p, q);
        rec(pos + 1);
        chosen.pop_back();
        used[it->second] = false;
      }
      used[pos] = false;
    };
    rec(0);
  }

  /// The two copy neighbours of a root that is not a crossing vertex.
  std::pair<GridPoint, GridPoint> copy_neighbours(GridPoint p) const {
    if (p.i % (a_ + 1) == 0) return {{p.i - 1, p.j}, {p.i + 1, p.j}};
    return {{p.i, p.j - 1}, {p.i, p.j + 1}};
  }

  /// R'' for a domino set S and a direction per remaining white root.
  CompoundGraph build(const std::vector<std::pair<GridPoint, GridPoint>>& dominoes,
                      const std::map<GridPoint, GridPoint>& direction) const {
    std::set<GridPoint> removed;
    for (const auto& [p, q] : dominoes) {
      if (!is_root(p) || !is_root(q) ||
          std::abs(long(p.i) - long(q.i)) + std::abs(long(p.j) - long(q.j)) != 1)
        throw Error(ErrorCode::InvalidArgument, "(" + id(p) + "," + id(q) + ") is not a root domino");
      if (!removed.insert(p).second || !removed.insert(q).second)
        throw Error(ErrorCode::InvalidArgument, "root dominoes overlap at " + id(p) + "/" + id(q));
    }
    CompoundParts parts;
    parts.base = base_;
    Drawing d;
    std::map<std::string, bool> super_edges;  // id -> carries a stem
    for (std::size_t i = 1; i <= A_; ++i)
      for (std::size_t j = 1; j <= B_; ++j) {
        GridPoint p{i, j};
        if (removed.count(p)) continue;
        d.points.push_back({id(p), rect_color(i, j), double(j), -double(i)});
        if (!is_root(p)) {
          std::size_t I = (i - 1) / (a_ + 1), J = (j - 1) / (b_ + 1);
          std::size_t r = i - I * (a_ + 1), c = j - J * (b_ + 1);
          // Copies are the base reflected across every separating line.
          if (I % 2 == 1) r = a_ + 1 - r;
          if (J % 2 == 1) c = b_ + 1 - c;
          parts.vmap.emplace_back(id(p), super_id(I, J), rect_vertex_id(r, c, base_width_));
          continue;
        }
        if (is_crossing(p)) throw Error(ErrorCode::InvalidArgument, "crossing vertex " + id(p) + " is not covered");
        if (rect_color(i, j) == Color::Black) {
          parts.stems.push_back(id(p));
          super_edges[super_edge_id(p)] = true;
        } else {
          parts.leaves.push_back(id(p));
          auto it = direction.find(p);
          if (it == direction.end()) throw Error(ErrorCode::InvalidArgument, "white root " + id(p) + " has no direction");
          auto [x, y] = copy_neighbours(p);
          if (it->second != x && it->second != y)
            throw Error(ErrorCode::InvalidArgument, "white root " + id(p) + " must point at a copy neighbour");
        }
      }
    for (std::size_t i = 1; i <= A_; ++i)
      for (std::size_t j = 1; j <= B_; ++j) {
        GridPoint p{i, j};
        if (removed.count(p)) continue;
        for (GridPoint q : {GridPoint{i, j + 1}, GridPoint{i + 1, j}}) {
          if (q.i > A_ || q.j > B_ || removed.count(q)) continue;
          if (is_root(p) && is_root(q)) continue;
          auto keeps = [&](GridPoint root, GridPoint other) {
            if (!is_root(root) || rect_color(root.i, root.j) == Color::Black) return true;
            return direction.at(root) == other;
          };
          if (!keeps(p, q) || !keeps(q, p)) continue;
          d.segments.push_back({(q.i == i ? "h" : "v") + id(p), id(p), id(q)});
        }
      }
    parts.graph = d.build();
    parts.supergraph = supergraph(super_edges);
    return assemble_compound(parts);
  }

  /// Calls fn for every (S, D) pair.
  void for_each_term(const std::function<void(const DecompositionTerm&)>& fn) const {
    for_each_domino_set([&](const std::vector<std::pair<GridPoint, GridPoint>>& dominoes) {
      std::set<GridPoint> removed;
      for (const auto& [p, q] : dominoes) {
        removed.insert(p);
        removed.insert(q);
      }
      std::vector<GridPoint> white;
      for (GridPoint p : roots_)
        if (!removed.count(p) && rect_color(p.i, p.j) == Color::White) white.push_back(p);
      if (white.size() >= 63) throw Error(ErrorCode::InvalidArgument, "too many white roots to enumerate");
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << white.size()); ++mask) {
        DecompositionTerm t;
        t.dominoes = dominoes;
        std::map<GridPoint, GridPoint> direction;
        for (std::size_t w = 0; w < white.size(); ++w) {
          auto [x, y] = copy_neighbours(white[w]);
          GridPoint to = (mask >> w & 1) ? y : x;
          direction[white[w]] = to;
          t.directions.emplace_back(white[w], to);
        }
        t.graph = build(dominoes, direction);
        fn(t);
      }
    });
  }

 private:
  // Block (I, J) as a supervertex; distinct from every vertex id of R(A, B).
  std::string super_id(std::size_t I, std::size_t J) const {
    return "B" + detail::zero_pad(I + 1, super_width_) + "_" + detail::zero_pad(J + 1, super_width_);
  }

  // Supergraph edge crossed by the root p (not a crossing vertex).
  std::string super_edge_id(GridPoint p) const {
    if (p.i % (a_ + 1) == 0) {
      std::size_t I = p.i / (a_ + 1) - 1, J = (p.j - 1) / (b_ + 1);
      return "v" + super_id(I, J);
    }
    std::size_t I = (p.i - 1) / (a_ + 1), J = p.j / (b_ + 1) - 1;
    return "h" + super_id(I, J);
  }

  // R(k, l) keeping only edges that carry a stem; cached by edge set.
  PlanarBipartiteGraph supergraph(const std::map<std::string, bool>& used) const {
    std::string key;
    for (const auto& [id, on] : used) key += id + ",";
    auto it = super_cache_.find(key);
    if (it != super_cache_.end()) return it->second;
    Drawing d;
    for (std::size_t I = 0; I < k_; ++I)
      for (std::size_t J = 0; J < l_; ++J) d.points.push_back({super_id(I, J), rect_color(I + 1, J + 1), double(J), -double(I)});
    for (std::size_t I = 0; I < k_; ++I)
      for (std::size_t J = 0; J < l_; ++J) {
        if (J + 1 < l_ && used.count("h" + super_id(I, J)))
          d.segments.push_back({"h" + super_id(I, J), super_id(I, J), super_id(I, J + 1)});
        if (I + 1 < k_ && used.count("v" + super_id(I, J)))
          d.segments.push_back({"v" + super_id(I, J), super_id(I, J), super_id(I + 1, J)});
      }
    return super_cache_[key] = d.build();
  }

  std::size_t A_, B_, a_, b_, k_ = 1, l_ = 1;
  std::size_t width_ = 1, super_width_ = 1, base_width_ = 1;
  PlanarBipartiteGraph base_;
  std::vector<GridPoint> roots_;
  mutable std::map<std::string, PlanarBipartiteGraph> super_cache_;
};

/// Every R'' of the decomposition of R(A, B) into copies of R(a, b).
inline std::vector<CompoundGraph> decompose_rectangle(std::size_t A, std::size_t B, std::size_t a, std::size_t b) {
  std::vector<CompoundGraph> out;
  RectangleDecomposer(A, B, a, b).for_each_term([&](const DecompositionTerm& t) { out.push_back(t.graph); });
  return out;
}

/// Sum of #R'' against #R(A, B); also checks the odd-leaf condition and
/// #R(a,b) | #R'' for every term.
inline VerificationReport verify_decomposition(std::size_t A, std::size_t B, std::size_t a, std::size_t b) {
  VerificationReport r;
  r.subject = "decompose:" + std::to_string(A) + "," + std::to_string(B) + "," + std::to_string(a) + "," +
              std::to_string(b);
  r.claim = "#R(A,B) is the sum of #R'' over all (S,D); every R'' has odd leaves in each bounded reduced face";
  RectangleDecomposer dec(A, B, a, b);
  Integer base = count_matchings(dec.base()).evaluate_at_ones();
  Integer sum = 0;
  std::size_t terms = 0, even_faces = 0, not_divisible = 0;
  std::string first_bad;
  dec.for_each_term([&](const DecompositionTerm& t) {
    ++terms;
    Integer c = count_matchings(t.graph.graph).evaluate_at_ones();
    sum += c;
    bool odd = check_odd_leaves(t.graph);
    bool divides = base == 0 ? c == 0 : c % base == 0;
    if (!odd) ++even_faces;
    if (!divides) ++not_divisible;
    if ((!odd || !divides) && first_bad.empty()) first_bad = write_pbg(t.graph.graph);
  });
  Integer whole = count_matchings(rectangle(A, B)).evaluate_at_ones();
  r.with("terms", std::to_string(terms))
      .with("sum", sum.get_str())
      .with("count", whole.get_str())
      .with("even_leaf_terms", std::to_string(even_faces))
      .with("indivisible_terms", std::to_string(not_divisible));
  if (sum != whole || even_faces > 0 || not_divisible > 0) {
    r.status = Status::Fail;
    r.reproducer = first_bad.empty() ? "decompose --A " + std::to_string(A) + " --B " + std::to_string(B) +
                                           " --a " + std::to_string(a) + " --b " + std::to_string(b)
                                     : first_bad;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Divisibility scans.

/// For every A <= Amax, B <= Bmax with a+1 | A+1 and b+1 | B+1: #R(a,b)
/// divides #R(A,B). Counts come from Kasteleyn and are cross-checked
/// against the product formula.
inline std::vector<VerificationReport> rect_divisibility_scan(std::size_t a, std::size_t b, std::size_t Amax,
                                                              std::size_t Bmax) {
  std::vector<VerificationReport> out;
  if (a == 0 || b == 0) throw Error(ErrorCode::InvalidArgument, "rectangle sides must be positive");
  auto counted = [](std::size_t m, std::size_t n, VerificationReport& r, const std::string& key) {
    Integer c = count_matchings(rectangle(m, n)).evaluate_at_ones();
    Integer f = product_formula_count(m, n);
    r.with(key, c.get_str());
    if (c != f) {
      r.status = Status::Fail;
      r.with(key + "_formula", f.get_str());
    }
    return c;
  };
  for (std::size_t A = a; A <= Amax; A += a + 1)
    for (std::size_t B = b; B <= Bmax; B += b + 1) {
      VerificationReport r;
      r.subject = "rect:" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(A) + "," +
                  std::to_string(B);
      r.claim = "a+1 | A+1 and b+1 | B+1 imply #R(a,b) | #R(A,B)";
      Integer small = counted(a, b, r, "count_small");
      Integer big = counted(A, B, r, "count_big");
      if (small == 0) {
        if (big != 0) r.status = Status::Fail;
        else if (r.status != Status::Fail) r.status = Status::Vacuous;
      } else {
        try {
          RingElement q = exact_div(RingElement(big), RingElement(small));
          r.with("quotient", q.to_string());
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NotDivisible) throw;
          r.status = Status::Fail;
          r.with("error", e.what());
        }
      }
      if (r.status == Status::Fail)
        r.reproducer = "scan-rect --a " + std::to_string(a) + " --b " + std::to_string(b) + " --max-A " +
                       std::to_string(A) + " --max-B " + std::to_string(B);
      out.push_back(std::move(r));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Aztec 3-pillows.

namespace detail {

// Height of the top boundary over the unit column [x, x+1] of a pillow with
// vertex columns 0..W-1: rising in runs of 3 from the left, falling in runs
// of 1 towards the right. The bottom is the top turned by 180 degrees.
inline long pillow_top(long x, long W) { return std::min(x / 3 + 1, W - 1 - x); }
inline long pillow_bottom(long x, long W) { return 1 - pillow_top(W - 2 - x, W); }

}  // namespace detail

inline std::string pillow_vertex_id(long x, long y) {
  std::string s = "x" + detail::zero_pad(static_cast<std::size_t>(x), 2) + "y";
  s += y < 0 ? "-" : "+";
  return s + detail::zero_pad(static_cast<std::size_t>(std::labs(y)), 2);
}

/// Lattice points of the pillow region AP_n (2n vertex columns wide), as
/// (x, y) with y upward. White where x + y is even.
inline std::vector<std::pair<long, long>> pillow_points(std::size_t order) {
  const long W = 2 * static_cast<long>(order);
  std::vector<std::pair<long, long>> pts;
  for (long x = 0; x < W; ++x) {
    long lo = 0, hi = -1;
    for (long t : {x - 1, x}) {
      if (t < 0 || t > W - 2) continue;
      long b = detail::pillow_bottom(t, W), top = detail::pillow_top(t, W);
      if (hi < lo) {
        lo = b;
        hi = top;
      } else {
        lo = std::min(lo, b);
        hi = std::max(hi, top);
      }
    }
    for (long y = lo; y <= hi; ++y) pts.emplace_back(x, y);
  }
  return pts;
}

inline PlanarBipartiteGraph aztec_pillow(const PillowSpec& spec) {
  if (spec.order == 0) throw Error(ErrorCode::InvalidArgument, "pillow order must be positive");
  const long W = 2 * static_cast<long>(spec.order);
  Drawing d;
  std::set<std::pair<long, long>> in;
  for (auto [x, y] : pillow_points(spec.order)) {
    in.insert({x, y});
    d.points.push_back({pillow_vertex_id(x, y), (x + y) % 2 == 0 ? Color::White : Color::Black, double(x), double(y)});
  }
  auto inside_column = [&](long t, long y0, long y1) {
    return t >= 0 && t <= W - 2 && detail::pillow_bottom(t, W) <= y0 && y1 <= detail::pillow_top(t, W);
  };
  for (auto [x, y] : in) {
    // Horizontal unit segment inside column x; vertical one on the line x,
    // inside one of the two columns that share it.
    if (in.count({x + 1, y}) && inside_column(x, y, y))
      d.segments.push_back({"h" + pillow_vertex_id(x, y), pillow_vertex_id(x, y), pillow_vertex_id(x + 1, y)});
    if (in.count({x, y + 1}) && (inside_column(x - 1, y, y + 1) || inside_column(x, y, y + 1)))
      d.segments.push_back({"v" + pillow_vertex_id(x, y), pillow_vertex_id(x, y), pillow_vertex_id(x, y + 1)});
  }
  PlanarBipartiteGraph g = d.build();
  if (!g.balanced())
    throw Error(ErrorCode::UnbalancedColors, "pillow of order " + std::to_string(spec.order) + " is unbalanced");
  return g;
}

/// #AP_m | #AP_n for all m < n <= max_order with (m+3) | (n+3).
inline std::vector<VerificationReport> pillow_divisibility_scan(std::size_t max_order) {
  std::vector<Integer> count(max_order + 1);
  for (std::size_t n = 1; n <= max_order; ++n)
    count[n] = count_matchings(aztec_pillow(PillowSpec{n})).evaluate_at_ones();
  std::vector<VerificationReport> out;
  for (std::size_t m = 1; m <= max_order; ++m)
    for (std::size_t n = m + 1; n <= max_order; ++n) {
      if ((n + 3) % (m + 3) != 0) continue;
      VerificationReport r;
      r.subject = "pillow:" + std::to_string(m) + "," + std::to_string(n);
      r.claim = "m+3 | n+3 implies #AP_m | #AP_n";
      r.with("count_m", count[m].get_str()).with("count_n", count[n].get_str());
      if (count[m] == 0) {
        r.status = count[n] == 0 ? Status::Vacuous : Status::Fail;
      } else if (count[n] % count[m] != 0) {
        r.status = Status::Fail;
      } else {
        r.with("quotient", Integer(count[n] / count[m]).get_str());
      }
      if (r.status == Status::Fail) r.reproducer = "scan-pillow --max-order " + std::to_string(n);
      out.push_back(std::move(r));
    }
  return out;
}

}  // namespace matchkast
