#pragma once

// "pbg v1" text format.
//
//   pbg v1
//   vertex <id> <b|w>
//   edge <id> <u-id> <v-id> <weight>
//   rot <vertex-id> <edge-id> ...        (clockwise)
//   outer <edge-id> <tail-vertex-id>
//
// A weight is a ring element written without spaces (`3`, `x`, `-2*x*y^2+1`).
// Disconnected graphs carry one `outer` line per component with edges.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "matchkast/planar_graph.hpp"

namespace matchkast {

namespace detail {

inline std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << text;
}

}  // namespace detail

inline GraphDescription parse_pbg_description(const std::string& text) {
  GraphDescription d;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = detail::split_tokens(detail::strip_comment(line));
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "pbg" || tok[1] != "v1") detail::parse_fail(lineno, "expected header 'pbg v1'");
      header = true;
      continue;
    }
    const std::string& kw = tok[0];
    if (kw == "vertex") {
      if (tok.size() != 3 || (tok[2] != "b" && tok[2] != "w"))
        detail::parse_fail(lineno, "expected 'vertex <id> <b|w>'");
      d.vertices.emplace_back(tok[1], tok[2] == "b" ? Color::Black : Color::White);
    } else if (kw == "edge") {
      if (tok.size() != 5) detail::parse_fail(lineno, "expected 'edge <id> <u> <v> <weight>'");
      RingElement w;
      try {
        w = RingElement::parse(tok[4]);
      } catch (const Error& e) {
        detail::parse_fail(lineno, "bad weight '" + tok[4] + "'");
      }
      d.edges.push_back({tok[1], tok[2], tok[3], std::move(w)});
    } else if (kw == "rot") {
      if (tok.size() < 2) detail::parse_fail(lineno, "expected 'rot <vertex> <edge>...'");
      d.rotations.emplace_back(tok[1], std::vector<std::string>(tok.begin() + 2, tok.end()));
    } else if (kw == "outer") {
      if (tok.size() != 3) detail::parse_fail(lineno, "expected 'outer <edge> <tail>'");
      d.outer.emplace_back(tok[1], tok[2]);
    } else {
      detail::parse_fail(lineno, "unknown record '" + kw + "'");
    }
  }
  if (!header) throw Error(ErrorCode::Parse, "line 1: missing header 'pbg v1'");
  return d;
}

inline PlanarBipartiteGraph parse_pbg(const std::string& text) {
  return PlanarBipartiteGraph::build(parse_pbg_description(text));
}

inline PlanarBipartiteGraph load_pbg(const std::string& path) { return parse_pbg(detail::read_file(path)); }

inline std::string write_pbg(const PlanarBipartiteGraph& g) {
  std::ostringstream out;
  out << "pbg v1\n";
  for (const auto& v : g.vertices()) out << "vertex " << v.id << ' ' << color_char(v.color) << '\n';
  for (const auto& e : g.edges())
    out << "edge " << e.id << ' ' << g.vertex(e.black).id << ' ' << g.vertex(e.white).id << ' '
        << e.weight.to_string() << '\n';
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.rotation(v).empty()) continue;
    out << "rot " << g.vertex(v).id;
    for (std::size_t e : g.rotation(v)) out << ' ' << g.edge(e).id;
    out << '\n';
  }
  for (std::size_t d : g.outer_darts())
    out << "outer " << g.edge(g.dart_edge(d)).id << ' ' << g.vertex(g.dart_tail(d)).id << '\n';
  return out.str();
}

inline void save_pbg(const PlanarBipartiteGraph& g, const std::string& path) { detail::write_file(path, write_pbg(g)); }

}  // namespace matchkast
