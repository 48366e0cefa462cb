#pragma once

// Text formats for compound graphs.
//
//   cpd v1                                  construction script
//   base <file.pbg>
//   super <file.pbg>
//   stem <super-edge-id> <base-vertex-id> <face-spec>
//   leaf <super-vertex-id> <base-vertex-id> <face-spec>
//
//   cpdmap v1                               sidecar of an emitted pbg
//   base <file.pbg>
//   super <file.pbg>
//   vmap <H-vertex> <super-vertex> <base-vertex>
//   emap <H-edge> <super-vertex> <base-edge>
//   stem <id>
//   leaf <id>
//   relaxed
//
// Relative paths are resolved against the directory of the file naming them.
// A face spec is `auto`, `c<k>` or `c<k>.<s>`.

#include <filesystem>
#include <sstream>
#include <string>

#include "matchkast/compound.hpp"
#include "matchkast/pbg_io.hpp"

namespace matchkast {

struct CompoundScript {
  std::string base_path;
  std::string super_path;
  PlanarBipartiteGraph base;
  PlanarBipartiteGraph supergraph;
  PlacementScript script;

  CompoundGraph build() const { return build_compound(base, supergraph, script); }
};

namespace detail {

inline std::string resolve(const std::string& dir, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute() || dir.empty()) return path;
  return (std::filesystem::path(dir) / p).string();
}

inline std::string parent_dir(const std::string& path) {
  return std::filesystem::path(path).parent_path().string();
}

inline void expect_header(std::istream& in, const std::string& header, std::size_t& lineno) {
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = split_tokens(strip_comment(line));
    if (tok.empty()) continue;
    if (tok.size() != 2 || tok[0] + " " + tok[1] != header) parse_fail(lineno, "expected '" + header + "'");
    return;
  }
  throw Error(ErrorCode::Parse, "empty input, expected '" + header + "'");
}

}  // namespace detail

/// `dir` is where relative base/super paths are looked up.
inline CompoundScript parse_cpd(const std::string& text, const std::string& dir = "") {
  CompoundScript cs;
  std::istringstream in(text);
  std::size_t lineno = 0;
  detail::expect_header(in, "cpd v1", lineno);
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = detail::split_tokens(detail::strip_comment(line));
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    if (kw == "base" || kw == "super") {
      if (tok.size() != 2) detail::parse_fail(lineno, "expected '" + kw + " <file>'");
      (kw == "base" ? cs.base_path : cs.super_path) = tok[1];
    } else if (kw == "stem" || kw == "leaf") {
      if (tok.size() != 4) detail::parse_fail(lineno, "expected '" + kw + " <super-id> <base-vertex> <face>'");
      FaceSpec face;
      try {
        face = FaceSpec::parse(tok[3]);
      } catch (const Error& e) {
        detail::parse_fail(lineno, e.what());
      }
      if (kw == "stem")
        cs.script.stems.push_back({tok[1], tok[2], face});
      else
        cs.script.leaves.push_back({tok[1], tok[2], face});
    } else {
      detail::parse_fail(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (cs.base_path.empty() || cs.super_path.empty()) throw Error(ErrorCode::Parse, "cpd needs base and super lines");
  cs.base = load_pbg(detail::resolve(dir, cs.base_path));
  cs.supergraph = load_pbg(detail::resolve(dir, cs.super_path));
  return cs;
}

inline CompoundScript load_cpd(const std::string& path) {
  return parse_cpd(detail::read_file(path), detail::parent_dir(path));
}

inline std::string write_cpd(const CompoundScript& cs) {
  std::ostringstream out;
  out << "cpd v1\nbase " << cs.base_path << "\nsuper " << cs.super_path << '\n';
  for (const auto& s : cs.script.stems) out << "stem " << s.super_edge << ' ' << s.base_vertex << ' ' << s.face.to_string() << '\n';
  for (const auto& l : cs.script.leaves)
    out << "leaf " << l.super_vertex << ' ' << l.base_vertex << ' ' << l.face.to_string() << '\n';
  return out.str();
}

inline std::string write_cpdmap(const CompoundGraph& c, const std::string& base_path, const std::string& super_path) {
  CompoundParts p = compound_parts(c);
  std::ostringstream out;
  out << "cpdmap v1\nbase " << base_path << "\nsuper " << super_path << '\n';
  for (const auto& [h, s, b] : p.vmap) out << "vmap " << h << ' ' << s << ' ' << b << '\n';
  for (const auto& [h, s, b] : p.emap) out << "emap " << h << ' ' << s << ' ' << b << '\n';
  for (const auto& id : p.stems) out << "stem " << id << '\n';
  for (const auto& id : p.leaves) out << "leaf " << id << '\n';
  if (p.relaxed_colors) out << "relaxed\n";
  return out.str();
}

/// Rebuilds a compound graph from its pbg and sidecar; everything is
/// revalidated by assemble_compound.
inline CompoundGraph parse_cpdmap(const PlanarBipartiteGraph& graph, const std::string& text, const std::string& dir = "") {
  CompoundParts p;
  p.graph = graph;
  std::istringstream in(text);
  std::size_t lineno = 0;
  detail::expect_header(in, "cpdmap v1", lineno);
  std::string line, base_path, super_path;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = detail::split_tokens(detail::strip_comment(line));
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    auto arity = [&](std::size_t n) {
      if (tok.size() != n) detail::parse_fail(lineno, "wrong number of fields for '" + kw + "'");
    };
    if (kw == "base") {
      arity(2);
      base_path = tok[1];
    } else if (kw == "super") {
      arity(2);
      super_path = tok[1];
    } else if (kw == "vmap" || kw == "emap") {
      arity(4);
      (kw == "vmap" ? p.vmap : p.emap).emplace_back(tok[1], tok[2], tok[3]);
    } else if (kw == "stem" || kw == "leaf") {
      arity(2);
      (kw == "stem" ? p.stems : p.leaves).push_back(tok[1]);
    } else if (kw == "relaxed") {
      arity(1);
      p.relaxed_colors = true;
    } else {
      detail::parse_fail(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (base_path.empty() || super_path.empty()) throw Error(ErrorCode::Parse, "cpdmap needs base and super lines");
  p.base = load_pbg(detail::resolve(dir, base_path));
  p.supergraph = load_pbg(detail::resolve(dir, super_path));
  return assemble_compound(p);
}

inline CompoundGraph load_compound(const std::string& pbg_path, const std::string& cpdmap_path) {
  return parse_cpdmap(load_pbg(pbg_path), detail::read_file(cpdmap_path), detail::parent_dir(cpdmap_path));
}

}  // namespace matchkast
