// matchkast: command-line front end.
//
// Exit status: 0 when every check in the invocation passed, 1 when one
// failed (reproducers are written and their paths printed), 2 on usage
// errors and unreadable or invalid input.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "matchkast/matchkast.hpp"

namespace fs = std::filesystem;
using namespace matchkast;

namespace {

// ---------------------------------------------------------------------------
// Reports.

std::string witness_text(const VerificationReport& r) {
  std::string out;
  for (const auto& [k, v] : r.witness) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : '_';
  return out;
}

class Reporter {
 public:
  std::string path;
  std::string format = "tsv";
  std::string repro_dir = "matchkast-repro";
  bool data_on_stdout = false;  // rows go to stderr when stdout carries a payload

  void add(VerificationReport r) {
    std::ostream& out = data_on_stdout ? std::cerr : std::cout;
    if (reports_.empty()) out << "subject\tstatus\twitness\tclaim\n";
    out << row(r) << '\n';
    reports_.push_back(std::move(r));
  }

  int finish() {
    std::vector<std::string> repro_paths(reports_.size());
    bool failed = false;
    for (std::size_t i = 0; i < reports_.size(); ++i) {
      if (reports_[i].status != Status::Fail) continue;
      failed = true;
      fs::create_directories(repro_dir);
      repro_paths[i] = (fs::path(repro_dir) / (sanitize(reports_[i].subject) + ".repro")).string();
      detail::write_file(repro_paths[i], reports_[i].reproducer);
      std::cerr << "matchkast: check failed: " << reports_[i].subject << "; reproducer in " << repro_paths[i] << '\n';
    }
    if (!path.empty()) {
      std::ostringstream out;
      if (format == "json") {
        for (std::size_t i = 0; i < reports_.size(); ++i) {
          nlohmann::ordered_json j;
          j["subject"] = reports_[i].subject;
          j["status"] = std::string(to_string(reports_[i].status));
          j["claim"] = reports_[i].claim;
          nlohmann::ordered_json w = nlohmann::ordered_json::object();
          for (const auto& [k, v] : reports_[i].witness) w[k] = v;
          j["witness"] = w;
          if (!repro_paths[i].empty()) j["reproducer"] = repro_paths[i];
          out << j.dump() << '\n';
        }
      } else {
        out << "subject\tstatus\twitness\tclaim\treproducer\n";
        for (std::size_t i = 0; i < reports_.size(); ++i) out << row(reports_[i]) << '\t' << repro_paths[i] << '\n';
      }
      detail::write_file(path, out.str());
    }
    return failed ? 1 : 0;
  }

 private:
  static std::string row(const VerificationReport& r) {
    return r.subject + '\t' + std::string(to_string(r.status)) + '\t' + witness_text(r) + '\t' + r.claim;
  }

  std::vector<VerificationReport> reports_;
};

// ---------------------------------------------------------------------------
// Input and output helpers.

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    detail::write_file(out_path, text);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// A .cpd script is built on the spot; anything else is a pbg with a cpdmap
// sidecar (default: <file>.cpdmap).
CompoundGraph load_compound_arg(const std::string& path, const std::string& map) {
  if (ends_with(path, ".cpd")) return load_cpd(path).build();
  if (!fs::exists(path)) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return load_compound(path, map.empty() ? path + ".cpdmap" : map);
}

// The axis argument is either the axis text itself or a file holding it.
AxisSpec load_axis(const std::string& arg) {
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) {
    std::string text, line;
    std::istringstream in(detail::read_file(arg));
    while (std::getline(in, line)) text += detail::strip_comment(line) + ' ';
    return AxisSpec::parse(text);
  }
  return AxisSpec::parse(arg);
}

std::string relative_to(const std::string& target, const std::string& from_dir) {
  fs::path base = from_dir.empty() ? fs::current_path() : fs::path(from_dir);
  return fs::weakly_canonical(target).lexically_relative(fs::weakly_canonical(base)).generic_string();
}

// Writes H as <out> plus <out>.cpdmap, with base and supergraph beside it.
void save_compound(const CompoundGraph& c, const std::string& out) {
  std::string stem = ends_with(out, ".pbg") ? out.substr(0, out.size() - 4) : out;
  std::string base = stem + ".base.pbg", super = stem + ".super.pbg";
  if (auto dir = fs::path(out).parent_path(); !dir.empty()) fs::create_directories(dir);
  save_pbg(c.graph, out);
  save_pbg(c.base, base);
  save_pbg(c.supergraph, super);
  std::string dir = detail::parent_dir(out);
  detail::write_file(out + ".cpdmap", write_cpdmap(c, relative_to(base, dir), relative_to(super, dir)));
}

void odd_leaves_report(const CompoundGraph& c, Reporter& rep, const std::string& subject) {
  VerificationReport r;
  r.subject = subject;
  r.claim = "odd leaves in every bounded reduced face leave the weights unchanged by sign-weighting";
  ReducedGraph red = reduced_graph(c);
  auto per_face = leaves_per_inner_face(c, red);
  std::string listing;
  for (std::size_t n : per_face) listing += (listing.empty() ? "" : ",") + std::to_string(n);
  bool odd = check_odd_leaves(c, red);
  r.with("odd_leaves", odd ? "yes" : "no").with("leaves_per_face", listing.empty() ? "-" : listing);
  if (odd) {
    SignFunction plus(red.graph.edge_count());
    bool valid = verify_sign_function(red.graph, plus, 0).passed();
    bool unchanged = true;
    if (valid && faces_correspond(c, red))
      unchanged = sign_weight(c, compose_sign_function(c, red, construct_sign_function(c.base), plus)) == c.graph;
    r.with("all_plus_reduced_sign", valid ? "valid" : "invalid");
    if (!valid || !unchanged) {
      r.status = Status::Fail;
      r.reproducer = write_pbg(c.graph);
    }
  } else {
    r.status = Status::Vacuous;
  }
  rep.add(std::move(r));
}

void zero_sum_reports(const CompoundGraph& c, const std::string& leaf, Reporter& rep) {
  std::vector<std::string> leaves;
  if (!leaf.empty())
    leaves.push_back(leaf);
  else
    for (std::size_t v : c.leaves) leaves.push_back(c.graph.vertex(v).id);
  if (leaves.empty()) {
    VerificationReport r;
    r.subject = "family";
    r.claim = "zero-sum: no leaves, nothing to check";
    r.status = Status::Vacuous;
    rep.add(std::move(r));
  }
  for (const auto& id : leaves) rep.add(verify_zero_sum(family(c, id)));
}

// ---------------------------------------------------------------------------
// Corpus files.

void write_corpus(std::uint64_t seed, std::size_t graphs, std::size_t compounds, std::size_t symmetric,
                  std::size_t max_vertices, const std::string& dir) {
  fs::create_directories(fs::path(dir) / "graphs");
  fs::create_directories(fs::path(dir) / "compounds");
  fs::create_directories(fs::path(dir) / "symmetric");
  std::cout << "kind\tpath\tvertices\tedges\n";
  auto line = [](const char* kind, const std::string& path, const PlanarBipartiteGraph& g) {
    std::cout << kind << '\t' << path << '\t' << g.vertex_count() << '\t' << g.edge_count() << '\n';
  };
  auto name = [](const char* prefix, std::size_t i) {
    std::string n = std::to_string(i);
    return prefix + std::string(3 - std::min<std::size_t>(3, n.size()), '0') + n;
  };
  auto gs = graph_corpus(seed, graphs, max_vertices);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    std::string p = (fs::path(dir) / "graphs" / (name("g", i) + ".pbg")).string();
    save_pbg(gs[i], p);
    line("graph", p, gs[i]);
  }
  auto cs = compound_corpus(seed, compounds);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::string p = (fs::path(dir) / "compounds" / (name("c", i) + ".pbg")).string();
    save_compound(cs[i], p);
    line("compound", p, cs[i].graph);
  }
  auto ss = symmetric_corpus(seed, symmetric);
  for (std::size_t i = 0; i < ss.size(); ++i) {
    std::string stem = (fs::path(dir) / "symmetric" / name("s", i)).string();
    save_pbg(ss[i].half, stem + ".half.pbg");
    detail::write_file(stem + ".axis", ss[i].spec.to_string() + "\n");
    save_pbg(ss[i].graph(), stem + ".pbg");
    line(ss[i].theorem_form() ? "symmetric-theorem" : "symmetric-lemma", stem + ".pbg", ss[i].graph());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact perfect-matching counts and divisibility checks for planar bipartite graphs"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Reporter rep;
  app.add_option("--report", rep.path, "Also write the check reports to this file");
  app.add_option("--report-format", rep.format, "tsv or json (JSON lines)")->check(CLI::IsMember({"tsv", "json"}));
  app.add_option("--repro-dir", rep.repro_dir, "Directory for reproducers of failed checks");

  std::function<void()> action;
  auto on = [&](CLI::App* sub, std::function<void()> f) { sub->callback([&action, f] { action = f; }); };

  std::string file, out, map, leaf, axis, out_dir;

  // count / oracle / signs
  auto* count = app.add_subcommand("count", "Weighted matching count via the Kasteleyn-Percus determinant");
  count->add_option("file", file, "pbg file")->required();
  on(count, [&] { std::cout << count_matchings(load_pbg(file)) << '\n'; });

  bool list = false;
  std::size_t budget = kDefaultOracleBudget;
  auto* oracle = app.add_subcommand("oracle", "Brute-force matching enumeration");
  oracle->add_option("file", file, "pbg file")->required();
  oracle->add_flag("--list", list, "Print each matching as a line of edge ids");
  oracle->add_option("--budget", budget, "Search node budget");
  on(oracle, [&] {
    PlanarBipartiteGraph g = load_pbg(file);
    if (!list) {
      std::cout << oracle_count(g, budget) << '\n';
      return;
    }
    for_each_matching(g, [&](const std::vector<std::size_t>& m) {
      for (std::size_t i = 0; i < m.size(); ++i) std::cout << (i ? " " : "") << g.edge(m[i]).id;
      std::cout << '\n';
    }, budget);
  });

  bool verify = false;
  auto* signs = app.add_subcommand("signs", "Construct a sign function");
  signs->add_option("file", file, "pbg file")->required();
  signs->add_flag("--verify", verify, "Check faces and the cycle identity");
  on(signs, [&] {
    PlanarBipartiteGraph g = load_pbg(file);
    SignFunction sf = construct_sign_function(g);
    std::cout << write_signs(g, sf);
    if (verify) {
      rep.data_on_stdout = true;
      rep.add(verify_sign_function(g, sf));
    }
  });

  // compound
  auto* compound = app.add_subcommand("compound", "Compound graphs");
  compound->require_subcommand(1);
  auto* cbuild = compound->add_subcommand("build", "Build H from a cpd script");
  cbuild->add_option("script", file, "cpd v1 script")->required();
  cbuild->add_option("-o,--out", out, "Write H here, with a .cpdmap sidecar and the base and supergraph");
  on(cbuild, [&] {
    CompoundGraph c = load_cpd(file).build();
    if (out.empty())
      std::cout << write_pbg(c.graph);
    else
      save_compound(c, out);
  });
  auto* zero = compound->add_subcommand("zero-sum", "Zero-sum check on the family of each leaf");
  zero->add_option("compound", file, "cpd script or pbg with cpdmap")->required();
  zero->add_option("--map", map, "cpdmap sidecar");
  zero->add_option("--leaf", leaf, "Only this leaf");
  on(zero, [&] { zero_sum_reports(load_compound_arg(file, map), leaf, rep); });
  auto* divide = compound->add_subcommand("divide", "#G divides #H-bar");
  divide->add_option("compound", file, "cpd script or pbg with cpdmap")->required();
  divide->add_option("--map", map, "cpdmap sidecar");
  on(divide, [&] { rep.add(verify_divisibility(load_compound_arg(file, map))); });
  auto* odd = compound->add_subcommand("odd-leaves", "Leaves per bounded face of the reduced graph");
  odd->add_option("compound", file, "cpd script or pbg with cpdmap")->required();
  odd->add_option("--map", map, "cpdmap sidecar");
  on(odd, [&] { odd_leaves_report(load_compound_arg(file, map), rep, "odd-leaves"); });

  // regions
  std::size_t m = 0, n = 0, order = 0, A = 0, B = 0, a = 0, b = 0, maxA = 0, maxB = 0;
  bool vars = false, formula = false;
  auto* rect = app.add_subcommand("rect", "The m x n grid graph R(m,n)");
  rect->add_option("--m", m, "Rows")->required()->check(CLI::PositiveNumber);
  rect->add_option("--n", n, "Columns")->required()->check(CLI::PositiveNumber);
  rect->add_flag("--vars", vars, "One weight variable per edge");
  rect->add_flag("--formula", formula, "Print the product formula value instead");
  rect->add_option("-o,--out", out, "Output file");
  on(rect, [&] {
    if (formula)
      emit(product_formula_count(m, n).get_str() + "\n", out);
    else
      emit(write_pbg(rectangle(RectangleSpec{m, n, vars})), out);
  });

  auto* pillow = app.add_subcommand("pillow", "The Aztec 3-pillow AP_n");
  pillow->add_option("--order", order, "n")->required()->check(CLI::PositiveNumber);
  pillow->add_option("-o,--out", out, "Output file");
  on(pillow, [&] { emit(write_pbg(aztec_pillow(PillowSpec{order})), out); });

  auto* decompose = app.add_subcommand("decompose", "Decompose R(A,B) into copies of R(a,b)");
  decompose->add_option("--A", A)->required();
  decompose->add_option("--B", B)->required();
  decompose->add_option("--a", a)->required();
  decompose->add_option("--b", b)->required();
  decompose->add_flag("--verify", verify, "Check the sum identity and the odd-leaf condition");
  decompose->add_option("--out-dir", out_dir, "Write every R'' here");
  on(decompose, [&] {
    if (verify) {
      rep.add(verify_decomposition(A, B, a, b));
      return;
    }
    if (!out_dir.empty()) fs::create_directories(out_dir);
    RectangleDecomposer dec(A, B, a, b);
    std::size_t k = 0;
    std::cout << "term\tdominoes\tvertices\tcount\n";
    dec.for_each_term([&](const DecompositionTerm& t) {
      std::cout << k << '\t' << t.dominoes.size() << '\t' << t.graph.graph.vertex_count() << '\t'
                << count_matchings(t.graph.graph) << '\n';
      if (!out_dir.empty()) save_compound(t.graph, (fs::path(out_dir) / ("term" + std::to_string(k) + ".pbg")).string());
      ++k;
    });
  });

  auto* scan_rect = app.add_subcommand("scan-rect", "#R(a,b) | #R(A,B) over admissible A, B");
  scan_rect->add_option("--a", a)->required()->check(CLI::PositiveNumber);
  scan_rect->add_option("--b", b)->required()->check(CLI::PositiveNumber);
  scan_rect->add_option("--max-A", maxA)->required();
  scan_rect->add_option("--max-B", maxB)->required();
  on(scan_rect, [&] {
    for (auto& r : rect_divisibility_scan(a, b, maxA, maxB)) rep.add(std::move(r));
  });

  auto* scan_pillow = app.add_subcommand("scan-pillow", "#AP_m | #AP_n whenever m+3 | n+3");
  scan_pillow->add_option("--max-order", order)->required()->check(CLI::PositiveNumber);
  on(scan_pillow, [&] {
    for (auto& r : pillow_divisibility_scan(order)) rep.add(std::move(r));
  });

  // ciucu
  auto* ciucu = app.add_subcommand("ciucu", "Reflection-symmetric graphs");
  ciucu->require_subcommand(1);
  bool with_signs = false;
  auto* sbuild = ciucu->add_subcommand("build", "Build H from a half and an axis spec");
  sbuild->add_option("half", file, "pbg file of the half")->required();
  sbuild->add_option("axis", axis, "Axis spec, or a file holding one")->required();
  sbuild->add_option("-o,--out", out, "Output file");
  sbuild->add_flag("--signs", with_signs, "Print the symmetric sign function instead and verify it");
  on(sbuild, [&] {
    SymmetricCompound sc = build_symmetric(load_pbg(file), load_axis(axis));
    if (!with_signs) {
      emit(write_pbg(sc.graph()), out);
      return;
    }
    SignFunction sf = ciucu_sign_function(sc);
    emit(write_signs(sc.graph(), sf), out);
    rep.data_on_stdout = out.empty();
    VerificationReport r = verify_sign_function(sc.graph(), sf);
    r.subject = "ciucu-sign";
    rep.add(std::move(r));
  });
  auto* lemma = ciucu->add_subcommand("verify-lemma", "Equal counts for the two placements of an axis leaf");
  lemma->add_option("half", file, "pbg file of the half")->required();
  lemma->add_option("axis", axis, "Axis spec, or a file holding one")->required();
  lemma->add_option("--leaf", leaf, "Only this axis leaf (ids are a<index>)");
  on(lemma, [&] {
    SymmetricCompound sc = build_symmetric(load_pbg(file), load_axis(axis));
    std::size_t checked = 0;
    for (const auto& av : sc.axis) {
      if (av.role != AxisRole::Leaf || (!leaf.empty() && av.id != leaf)) continue;
      rep.add(verify_ciucu_lemma(sc, av.id));
      ++checked;
    }
    if (checked == 0) throw Error(ErrorCode::InvalidArgument, leaf.empty() ? "the axis has no leaves" : "no axis leaf '" + leaf + "'");
  });
  auto* factor = ciucu->add_subcommand("factorize", "#H = 2^(w/2) #G_bw #G_wb");
  factor->add_option("half", file, "pbg file of the half")->required();
  factor->add_option("axis", axis, "Axis spec of stems only, or a file holding one")->required();
  on(factor, [&] { rep.add(verify_factorization(build_symmetric(load_pbg(file), load_axis(axis)))); });

  // corpus
  std::uint64_t seed = 0;
  std::size_t graphs = 20, compounds = 10, symmetric = 10, max_vertices = 12;
  auto* gen = app.add_subcommand("gen-corpus", "Write a deterministic test corpus");
  gen->add_option("--seed", seed, "Random seed")->required();
  gen->add_option("--out-dir", out_dir, "Target directory")->required();
  gen->add_option("--graphs", graphs, "Planar bipartite maps");
  gen->add_option("--compounds", compounds, "Compound graphs");
  gen->add_option("--symmetric", symmetric, "Symmetric pairs");
  gen->add_option("--max-vertices", max_vertices, "Vertex bound for plain graphs");
  on(gen, [&] { write_corpus(seed, graphs, compounds, symmetric, max_vertices, out_dir); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    action();
  } catch (const Error& e) {
    std::cerr << "matchkast: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "matchkast: " << e.what() << '\n';
    return 2;
  }
  std::cout.flush();
  return rep.finish();
}
