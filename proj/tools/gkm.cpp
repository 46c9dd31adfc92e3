// Command-line front end.
//
// Exit codes: 0 success, 1 usage or runtime error, 2 axiom or verification
// failure, 3 malformed document or structural violation, 4 budget exceeded.

#include "gkm/io.hpp"
#include "gkm/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <set>
#include <sstream>

using namespace gkm;
using nlohmann::json;

namespace {

constexpr int kExitFail = 2;
constexpr int kExitMalformed = 3;
constexpr int kExitBudget = 4;

struct Options {
  std::string input;
  std::string second_input;
  std::string output;
  std::string face;
  std::string name;
  std::string strategy;
  std::string complex_out;
  bool json_out = false;
  bool primitivize = false;
  bool no_primitivize = false;
  int d = 2;
  int r = 0;
  long long a = 0;
  int search_bound = 3;
  std::vector<long long> t;
  std::vector<int> J;
  std::size_t max_dim = 0;
  std::size_t budget = kDefaultFaceBudget;
};

GkmGraph load_graph(const std::string& path) {
  json j;
  try {
    j = json::parse(read_input(path));
  } catch (const json::parse_error& e) {
    throw DocumentError(std::string("invalid JSON: ") + e.what());
  }
  return graph_from_json(j);
}

std::string emit(const json& j) { return j.dump(2) + "\n"; }

std::size_t valence(const GkmGraph& g) {
  std::size_t n = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) n = std::max(n, g.star(v).size());
  return n;
}

FacePoset faces_of(const GkmGraph& g, const Options& o, std::size_t max_dim = 0) {
  return enumerate_faces(g, max_dim ? max_dim : valence(g), o.budget);
}

std::size_t resolve_face(const GkmGraph& g, const FacePoset& p, const std::string& key) {
  if (key.empty()) {
    auto top = p.whole_graph(g);
    if (!top) throw std::invalid_argument("the whole graph is not a face; pass --face");
    return *top;
  }
  auto i = p.find(key);
  if (!i) throw std::invalid_argument("no face with key '" + key + "'");
  return *i;
}

std::string text_validation(const ValidationReport& r) {
  std::ostringstream os;
  auto line = [&](const char* name, const AxiomResult& a) {
    os << "  " << name << ": " << (a.pass ? "pass" : "FAIL");
    if (!a.offending_darts.empty()) {
      os << " (darts";
      for (std::size_t i = 0; i < a.offending_darts.size() && i < 12; ++i) os << ' ' << a.offending_darts[i];
      if (a.offending_darts.size() > 12) os << " ...";
      os << ')';
    }
    if (!a.offending_vertices.empty()) {
      os << " (vertices";
      for (std::size_t i = 0; i < a.offending_vertices.size() && i < 12; ++i) os << ' ' << a.offending_vertices[i];
      if (a.offending_vertices.size() > 12) os << " ...";
      os << ')';
    }
    os << '\n';
  };
  os << "validation: " << (r.pass() ? "pass" : "FAIL") << '\n';
  line("rank", r.rank);
  line("opposite-sign", r.opposite_sign);
  line("congruence", r.congruence);
  line("regularity", r.regularity);
  if (r.regularity.pass) os << "  type: (" << r.n << "," << r.k << ")\n";
  if (r.inverse_transport) os << "  inverse transport: " << (*r.inverse_transport ? "yes" : "no") << '\n';
  return os.str();
}

int cmd_build(const Options& o) {
  ConstructionConfig cfg;
  cfg.d = o.d;
  cfg.r = o.r;
  cfg.a = o.a ? o.a : (1LL << (o.r + 1));
  if (!o.strategy.empty()) cfg.strategy = parse_strategy(o.strategy);
  if (o.primitivize) cfg.primitivize = true;
  if (o.no_primitivize) cfg.primitivize = false;
  for (long long x : o.t) cfg.t.emplace_back(x);
  if (cfg.r >= 2 && cfg.t.empty()) cfg.t = find_parameters(cfg.d, cfg.r, cfg.a, o.search_bound, cfg.strategy);
  const GkmGraph g = build(cfg);
  write_output(o.output, emit(graph_to_json(g)));
  return 0;
}

int cmd_builtin(const Options& o) {
  write_output(o.output, emit(graph_to_json(builtin(o.name))));
  return 0;
}

int cmd_validate(const Options& o) {
  const GkmGraph g = load_graph(o.input);
  const ValidationReport r = validate(g);
  if (o.json_out) {
    json j = validation_to_json(r);
    j["graph_hash"] = content_hash(g);
    j["independence"] = independence_level(g);
    write_output(o.output, emit(j));
  } else {
    std::string text = text_validation(r);
    text += "  independence: " + std::to_string(independence_level(g)) + "\n";
    write_output(o.output, text);
  }
  return r.pass() ? 0 : kExitFail;
}

int cmd_faces(const Options& o) {
  const GkmGraph g = load_graph(o.input);
  const FacePoset p = faces_of(g, o, o.max_dim);
  std::ostringstream os;
  const auto f = p.f_vector();
  os << "dim  count\n";
  for (std::size_t q = 0; q < f.size(); ++q) os << q << "    " << f[q] << '\n';
  if (auto top = p.whole_graph(g)) os << "top face: " << p.face(*top).key << '\n';
  os << "completeness: " << completeness_level(g, p) << '\n';
  if (o.json_out) {
    json j = poset_to_json(p);
    j["graph_hash"] = content_hash(g);
    write_output(o.output, emit(j));
    std::cerr << os.str();
  } else {
    std::cout << os.str();
    if (!o.output.empty()) {
      json j = poset_to_json(p);
      j["graph_hash"] = content_hash(g);
      write_output(o.output, emit(j));
    }
  }
  return 0;
}

int cmd_euler(const Options& o) {
  const GkmGraph g = load_graph(o.input);
  const FacePoset p = faces_of(g, o);
  const std::size_t top = resolve_face(g, p, o.face);
  const Integer chi = hall_euler(p, top);
  if (o.json_out) {
    write_output(o.output, emit({{"face", p.face(top).key}, {"dim", p.face(top).dim}, {"chi", integer_to_json(chi)}}));
  } else {
    write_output(o.output, to_string(chi) + "\n");
  }
  return 0;
}

std::string facet_list(const ChainComplexModel& cx, const std::vector<std::size_t>& members, const FacePoset& p) {
  std::set<std::vector<std::size_t>> covered;
  for (std::size_t q = 1; q < cx.simplices.size(); ++q)
    for (const auto& s : cx.simplices[q])
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        covered.insert(f);
      }
  std::ostringstream os;
  for (const auto& dim : cx.simplices)
    for (const auto& s : dim) {
      if (covered.count(s)) continue;
      for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << p.face(members[s[i]]).key;
      os << '\n';
    }
  return os.str();
}

int cmd_homology(const Options& o) {
  const GkmGraph g = load_graph(o.input);
  const FacePoset p = faces_of(g, o);
  const std::size_t top = resolve_face(g, p, o.face);
  std::vector<std::size_t> members;
  const ChainComplexModel cx = order_complex(strict_lower_poset(p, top, &members));
  const auto h = reduced_homology(cx);
  if (!o.complex_out.empty()) write_output(o.complex_out, facet_list(cx, members, p));
  if (o.json_out) {
    write_output(o.output, emit({{"face", p.face(top).key}, {"homology", homology_to_json(h)},
                                 {"euler", integer_to_json(euler_from_homology(h))}}));
    return 0;
  }
  std::ostringstream os;
  os << "degree  betti  torsion\n";
  for (const auto& grp : h) {
    os << grp.degree << "  " << grp.betti << "  ";
    for (std::size_t i = 0; i < grp.torsion.size(); ++i) os << (i ? "," : "") << grp.torsion[i];
    os << '\n';
  }
  os << "euler: " << euler_from_homology(h) << '\n';
  write_output(o.output, os.str());
  return 0;
}

int cmd_chords(const Options& o) {
  const GkmGraph g = load_graph(o.input);
  const FacePoset p = faces_of(g, o);
  const Face& f = p.face(resolve_face(g, p, o.face));
  const ChordReport cr = chords(g, f);
  json witnesses = json::array();
  for (DartId e : cr.chords) {
    auto path = chord_witness(g, f, e);
    witnesses.push_back({{"dart", e}, {"path", path ? json(*path) : json(nullptr)}});
  }
  if (o.json_out) {
    write_output(o.output, emit({{"face", f.key}, {"chords", cr.chords}, {"non_chords", cr.non_chords},
                                 {"witnesses", witnesses}}));
    return 0;
  }
  std::ostringstream os;
  os << "face " << f.key << " (dim " << f.dim << ", " << f.vertices.size() << " vertices)\n";
  os << "chords: " << cr.chords.size() << "\nnon-chords: " << cr.non_chords.size() << '\n';
  for (const auto& w : witnesses) os << "  chord " << w["dart"] << " witness " << w["path"].dump() << '\n';
  write_output(o.output, os.str());
  return 0;
}

int cmd_extend_check(const Options& o) {
  const GkmGraph g = load_graph(o.input);
  const FacePoset p = faces_of(g, o, g.k());
  const std::string hash = content_hash(g);
  const auto cert = nonextendibility_certificate(g, p, hash);
  const ExtensionSpace ext = extension_space(g);
  std::ostringstream os;
  os << "extension space dimension: " << ext.dimension << " (k = " << g.k() << ")\n";
  if (cert) {
    os << "certificate: face " << cert->face_key << ", " << cert->witnesses.size() << " chord witnesses\n";
    if (!o.output.empty()) write_output(o.output, emit(certificate_to_json(*cert)));
  } else if (valence(g) == g.k()) {
    os << "certificate: none needed, n = k (complexity zero)\n";
  } else {
    os << "certificate: not found\n";
  }
  const bool agree = !cert || ext.dimension == g.k();
  os << "agreement: " << (agree ? "yes" : "NO") << '\n';
  if (o.json_out) {
    json j{{"extension_dimension", ext.dimension}, {"k", g.k()}, {"certificate", cert ? certificate_to_json(*cert) : json(nullptr)}};
    std::cout << emit(j);
  } else {
    std::cout << os.str();
  }
  return agree ? 0 : kExitFail;
}

int cmd_verify_certificate(const Options& o) {
  const json cj = json::parse(read_input(o.input));
  const NonextendibilityCertificate cert = certificate_from_json(cj);
  const GkmGraph g = load_graph(o.second_input);
  const std::string failure = replay_certificate(g, cert, content_hash(g));
  if (failure.empty()) {
    std::cout << "certificate replay: pass (" << cert.witnesses.size() << " witnesses, face " << cert.face_key << ")\n";
    return 0;
  }
  std::cout << "certificate replay: FAIL: " << failure << '\n';
  return kExitFail;
}

int cmd_realize_check(const Options& o) {
  const GkmGraph g = load_graph(o.input);
  const FacePoset p = faces_of(g, o);
  const auto entries = realizability_check(g, p);
  std::size_t obstructed = 0;
  json list = json::array();
  std::ostringstream os;
  for (const auto& e : entries) {
    obstructed += e.obstructed;
    list.push_back(obstruction_to_json(e));
    if (e.obstructed)
      os << "obstructed: face " << e.face_key << " q=" << e.q << " chi=" << e.chi << " required " << e.required << '\n';
  }
  os << "eligible faces: " << entries.size() << ", obstructed: " << obstructed << '\n';
  os << "verdict: " << (obstructed ? "not realizable" : "no obstruction found") << '\n';
  if (o.json_out) {
    write_output(o.output, emit({{"eligible", list}, {"obstructed", obstructed}}));
  } else {
    write_output(o.output, os.str());
  }
  return 0;
}

int cmd_verify(const std::string& which, const Options& o) {
  LemmaReport rep;
  const long long a = o.a ? o.a : 2;
  if (which == "lemma-face-counts") {
    rep = verify_face_counts(o.d, a, o.budget);
  } else if (which == "lemma-euler") {
    rep = verify_euler(o.d, a, o.budget);
  } else if (which == "lemma-projection") {
    rep = verify_projection(o.d, a, o.J.empty() ? std::vector<int>{1} : o.J, o.budget);
  } else {
    rep = main_theorem_report(o.d, o.r, o.search_bound, o.budget);
  }
  write_output(o.output, o.json_out ? emit(rep.to_json()) : rep.to_text());
  return rep.pass ? 0 : kExitFail;
}

int cmd_export_dot(const Options& o) {
  write_output(o.output, export_dot(load_graph(o.input)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact GKM-graph engine"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool file) {
    if (file) sub->add_option("FILE", o.input, "graph document ('-' for stdin)")->required();
    sub->add_option("-o,--output", o.output, "output file (default stdout)");
    sub->add_flag("--json", o.json_out, "machine-readable output");
    sub->add_option("--budget", o.budget, "maximum number of faces to enumerate");
  };

  auto* build_cmd = app.add_subcommand("build", "build a quotient graph");
  build_cmd->add_option("--d", o.d, "dimension d")->required();
  build_cmd->add_option("--r", o.r, "number of chord families");
  build_cmd->add_option("--a", o.a, "quotient modulus (default 2^(r+1))");
  build_cmd->add_option("--t", o.t, "parameters t_1..t_{d+1}");
  build_cmd->add_option("--strategy", o.strategy, "paper-literal or regularity-scaled");
  build_cmd->add_flag("--primitivize", o.primitivize, "replace chord labels by their primitive parts");
  build_cmd->add_flag("--no-primitivize", o.no_primitivize, "keep chord labels as constructed");
  build_cmd->add_option("--search-bound", o.search_bound, "parameter search bound when t is omitted");
  build_cmd->add_option("-o,--output", o.output, "output file (default stdout)");

  auto* builtin_cmd = app.add_subcommand("builtin", "emit a builtin graph: cube(d), torus(d,a), flag3");
  builtin_cmd->add_option("NAME", o.name, "builtin name")->required();
  builtin_cmd->add_option("-o,--output", o.output, "output file (default stdout)");

  auto* validate_cmd = app.add_subcommand("validate", "check the axioms");
  add_common(validate_cmd, true);

  auto* faces_cmd = app.add_subcommand("faces", "enumerate faces; -o writes the poset as JSON");
  add_common(faces_cmd, true);
  faces_cmd->add_option("--max-dim", o.max_dim, "largest face dimension (default: valence)");

  auto* euler_cmd = app.add_subcommand("euler", "reduced Euler characteristic below a face");
  add_common(euler_cmd, true);
  euler_cmd->add_option("--face", o.face, "face key (default: the whole graph)");

  auto* homology_cmd = app.add_subcommand("homology", "reduced homology of the order complex below a face");
  add_common(homology_cmd, true);
  homology_cmd->add_option("--face", o.face, "face key (default: the whole graph)");
  homology_cmd->add_option("--facets", o.complex_out, "write the order complex as a facet list");

  auto* chords_cmd = app.add_subcommand("chords", "classify transversal darts of a face");
  add_common(chords_cmd, true);
  chords_cmd->add_option("--face", o.face, "face key")->required();

  auto* extend_cmd = app.add_subcommand("extend-check", "search a non-extendibility certificate");
  add_common(extend_cmd, true);

  auto* vc_cmd = app.add_subcommand("verify-certificate", "replay a certificate against a graph");
  vc_cmd->add_option("CERT", o.input, "certificate document")->required();
  vc_cmd->add_option("FILE", o.second_input, "graph document")->required();

  auto* realize_cmd = app.add_subcommand("realize-check", "Euler-characteristic sign obstruction");
  add_common(realize_cmd, true);

  auto* verify_cmd = app.add_subcommand("verify", "lemma and theorem harnesses");
  std::string which;
  verify_cmd->add_option("WHICH", which, "lemma-face-counts, lemma-euler, lemma-projection or main-theorem")
      ->required()
      ->check(CLI::IsMember({"lemma-face-counts", "lemma-euler", "lemma-projection", "main-theorem"}));
  verify_cmd->add_option("--d", o.d, "dimension d")->required();
  verify_cmd->add_option("--a", o.a, "modulus a (lemmas, default 2)");
  verify_cmd->add_option("--r", o.r, "chord families (main-theorem)");
  verify_cmd->add_option("--J", o.J, "coordinate subset (lemma-projection)");
  verify_cmd->add_option("--search-bound", o.search_bound, "parameter search bound");
  add_common(verify_cmd, false);

  auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz export with labels");
  dot_cmd->add_option("FILE", o.input, "graph document")->required();
  dot_cmd->add_option("-o,--output", o.output, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build_cmd) return cmd_build(o);
    if (*builtin_cmd) return cmd_builtin(o);
    if (*validate_cmd) return cmd_validate(o);
    if (*faces_cmd) return cmd_faces(o);
    if (*euler_cmd) return cmd_euler(o);
    if (*homology_cmd) return cmd_homology(o);
    if (*chords_cmd) return cmd_chords(o);
    if (*extend_cmd) return cmd_extend_check(o);
    if (*vc_cmd) return cmd_verify_certificate(o);
    if (*realize_cmd) return cmd_realize_check(o);
    if (*verify_cmd) return cmd_verify(which, o);
    if (*dot_cmd) return cmd_export_dot(o);
  } catch (const BuildError& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.report) std::cerr << text_validation(*e.report);
    return e.report ? kExitFail : 1;
  } catch (const StructuralError& e) {
    std::cerr << "structural error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const DocumentError& e) {
    std::cerr << "malformed document: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const json::exception& e) {
    std::cerr << "malformed document: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
