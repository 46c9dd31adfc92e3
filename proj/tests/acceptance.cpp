// Acceptance suite: one line per criterion, exit status 1 if any criterion fails.

#include "corpus.hpp"
#include "gkm/io.hpp"
#include "gkm/verify.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#ifndef GKM_CLI_PATH
#error "GKM_CLI_PATH must name the command-line binary"
#endif

using namespace gkm;
using gkm::test::corpus;
using gkm::test::valence;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void expect(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back((ok ? "" : "FAILED ") + what);
  }
};

struct Run {
  int status = -1;
  std::string out;
};

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("gkm_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path_in(const std::string& name) { return (workdir() / name).string(); }

Run cli(const std::string& args) {
  const std::string cmd = std::string("\"") + GKM_CLI_PATH + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << "s";
  return os.str();
}

GkmGraph build_item(int d, int r, long long a) {
  ConstructionConfig c;
  c.d = d;
  c.r = r;
  c.a = a;
  if (r >= 2) c.t = find_parameters(d, r, a, 3);
  return build(c);
}

Outcome axiom_suite() {
  Outcome o;
  for (const char* name : {"cube(1)", "cube(2)", "cube(3)", "cube(4)", "flag3", "torus(2,2)", "torus(2,3)", "torus(3,2)"}) {
    const auto start = std::chrono::steady_clock::now();
    const bool ok = validate(builtin(name)).pass();
    const double s = seconds_since(start);
    o.expect(ok && s < 5, std::string(name) + " " + fmt_seconds(s));
  }
  for (auto [d, r, a] : std::vector<std::tuple<int, int, long long>>{{2, 0, 2}, {3, 0, 2}, {3, 1, 4}, {2, 1, 4}, {2, 2, 8}}) {
    const std::string item = "(" + std::to_string(d) + "," + std::to_string(r) + "," + std::to_string(a) + ")";
    const auto start = std::chrono::steady_clock::now();
    try {
      const bool ok = validate(build_item(d, r, a)).pass();
      const double s = seconds_since(start);
      o.expect(ok && s < 5, item + " " + fmt_seconds(s));
    } catch (const BuildError& e) {
      o.expect(false, item + " " + e.what());
    } catch (const ParameterSearchExhausted& e) {
      o.expect(false, item + " " + e.what());
    }
  }
  return o;
}

Outcome face_counts() {
  Outcome o;
  for (auto [d, a] : std::vector<std::pair<int, long long>>{{2, 2}, {2, 3}, {3, 2}}) {
    const auto start = std::chrono::steady_clock::now();
    const auto rep = verify_face_counts(d, a);
    const double s = seconds_since(start);
    o.expect(rep.pass && s < 10,
             "(" + std::to_string(d) + "," + std::to_string(a) + ") f=" + rep.observed["f_vector"].dump() + " " + fmt_seconds(s));
  }
  return o;
}

Outcome euler_values() {
  Outcome o;
  struct Item {
    int d;
    long long a;
    long long listed;
  };
  for (const Item& it : {Item{2, 2, -1}, Item{2, 3, -7}, Item{3, 2, 109}}) {
    const auto rep = verify_euler(it.d, it.a);
    const Integer formula = euler_formula(it.d, it.a);
    std::string item = "(" + std::to_string(it.d) + "," + std::to_string(it.a) + ") hall=" + rep.observed["hall"].dump() +
                       " homology=" + rep.observed["homology"].dump() + " formula=" + to_string(formula);
    if (formula != it.listed) item += " (listed value " + std::to_string(it.listed) + " contradicts the formula)";
    o.expect(rep.pass, item);
  }
  return o;
}

Outcome spheres() {
  Outcome o;
  for (int d = 1; d <= 3; ++d) {
    const GkmGraph g = build_item(d, 0, 1);
    const FacePoset p = enumerate_faces(g, valence(g));
    const auto top = p.whole_graph(g);
    if (!top) {
      o.expect(false, "d=" + std::to_string(d) + " whole graph is not a face");
      continue;
    }
    const Integer chi = hall_euler(p, *top);
    const auto h = reduced_homology(order_complex(strict_lower_poset(p, *top)));
    bool betti_ok = true;
    for (const auto& grp : h) betti_ok = betti_ok && grp.torsion.empty() && grp.betti == (grp.degree == d ? 1u : 0u);
    o.expect(chi == (d % 2 ? -1 : 1) && betti_ok, "d=" + std::to_string(d) + " chi=" + to_string(chi));
  }
  return o;
}

Outcome flag_example() {
  Outcome o;
  const GkmGraph g = builtin("flag3");
  const FacePoset p = enumerate_faces(g, 3);
  std::size_t squares = 0, hexagons = 0, two_faces = 0;
  bool chords_ok = true;
  for (const auto& f : p.faces()) {
    if (f.dim != 2) continue;
    ++two_faces;
    squares += f.vertices.size() == 4;
    if (f.vertices.size() == 6) {
      ++hexagons;
      chords_ok = chords_ok && chords(g, f).chords.size() == 2 * 3;
    }
  }
  o.expect(two_faces == 5 && squares == 3 && hexagons == 2,
           "2-faces=" + std::to_string(two_faces) + " (4-cycles " + std::to_string(squares) + ", 6-cycles " +
               std::to_string(hexagons) + "; expected 5 = 3 + 2)");
  o.expect(chords_ok && hexagons > 0, "3 chords on every 6-cycle face");

  const std::string graph = path_in("flag3.json"), cert = path_in("flag3.cert.json");
  cli("builtin flag3 -o " + graph);
  const Run ext = cli("extend-check " + graph + " -o " + cert);
  const Run replay = cli("verify-certificate " + cert + " " + graph);
  o.expect(ext.status == 0 && fs::exists(cert) && replay.status == 0, "extend-check certificate replays");
  const std::size_t dim = extension_space(g).dimension;
  o.expect(dim == 2, "extension dimension " + std::to_string(dim));
  return o;
}

Outcome main_theorem_certificates() {
  Outcome o;
  for (auto [d, r] : {std::pair{3, 1}, {2, 2}}) {
    const auto rep = main_theorem_report(d, r);
    const json& obs = rep.observed;
    const std::string item = "(" + std::to_string(d) + "," + std::to_string(r) + ")";
    if (obs.contains("failed_stage")) {
      o.expect(false, item + " failed at " + obs["failed_stage"].get<std::string>());
      continue;
    }
    const bool ok = obs.value("independence", 0) == d + 1 && obs.value("certificate", false) &&
                    obs.value("certificate_face_is_torus", false) && obs.value("certificate_replay", false) &&
                    obs.value("extension_dimension", 0) == d + 1;
    o.expect(ok, item + " independence=" + obs["independence"].dump() + " extension=" + obs["extension_dimension"].dump());
  }
  return o;
}

Outcome realizability() {
  Outcome o;
  struct Item {
    int d, r;
    long long a;
    long long chi;
    std::size_t q;
  };
  for (const Item& it : {Item{2, 0, 2, -1, 3}, Item{3, 1, 4, -17, 3}}) {
    const std::string file = path_in("realize_" + std::to_string(it.d) + std::to_string(it.r) + ".json");
    cli("build --d " + std::to_string(it.d) + " --r " + std::to_string(it.r) + " --a " + std::to_string(it.a) + " -o " + file);
    const Run run = cli("realize-check --json " + file);
    bool found = false;
    try {
      const json doc = json::parse(run.out);
      for (const auto& e : doc["eligible"])
        found = found || (e["verdict"] == "obstructed" && e["chi"] == it.chi && e["q"] == it.q);
    } catch (const json::exception&) {
    }
    o.expect(run.status == 0 && found, "(" + std::to_string(it.d) + "," + std::to_string(it.r) + ") obstruction chi=" +
                                           std::to_string(it.chi));
  }
  for (const char* name : {"cube(1)", "cube(2)", "cube(3)", "cube(4)", "flag3"}) {
    const std::string file = path_in("realize_builtin.json");
    cli(std::string("builtin '") + name + "' -o " + file);
    const Run run = cli("realize-check --json " + file);
    bool clean = false;
    try {
      clean = json::parse(run.out)["obstructed"] == 0;
    } catch (const json::exception&) {
    }
    o.expect(run.status == 0 && clean, std::string(name) + " unobstructed");
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  for (const auto& [name, g] : corpus()) {
    if (g.vertex_count() > 40) continue;
    const FacePoset p = enumerate_faces(g, valence(g));
    std::vector<std::pair<std::vector<VertexId>, std::vector<DartId>>> fast;
    for (const auto& f : p.faces()) fast.emplace_back(f.vertices, f.darts);
    std::sort(fast.begin(), fast.end());
    o.expect(fast == brute_force_faces(g, valence(g)), name + " " + std::to_string(fast.size()) + " faces");
  }
  return o;
}

Outcome chord_laws() {
  Outcome o;
  std::size_t witnessed = 0, faces = 0;
  bool span_ok = true, chordless_ok = true;
  for (const auto& [name, g] : corpus()) {
    const FacePoset p = enumerate_faces(g, valence(g));
    for (const auto& f : p.faces()) {
      ++faces;
      const auto gens = f.span.row_vectors();
      for (DartId e : chords(g, f).chords) {
        const auto w = chord_witness(g, f, e);
        if (!w) continue;
        ++witnessed;
        span_ok = span_ok && holonomy(g, *w, e) == g.reverse(e) && lattice::span_contains(gens, Integer(2) * g.alpha(e));
      }
    }
    const std::size_t indep = independence_level(g);
    if (indep >= 3) chordless_ok = chordless_ok && verify_chordless(g, p, indep - 2).pass();
  }
  o.expect(span_ok, std::to_string(witnessed) + " witnessed chords over " + std::to_string(faces) + " faces satisfy 2a(e) in span");
  o.expect(chordless_ok, "faces of dimension <= j chordless on (j+2)-independent graphs");
  bool replay_ok = true;
  for (const char* name : {"flag3", "build(2,1,4)", "build(3,1,4)"}) {
    const std::string graph = path_in("replay.json"), cert = path_in("replay.cert.json");
    fs::remove(cert);
    const GkmGraph* g = nullptr;
    for (const auto& c : corpus())
      if (c.name == name) g = &c.graph;
    write_output(graph, graph_to_json(*g).dump(2) + "\n");
    cli("extend-check " + graph + " -o " + cert);
    replay_ok = replay_ok && fs::exists(cert) && cli("verify-certificate " + cert + " " + graph).status == 0;
  }
  o.expect(replay_ok, "certificates replay in a fresh process");
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::string g = path_in("det.json"), cert = path_in("det.cert.json"), dot = path_in("det.dot");
  cli("builtin flag3 -o " + g);
  cli("extend-check " + g + " -o " + cert);
  const std::vector<std::string> commands{
      "build --d 3 --r 1 --a 4",
      "build --d 2 --r 0 --a 2",
      "builtin 'torus(2,3)'",
      "builtin flag3",
      "validate " + g,
      "validate --json " + g,
      "faces --json " + g,
      "euler " + g,
      "homology " + g,
      "chords " + g + " --face 0:0,1",
      "extend-check --json " + g,
      "verify-certificate " + cert + " " + g,
      "realize-check --json " + g,
      "verify lemma-face-counts --d 2 --a 2 --json",
      "verify lemma-euler --d 2 --a 3",
      "verify lemma-projection --d 2 --a 2 --J 1",
      "verify main-theorem --d 2 --r 1 --json",
      "export-dot " + g,
  };
  std::size_t identical = 0;
  for (const auto& c : commands) {
    const Run a = cli(c), b = cli(c);
    const bool same = a.status == b.status && a.out == b.out && !a.out.empty();
    identical += same;
    if (!same) o.expect(false, c);
  }
  const std::string h1 = sha256_hex(cli("build --d 2 --r 1 --a 4").out);
  cli("build --d 2 --r 1 --a 4 -o " + dot);
  const std::string h2 = sha256_hex(read_input(dot));
  o.expect(h1 == h2, "stdout and file outputs hash equally");
  o.expect(identical == commands.size(), std::to_string(identical) + "/" + std::to_string(commands.size()) + " commands byte-identical");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"axiom suite", axiom_suite},
      {"face counts", face_counts},
      {"Euler characteristic", euler_values},
      {"sphere sanity", spheres},
      {"flag example", flag_example},
      {"main theorem certificates", main_theorem_certificates},
      {"main theorem obstruction", realizability},
      {"oracle equivalence", oracle_equivalence},
      {"holonomy and chord laws", chord_laws},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " [";
    for (std::size_t j = 0; j < o.details.size(); ++j) std::cout << (j ? "; " : "") << o.details[j];
    std::cout << "]\n";
  }
  fs::remove_all(workdir());
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
