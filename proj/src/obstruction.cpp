#include "gkm/obstruction.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace gkm {

ChordReport chords(const GkmGraph& g, const Face& f) {
  ChordReport report;
  for (VertexId v : f.vertices)
    for (DartId e : g.star(v)) {
      if (f.contains_dart(e)) continue;
      (f.contains_vertex(g.dst(e)) ? report.chords : report.non_chords).push_back(e);
    }
  std::sort(report.chords.begin(), report.chords.end());
  std::sort(report.non_chords.begin(), report.non_chords.end());
  return report;
}

ChordlessReport verify_chordless(const GkmGraph& g, const FacePoset& poset, std::size_t j) {
  ChordlessReport report;
  report.independence = independence_level(g);
  report.precondition_met = report.independence >= j + 2;
  if (!report.precondition_met) return report;
  for (const Face& f : poset.faces()) {
    if (f.dim == 0 || f.dim > j) continue;
    ++report.checked_faces;
    if (!chords(g, f).chords.empty()) report.violations.push_back(f.key);
  }
  return report;
}

std::optional<std::vector<DartId>> chord_witness(const GkmGraph& g, const Face& f, DartId e, std::size_t max_length) {
  if (f.contains_dart(e) || !f.contains_vertex(g.src(e)) || !f.contains_vertex(g.dst(e)))
    throw std::invalid_argument("dart " + std::to_string(e) + " is not a chord of face " + f.key);
  if (max_length == 0) max_length = 2 * f.vertices.size();
  const DartId goal = g.reverse(e);
  // The transported dart determines the current vertex, so it is the state.
  std::map<DartId, std::pair<DartId, DartId>> parent;  // state -> (previous state, step)
  std::map<DartId, std::size_t> depth{{e, 0}};
  std::deque<DartId> queue{e};
  while (!queue.empty()) {
    const DartId cur = queue.front();
    queue.pop_front();
    if (cur == goal) {
      std::vector<DartId> path;
      for (DartId s = cur; s != e; s = parent.at(s).first) path.push_back(parent.at(s).second);
      std::reverse(path.begin(), path.end());
      return path;
    }
    if (depth[cur] == max_length) continue;
    for (DartId step : g.star(g.src(cur))) {
      if (!f.contains_dart(step)) continue;
      const DartId next = g.transport(step, cur);
      if (depth.count(next)) continue;
      depth[next] = depth[cur] + 1;
      parent[next] = {cur, step};
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

namespace {

const char* kSoundness =
    "every witness path transports the chord to its reverse inside the face, so any extension sharing the "
    "connection and congruence constants has 2*alpha'(e) in alpha'<face> for every transversal dart; hence the "
    "extended span has rank at most k and no nontrivial extension exists";

}  // namespace

std::optional<NonextendibilityCertificate> nonextendibility_certificate(const GkmGraph& g, const FacePoset& poset,
                                                                        const std::string& graph_hash) {
  for (const Face& f : poset.faces()) {
    if (f.dim != g.k() || f.span_rank() != g.k()) continue;
    const ChordReport cr = chords(g, f);
    if (!cr.non_chords.empty() || cr.chords.empty()) continue;
    NonextendibilityCertificate cert;
    bool ok = true;
    for (DartId e : cr.chords) {
      auto path = chord_witness(g, f, e);
      if (!path) {
        ok = false;
        break;
      }
      cert.witnesses.push_back({e, *path});
    }
    if (!ok) continue;
    cert.graph_hash = graph_hash;
    cert.face_key = f.key;
    cert.base_vertex = f.vertices.front();
    cert.face_star = f.star_at(g, cert.base_vertex);
    cert.k = g.k();
    cert.verdict = std::string("no nontrivial extensions: ") + kSoundness;
    return cert;
  }
  return std::nullopt;
}

std::string replay_certificate(const GkmGraph& g, const NonextendibilityCertificate& cert, const std::string& graph_hash) {
  if (cert.graph_hash != graph_hash) return "graph hash mismatch";
  if (cert.k != g.k()) return "lattice rank mismatch";
  if (cert.base_vertex >= g.vertex_count()) return "base vertex out of range";
  for (DartId e : cert.face_star)
    if (e >= g.dart_count() || g.src(e) != cert.base_vertex) return "face star is not at the base vertex";
  auto closure = face_closure(g, cert.base_vertex, cert.face_star);
  const Face* f = std::get_if<Face>(&closure);
  if (!f) return "face star does not close to a face";
  if (f->key != cert.face_key) return "face key mismatch";
  if (f->dim != g.k() || f->span_rank() != g.k()) return "face dimension or span rank differs from k";
  const ChordReport cr = chords(g, *f);
  if (!cr.non_chords.empty()) return "face has a transversal dart that is not a chord";
  std::set<DartId> covered;
  for (const Witness& w : cert.witnesses) {
    if (w.dart >= g.dart_count()) return "witness dart out of range";
    if (!std::binary_search(cr.chords.begin(), cr.chords.end(), w.dart)) return "witness dart is not a chord";
    if (!covered.insert(w.dart).second) return "duplicate witness";
    if (w.path.empty()) return "empty witness path";
    for (std::size_t i = 0; i < w.path.size(); ++i) {
      const DartId s = w.path[i];
      if (s >= g.dart_count() || !f->contains_dart(s)) return "witness path leaves the face";
      if (i > 0 && g.src(s) != g.dst(w.path[i - 1])) return "witness path is not composable";
    }
    if (g.src(w.path.front()) != g.src(w.dart) || g.dst(w.path.back()) != g.dst(w.dart))
      return "witness path has the wrong endpoints";
    if (holonomy(g, w.path, w.dart) != g.reverse(w.dart)) return "witness holonomy does not reverse the chord";
    std::vector<LatticeVector> labels;
    for (DartId e : f->star_at(g, g.src(w.dart))) labels.push_back(g.alpha(e));
    if (!lattice::span_contains(labels, Integer(2) * g.alpha(w.dart))) return "twice the chord label is outside the face span";
  }
  if (covered.size() != cr.chords.size()) return "some chord has no witness";
  return "";
}

ExtensionSpace extension_space(const GkmGraph& g) {
  const CongruenceTable constants = congruence_constants(g);
  ExtensionSpace out;
  out.root = 0;
  const std::size_t n = g.star(0).size();
  std::vector<std::optional<LatticeVector>> expr(g.dart_count());
  std::vector<char> seen(g.vertex_count(), 0);
  for (std::size_t i = 0; i < n; ++i) expr[g.star(0)[i]] = LatticeVector::unit(n, i);
  seen[0] = 1;
  std::deque<VertexId> queue{0};
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop_front();
    for (DartId e : g.star(u)) {
      const VertexId w = g.dst(e);
      if (seen[w]) continue;
      for (DartId f : g.star(u)) expr[g.transport(e, f)] = *expr[f] + constants.at({e, f}) * *expr[e];
      seen[w] = 1;
      queue.push_back(w);
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw std::invalid_argument("graph is disconnected");

  RowEchelon constraints(n);
  for (DartId e = 0; e < g.dart_count(); ++e)
    for (DartId f : g.star(g.src(e))) {
      LatticeVector row = *expr[g.transport(e, f)] - *expr[f] - constants.at({e, f}) * *expr[e];
      if (!row.is_zero()) constraints.add(std::move(row));
    }
  const auto null = lattice::nullspace(constraints.matrix());
  out.dimension = null.size();
  for (const auto& p : null) {
    std::vector<Integer> values(g.dart_count());
    for (DartId e = 0; e < g.dart_count(); ++e) {
      Integer s = 0;
      for (std::size_t i = 0; i < n; ++i) s += (*expr[e])[i] * p[i];
      values[e] = s;
    }
    out.basis.push_back(std::move(values));
  }
  return out;
}

RealizabilityObstruction realizability_entry(const FacePoset& poset, std::size_t face) {
  RealizabilityObstruction r;
  const Face& f = poset.face(face);
  r.face_key = f.key;
  r.q = f.dim;
  r.chi = hall_euler(poset, face);
  const bool odd = r.q % 2 == 1;
  r.required = odd ? "0 or +" : "0 or -";
  // Realizability forces chi = (-1)^{q-1} rank H^{q-1}.
  r.obstructed = r.chi != 0 && ((r.chi < 0) == odd);
  return r;
}

std::vector<RealizabilityObstruction> realizability_check(const GkmGraph& g, const FacePoset& poset) {
  const std::size_t level = independence_level(g);
  std::size_t n = g.star(0).size();
  const auto whole = poset.whole_graph(g);
  std::vector<RealizabilityObstruction> out;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    const Face& f = poset.face(i);
    if (f.dim < 2 || f.span_rank() != f.dim) continue;
    const bool complexity_zero = whole && *whole == i && n == g.k() && level == n;
    if (level < f.dim + 1 && !complexity_zero) continue;
    if (!is_simplicial_below(poset, i)) continue;
    out.push_back(realizability_entry(poset, i));
  }
  return out;
}

}  // namespace gkm
