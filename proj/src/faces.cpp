#include "gkm/faces.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <tuple>

namespace gkm {

bool Face::contains_vertex(VertexId v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }

bool Face::contains_dart(DartId e) const { return std::binary_search(darts.begin(), darts.end(), e); }

std::vector<DartId> Face::star_at(const GkmGraph& g, VertexId v) const {
  std::vector<DartId> out;
  for (DartId e : g.star(v))
    if (contains_dart(e)) out.push_back(e);
  return out;
}

std::string face_key(VertexId v, const std::vector<DartId>& star) {
  std::ostringstream os;
  os << v << ':';
  for (std::size_t i = 0; i < star.size(); ++i) {
    if (i) os << ',';
    os << star[i];
  }
  return os.str();
}

Face make_face(const GkmGraph& g, std::vector<VertexId> vertices, std::vector<DartId> darts, std::size_t dim) {
  Face f;
  std::sort(vertices.begin(), vertices.end());
  std::sort(darts.begin(), darts.end());
  f.vertices = std::move(vertices);
  f.darts = std::move(darts);
  f.dim = dim;
  const VertexId base = f.vertices.front();
  const auto star = f.star_at(g, base);
  std::vector<LatticeVector> labels;
  for (DartId e : star) labels.push_back(g.alpha(e));
  f.span = lattice::hermite_basis(labels, g.k());
  f.key = face_key(base, star);
  return f;
}

Face vertex_face(const GkmGraph& g, VertexId v) { return make_face(g, {v}, {}, 0); }

ClosureResult face_closure(const GkmGraph& g, VertexId v, const std::vector<DartId>& seed, bool early_abort) {
  for (DartId e : seed)
    if (g.src(e) != v) throw std::invalid_argument("seed dart does not start at the seed vertex");
  if (seed.empty()) return vertex_face(g, v);

  const std::size_t size = std::set<DartId>(seed.begin(), seed.end()).size();
  std::vector<char> in(g.dart_count(), 0);
  std::map<VertexId, std::vector<DartId>> stars;
  std::deque<DartId> work;
  bool oversized = false;

  auto add = [&](DartId e) {
    if (in[e]) return;
    in[e] = 1;
    auto& s = stars[g.src(e)];
    s.push_back(e);
    if (s.size() > size) oversized = true;
    work.push_back(e);
  };
  for (DartId e : seed) add(e);

  while (!work.empty() && !(early_abort && oversized)) {
    const DartId e = work.front();
    work.pop_front();
    const std::vector<DartId> local = stars[g.src(e)];
    for (DartId f : local) {
      add(g.transport(e, f));
      if (f != e) add(g.transport(f, e));
    }
  }

  std::vector<VertexId> vertices;
  std::vector<DartId> darts;
  for (const auto& [u, s] : stars) {
    vertices.push_back(u);
    darts.insert(darts.end(), s.begin(), s.end());
  }
  bool regular = !oversized;
  for (const auto& [u, s] : stars)
    if (s.size() != size) regular = false;
  if (regular) return make_face(g, std::move(vertices), std::move(darts), size);

  ClosureReport report;
  report.seed_size = size;
  report.aborted = early_abort && oversized;
  std::sort(darts.begin(), darts.end());
  report.vertices = std::move(vertices);
  report.darts = std::move(darts);
  for (const auto& [u, s] : stars)
    if (s.size() != size) report.star_sizes[u] = s.size();
  return report;
}

namespace {

bool face_order(const Face& a, const Face& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  if (a.vertices.front() != b.vertices.front()) return a.vertices.front() < b.vertices.front();
  return a.darts < b.darts;
}

template <typename F>
void for_each_subset(const std::vector<DartId>& star, std::size_t q, F&& f) {
  const std::size_t m = star.size();
  if (q > m) return;
  std::vector<std::size_t> idx(q);
  for (std::size_t i = 0; i < q; ++i) idx[i] = i;
  while (true) {
    std::vector<DartId> pick;
    for (auto i : idx) pick.push_back(star[i]);
    f(pick);
    std::size_t p = q;
    while (p > 0 && idx[p - 1] == m - q + p - 1) --p;
    if (p == 0) return;
    ++idx[p - 1];
    for (std::size_t j = p; j < q; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

FacePoset::FacePoset(std::vector<Face> faces) : faces_(std::move(faces)) {
  std::sort(faces_.begin(), faces_.end(), face_order);
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (!index_.emplace(faces_[i].key, i).second) throw std::invalid_argument("duplicate face " + faces_[i].key);

  std::map<VertexId, std::vector<std::size_t>> by_vertex;
  std::map<DartId, std::vector<std::size_t>> by_dart;
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    if (faces_[i].dim == 0) continue;
    for (VertexId v : faces_[i].vertices) by_vertex[v].push_back(i);
    for (DartId e : faces_[i].darts) by_dart[e].push_back(i);
  }
  std::vector<std::vector<std::size_t>> up(faces_.size());
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    const Face& f = faces_[i];
    if (f.dim == 0) {
      auto it = by_vertex.find(f.vertices.front());
      if (it != by_vertex.end()) up[i] = it->second;
      continue;
    }
    for (std::size_t j : by_dart[f.darts.front()]) {
      const Face& h = faces_[j];
      if (h.dim <= f.dim) continue;
      if (std::includes(h.darts.begin(), h.darts.end(), f.darts.begin(), f.darts.end())) up[i].push_back(j);
    }
  }
  order_ = Poset::from_closed(std::move(up));
}

std::optional<std::size_t> FacePoset::find(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> FacePoset::f_vector() const {
  std::vector<std::size_t> f(faces_.empty() ? 0 : max_dim() + 1, 0);
  for (const auto& face : faces_) ++f[face.dim];
  return f;
}

std::size_t FacePoset::max_dim() const {
  std::size_t m = 0;
  for (const auto& face : faces_) m = std::max(m, face.dim);
  return m;
}

std::optional<std::size_t> FacePoset::whole_graph(const GkmGraph& g) const {
  for (std::size_t i = faces_.size(); i-- > 0;) {
    const Face& f = faces_[i];
    if (f.vertices.size() == g.vertex_count() && f.darts.size() == g.dart_count()) return i;
  }
  return std::nullopt;
}

FacePoset enumerate_faces(const GkmGraph& g, std::size_t max_dim, std::size_t budget) {
  std::vector<Face> faces;
  std::set<std::pair<VertexId, std::vector<DartId>>> covered;
  auto accept = [&](Face f) {
    for (VertexId u : f.vertices) covered.emplace(u, f.star_at(g, u));
    faces.push_back(std::move(f));
    if (budget && faces.size() > budget)
      throw BudgetExceeded("face enumeration exceeded the budget of " + std::to_string(budget) + " faces");
  };
  for (VertexId v = 0; v < g.vertex_count(); ++v) accept(vertex_face(g, v));
  for (std::size_t q = 1; q <= max_dim; ++q) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for_each_subset(g.star(v), q, [&](const std::vector<DartId>& seed) {
        if (covered.count({v, seed})) return;
        auto result = face_closure(g, v, seed, true);
        if (auto* f = std::get_if<Face>(&result)) accept(std::move(*f));
      });
    }
  }
  return FacePoset(std::move(faces));
}

std::size_t completeness_level(const GkmGraph& g, const FacePoset& poset) {
  std::set<std::pair<VertexId, std::vector<DartId>>> stars;
  for (const auto& f : poset.faces())
    for (VertexId u : f.vertices) stars.emplace(u, f.star_at(g, u));
  std::size_t bound = std::min(g.k(), poset.max_dim());
  for (VertexId v = 0; v < g.vertex_count(); ++v) bound = std::min(bound, g.star(v).size());
  std::size_t level = 0;
  for (std::size_t j = 1; j <= bound; ++j) {
    bool ok = true;
    for (VertexId v = 0; v < g.vertex_count() && ok; ++v)
      for_each_subset(g.star(v), j, [&](const std::vector<DartId>& s) {
        if (!stars.count({v, s})) ok = false;
      });
    if (!ok) break;
    level = j;
  }
  return level;
}

Poset interval(const FacePoset& poset, std::size_t lower, std::size_t upper, std::vector<std::size_t>* members) {
  if (lower != upper && !poset.less(lower, upper)) throw std::invalid_argument("interval bounds are not nested");
  std::vector<std::size_t> m{lower};
  for (std::size_t x : poset.above(lower))
    if (x == upper || poset.less(x, upper)) m.push_back(x);
  std::sort(m.begin(), m.end());
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (poset.less(m[i], m[j])) rel.emplace_back(i, j);
  if (members) *members = m;
  return Poset(m.size(), rel);
}

namespace {

bool boolean_interval(const FacePoset& poset, std::size_t lower, std::size_t top) {
  const std::size_t rank = poset.face(top).dim - poset.face(lower).dim;
  std::vector<std::size_t> m{lower};
  for (std::size_t x : poset.above(lower))
    if (x == top || poset.less(x, top)) m.push_back(x);
  std::vector<std::size_t> atoms;
  for (std::size_t x : m) {
    if (x == lower) continue;
    bool cover = true;
    for (std::size_t y : m)
      if (y != lower && y != x && poset.less(y, x)) {
        cover = false;
        break;
      }
    if (cover) atoms.push_back(x);
  }
  if (atoms.size() != rank || rank > 20 || m.size() != (std::size_t{1} << rank)) return false;
  std::vector<unsigned long> mask(m.size(), 0);
  std::set<unsigned long> seen;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t a = 0; a < atoms.size(); ++a)
      if (atoms[a] == m[i] || poset.less(atoms[a], m[i])) mask[i] |= 1UL << a;
    if (static_cast<std::size_t>(__builtin_popcountl(mask[i])) != poset.face(m[i]).dim - poset.face(lower).dim)
      return false;
    if (!seen.insert(mask[i]).second) return false;
  }
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i == j) continue;
      const bool sub = (mask[i] & mask[j]) == mask[i];
      if (sub != poset.less(m[i], m[j])) return false;
    }
  return true;
}

}  // namespace

bool is_simplicial_below(const FacePoset& poset, std::size_t top) {
  if (!boolean_interval(poset, top, top)) return false;
  for (std::size_t x : poset.below(top))
    if (!boolean_interval(poset, x, top)) return false;
  return true;
}

Poset strict_lower_poset(const FacePoset& poset, std::size_t top, std::vector<std::size_t>* members) {
  const std::vector<std::size_t>& m = poset.below(top);
  std::map<std::size_t, std::size_t> local;
  for (std::size_t i = 0; i < m.size(); ++i) local.emplace(m[i], i);
  std::vector<std::vector<std::size_t>> up(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t y : poset.above(m[i])) {
      auto it = local.find(y);
      if (it != local.end()) up[i].push_back(it->second);
    }
  if (members) *members = m;
  return Poset::from_closed(std::move(up));
}

Integer hall_euler(const FacePoset& poset, std::size_t top) {
  if (!is_simplicial_below(poset, top)) throw std::domain_error("faces below " + poset.face(top).key + " do not form a simplicial poset");
  const std::size_t j = poset.face(top).dim;
  std::vector<Integer> by_dim(j, 0);
  for (std::size_t x : poset.below(top)) ++by_dim[poset.face(x).dim];
  // f_{-1} = 1 and f_i counts faces of dimension j - i - 1.
  Integer chi = -1;
  for (std::size_t i = 0; i < j; ++i) {
    const Integer& f = by_dim[j - i - 1];
    chi += (i % 2 == 0) ? f : Integer(-f);
  }
  return chi;
}

std::vector<std::pair<std::vector<VertexId>, std::vector<DartId>>> brute_force_faces(const GkmGraph& g,
                                                                                    std::size_t max_dim) {
  std::set<std::pair<std::vector<VertexId>, std::vector<DartId>>> found;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    found.insert({{v}, {}});
    const auto& star = g.star(v);
    const std::size_t m = star.size();
    for (unsigned long bits = 1; bits < (1UL << m); ++bits) {
      const auto q = static_cast<std::size_t>(__builtin_popcountl(bits));
      if (q > max_dim) continue;
      std::set<DartId> darts;
      for (std::size_t i = 0; i < m; ++i)
        if (bits & (1UL << i)) darts.insert(star[i]);
      // Naive fixed point: sweep all pairs until nothing changes.
      bool changed = true;
      while (changed) {
        changed = false;
        std::vector<DartId> current(darts.begin(), darts.end());
        for (DartId e : current)
          for (DartId f : current)
            if (g.src(e) == g.src(f) && darts.insert(g.transport(e, f)).second) changed = true;
      }
      std::map<VertexId, std::size_t> valence;
      for (DartId e : darts) ++valence[g.src(e)];
      bool regular = true;
      for (const auto& [u, c] : valence)
        if (c != q) regular = false;
      if (!regular) continue;
      // Connectivity by search along the dart set.
      std::set<VertexId> reached{v};
      std::vector<VertexId> stack{v};
      while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        for (DartId e : g.star(u))
          if (darts.count(e) && reached.insert(g.dst(e)).second) stack.push_back(g.dst(e));
      }
      if (reached.size() != valence.size()) continue;
      bool closed = true;
      for (DartId e : darts) {
        if (!darts.count(g.reverse(e))) closed = false;
        for (DartId f : g.star(g.src(e)))
          if (darts.count(f) && !darts.count(g.transport(e, f))) closed = false;
      }
      if (!closed) continue;
      std::vector<VertexId> vs;
      for (const auto& [u, c] : valence) vs.push_back(u);
      found.insert({vs, std::vector<DartId>(darts.begin(), darts.end())});
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace gkm
