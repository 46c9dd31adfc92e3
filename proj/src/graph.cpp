#include "gkm/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace gkm {

GkmGraph::GkmGraph(std::size_t k, std::size_t vertex_count, std::vector<Dart> darts,
                   std::optional<Connection> connection, std::vector<std::vector<Integer>> coords,
                   nlohmann::json config)
    : k_(k),
      vertex_count_(vertex_count),
      darts_(std::move(darts)),
      connection_(std::move(connection)),
      coords_(std::move(coords)),
      config_(std::move(config)) {
  if (k_ == 0) throw StructuralError("lattice rank must be positive");
  if (vertex_count_ == 0) throw StructuralError("vertex set is empty");
  if (!coords_.empty() && coords_.size() != vertex_count_)
    throw StructuralError("coordinate list does not match the vertex count");

  stars_.assign(vertex_count_, {});
  star_pos_.assign(darts_.size(), 0);
  std::set<std::pair<VertexId, VertexId>> seen;
  for (DartId e = 0; e < darts_.size(); ++e) {
    const Dart& d = darts_[e];
    if (d.src >= vertex_count_ || d.dst >= vertex_count_)
      throw StructuralError("dart " + std::to_string(e) + " has an unknown endpoint");
    if (d.src == d.dst) throw StructuralError("dart " + std::to_string(e) + " is a loop");
    if (!seen.insert({d.src, d.dst}).second)
      throw StructuralError("duplicate dart between " + std::to_string(d.src) + " and " + std::to_string(d.dst));
    if (d.reverse >= darts_.size()) throw StructuralError("dart " + std::to_string(e) + " has a dangling reverse");
    const Dart& r = darts_[d.reverse];
    if (d.reverse == e || r.reverse != e || r.src != d.dst || r.dst != d.src)
      throw StructuralError("reverse of dart " + std::to_string(e) + " is inconsistent");
    if (d.alpha.dim() != k_) throw StructuralError("label of dart " + std::to_string(e) + " has the wrong length");
    if (d.alpha.is_zero()) throw StructuralError("label of dart " + std::to_string(e) + " is zero");
    star_pos_[e] = stars_[d.src].size();
    stars_[d.src].push_back(e);
  }

  if (connection_) {
    const Connection& c = *connection_;
    if (c.size() != darts_.size()) throw StructuralError("connection does not cover every dart");
    for (DartId e = 0; e < darts_.size(); ++e) {
      const auto& from = stars_[darts_[e].src];
      const auto& to = stars_[darts_[e].dst];
      if (c[e].size() != from.size() || from.size() != to.size())
        throw StructuralError("connection along dart " + std::to_string(e) + " is not a bijection of stars");
      std::set<DartId> image;
      for (DartId f : c[e]) {
        if (f >= darts_.size() || darts_[f].src != darts_[e].dst)
          throw StructuralError("connection along dart " + std::to_string(e) + " leaves the target star");
        image.insert(f);
      }
      if (image.size() != to.size())
        throw StructuralError("connection along dart " + std::to_string(e) + " is not injective");
      if (c[e][star_pos_[e]] != darts_[e].reverse)
        throw StructuralError("connection along dart " + std::to_string(e) + " does not send it to its reverse");
    }
  }
}

std::optional<DartId> GkmGraph::find_dart(VertexId u, VertexId v) const {
  for (DartId e : stars_[u])
    if (darts_[e].dst == v) return e;
  return std::nullopt;
}

const Connection& GkmGraph::connection() const {
  if (!connection_) throw std::logic_error("graph has no connection");
  return *connection_;
}

DartId GkmGraph::transport(DartId e, DartId f) const {
  if (darts_[f].src != darts_[e].src) throw std::invalid_argument("transported dart is not in the source star");
  return connection()[e][star_pos_[f]];
}

GkmGraph GkmGraph::with_connection(std::optional<Connection> connection) const {
  return GkmGraph(k_, vertex_count_, darts_, std::move(connection), coords_, config_);
}

GkmGraph GkmGraph::with_alpha(const std::vector<LatticeVector>& alpha) const {
  if (alpha.size() != darts_.size()) throw std::invalid_argument("label list does not match the dart count");
  std::vector<Dart> darts = darts_;
  std::size_t k = alpha.empty() ? k_ : alpha.front().dim();
  for (DartId e = 0; e < darts.size(); ++e) darts[e].alpha = alpha[e];
  return GkmGraph(k, vertex_count_, std::move(darts), connection_, coords_, config_);
}

std::optional<Integer> congruence_constant(const GkmGraph& g, DartId e, DartId f) {
  const DartId image = g.transport(e, f);
  return lattice::exact_multiple(g.alpha(image) - g.alpha(f), g.alpha(e));
}

ValidationReport validate(const GkmGraph& g) {
  ValidationReport report;
  report.k = g.k();
  report.valence.resize(g.vertex_count());

  const LatticeMatrix full = LatticeMatrix::identity(g.k());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    report.valence[v] = g.star(v).size();
    std::vector<LatticeVector> labels;
    for (DartId e : g.star(v)) labels.push_back(g.alpha(e));
    if (labels.empty() || !(lattice::hermite_basis(labels, g.k()) == full)) {
      report.rank.pass = false;
      report.rank.offending_vertices.push_back(v);
    }
  }

  const std::size_t n = report.valence.front();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (report.valence[v] != n) {
      report.regularity.pass = false;
      report.regularity.offending_vertices.push_back(v);
    }
  }
  if (report.regularity.pass) report.n = n;

  for (DartId e = 0; e < g.dart_count(); ++e) {
    if (g.alpha(g.reverse(e)) != -g.alpha(e)) {
      report.opposite_sign.pass = false;
      report.opposite_sign.offending_darts.push_back(e);
    }
  }

  if (!g.has_connection()) {
    report.congruence.pass = false;
    return report;
  }
  for (DartId e = 0; e < g.dart_count(); ++e) {
    bool ok = true;
    for (DartId f : g.star(g.src(e))) {
      auto c = congruence_constant(g, e, f);
      if (c) {
        report.constants.emplace(std::make_pair(e, f), *c);
      } else {
        ok = false;
      }
    }
    if (!ok) {
      report.congruence.pass = false;
      report.congruence.offending_darts.push_back(e);
    }
  }

  bool inverse = true;
  for (DartId e = 0; e < g.dart_count() && inverse; ++e) {
    const DartId back = g.reverse(e);
    for (DartId f : g.star(g.src(e))) {
      if (g.transport(back, g.transport(e, f)) != f) {
        inverse = false;
        break;
      }
    }
  }
  report.inverse_transport = inverse;
  return report;
}

CongruenceTable congruence_constants(const GkmGraph& g) {
  CongruenceTable table;
  for (DartId e = 0; e < g.dart_count(); ++e) {
    for (DartId f : g.star(g.src(e))) {
      auto c = congruence_constant(g, e, f);
      if (!c)
        throw std::domain_error("congruence fails for darts " + std::to_string(e) + " and " + std::to_string(f));
      table.emplace(std::make_pair(e, f), *c);
    }
  }
  return table;
}

namespace {

bool all_subsets_independent(const std::vector<LatticeVector>& labels, std::size_t j) {
  const std::size_t m = labels.size();
  if (j > m) return false;
  std::vector<std::size_t> idx(j);
  for (std::size_t i = 0; i < j; ++i) idx[i] = i;
  while (true) {
    std::vector<LatticeVector> pick;
    for (auto i : idx) pick.push_back(labels[i]);
    if (lattice::rank(pick) != j) return false;
    std::size_t p = j;
    while (p > 0 && idx[p - 1] == m - j + p - 1) --p;
    if (p == 0) return true;
    ++idx[p - 1];
    for (std::size_t q = p; q < j; ++q) idx[q] = idx[q - 1] + 1;
  }
}

}  // namespace

std::size_t independence_level(const GkmGraph& g) {
  std::size_t bound = g.k();
  for (VertexId v = 0; v < g.vertex_count(); ++v) bound = std::min(bound, g.star(v).size());
  std::size_t level = 0;
  for (std::size_t j = 1; j <= bound; ++j) {
    bool ok = true;
    for (VertexId v = 0; v < g.vertex_count() && ok; ++v) {
      std::vector<LatticeVector> labels;
      for (DartId e : g.star(v)) labels.push_back(g.alpha(e));
      ok = all_subsets_independent(labels, j);
    }
    if (!ok) break;
    level = j;
  }
  return level;
}

DartId holonomy(const GkmGraph& g, const std::vector<DartId>& path, DartId e) {
  if (e >= g.dart_count()) throw std::invalid_argument("unknown dart");
  DartId current = e;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const DartId step = path.at(i);
    if (step >= g.dart_count()) throw std::invalid_argument("unknown dart in path");
    if (i > 0 && g.src(step) != g.dst(path[i - 1])) throw std::invalid_argument("path is not composable");
    if (g.src(step) != g.src(current)) throw std::invalid_argument("dart is not in the star of the path start");
    current = g.transport(step, current);
  }
  return current;
}

ConnectionInference infer_connection(const GkmGraph& g) {
  ConnectionInference out;
  Connection conn(g.dart_count());
  for (DartId e = 0; e < g.dart_count(); ++e) {
    const auto& from = g.star(g.src(e));
    const auto& to = g.star(g.dst(e));
    if (from.size() != to.size()) {
      out.infeasible.push_back(e);
      continue;
    }
    const std::size_t m = from.size();
    std::vector<std::vector<std::size_t>> allowed(m);
    for (std::size_t p = 0; p < m; ++p) {
      if (from[p] == e) {
        for (std::size_t q = 0; q < m; ++q)
          if (to[q] == g.reverse(e)) allowed[p].push_back(q);
        continue;
      }
      for (std::size_t q = 0; q < m; ++q) {
        if (to[q] == g.reverse(e)) continue;
        if (lattice::exact_multiple(g.alpha(to[q]) - g.alpha(from[p]), g.alpha(e))) allowed[p].push_back(q);
      }
    }
    // Count perfect matchings, stopping at two.
    std::vector<bool> used(m, false);
    std::vector<std::size_t> current(m), found;
    std::size_t count = 0;
    std::function<void(std::size_t)> search = [&](std::size_t p) {
      if (count >= 2) return;
      if (p == m) {
        if (count++ == 0) found = current;
        return;
      }
      for (std::size_t q : allowed[p]) {
        if (used[q]) continue;
        used[q] = true;
        current[p] = q;
        search(p + 1);
        used[q] = false;
      }
    };
    search(0);
    if (count == 0) {
      out.infeasible.push_back(e);
    } else if (count > 1) {
      out.ambiguous.push_back(e);
    } else {
      for (std::size_t p = 0; p < m; ++p) conn[e].push_back(to[found[p]]);
    }
  }
  if (out.ambiguous.empty() && out.infeasible.empty()) out.connection = std::move(conn);
  return out;
}

}  // namespace gkm
