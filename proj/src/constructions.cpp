#include "gkm/constructions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <regex>
#include <tuple>

namespace gkm {

namespace {

long long mod(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Integer ipow(const Integer& base, int exp) {
  Integer out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

std::string to_string(PredicateStrategy s) {
  return s == PredicateStrategy::PaperLiteral ? "paper-literal" : "regularity-scaled";
}

PredicateStrategy parse_strategy(const std::string& s) {
  if (s == "paper-literal") return PredicateStrategy::PaperLiteral;
  if (s == "regularity-scaled") return PredicateStrategy::RegularityScaled;
  throw std::invalid_argument("unknown predicate strategy '" + s + "'");
}

PredicateStrategy ConstructionConfig::effective_strategy() const {
  if (strategy) return *strategy;
  return d % 2 == 1 ? PredicateStrategy::PaperLiteral : PredicateStrategy::RegularityScaled;
}

bool ConstructionConfig::effective_primitivize() const { return primitivize.value_or(r >= 2); }

void ConstructionConfig::check() const {
  if (d < 1) throw BuildError("d must be at least 1");
  if (r < 0) throw BuildError("r must be nonnegative");
  if (r > 20) throw BuildError("r is too large");
  if (a < 1) throw BuildError("the modulus a must be positive");
  if (r >= 1) {
    long long step = 1LL << r;
    if (effective_strategy() == PredicateStrategy::RegularityScaled) step *= d;
    if (a % step != 0)
      throw BuildError("the modulus a = " + std::to_string(a) + " must be a multiple of " + std::to_string(step) +
                       " for the " + to_string(effective_strategy()) + " strategy");
  }
  if (r >= 2 && t.size() != static_cast<std::size_t>(d + 1))
    throw BuildError("r >= 2 requires d+1 parameters t");
  if (!t.empty() && t.size() != static_cast<std::size_t>(d + 1)) throw BuildError("t must have d+1 entries");
}

nlohmann::json ConstructionConfig::to_json() const {
  nlohmann::json j;
  j["construction"] = "quotient";
  j["d"] = d;
  j["r"] = r;
  j["a"] = a;
  nlohmann::json ts = nlohmann::json::array();
  for (const auto& x : t) ts.push_back(x.convert_to<long long>());
  j["t"] = ts;
  j["strategy"] = to_string(effective_strategy());
  j["primitivize"] = effective_primitivize();
  return j;
}

LatticePoint decode_point(const std::vector<long long>& scaled) {
  LatticePoint p;
  p.coords = scaled;
  bool any_int = false, any_half = false;
  for (long long x : scaled) {
    switch (mod(x, 6)) {
      case 1: p.signs.push_back(1); any_int = true; break;
      case 5: p.signs.push_back(-1); any_int = true; break;
      case 4: p.signs.push_back(1); any_half = true; break;
      case 2: p.signs.push_back(-1); any_half = true; break;
      default: throw std::invalid_argument("coordinate is not a vertex coordinate");
    }
  }
  if (any_int && any_half) throw std::invalid_argument("mixed integer and half-cube coordinates");
  p.half = any_half;
  return p;
}

std::vector<long long> LatticePoint::integer_center() const {
  std::vector<long long> x(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    // Half vertex 6y + 2s with σ = -s lies on the diagonal of the cube at y.
    x[i] = half ? (coords[i] + 2 * signs[i]) / 6 : (coords[i] - signs[i]) / 6;
  }
  return x;
}

std::vector<long long> LatticePoint::scaled_center() const {
  std::vector<long long> c(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) c[i] = coords[i] - signs[i];
  return c;
}

int epsilon(const ConstructionConfig& config, int i, int j, const LatticePoint& v) {
  if (i < 1 || i > config.d + 1) throw std::out_of_range("epsilon index i out of range");
  if (j < 1 || j > 62) throw std::out_of_range("epsilon index j out of range");
  if (v.coords.size() != static_cast<std::size_t>(config.d)) throw std::invalid_argument("point has the wrong dimension");
  const long long p = 1LL << (j - 1);
  long long f;
  if (i <= config.d) {
    f = floor_div(v.integer_center()[i - 1], p);
  } else {
    f = floor_div(v.scaled_center()[0], 6 * p);
  }
  return mod(f, 2) == 0 ? 1 : -1;
}

GkmGraph assemble(std::size_t k, std::vector<std::vector<Integer>> coords, const std::vector<EdgeSpec>& edges,
                  nlohmann::json config, std::vector<int>* dart_kinds) {
  struct Raw {
    VertexId src, dst;
    LatticeVector alpha;
    int kind;
  };
  std::vector<Raw> raw;
  raw.reserve(2 * edges.size());
  for (const auto& e : edges) {
    raw.push_back({e.u, e.v, e.alpha, e.kind});
    raw.push_back({e.v, e.u, -e.alpha, e.kind});
  }
  std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
  std::map<std::pair<VertexId, VertexId>, DartId> id;
  for (DartId i = 0; i < raw.size(); ++i)
    if (!id.emplace(std::make_pair(raw[i].src, raw[i].dst), i).second)
      throw StructuralError("multiple edges between " + std::to_string(raw[i].src) + " and " + std::to_string(raw[i].dst));

  const std::size_t n = coords.size();
  std::vector<Dart> darts(raw.size());
  std::vector<std::map<int, DartId>> by_kind(n);
  for (DartId i = 0; i < raw.size(); ++i) {
    darts[i] = {raw[i].src, raw[i].dst, id.at({raw[i].dst, raw[i].src}), raw[i].alpha};
    if (!by_kind[raw[i].src].emplace(raw[i].kind, i).second)
      throw BuildError("vertex " + std::to_string(raw[i].src) + " has two darts of one kind");
  }
  std::vector<std::vector<DartId>> stars(n);
  for (DartId i = 0; i < raw.size(); ++i) stars[raw[i].src].push_back(i);

  Connection conn(raw.size());
  for (DartId e = 0; e < raw.size(); ++e) {
    const auto& target = by_kind[raw[e].dst];
    for (DartId f : stars[raw[e].src]) {
      auto it = target.find(raw[f].kind);
      if (it == target.end()) throw BuildError("no dart of matching kind at vertex " + std::to_string(raw[e].dst));
      conn[e].push_back(it->second);
    }
  }
  if (dart_kinds) {
    dart_kinds->clear();
    for (const auto& r : raw) dart_kinds->push_back(r.kind);
  }
  return GkmGraph(k, n, std::move(darts), std::move(conn), std::move(coords), std::move(config));
}

Construction construct(const ConstructionConfig& config) {
  config.check();
  const int d = config.d;
  const long long a = config.a;
  const long long m = 6 * a;
  const std::size_t k = static_cast<std::size_t>(d) + 1;

  // All vertices, sorted by scaled coordinates.
  std::vector<std::vector<long long>> all;
  std::vector<long long> x(d, 0);
  std::function<void(int)> centers = [&](int i) {
    if (i == d) {
      for (unsigned long bits = 0; bits < (1UL << d); ++bits) {
        std::vector<long long> in(d), hf(d);
        for (int q = 0; q < d; ++q) {
          const int s = (bits >> q) & 1UL ? -1 : 1;
          in[q] = mod(6 * x[q] + s, m);
          hf[q] = mod(6 * x[q] + 3 + s, m);
        }
        all.push_back(in);
        all.push_back(hf);
      }
      return;
    }
    for (long long v = 0; v < a; ++v) {
      x[i] = v;
      centers(i + 1);
    }
  };
  centers(0);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  Construction out{config, {}, {}, GkmGraph(1, 1, {}, Connection{})};
  std::map<std::vector<long long>, VertexId> index;
  std::vector<std::vector<Integer>> coords;
  for (VertexId v = 0; v < all.size(); ++v) {
    index.emplace(all[v], v);
    out.points.push_back(decode_point(all[v]));
    coords.emplace_back(all[v].begin(), all[v].end());
  }

  auto w = [&](const LatticePoint& p, int i) {
    // i in 1..d+1
    if (i <= d) {
      const long long sign = p.half ? p.signs[i - 1] : -p.signs[i - 1];
      return LatticeVector::unit(k, i - 1, sign);
    }
    return LatticeVector::unit(k, d, p.half ? -1 : 1);
  };
  auto shift = [&](std::vector<long long> c, long long by) {
    for (auto& v : c) v = mod(v + by, m);
    return c;
  };

  std::vector<EdgeSpec> edges;
  for (VertexId v = 0; v < all.size(); ++v) {
    const LatticePoint& p = out.points[v];
    // Axis edges, each undirected edge once (from the endpoint with sign +1).
    for (int i = 0; i < d; ++i) {
      if (p.signs[i] != 1) continue;
      auto c = p.coords;
      c[i] = mod(c[i] - 2, m);
      edges.push_back({v, index.at(c), w(p, i + 1), i});
    }
    // Diagonal, from the integer cube.
    if (!p.half) {
      auto c = p.coords;
      for (int i = 0; i < d; ++i) c[i] = mod(c[i] + p.signs[i], m);
      edges.push_back({v, index.at(c), LatticeVector::unit(k, d, 1), d});
    }
    // Chords.
    for (int j = 1; j <= config.r; ++j) {
      const long long pj = 1LL << (j - 1);
      const long long divisor =
          6 * pj * (config.effective_strategy() == PredicateStrategy::RegularityScaled ? d : 1);
      long long sum = 0;
      for (long long c : p.coords) sum += c;
      if (mod(floor_div(sum, divisor), 2) != 0) continue;
      LatticeVector label(k);
      for (int i = 1; i <= d + 1; ++i) {
        const Integer coeff = epsilon(config, i, j, p) * (config.t.empty() ? Integer(1) : ipow(config.t[i - 1], j - 1));
        label += coeff * w(p, i);
      }
      if (label.is_zero()) throw BuildError("chord label vanishes at vertex " + std::to_string(v));
      if (config.effective_primitivize()) label = lattice::primitive(label);
      edges.push_back({v, index.at(shift(p.coords, 6 * pj)), label, d + j});
    }
  }

  out.graph = assemble(k, std::move(coords), edges, config.to_json(), &out.kind);
  return out;
}

GkmGraph build(const ConstructionConfig& config) {
  Construction c = construct(config);
  ValidationReport report = validate(c.graph);
  if (!report.pass()) {
    std::string failing;
    if (!report.rank.pass) failing += " rank";
    if (!report.opposite_sign.pass) failing += " opposite-sign";
    if (!report.congruence.pass) failing += " congruence";
    if (!report.regularity.pass) failing += " regularity";
    throw BuildError("constructed graph fails validation:" + failing, std::move(report));
  }
  return std::move(c.graph);
}

Automorphism translate(const Construction& c, const std::vector<long long>& offset) {
  const int d = c.config.d;
  const long long m = 6 * c.config.a;
  if (offset.size() != static_cast<std::size_t>(d)) throw std::invalid_argument("offset has the wrong dimension");
  const long long r0 = mod(offset[0], 6);
  for (long long x : offset)
    if (mod(x, 6) != r0 || (r0 != 0 && r0 != 3)) throw std::invalid_argument("offset is not in L_d");

  std::map<std::vector<long long>, VertexId> index;
  for (VertexId v = 0; v < c.points.size(); ++v) index.emplace(c.points[v].coords, v);

  Automorphism out;
  for (const auto& p : c.points) {
    auto q = p.coords;
    for (int i = 0; i < d; ++i) q[i] = mod(q[i] + offset[i], m);
    out.vertex_map.push_back(index.at(q));
  }
  const GkmGraph& g = c.graph;
  for (DartId e = 0; e < g.dart_count(); ++e) {
    auto image = g.find_dart(out.vertex_map[g.src(e)], out.vertex_map[g.dst(e)]);
    if (!image) throw std::domain_error("translation does not preserve the edge set");
    out.dart_map.push_back(*image);
  }
  return out;
}

std::vector<Integer> find_parameters(int d, int r, long long a, int bound, std::optional<PredicateStrategy> strategy) {
  if (r <= 1) return {};
  const std::size_t target = static_cast<std::size_t>(d) + 1;
  std::size_t best = 0;
  std::vector<Integer> t(target);
  for (int norm = 0; norm <= bound; ++norm) {
    // Lexicographic over [-norm, norm]^{d+1}, restricted to the shell.
    std::vector<int> cur(target, -norm);
    while (true) {
      const bool on_shell = std::any_of(cur.begin(), cur.end(), [&](int v) { return std::abs(v) == norm; });
      if (on_shell) {
        ConstructionConfig cfg;
        cfg.d = d;
        cfg.r = r;
        cfg.a = a;
        cfg.strategy = strategy;
        for (std::size_t i = 0; i < target; ++i) t[i] = cur[i];
        cfg.t = t;
        try {
          Construction c = construct(cfg);
          const std::size_t level = independence_level(c.graph);
          best = std::max(best, level);
          if (level == target) return t;
        } catch (const BuildError&) {
          // A vanishing label; try the next tuple.
        }
      }
      std::size_t p = target;
      while (p > 0 && cur[p - 1] == norm) {
        cur[p - 1] = -norm;
        --p;
      }
      if (p == 0) break;
      ++cur[p - 1];
    }
  }
  throw ParameterSearchExhausted("no parameters up to norm " + std::to_string(bound) + " reach independence " +
                                     std::to_string(target),
                                 best);
}

namespace {

const std::vector<std::vector<int>>& permutations3() {
  static const std::vector<std::vector<int>> perms = [] {
    std::vector<std::vector<int>> out;
    std::vector<int> p{0, 1, 2};
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return perms;
}

// x_a - x_b in the basis x_1 - x_2, x_2 - x_3.
LatticeVector root(int a, int b) {
  static const LatticeVector simple[3] = {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{1, 1}};
  if (a == b) throw std::logic_error("root of equal indices");
  if (a > b) return -root(b, a);
  if (a == 0 && b == 1) return simple[0];
  if (a == 1 && b == 2) return simple[1];
  return simple[2];
}

GkmGraph flag3_graph() {
  const auto& perms = permutations3();
  std::vector<std::vector<Integer>> coords;
  for (const auto& p : perms) coords.emplace_back(p.begin(), p.end());
  const std::pair<int, int> transpositions[3] = {{0, 1}, {0, 2}, {1, 2}};
  std::vector<EdgeSpec> edges;
  for (VertexId v = 0; v < perms.size(); ++v) {
    for (int t = 0; t < 3; ++t) {
      auto [i, j] = transpositions[t];
      auto q = perms[v];
      std::swap(q[i], q[j]);
      const auto w = static_cast<VertexId>(std::find(perms.begin(), perms.end(), q) - perms.begin());
      if (w < v) continue;
      edges.push_back({v, w, root(perms[v][i], perms[v][j]), t});
    }
  }
  nlohmann::json cfg{{"construction", "builtin"}, {"name", "flag3"}};
  return assemble(2, std::move(coords), edges, cfg);
}

}  // namespace

GkmGraph flag3_unconnected() { return flag3_graph().with_connection(std::nullopt); }

GkmGraph builtin(const std::string& name) {
  static const std::regex cube_re(R"(cube\((\d+)\))");
  static const std::regex torus_re(R"(torus\((\d+),\s*(\d+)\))");
  std::smatch m;
  ConstructionConfig cfg;
  nlohmann::json tag;
  if (name == "flag3") return flag3_graph();
  if (std::regex_match(name, m, cube_re)) {
    cfg.d = std::stoi(m[1]);
    cfg.a = 1;
  } else if (std::regex_match(name, m, torus_re)) {
    cfg.d = std::stoi(m[1]);
    cfg.a = std::stoll(m[2]);
  } else {
    throw std::invalid_argument("unknown builtin '" + name + "'");
  }
  cfg.r = 0;
  if (cfg.d < 1 || cfg.d > 8 || cfg.a < 1 || cfg.a > 64) throw std::invalid_argument("builtin parameters out of range");
  Construction c = construct(cfg);
  nlohmann::json meta = cfg.to_json();
  meta["construction"] = "builtin";
  meta["name"] = name;
  GkmGraph g = c.graph;
  return GkmGraph(g.k(), g.vertex_count(), g.darts(), g.connection(), g.coords(), meta);
}

}  // namespace gkm
