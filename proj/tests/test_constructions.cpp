#include "corpus.hpp"

#include <doctest.h>

#include <cmath>

using namespace gkm;
using gkm::test::built;

namespace {

ConstructionConfig config(int d, int r, long long a, std::vector<Integer> t = {}) {
  ConstructionConfig c;
  c.d = d;
  c.r = r;
  c.a = a;
  c.t = std::move(t);
  return c;
}

long long mod(long long x, long long m) { return ((x % m) + m) % m; }

}  // namespace

TEST_CASE("builtin sizes and types") {
  const GkmGraph c3 = builtin("cube(3)");
  CHECK(c3.vertex_count() == 16);
  auto r = validate(c3);
  CHECK(r.n == 4);
  CHECK(r.k == 4);
  CHECK(builtin("torus(2,3)").vertex_count() == 72);
  r = validate(builtin("flag3"));
  CHECK(r.n == 3);
  CHECK(r.k == 2);
  CHECK(builtin("flag3").vertex_count() == 6);
  CHECK_THROWS_AS(builtin("sphere(2)"), std::invalid_argument);
}

TEST_CASE("chordal quotients") {
  const GkmGraph g = built(3, 1, 4);
  const auto r = validate(g);
  CHECK(r.pass());
  CHECK(r.n == 5);
  CHECK(r.k == 4);
  CHECK(independence_level(g) == 4);
  CHECK(find_parameters(3, 1, 4, 3).empty());
}

TEST_CASE("configuration checks") {
  CHECK_THROWS_AS(build(config(2, 1, 3)), BuildError);
  CHECK_THROWS_AS(build(config(2, 2, 8)), BuildError);
  CHECK_THROWS_AS(build(config(2, 0, 2, {1, 2})), BuildError);
  CHECK_THROWS_AS(build(config(0, 0, 2)), BuildError);
  CHECK(config(3, 1, 4).effective_strategy() == PredicateStrategy::PaperLiteral);
  CHECK(config(2, 1, 4).effective_strategy() == PredicateStrategy::RegularityScaled);
  CHECK(config(2, 2, 8, {1, 1, 1}).effective_primitivize());
  CHECK(parse_strategy(to_string(PredicateStrategy::RegularityScaled)) == PredicateStrategy::RegularityScaled);
}

TEST_CASE("epsilon examples") {
  const auto c1 = config(2, 1, 4);
  // integer cube centered at (1, 0)
  CHECK(epsilon(c1, 1, 1, decode_point({7, 1})) == -1);
  CHECK(epsilon(c1, 1, 1, decode_point({5, 5})) == -1);
  CHECK(epsilon(c1, 2, 1, decode_point({7, 1})) == 1);
  const auto c2 = config(2, 2, 8, {1, 2, 3});
  // integer cube centered at (2, 0)
  CHECK(epsilon(c2, 1, 2, decode_point({13, 1})) == -1);
  CHECK(epsilon(c2, 1, 1, decode_point({13, 1})) == 1);
  CHECK_THROWS_AS(epsilon(c1, 4, 1, decode_point({7, 1})), std::out_of_range);
}

TEST_CASE("epsilon flips under a translation by 2^(j-1) e_i") {
  for (const auto& cfg : {config(2, 1, 4), config(3, 1, 4), config(2, 2, 8, {1, 2, 3})}) {
    const Construction c = construct(cfg);
    for (const auto& v : c.points)
      for (int j = 1; j <= cfg.r; ++j)
        for (int i = 1; i <= cfg.d; ++i) {
          auto coords = v.coords;
          coords[i - 1] = mod(coords[i - 1] + 6 * (1LL << (j - 1)), 6 * cfg.a);
          CHECK(epsilon(cfg, i, j, decode_point(coords)) == -epsilon(cfg, i, j, v));
        }
  }
}

TEST_CASE("epsilon propagates along axis darts") {
  for (const auto& cfg : {config(2, 1, 4), config(3, 1, 4), config(2, 2, 8, {1, 2, 3})}) {
    const Construction c = construct(cfg);
    const GkmGraph& g = c.graph;
    for (DartId e = 0; e < g.dart_count(); ++e) {
      const int kind = c.kind[e];
      if (kind >= cfg.d) continue;
      for (int i = 1; i <= cfg.d; ++i) {
        if (i == kind + 1) continue;
        for (int q = 1; q <= cfg.r; ++q)
          CHECK(epsilon(cfg, i, q, c.points[g.src(e)]) == epsilon(cfg, i, q, c.points[g.dst(e)]));
      }
    }
  }
}

TEST_CASE("translations") {
  const Construction c = construct(config(2, 0, 2));
  const GkmGraph& g = c.graph;
  const Automorphism id = translate(c, {0, 0});
  for (VertexId v = 0; v < g.vertex_count(); ++v) CHECK(id.vertex_map[v] == v);
  const Automorphism period = translate(c, {12, 0});
  for (VertexId v = 0; v < g.vertex_count(); ++v) CHECK(period.vertex_map[v] == v);

  const Automorphism half = translate(c, {3, 3});
  for (DartId e = 0; e < g.dart_count(); ++e) {
    CHECK(g.src(half.dart_map[e]) == half.vertex_map[g.src(e)]);
    CHECK(g.alpha(half.dart_map[e]) == -g.alpha(e));
  }
  const Automorphism shift = translate(c, {6, 0});
  for (DartId e = 0; e < g.dart_count(); ++e) CHECK(g.dst(shift.dart_map[e]) == shift.vertex_map[g.dst(e)]);
  CHECK_THROWS_AS(translate(c, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(translate(c, {3, 0}), std::invalid_argument);
}

TEST_CASE("parameter search") {
  // The degenerate tuple makes some minor vanish.
  const Construction degenerate = construct(config(2, 2, 8, {1, 1, 1}));
  CHECK(independence_level(degenerate.graph) < 3);
  const auto t = find_parameters(2, 2, 8, 3);
  REQUIRE(t.size() == 3);
  CHECK(independence_level(construct(config(2, 2, 8, t)).graph) == 3);
  CHECK_THROWS_AS(find_parameters(2, 2, 8, 0), ParameterSearchExhausted);
}

TEST_CASE("quotients of the plain construction") {
  for (auto [d, a] : {std::pair{2, 2LL}, {2, 3}, {3, 2}}) {
    const GkmGraph g = built(d, 0, a);
    CHECK(validate(g).pass());
    CHECK(g.vertex_count() == static_cast<std::size_t>(2 * (1 << d)) * static_cast<std::size_t>(std::pow(a, d)));
  }
}
