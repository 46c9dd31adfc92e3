#include "corpus.hpp"
#include "gkm/faces.hpp"

#include <doctest.h>

#include <random>

using namespace gkm;
using gkm::test::corpus;
using gkm::test::valence;

TEST_CASE("cube(2) faces") {
  const GkmGraph g = builtin("cube(2)");
  const FacePoset p = enumerate_faces(g, 3);
  CHECK(p.f_vector() == std::vector<std::size_t>{8, 12, 6, 1});
  const auto top = p.whole_graph(g);
  REQUIRE(top);
  CHECK(hall_euler(p, *top) == 1);
  CHECK(p.face(*top).key == face_key(0, g.star(0)));
  CHECK(completeness_level(g, p) == 3);
  const auto h = reduced_homology(order_complex(strict_lower_poset(p, *top)));
  REQUIRE(h.size() == 4);
  CHECK(h[3].betti == 1);
  CHECK(h[0].betti + h[1].betti + h[2].betti == 0);
}

TEST_CASE("single darts close to edges") {
  const GkmGraph g = builtin("torus(2,2)");
  const DartId e = g.star(5)[1];
  const auto r = face_closure(g, 5, {e});
  REQUIRE(std::holds_alternative<Face>(r));
  const Face& f = std::get<Face>(r);
  CHECK(f.dim == 1);
  CHECK(f.darts.size() == 2);
  CHECK(f.contains_dart(g.reverse(e)));
}

TEST_CASE("closures that overgrow are reported") {
  const GkmGraph g = builtin("cube(2)");
  // swap two images of one transport so that some pair seeds stop closing up
  Connection c = g.connection();
  const DartId e = g.star(0)[0];
  std::swap(c[e][1], c[e][2]);
  const GkmGraph h = g.with_connection(c);
  const auto& star = h.star(0);
  const auto r = face_closure(h, 0, {star[0], star[1]});
  REQUIRE(std::holds_alternative<ClosureReport>(r));
  const auto& rep = std::get<ClosureReport>(r);
  CHECK(rep.seed_size == 2);
  CHECK_FALSE(rep.star_sizes.empty());
  for (const auto& [v, size] : rep.star_sizes) CHECK(size > 2);
  const auto early = face_closure(h, 0, {star[0], star[1]}, true);
  REQUIRE(std::holds_alternative<ClosureReport>(early));
  CHECK(std::get<ClosureReport>(early).aborted);
  CHECK(std::holds_alternative<Face>(face_closure(h, 0, {star[1], star[2]})));
}

TEST_CASE("budget") {
  const GkmGraph g = builtin("torus(2,3)");
  CHECK_THROWS_AS(enumerate_faces(g, 3, 50), BudgetExceeded);
  CHECK_NOTHROW(enumerate_faces(g, 3, 0));
}

TEST_CASE("face invariants on the corpus") {
  for (const auto& [name, g] : corpus()) {
    CAPTURE(name);
    const FacePoset p = enumerate_faces(g, valence(g));
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Face& f = p.face(i);
      // closure idempotence and base-vertex independence of spans
      for (VertexId v : f.vertices) {
        const auto r = face_closure(g, v, f.star_at(g, v));
        REQUIRE(std::holds_alternative<Face>(r));
        const Face& again = std::get<Face>(r);
        CHECK(again.vertices == f.vertices);
        CHECK(again.darts == f.darts);
        CHECK(again.span == f.span);
        const auto star = f.star_at(g, v);
        std::vector<LatticeVector> labels;
        for (DartId e : star) labels.push_back(g.alpha(e));
        CHECK(lattice::hermite_basis(labels, g.k()) == f.span);
      }
      // faces of faces are in the poset
      for (std::size_t j : p.below(i)) CHECK(p.face(j).dim < f.dim);
    }
    const auto f = p.f_vector();
    CHECK(f[0] == g.vertex_count());
    CHECK(f[1] * 2 == g.dart_count());
    const std::size_t indep = independence_level(g);
    CHECK(completeness_level(g, p) + 1 >= std::min(indep, valence(g)));
  }
}

TEST_CASE("label differences along face paths lie in the span") {
  std::mt19937 rng(17);
  for (const auto& [name, g] : corpus()) {
    CAPTURE(name);
    const FacePoset p = enumerate_faces(g, std::min<std::size_t>(valence(g), 3));
    for (std::size_t i = 0; i < p.size(); i += 1 + p.size() / 40) {
      const Face& f = p.face(i);
      if (f.dim == 0) continue;
      const auto gens = f.span.row_vectors();
      VertexId v = f.vertices[rng() % f.vertices.size()];
      std::vector<DartId> path;
      VertexId w = v;
      for (int step = 0; step < 6; ++step) {
        const auto s = f.star_at(g, w);
        path.push_back(s[rng() % s.size()]);
        w = g.dst(path.back());
      }
      for (DartId e : g.star(v)) {
        const LatticeVector diff = g.alpha(holonomy(g, path, e)) - g.alpha(e);
        CHECK(lattice::span_contains(gens, diff));
      }
    }
  }
}

TEST_CASE("Hall, simplex count and homology agree") {
  for (const auto& [name, g] : corpus()) {
    if (g.vertex_count() > 300) continue;
    CAPTURE(name);
    const FacePoset p = enumerate_faces(g, valence(g));
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.face(i).dim < 2 || !is_simplicial_below(p, i)) continue;
      const auto cx = order_complex(strict_lower_poset(p, i));
      const Integer chi = hall_euler(p, i);
      CHECK(chi == cx.reduced_euler());
      CHECK(chi == euler_from_homology(reduced_homology(cx)));
    }
  }
}

TEST_CASE("enumeration agrees with the brute-force oracle") {
  std::size_t checked = 0;
  for (const auto& [name, g] : corpus()) {
    if (g.vertex_count() > 40) continue;
    CAPTURE(name);
    const std::size_t n = valence(g);
    const FacePoset p = enumerate_faces(g, n);
    std::vector<std::pair<std::vector<VertexId>, std::vector<DartId>>> fast;
    for (const auto& f : p.faces()) fast.emplace_back(f.vertices, f.darts);
    std::sort(fast.begin(), fast.end());
    CHECK(fast == brute_force_faces(g, n));
    ++checked;
  }
  CHECK(checked >= 6);
}
