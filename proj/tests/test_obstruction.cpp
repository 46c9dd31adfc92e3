#include "corpus.hpp"
#include "gkm/io.hpp"

#include <doctest.h>

using namespace gkm;
using gkm::test::built;
using gkm::test::corpus;
using gkm::test::valence;

TEST_CASE("flag3 chords and certificate") {
  const GkmGraph g = builtin("flag3");
  const FacePoset p = enumerate_faces(g, 3);
  CHECK(p.f_vector() == std::vector<std::size_t>{6, 9, 3, 1});
  for (const auto& f : p.faces()) {
    if (f.dim != 2) continue;
    CHECK(f.vertices.size() == 6);
    const auto cr = chords(g, f);
    CHECK(cr.chords.size() == 6);
    CHECK(cr.non_chords.empty());
  }
  const std::string hash = content_hash(g);
  const auto cert = nonextendibility_certificate(g, p, hash);
  REQUIRE(cert);
  CHECK(replay_certificate(g, *cert, hash).empty());
  CHECK(replay_certificate(g, certificate_from_json(certificate_to_json(*cert)), hash).empty());
  CHECK(extension_space(g).dimension == 2);

  auto tampered = *cert;
  tampered.witnesses[0].path.pop_back();
  CHECK_FALSE(replay_certificate(g, tampered, hash).empty());
  CHECK_FALSE(replay_certificate(g, *cert, std::string(64, '0')).empty());
  auto missing = *cert;
  missing.witnesses.pop_back();
  CHECK_FALSE(replay_certificate(g, missing, hash).empty());
}

TEST_CASE("chord classification covers every transversal dart") {
  for (const auto& [name, g] : corpus()) {
    CAPTURE(name);
    const FacePoset p = enumerate_faces(g, std::min<std::size_t>(valence(g), 3));
    for (std::size_t i = 0; i < p.size(); i += 1 + p.size() / 60) {
      const Face& f = p.face(i);
      const auto cr = chords(g, f);
      std::size_t transversal = 0;
      for (VertexId v : f.vertices) transversal += g.star(v).size() - f.dim;
      CHECK(cr.chords.size() + cr.non_chords.size() == transversal);
      for (DartId e : cr.chords) {
        CHECK(f.contains_vertex(g.dst(e)));
        const auto w = chord_witness(g, f, e);
        if (!w) continue;
        CHECK(holonomy(g, *w, e) == g.reverse(e));
        CHECK(lattice::span_contains(f.span.row_vectors(), Integer(2) * g.alpha(e)));
      }
      for (DartId e : cr.non_chords) {
        CHECK_FALSE(f.contains_vertex(g.dst(e)));
        CHECK_THROWS_AS(chord_witness(g, f, e), std::invalid_argument);
      }
    }
  }
}

TEST_CASE("highly independent graphs have chordless low faces") {
  for (const auto& [name, g] : corpus()) {
    CAPTURE(name);
    const std::size_t indep = independence_level(g);
    if (indep < 3) continue;
    const std::size_t j = indep - 2;
    const FacePoset p = enumerate_faces(g, j);
    const auto rep = verify_chordless(g, p, j);
    CHECK(rep.pass());
    CHECK(rep.checked_faces > 0);
  }
  const GkmGraph flag = builtin("flag3");
  CHECK_FALSE(verify_chordless(flag, enumerate_faces(flag, 2), 1).precondition_met);
}

TEST_CASE("certificates agree with the extension space") {
  for (const auto& [name, g] : corpus()) {
    if (g.vertex_count() > 600) continue;
    CAPTURE(name);
    const FacePoset p = enumerate_faces(g, g.k());
    const auto cert = nonextendibility_certificate(g, p, content_hash(g));
    const auto ext = extension_space(g);
    CHECK(ext.dimension >= g.k());
    if (cert) CHECK(ext.dimension == g.k());
    if (valence(g) == g.k()) CHECK(ext.dimension == g.k());
  }
  const GkmGraph g = built(2, 1, 4);
  const FacePoset p = enumerate_faces(g, g.k());
  const auto cert = nonextendibility_certificate(g, p, content_hash(g));
  REQUIRE(cert);
  CHECK(replay_certificate(g, *cert, content_hash(g)).empty());
  CHECK(extension_space(g).dimension == 3);
}

TEST_CASE("extension basis solves the transport equations") {
  const GkmGraph g = builtin("flag3");
  const auto ext = extension_space(g);
  const auto c = congruence_constants(g);
  for (const auto& x : ext.basis)
    for (const auto& [key, ce] : c) {
      const auto [e, f] = key;
      CHECK(x[g.transport(e, f)] == x[f] + ce * x[e]);
    }
}

TEST_CASE("realizability obstruction") {
  for (const char* name : {"cube(1)", "cube(2)", "cube(3)", "cube(4)", "flag3"}) {
    CAPTURE(name);
    const GkmGraph g = builtin(name);
    for (const auto& o : realizability_check(g, enumerate_faces(g, valence(g)))) CHECK_FALSE(o.obstructed);
  }
  const GkmGraph g = built(2, 0, 2);
  const FacePoset p = enumerate_faces(g, 3);
  const auto top = p.whole_graph(g);
  REQUIRE(top);
  const auto entry = realizability_entry(p, *top);
  CHECK(entry.q == 3);
  CHECK(entry.chi == -1);
  CHECK(entry.obstructed);
  for (const auto& o : realizability_check(g, p)) {
    const bool sign_matches = o.chi != 0 && ((o.chi > 0) == (o.q % 2 == 0));
    CHECK(o.obstructed == sign_matches);
  }
}
