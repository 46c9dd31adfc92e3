#include "corpus.hpp"
#include "gkm/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace gkm;
using gkm::test::corpus;
using nlohmann::json;

TEST_CASE("documents round-trip with a stable hash") {
  for (const auto& [name, g] : corpus()) {
    CAPTURE(name);
    const json doc = graph_to_json(g);
    const GkmGraph back = graph_from_json(json::parse(doc.dump()));
    CHECK(content_hash(back) == content_hash(g));
    CHECK(graph_to_json(back).dump() == doc.dump());
    CHECK(doc["metadata"]["content_hash"] == content_hash(g));
  }
}

TEST_CASE("darts are ordered by source then target") {
  const GkmGraph g = builtin("torus(2,2)");
  for (DartId e = 1; e < g.dart_count(); ++e)
    CHECK(std::make_pair(g.src(e - 1), g.dst(e - 1)) < std::make_pair(g.src(e), g.dst(e)));
}

TEST_CASE("malformed documents") {
  const json good = graph_to_json(builtin("cube(2)"));
  auto bad = good;
  bad["format"] = "something-else";
  CHECK_THROWS_AS(graph_from_json(bad), DocumentError);
  bad = good;
  bad.erase("darts");
  CHECK_THROWS_AS(graph_from_json(bad), DocumentError);
  bad = good;
  bad["darts"][0]["reverse"] = 5;
  CHECK_THROWS_AS(graph_from_json(bad), StructuralError);
  bad = good;
  bad["darts"][0]["alpha"][0] = 7;
  CHECK_THROWS_AS(graph_from_json(bad), DocumentError);
  bad = good;
  bad["connection"][0]["pairs"][1][1] = bad["connection"][0]["pairs"][0][1];
  CHECK_THROWS_AS(graph_from_json(bad), StructuralError);
  bad = good;
  bad["darts"][0]["alpha"][0] = "1x";
  CHECK_THROWS_AS(graph_from_json(bad), DocumentError);
}

TEST_CASE("large integers serialize as strings") {
  Integer big = 1;
  for (int i = 0; i < 30; ++i) big *= 10;
  const json j = integer_to_json(big);
  CHECK(j.is_string());
  CHECK(integer_from_json(j) == big);
  CHECK(integer_to_json(Integer(-12)) == json(-12));
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("dot export is deterministic") {
  const GkmGraph g = builtin("flag3");
  const std::string a = export_dot(g);
  CHECK(a == export_dot(graph_from_json(graph_to_json(g))));
  CHECK(a.rfind("graph gkm {", 0) == 0);
  CHECK(std::count(a.begin(), a.end(), '\n') == 1 + 6 + 9 + 1);
}

TEST_CASE("output is written atomically") {
  const auto dir = std::filesystem::temp_directory_path() / "gkm_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "out.txt").string();
  write_output(path, "first\n");
  write_output(path, "second\n");
  CHECK(read_input(path) == "second\n");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  CHECK_THROWS_AS(read_input((dir / "missing").string()), DocumentError);
  std::filesystem::remove_all(dir);
}
