#include "gkm/verify.hpp"

#include <doctest.h>

using namespace gkm;

TEST_CASE("closed formulas") {
  CHECK(face_count_formula(2, 2, 0) == 32);
  CHECK(face_count_formula(2, 2, 3) == 1);
  CHECK(euler_formula(2, 2) == -1);
  CHECK(euler_formula(2, 3) == -7);
  CHECK(euler_formula(3, 2) == 11);
  CHECK(euler_formula(2, 4) == -17);
  for (int d = 1; d <= 4; ++d) CHECK(euler_formula(d, 1) == (d % 2 ? -1 : 1));
}

TEST_CASE("lemma harnesses") {
  CHECK(verify_face_counts(2, 2).pass);
  CHECK(verify_face_counts(2, 3).pass);
  CHECK(verify_euler(2, 2).pass);
  CHECK(verify_euler(2, 3).pass);
  for (int d = 1; d <= 3; ++d) CHECK(verify_euler(d, 1).pass);
  CHECK(verify_projection(2, 2, {1}).pass);
  CHECK(verify_projection(3, 2, {1, 3}).pass);
}

TEST_CASE("reports are reproducible") {
  const auto a = verify_euler(2, 3);
  const auto b = verify_euler(2, 3);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.to_text() == b.to_text());
  CHECK_FALSE(a.to_json().contains("millis"));
  CHECK(a.to_json(true).contains("millis"));
}

TEST_CASE("budget refusal") {
  CHECK_THROWS_AS(verify_face_counts(3, 2, 100), BudgetExceeded);
}

TEST_CASE("main theorem at small parameters") {
  CHECK(main_theorem_report(2, 0).pass);
  const auto r = main_theorem_report(2, 1);
  CHECK(r.pass);
}
