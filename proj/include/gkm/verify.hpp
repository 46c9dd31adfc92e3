// Lemma- and theorem-level verification harnesses.

#pragma once

#include "gkm/constructions.hpp"
#include "gkm/obstruction.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace gkm {

struct LemmaReport {
  std::string lemma;
  nlohmann::json parameters;
  nlohmann::json expected;
  nlohmann::json observed;
  std::vector<std::string> notes;
  bool pass = false;
  double millis = 0;

  /// Timing is left out unless asked for, so reports are byte-stable.
  nlohmann::json to_json(bool with_timing = false) const;
  std::string to_text() const;
};

/// Default face-count budget for the harnesses.
inline constexpr std::size_t kDefaultFaceBudget = 200000;

/// Closed formula for the number of q-faces of torus(d, a).
Integer face_count_formula(int d, long long a, int q);
/// (-1)^d (2a^d - (2a-1)^d).
Integer euler_formula(int d, long long a);

LemmaReport verify_face_counts(int d, long long a, std::size_t budget = kDefaultFaceBudget);
LemmaReport verify_euler(int d, long long a, std::size_t budget = kDefaultFaceBudget);
/// J holds 1-based coordinate indices.
LemmaReport verify_projection(int d, long long a, const std::vector<int>& J, std::size_t budget = kDefaultFaceBudget);
LemmaReport main_theorem_report(int d, int r, int search_bound = 3, std::size_t budget = kDefaultFaceBudget);

}  // namespace gkm
