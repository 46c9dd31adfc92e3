// The cube-diagonal graphs, their chordal enrichments and finite quotients,
// parameter search, and builtin example graphs.
//
// Coordinates are scaled by 6. An integer-cube vertex is 6x + s and a
// half-cube vertex is 6x + 3 + s with s in {±1}^d; the quotient reduces every
// coordinate modulo 6a.

#pragma once

#include "gkm/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gkm {

class BuildError : public std::runtime_error {
 public:
  BuildError(const std::string& what, std::optional<ValidationReport> report = std::nullopt)
      : std::runtime_error(what), report(std::move(report)) {}
  std::optional<ValidationReport> report;
};

enum class PredicateStrategy { PaperLiteral, RegularityScaled };

std::string to_string(PredicateStrategy s);
PredicateStrategy parse_strategy(const std::string& s);

struct ConstructionConfig {
  int d = 2;
  int r = 0;
  long long a = 1;
  std::vector<Integer> t;                       // d+1 entries; required for r >= 2
  std::optional<PredicateStrategy> strategy;    // default: paper-literal for odd d
  std::optional<bool> primitivize;              // default: on for r >= 2

  PredicateStrategy effective_strategy() const;
  bool effective_primitivize() const;
  /// Throws BuildError when the invariants fail.
  void check() const;
  nlohmann::json to_json() const;
};

struct LatticePoint {
  std::vector<long long> coords;  // scaled, reduced into [0, 6a)
  bool half = false;
  std::vector<int> signs;         // s for integer cubes, σ for half cubes

  /// Center of the associated integer cube (along the diagonal for half cubes).
  std::vector<long long> integer_center() const;
  /// Scaled center of Cube(v).
  std::vector<long long> scaled_center() const;
};

LatticePoint decode_point(const std::vector<long long>& scaled);

/// Dart kinds: 0..d-1 axis, d diagonal, d+j chord family j (1-based j).
struct Construction {
  ConstructionConfig config;
  std::vector<LatticePoint> points;  // indexed by vertex id
  std::vector<int> kind;             // indexed by dart id
  GkmGraph graph;
};

/// Builds without the final validation.
Construction construct(const ConstructionConfig& config);

/// Builds and validates; throws BuildError carrying the report on failure.
GkmGraph build(const ConstructionConfig& config);

int epsilon(const ConstructionConfig& config, int i, int j, const LatticePoint& v);

struct Automorphism {
  std::vector<VertexId> vertex_map;
  std::vector<DartId> dart_map;
};

/// Translation by a scaled offset in 6Z^d or 6Z^d + 3(1,…,1). Throws
/// std::invalid_argument for other offsets and std::domain_error when the
/// translation does not map the edge set onto itself.
Automorphism translate(const Construction& c, const std::vector<long long>& scaled_offset);

class ParameterSearchExhausted : public std::runtime_error {
 public:
  ParameterSearchExhausted(const std::string& what, std::size_t best) : std::runtime_error(what), best_level(best) {}
  std::size_t best_level;
};

/// First t (by max-norm shell, then lexicographic) making the quotient
/// (d+1)-independent. Empty for r <= 1.
std::vector<Integer> find_parameters(int d, int r, long long a, int bound,
                                     std::optional<PredicateStrategy> strategy = std::nullopt);

/// "cube(d)", "torus(d,a)" or "flag3".
GkmGraph builtin(const std::string& name);

/// The flag graph with labels only (no connection).
GkmGraph flag3_unconnected();

/// Helper for callers that build graphs from undirected edge lists: sorts
/// darts by (src, dst) and connects each star by the given dart kinds, which
/// must be unique per star.
struct EdgeSpec {
  VertexId u;
  VertexId v;
  LatticeVector alpha;  // label of the dart u -> v
  int kind;
};
GkmGraph assemble(std::size_t k, std::vector<std::vector<Integer>> coords, const std::vector<EdgeSpec>& edges,
                  nlohmann::json config, std::vector<int>* dart_kinds = nullptr);

}  // namespace gkm
