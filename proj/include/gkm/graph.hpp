// GKM-graph data model, axiom validation, congruence constants, holonomy,
// independence and connection inference.

#pragma once

#include "gkm/lattice.hpp"

#include <json.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gkm {

using VertexId = std::size_t;
using DartId = std::size_t;

/// Raised when the graph itself is malformed (as opposed to failing an axiom).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Dart {
  VertexId src = 0;
  VertexId dst = 0;
  DartId reverse = 0;
  LatticeVector alpha;
};

/// For every dart e, connection[e][p] is the dart of str(t(e)) that the
/// p-th dart of str(i(e)) is sent to.
using Connection = std::vector<std::vector<DartId>>;

class GkmGraph {
 public:
  /// Checks the structural invariants and throws StructuralError on any
  /// violation. `coords` is either empty or has one entry per vertex.
  GkmGraph(std::size_t k, std::size_t vertex_count, std::vector<Dart> darts, std::optional<Connection> connection,
           std::vector<std::vector<Integer>> coords = {}, nlohmann::json config = nullptr);

  std::size_t k() const { return k_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t dart_count() const { return darts_.size(); }
  const Dart& dart(DartId e) const { return darts_[e]; }
  const std::vector<Dart>& darts() const { return darts_; }
  VertexId src(DartId e) const { return darts_[e].src; }
  VertexId dst(DartId e) const { return darts_[e].dst; }
  DartId reverse(DartId e) const { return darts_[e].reverse; }
  const LatticeVector& alpha(DartId e) const { return darts_[e].alpha; }

  /// Darts leaving v, ascending by id.
  const std::vector<DartId>& star(VertexId v) const { return stars_[v]; }
  /// Position of e inside star(src(e)).
  std::size_t star_position(DartId e) const { return star_pos_[e]; }
  /// Dart from u to v, if any.
  std::optional<DartId> find_dart(VertexId u, VertexId v) const;

  bool has_connection() const { return connection_.has_value(); }
  const Connection& connection() const;
  /// ∇_e(f) for f in str(i(e)).
  DartId transport(DartId e, DartId f) const;

  const std::vector<std::vector<Integer>>& coords() const { return coords_; }
  const nlohmann::json& config() const { return config_; }

  /// Same graph with a different (or no) connection.
  GkmGraph with_connection(std::optional<Connection> connection) const;
  /// Same graph with replaced labels.
  GkmGraph with_alpha(const std::vector<LatticeVector>& alpha) const;

 private:
  std::size_t k_;
  std::size_t vertex_count_;
  std::vector<Dart> darts_;
  std::optional<Connection> connection_;
  std::vector<std::vector<Integer>> coords_;
  nlohmann::json config_;
  std::vector<std::vector<DartId>> stars_;
  std::vector<std::size_t> star_pos_;
};

struct AxiomResult {
  bool pass = true;
  std::vector<DartId> offending_darts;     // for opposite-sign and congruence
  std::vector<VertexId> offending_vertices;  // for rank and regularity
};

/// (e, e′) with common source -> c_e(e′).
using CongruenceTable = std::map<std::pair<DartId, DartId>, Integer>;

struct ValidationReport {
  AxiomResult rank;
  AxiomResult opposite_sign;
  AxiomResult congruence;
  AxiomResult regularity;
  std::vector<std::size_t> valence;  // per vertex
  std::size_t n = 0;                 // common valence, when regular
  std::size_t k = 0;
  CongruenceTable constants;          // pairs that passed
  std::optional<bool> inverse_transport;  // whether ∇_ē = ∇_e^{-1}; unset without a connection

  bool pass() const { return rank.pass && opposite_sign.pass && congruence.pass && regularity.pass; }
};

ValidationReport validate(const GkmGraph& g);

/// Throws std::domain_error when some pair fails the congruence condition.
CongruenceTable congruence_constants(const GkmGraph& g);

/// The integer c with α(∇_e f) = α(f) + c·α(e), if it exists.
std::optional<Integer> congruence_constant(const GkmGraph& g, DartId e, DartId f);

std::size_t independence_level(const GkmGraph& g);

/// Π_γ(e). Throws std::invalid_argument on a non-composable path or when e
/// does not start where γ starts.
DartId holonomy(const GkmGraph& g, const std::vector<DartId>& path, DartId e);

struct ConnectionInference {
  std::optional<Connection> connection;
  std::vector<DartId> ambiguous;   // darts with more than one valid matching
  std::vector<DartId> infeasible;  // darts with no valid matching
};

/// Derives ∇ from α by the congruence condition.
ConnectionInference infer_connection(const GkmGraph& g);

}  // namespace gkm
