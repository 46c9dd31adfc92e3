// Chords, holonomy witnesses, non-extendibility certificates, the extension
// space, and the Euler-characteristic sign obstruction.

#pragma once

#include "gkm/faces.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gkm {

struct ChordReport {
  std::vector<DartId> chords;      // transversal darts with both ends in the face
  std::vector<DartId> non_chords;  // remaining transversal darts
};

ChordReport chords(const GkmGraph& g, const Face& f);

struct ChordlessReport {
  bool precondition_met = false;
  std::size_t independence = 0;
  std::size_t checked_faces = 0;
  std::vector<std::string> violations;  // keys of faces with chords
  bool pass() const { return precondition_met && violations.empty(); }
};

/// Every face of dimension 1..j is chordless; requires independence >= j+2.
ChordlessReport verify_chordless(const GkmGraph& g, const FacePoset& poset, std::size_t j);

/// Shortest edge path γ in f from i(e) to t(e) with Π_γ(e) = ē, breadth
/// first, first found wins. `max_length` 0 means 2·|V_f|. Throws
/// std::invalid_argument when e is not a chord of f.
std::optional<std::vector<DartId>> chord_witness(const GkmGraph& g, const Face& f, DartId e, std::size_t max_length = 0);

struct Witness {
  DartId dart;
  std::vector<DartId> path;
};

struct NonextendibilityCertificate {
  std::string graph_hash;
  std::string face_key;
  VertexId base_vertex = 0;
  std::vector<DartId> face_star;  // star of the face at base_vertex
  std::size_t k = 0;
  std::vector<Witness> witnesses;
  std::string verdict;
};

/// Searches k-faces of rank k all of whose transversal darts are chords with
/// witnesses.
std::optional<NonextendibilityCertificate> nonextendibility_certificate(const GkmGraph& g, const FacePoset& poset,
                                                                        const std::string& graph_hash);

/// Recomputes everything the certificate claims from the graph alone.
/// Returns an empty string on success, else the first failure.
std::string replay_certificate(const GkmGraph& g, const NonextendibilityCertificate& cert,
                               const std::string& graph_hash);

struct ExtensionSpace {
  std::size_t dimension = 0;
  VertexId root = 0;
  /// Basis of solutions, each given by its values on every dart.
  std::vector<std::vector<Integer>> basis;
};

/// Rational solutions x: darts -> Q of x(∇_e f) = x(f) + c_e(f) x(e). Throws
/// std::domain_error when congruence fails and std::invalid_argument on a
/// disconnected graph.
ExtensionSpace extension_space(const GkmGraph& g);

struct RealizabilityObstruction {
  std::string face_key;
  std::size_t q = 0;
  Integer chi;
  std::string required;  // "0 or +" / "0 or -"
  bool obstructed = false;
};

/// One entry per eligible face (dimension >= 2, span rank = dimension, and
/// independence >= dimension + 1, or the whole graph when n = k =
/// independence).
std::vector<RealizabilityObstruction> realizability_check(const GkmGraph& g, const FacePoset& poset);

RealizabilityObstruction realizability_entry(const FacePoset& poset, std::size_t face);

}  // namespace gkm
