// Faces, face closure and enumeration, the face poset and its Euler
// characteristic.

#pragma once

#include "gkm/complex.hpp"
#include "gkm/graph.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gkm {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Face {
  std::vector<VertexId> vertices;  // ascending
  std::vector<DartId> darts;       // ascending
  std::size_t dim = 0;
  LatticeMatrix span;              // Hermite basis of the label span
  std::string key;                 // "<min vertex>:<star darts at it>"

  bool contains_vertex(VertexId v) const;
  bool contains_dart(DartId e) const;
  std::vector<DartId> star_at(const GkmGraph& g, VertexId v) const;
  std::size_t span_rank() const { return span.rows(); }
};

/// Closure that did not come out |seed|-regular.
struct ClosureReport {
  std::size_t seed_size = 0;
  std::vector<VertexId> vertices;
  std::vector<DartId> darts;
  std::map<VertexId, std::size_t> star_sizes;  // vertices whose star grew past seed_size
  bool aborted = false;                        // stopped at the first oversized star
};

using ClosureResult = std::variant<Face, ClosureReport>;

/// Least connection-closed dart set containing `seed` (all darts leaving v).
/// With `early_abort` the fixed point stops as soon as some star exceeds the
/// seed size.
ClosureResult face_closure(const GkmGraph& g, VertexId v, const std::vector<DartId>& seed, bool early_abort = false);

/// Builds a Face record from a connection-closed regular dart set.
Face make_face(const GkmGraph& g, std::vector<VertexId> vertices, std::vector<DartId> darts, std::size_t dim);

/// The 0-face {v}.
Face vertex_face(const GkmGraph& g, VertexId v);

std::string face_key(VertexId v, const std::vector<DartId>& star);

class FacePoset {
 public:
  FacePoset() = default;
  explicit FacePoset(std::vector<Face> faces);

  std::size_t size() const { return faces_.size(); }
  const Face& face(std::size_t i) const { return faces_[i]; }
  const std::vector<Face>& faces() const { return faces_; }
  std::optional<std::size_t> find(const std::string& key) const;
  /// Faces strictly below / above face i, ascending.
  const std::vector<std::size_t>& below(std::size_t i) const { return order_.below(i); }
  const std::vector<std::size_t>& above(std::size_t i) const { return order_.above(i); }
  bool less(std::size_t i, std::size_t j) const { return order_.less(i, j); }
  const Poset& order() const { return order_; }
  /// f[q] = number of q-dimensional faces.
  std::vector<std::size_t> f_vector() const;
  std::size_t max_dim() const;
  /// The whole graph, when it is a face and was enumerated.
  std::optional<std::size_t> whole_graph(const GkmGraph& g) const;

 private:
  std::vector<Face> faces_;  // sorted by (dim, key)
  std::map<std::string, std::size_t> index_;
  Poset order_;
};

/// All faces of dimension <= max_dim. Throws BudgetExceeded once more than
/// `budget` faces have been found (0 = unlimited).
FacePoset enumerate_faces(const GkmGraph& g, std::size_t max_dim, std::size_t budget = 0);

std::size_t completeness_level(const GkmGraph& g, const FacePoset& poset);

/// The interval [lower, upper] as a poset; `members` receives the face
/// indices in the order used by the result.
Poset interval(const FacePoset& poset, std::size_t lower, std::size_t upper, std::vector<std::size_t>* members = nullptr);

bool is_simplicial_below(const FacePoset& poset, std::size_t top);

/// Faces strictly below `top`, as a poset (the order complex is the same for
/// the opposite order).
Poset strict_lower_poset(const FacePoset& poset, std::size_t top, std::vector<std::size_t>* members = nullptr);

/// P. Hall's formula over the faces strictly below `top`. Throws
/// std::domain_error when the lower poset is not simplicial.
Integer hall_euler(const FacePoset& poset, std::size_t top);

/// Independent reference enumeration: naive global fixed point from every
/// (vertex, star subset) seed plus explicit connectivity, regularity and
/// closure checks. Returns (vertex set, dart set) pairs, sorted.
std::vector<std::pair<std::vector<VertexId>, std::vector<DartId>>> brute_force_faces(const GkmGraph& g, std::size_t max_dim);

}  // namespace gkm
