// Finite posets, order complexes and reduced integral homology.

#pragma once

#include "gkm/lattice.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace gkm {

/// A finite poset on 0..size-1. The order is stored as strict up-sets and is
/// transitively closed on construction.
class Poset {
 public:
  Poset() = default;
  /// `less` lists pairs (x, y) with x < y; transitivity is filled in.
  Poset(std::size_t size, const std::vector<std::pair<std::size_t, std::size_t>>& less);
  /// Trusts that `up` (strict up-sets) is already transitively closed.
  static Poset from_closed(std::vector<std::vector<std::size_t>> up);

  std::size_t size() const { return up_.size(); }
  /// Elements strictly above x, ascending.
  const std::vector<std::size_t>& above(std::size_t x) const { return up_[x]; }
  const std::vector<std::size_t>& below(std::size_t x) const { return down_[x]; }
  bool less(std::size_t x, std::size_t y) const;

 private:
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::vector<std::size_t>> down_;
};

/// Order complex: simplices are chains, listed ascending in the poset order.
struct ChainComplexModel {
  /// simplices[q] holds the q-dimensional chains (q+1 elements each).
  std::vector<std::vector<std::vector<std::size_t>>> simplices;
  /// boundaries[q] maps q-chains to (q-1)-chains; boundaries[0] is the
  /// augmentation onto the empty chain. Sparse columns: row -> coefficient.
  std::vector<std::vector<std::map<std::size_t, int>>> boundaries;

  long top_dimension() const { return static_cast<long>(simplices.size()) - 1; }
  /// Alternating simplex count with the empty simplex contributing -1.
  Integer reduced_euler() const;
  /// Dense boundary matrix from dimension q to q-1 (q = 0 is the augmentation).
  LatticeMatrix boundary_matrix(std::size_t q) const;
};

ChainComplexModel order_complex(const Poset& p);

struct HomologyGroup {
  long degree = 0;
  std::size_t betti = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
};

/// Reduced homology in degrees -1 .. top dimension.
std::vector<HomologyGroup> reduced_homology(const ChainComplexModel& c);

/// Sum of (-1)^q betti_q.
Integer euler_from_homology(const std::vector<HomologyGroup>& h);

/// Rank and non-unit invariant factors of a sparse integer matrix given by
/// columns. Exposed for tests.
struct SparseSmithResult {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
};
SparseSmithResult sparse_smith(std::size_t rows, const std::vector<std::map<std::size_t, int>>& columns);

}  // namespace gkm
