// Exact integer linear algebra over Z^k.
//
// Everything in this module works with arbitrary-precision integers; there is
// no floating point anywhere. Matrices are small (desk scale), so the
// algorithms are the textbook dense ones: Bareiss elimination for rank and
// determinant, row-style Hermite normal form for lattice bases, and the
// classical elimination loop for Smith normal form.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkm {

using Integer = boost::multiprecision::cpp_int;

class LatticeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An element of Z^k.
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t dim) : entries_(dim) {}
  explicit LatticeVector(std::vector<Integer> entries) : entries_(std::move(entries)) {}
  LatticeVector(std::initializer_list<long long> entries);

  /// The standard basis vector e_i (0-based) of Z^dim.
  static LatticeVector unit(std::size_t dim, std::size_t i, long long sign = 1);

  std::size_t dim() const { return entries_.size(); }
  const Integer& operator[](std::size_t i) const { return entries_[i]; }
  Integer& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Integer>& entries() const { return entries_; }

  bool is_zero() const;

  LatticeVector operator-() const;
  LatticeVector& operator+=(const LatticeVector& other);
  LatticeVector& operator-=(const LatticeVector& other);
  friend LatticeVector operator+(LatticeVector lhs, const LatticeVector& rhs) { return lhs += rhs; }
  friend LatticeVector operator-(LatticeVector lhs, const LatticeVector& rhs) { return lhs -= rhs; }
  friend LatticeVector operator*(const Integer& c, const LatticeVector& v);

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.entries_ == b.entries_; }
  friend bool operator!=(const LatticeVector& a, const LatticeVector& b) { return !(a == b); }
  friend bool operator<(const LatticeVector& a, const LatticeVector& b) { return a.entries_ < b.entries_; }

  /// "(1,0,-2)"
  std::string to_string() const;

 private:
  std::vector<Integer> entries_;
};

/// Dense row-major integer matrix.
class LatticeMatrix {
 public:
  LatticeMatrix() = default;
  LatticeMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  LatticeMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> data);
  LatticeMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  /// Matrix whose rows are the given vectors; `dim` is used when the list is empty.
  static LatticeMatrix from_rows(std::span<const LatticeVector> rows, std::optional<std::size_t> dim = {});
  /// Matrix whose columns are the given vectors.
  static LatticeMatrix from_columns(std::span<const LatticeVector> cols, std::optional<std::size_t> dim = {});
  static LatticeMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Integer& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Integer& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  LatticeVector row(std::size_t r) const;
  std::vector<LatticeVector> row_vectors() const;
  LatticeMatrix transposed() const;

  friend bool operator==(const LatticeMatrix& a, const LatticeMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

namespace lattice {

/// Rank over Q.
std::size_t rank(const LatticeMatrix& m);
std::size_t rank(std::span<const LatticeVector> vectors);

/// Determinant of a square matrix (fraction-free Bareiss elimination).
Integer determinant(const LatticeMatrix& m);

/// Hermite normal form basis of the Z-span of `generators`. The basis vectors
/// are the rows of the result: upper echelon, positive pivots, entries above a
/// pivot reduced into [0, pivot). The result depends only on the lattice.
/// `dim` must be given when `generators` is empty.
LatticeMatrix hermite_basis(std::span<const LatticeVector> generators, std::optional<std::size_t> dim = {});

/// Membership of v in the lattice whose Hermite basis is `basis`.
bool basis_contains(const LatticeMatrix& basis, const LatticeVector& v);

/// True iff v is an integer combination of the generators.
bool span_contains(std::span<const LatticeVector> generators, const LatticeVector& v);

/// Invariant factors d_1 | d_2 | ... of m; min(rows, cols) entries, trailing
/// zeros for rank deficiency.
std::vector<Integer> smith_diagonal(const LatticeMatrix& m);

/// v divided by the gcd of its entries. Throws on the zero vector.
LatticeVector primitive(const LatticeVector& v);

/// If residual = c * base for an integer c, returns c. `base` must be nonzero.
std::optional<Integer> exact_multiple(const LatticeVector& residual, const LatticeVector& base);

/// Basis of the rational null space {x : m x = 0}, each vector scaled to a
/// primitive integer vector. Deterministic: one vector per free column, in
/// column order, after reduction to reduced row echelon form.
std::vector<LatticeVector> nullspace(const LatticeMatrix& m);

}  // namespace lattice

/// Incrementally maintained row echelon form over Q with integer rows. Used
/// for large, redundant constraint systems with few unknowns.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t cols) : cols_(cols) {}

  /// Reduces `row` against the current basis and keeps the remainder if
  /// nonzero. Returns true when the rank grew.
  bool add(LatticeVector row);

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  LatticeMatrix matrix() const;

 private:
  std::size_t cols_;
  std::vector<LatticeVector> rows_;  // sorted by pivot column
  std::vector<std::size_t> pivots_;
};

std::string to_string(const Integer& value);

}  // namespace gkm
