#include "gkm/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace gkm {

namespace {

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Floor division for integers of either sign.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

void remove_content(LatticeVector& v) {
  Integer g = 0;
  for (const auto& x : v.entries()) g = boost::multiprecision::gcd(g, x);
  if (g > 1) {
    for (std::size_t i = 0; i < v.dim(); ++i) v[i] /= g;
  }
}

}  // namespace

std::string to_string(const Integer& value) { return value.str(); }

LatticeVector::LatticeVector(std::initializer_list<long long> entries) {
  entries_.reserve(entries.size());
  for (long long x : entries) entries_.emplace_back(x);
}

LatticeVector LatticeVector::unit(std::size_t dim, std::size_t i, long long sign) {
  LatticeVector v(dim);
  v[i] = sign;
  return v;
}

bool LatticeVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
}

LatticeVector LatticeVector::operator-() const {
  LatticeVector out(*this);
  for (auto& x : out.entries_) x = -x;
  return out;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& other) {
  if (other.dim() != dim()) throw LatticeError("dimension mismatch in vector addition");
  for (std::size_t i = 0; i < dim(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& other) {
  if (other.dim() != dim()) throw LatticeError("dimension mismatch in vector subtraction");
  for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

LatticeVector operator*(const Integer& c, const LatticeVector& v) {
  LatticeVector out(v);
  for (auto& x : out.entries_) x *= c;
  return out;
}

std::string LatticeVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ',';
    os << entries_[i];
  }
  os << ')';
  return os.str();
}

LatticeMatrix::LatticeMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw LatticeError("matrix data size does not match shape");
}

LatticeMatrix::LatticeMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw LatticeError("ragged matrix literal");
    for (long long x : r) data_.emplace_back(x);
  }
}

LatticeMatrix LatticeMatrix::from_rows(std::span<const LatticeVector> rows, std::optional<std::size_t> dim) {
  if (rows.empty()) {
    if (!dim) throw LatticeError("empty generator list with unspecified dimension");
    return LatticeMatrix(0, *dim);
  }
  const std::size_t cols = rows.front().dim();
  if (dim && *dim != cols) throw LatticeError("generator dimension mismatch");
  LatticeMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].dim() != cols) throw LatticeError("generators do not share one dimension");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

LatticeMatrix LatticeMatrix::from_columns(std::span<const LatticeVector> cols, std::optional<std::size_t> dim) {
  return from_rows(cols, dim).transposed();
}

LatticeMatrix LatticeMatrix::identity(std::size_t n) {
  LatticeMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

LatticeVector LatticeMatrix::row(std::size_t r) const {
  std::vector<Integer> out(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                           data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  return LatticeVector(std::move(out));
}

std::vector<LatticeVector> LatticeMatrix::row_vectors() const {
  std::vector<LatticeVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

LatticeMatrix LatticeMatrix::transposed() const {
  LatticeMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

namespace lattice {

namespace {

// Bareiss elimination in place; returns the rank and leaves the last pivot
// (the determinant, up to sign, for a full-rank square matrix) in `last`.
std::size_t bareiss(LatticeMatrix& m, Integer* det_out) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Integer prev = 1;
  std::size_t rank = 0;
  int sign = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (m.at(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) {
      if (det_out) *det_out = 0;
      continue;
    }
    if (pivot != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
      sign = -sign;
    }
    const Integer p = m.at(rank, c);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const Integer f = m.at(r, c);
      for (std::size_t j = c; j < cols; ++j) {
        m.at(r, j) = (p * m.at(r, j) - f * m.at(rank, j)) / prev;
      }
    }
    prev = p;
    ++rank;
  }
  if (det_out) {
    if (rows == cols && rank == rows) {
      *det_out = sign * prev;
    } else {
      *det_out = 0;
    }
  }
  return rank;
}

}  // namespace

std::size_t rank(const LatticeMatrix& m) {
  LatticeMatrix copy = m;
  return bareiss(copy, nullptr);
}

std::size_t rank(std::span<const LatticeVector> vectors) {
  if (vectors.empty()) return 0;
  return rank(LatticeMatrix::from_rows(vectors));
}

Integer determinant(const LatticeMatrix& m) {
  if (m.rows() != m.cols()) throw LatticeError("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  LatticeMatrix copy = m;
  Integer det;
  bareiss(copy, &det);
  return det;
}

LatticeMatrix hermite_basis(std::span<const LatticeVector> generators, std::optional<std::size_t> dim) {
  LatticeMatrix m = LatticeMatrix::from_rows(generators, dim);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(a, j), m.at(b, j));
  };
  std::size_t p = 0;
  for (std::size_t c = 0; c < cols && p < rows; ++c) {
    // Euclid on column c among rows p..rows-1.
    while (true) {
      std::size_t best = rows;
      for (std::size_t r = p; r < rows; ++r) {
        if (m.at(r, c) == 0) continue;
        if (best == rows || abs_value(m.at(r, c)) < abs_value(m.at(best, c))) best = r;
      }
      if (best == rows) break;
      swap_rows(p, best);
      bool done = true;
      for (std::size_t r = p + 1; r < rows; ++r) {
        if (m.at(r, c) == 0) continue;
        const Integer q = floor_div(m.at(r, c), m.at(p, c));
        for (std::size_t j = c; j < cols; ++j) m.at(r, j) -= q * m.at(p, j);
        if (m.at(r, c) != 0) done = false;
      }
      if (done) break;
    }
    if (m.at(p, c) == 0) continue;
    if (m.at(p, c) < 0) {
      for (std::size_t j = c; j < cols; ++j) m.at(p, j) = -m.at(p, j);
    }
    for (std::size_t r = 0; r < p; ++r) {
      const Integer q = floor_div(m.at(r, c), m.at(p, c));
      if (q == 0) continue;
      for (std::size_t j = c; j < cols; ++j) m.at(r, j) -= q * m.at(p, j);
    }
    ++p;
  }
  LatticeMatrix out(p, cols);
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t j = 0; j < cols; ++j) out.at(r, j) = m.at(r, j);
  return out;
}

bool basis_contains(const LatticeMatrix& basis, const LatticeVector& v) {
  if (v.dim() != basis.cols()) throw LatticeError("dimension mismatch in span membership");
  LatticeVector rest = v;
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    std::size_t c = 0;
    while (c < basis.cols() && basis.at(r, c) == 0) ++c;
    // Everything left of the pivot must already be cleared.
    for (std::size_t j = 0; j < c; ++j)
      if (rest[j] != 0) return false;
    if (rest[c] % basis.at(r, c) != 0) return false;
    const Integer q = rest[c] / basis.at(r, c);
    if (q != 0) {
      for (std::size_t j = c; j < basis.cols(); ++j) rest[j] -= q * basis.at(r, j);
    }
  }
  return rest.is_zero();
}

bool span_contains(std::span<const LatticeVector> generators, const LatticeVector& v) {
  for (const auto& g : generators)
    if (g.dim() != v.dim()) throw LatticeError("dimension mismatch in span membership");
  return basis_contains(hermite_basis(generators, v.dim()), v);
}

std::vector<Integer> smith_diagonal(const LatticeMatrix& input) {
  LatticeMatrix m = input;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t n = std::min(rows, cols);
  std::vector<Integer> diag(n);
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(a, j), m.at(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(m.at(i, a), m.at(i, b));
  };
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block goes to (t, t).
      std::size_t br = rows, bc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m.at(i, j) != 0 && (br == rows || abs_value(m.at(i, j)) < abs_value(m.at(br, bc)))) {
            br = i;
            bc = j;
          }
      if (br == rows) {
        // Trailing block is zero: remaining factors are zero.
        return diag;
      }
      swap_rows(t, br);
      swap_cols(t, bc);
      const Integer p = m.at(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m.at(i, t) == 0) continue;
        const Integer q = floor_div(m.at(i, t), p);
        for (std::size_t j = t; j < cols; ++j) m.at(i, j) -= q * m.at(t, j);
        if (m.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m.at(t, j) == 0) continue;
        const Integer q = floor_div(m.at(t, j), p);
        for (std::size_t i = t; i < rows; ++i) m.at(i, j) -= q * m.at(i, t);
        if (m.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into row t and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m.at(i, j) % p != 0) {
            for (std::size_t jj = t; jj < cols; ++jj) m.at(t, jj) += m.at(i, jj);
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag[t] = abs_value(m.at(t, t));
  }
  return diag;
}

LatticeVector primitive(const LatticeVector& v) {
  if (v.is_zero()) throw LatticeError("primitive part of the zero vector");
  LatticeVector out = v;
  remove_content(out);
  return out;
}

std::optional<Integer> exact_multiple(const LatticeVector& residual, const LatticeVector& base) {
  if (residual.dim() != base.dim()) throw LatticeError("dimension mismatch in exact_multiple");
  std::size_t i = 0;
  while (i < base.dim() && base[i] == 0) ++i;
  if (i == base.dim()) throw LatticeError("exact_multiple against the zero vector");
  if (residual[i] % base[i] != 0) return std::nullopt;
  Integer c = residual[i] / base[i];
  for (std::size_t j = 0; j < base.dim(); ++j)
    if (residual[j] != c * base[j]) return std::nullopt;
  return c;
}

std::vector<LatticeVector> nullspace(const LatticeMatrix& m) {
  RowEchelon ech(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) ech.add(m.row(r));
  LatticeMatrix e = ech.matrix();
  const std::size_t cols = m.cols();
  // Reduced echelon form, fraction free.
  std::vector<std::size_t> pivot_col(e.rows());
  for (std::size_t r = 0; r < e.rows(); ++r) {
    std::size_t c = 0;
    while (e.at(r, c) == 0) ++c;
    pivot_col[r] = c;
  }
  for (std::size_t r = 0; r < e.rows(); ++r) {
    const std::size_t c = pivot_col[r];
    for (std::size_t s = 0; s < e.rows(); ++s) {
      if (s == r || e.at(s, c) == 0) continue;
      const Integer a = e.at(r, c);
      const Integer b = e.at(s, c);
      for (std::size_t j = 0; j < cols; ++j) e.at(s, j) = a * e.at(s, j) - b * e.at(r, j);
      LatticeVector row = e.row(s);
      remove_content(row);
      for (std::size_t j = 0; j < cols; ++j) e.at(s, j) = row[j];
    }
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  Integer lcm = 1;
  for (std::size_t r = 0; r < e.rows(); ++r) {
    const Integer p = abs_value(e.at(r, pivot_col[r]));
    lcm = lcm / boost::multiprecision::gcd(lcm, p) * p;
  }
  std::vector<LatticeVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    LatticeVector v(cols);
    v[f] = lcm;
    for (std::size_t r = 0; r < e.rows(); ++r) {
      v[pivot_col[r]] = -e.at(r, f) * (lcm / e.at(r, pivot_col[r]));
    }
    basis.push_back(primitive(v));
  }
  return basis;
}

}  // namespace lattice

bool RowEchelon::add(LatticeVector row) {
  if (row.dim() != cols_) throw LatticeError("row length mismatch in echelon form");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t c = pivots_[i];
    if (row[c] == 0) continue;
    const Integer a = rows_[i][c];
    const Integer b = row[c];
    const Integer g = boost::multiprecision::gcd(a, b);
    const Integer ma = a / g;
    const Integer mb = b / g;
    for (std::size_t j = 0; j < cols_; ++j) row[j] = ma * row[j] - mb * rows_[i][j];
  }
  if (row.is_zero()) return false;
  remove_content(row);
  std::size_t c = 0;
  while (row[c] == 0) ++c;
  if (row[c] < 0) row = -row;
  // Insert keeping pivots sorted; earlier rows already have zeros in column c
  // only if their pivot precedes c, which is the echelon invariant we rely on
  // for subsequent reductions, so reduce existing rows with later pivots too.
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), c);
  const auto idx = static_cast<std::size_t>(pos - pivots_.begin());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i][c] == 0) continue;
    const Integer a = row[c];
    const Integer b = rows_[i][c];
    const Integer g = boost::multiprecision::gcd(a, b);
    for (std::size_t j = 0; j < cols_; ++j) rows_[i][j] = (a / g) * rows_[i][j] - (b / g) * row[j];
    remove_content(rows_[i]);
  }
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(row));
  pivots_.insert(pos, c);
  return true;
}

LatticeMatrix RowEchelon::matrix() const { return LatticeMatrix::from_rows(rows_, cols_); }

}  // namespace gkm
