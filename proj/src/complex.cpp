#include "gkm/complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gkm {

Poset::Poset(std::size_t size, const std::vector<std::pair<std::size_t, std::size_t>>& less) {
  std::vector<std::set<std::size_t>> up(size);
  for (auto [x, y] : less) {
    if (x >= size || y >= size) throw std::out_of_range("poset relation refers to an unknown element");
    if (x == y) throw std::invalid_argument("strict order relation is reflexive");
    up[x].insert(y);
  }
  // Transitive closure by repeated DFS; sizes are small.
  for (std::size_t x = 0; x < size; ++x) {
    std::vector<std::size_t> stack(up[x].begin(), up[x].end());
    std::set<std::size_t> reach;
    while (!stack.empty()) {
      std::size_t y = stack.back();
      stack.pop_back();
      if (!reach.insert(y).second) continue;
      for (std::size_t z : up[y]) stack.push_back(z);
    }
    if (reach.count(x)) throw std::invalid_argument("order relation has a cycle");
    up[x] = std::move(reach);
  }
  up_.resize(size);
  down_.resize(size);
  for (std::size_t x = 0; x < size; ++x) {
    up_[x].assign(up[x].begin(), up[x].end());
    for (std::size_t y : up_[x]) down_[y].push_back(x);
  }
}

Poset Poset::from_closed(std::vector<std::vector<std::size_t>> up) {
  Poset p;
  p.up_ = std::move(up);
  p.down_.resize(p.up_.size());
  for (std::size_t x = 0; x < p.up_.size(); ++x) {
    std::sort(p.up_[x].begin(), p.up_[x].end());
    for (std::size_t y : p.up_[x]) p.down_[y].push_back(x);
  }
  return p;
}

bool Poset::less(std::size_t x, std::size_t y) const {
  return std::binary_search(up_[x].begin(), up_[x].end(), y);
}

Integer ChainComplexModel::reduced_euler() const {
  Integer chi = -1;
  for (std::size_t q = 0; q < simplices.size(); ++q) {
    const Integer count = simplices[q].size();
    chi += (q % 2 == 0) ? count : Integer(-count);
  }
  return chi;
}

LatticeMatrix ChainComplexModel::boundary_matrix(std::size_t q) const {
  const std::size_t rows = q == 0 ? 1 : simplices[q - 1].size();
  LatticeMatrix m(rows, simplices[q].size());
  for (std::size_t c = 0; c < boundaries[q].size(); ++c)
    for (auto [r, v] : boundaries[q][c]) m.at(r, c) = v;
  return m;
}

ChainComplexModel order_complex(const Poset& p) {
  ChainComplexModel model;
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index;
  std::vector<std::size_t> chain;
  auto record = [&]() {
    const std::size_t q = chain.size() - 1;
    if (model.simplices.size() <= q) {
      model.simplices.resize(q + 1);
      index.resize(q + 1);
    }
    index[q].emplace(chain, model.simplices[q].size());
    model.simplices[q].push_back(chain);
  };
  // Depth-first over chains; each chain is visited exactly once.
  auto extend = [&](auto&& self) -> void {
    record();
    for (std::size_t y : p.above(chain.back())) {
      chain.push_back(y);
      self(self);
      chain.pop_back();
    }
  };
  for (std::size_t x = 0; x < p.size(); ++x) {
    chain.assign(1, x);
    extend(extend);
  }
  // Canonical ordering within each dimension.
  for (std::size_t q = 0; q < model.simplices.size(); ++q) {
    std::sort(model.simplices[q].begin(), model.simplices[q].end());
    index[q].clear();
    for (std::size_t i = 0; i < model.simplices[q].size(); ++i) index[q].emplace(model.simplices[q][i], i);
  }

  model.boundaries.resize(model.simplices.size());
  for (std::size_t q = 0; q < model.simplices.size(); ++q) {
    auto& cols = model.boundaries[q];
    cols.resize(model.simplices[q].size());
    for (std::size_t s = 0; s < model.simplices[q].size(); ++s) {
      if (q == 0) {
        cols[s][0] = 1;
        continue;
      }
      const auto& simplex = model.simplices[q][s];
      for (std::size_t i = 0; i < simplex.size(); ++i) {
        std::vector<std::size_t> face = simplex;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        cols[s][index[q - 1].at(face)] = (i % 2 == 0) ? 1 : -1;
      }
    }
  }
  return model;
}

SparseSmithResult sparse_smith(std::size_t rows, const std::vector<std::map<std::size_t, int>>& input) {
  std::vector<std::map<std::size_t, Integer>> cols(input.size());
  std::vector<std::set<std::size_t>> row_cols(rows);
  for (std::size_t c = 0; c < input.size(); ++c) {
    for (auto [r, v] : input[c]) {
      if (v == 0) continue;
      if (r >= rows) throw std::out_of_range("sparse matrix entry outside the row range");
      cols[c][r] = v;
      row_cols[r].insert(c);
    }
  }

  SparseSmithResult result;
  auto eliminate = [&](std::size_t r, std::size_t c) {
    const Integer p = cols[c].at(r);  // a unit, so p^{-1} = p
    const std::vector<std::size_t> others(row_cols[r].begin(), row_cols[r].end());
    for (std::size_t c2 : others) {
      if (c2 == c) continue;
      const Integer f = cols[c2].at(r) * p;
      for (const auto& [rr, v] : cols[c]) {
        Integer& target = cols[c2][rr];
        const bool was_zero = target == 0;
        target -= f * v;
        if (target == 0) {
          cols[c2].erase(rr);
          row_cols[rr].erase(c2);
        } else if (was_zero) {
          row_cols[rr].insert(c2);
        }
      }
    }
    for (const auto& [rr, v] : cols[c]) row_cols[rr].erase(c);
    cols[c].clear();
    ++result.rank;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].empty()) continue;
      std::size_t best = rows;
      for (const auto& [r, v] : cols[c]) {
        if (v != 1 && v != -1) continue;
        if (best == rows || row_cols[r].size() < row_cols[best].size()) best = r;
      }
      if (best == rows) continue;
      eliminate(best, c);
      progress = true;
    }
  }

  // Whatever is left has no unit entries; finish densely.
  std::vector<std::size_t> live_cols, live_rows;
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (!cols[c].empty()) live_cols.push_back(c);
  for (std::size_t r = 0; r < rows; ++r)
    if (!row_cols[r].empty()) live_rows.push_back(r);
  if (!live_cols.empty()) {
    LatticeMatrix m(live_rows.size(), live_cols.size());
    for (std::size_t j = 0; j < live_cols.size(); ++j)
      for (const auto& [r, v] : cols[live_cols[j]]) {
        const auto i = static_cast<std::size_t>(std::lower_bound(live_rows.begin(), live_rows.end(), r) - live_rows.begin());
        m.at(i, j) = v;
      }
    for (const auto& d : lattice::smith_diagonal(m)) {
      if (d == 0) continue;
      ++result.rank;
      if (d > 1) result.torsion.push_back(d);
    }
  }
  return result;
}

std::vector<HomologyGroup> reduced_homology(const ChainComplexModel& c) {
  const std::size_t top = c.simplices.size();
  // rank_of[q] = rank of the boundary out of dimension q (q = 0 is the augmentation).
  std::vector<SparseSmithResult> smith(top);
  for (std::size_t q = 0; q < top; ++q) {
    const std::size_t rows = q == 0 ? 1 : c.simplices[q - 1].size();
    smith[q] = sparse_smith(rows, c.boundaries[q]);
  }
  std::vector<HomologyGroup> out;
  // Degree -1: the empty simplex, killed by the augmentation when nonempty.
  {
    HomologyGroup h;
    h.degree = -1;
    const std::size_t incoming = top > 0 ? smith[0].rank : 0;
    h.betti = 1 - incoming;
    if (top > 0) h.torsion = smith[0].torsion;
    out.push_back(h);
  }
  for (std::size_t q = 0; q < top; ++q) {
    HomologyGroup h;
    h.degree = static_cast<long>(q);
    const std::size_t cycles = c.simplices[q].size() - smith[q].rank;
    const std::size_t boundaries = q + 1 < top ? smith[q + 1].rank : 0;
    h.betti = cycles - boundaries;
    if (q + 1 < top) h.torsion = smith[q + 1].torsion;
    out.push_back(h);
  }
  return out;
}

Integer euler_from_homology(const std::vector<HomologyGroup>& h) {
  Integer chi = 0;
  for (const auto& g : h) {
    const Integer b = g.betti;
    chi += (g.degree % 2 == 0) ? b : Integer(-b);
  }
  return chi;
}

}  // namespace gkm
