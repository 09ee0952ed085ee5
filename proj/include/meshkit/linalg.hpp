#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "meshkit/errors.hpp"

namespace meshkit {

// Sparse vector over a field F: sorted (index, value) entries, no explicit
// zeros.
template <class F>
struct SparseVec {
  int dim = 0;
  std::vector<std::pair<int, F>> entries;

  bool is_zero() const { return entries.empty(); }

  void add_at(int idx, const F& c) {
    auto it = std::lower_bound(
        entries.begin(), entries.end(), idx,
        [](const std::pair<int, F>& e, int i) { return e.first < i; });
    if (it != entries.end() && it->first == idx) {
      it->second += c;
      if (it->second == F(0)) entries.erase(it);
    } else if (!(c == F(0))) {
      entries.insert(it, {idx, c});
    }
  }

  static SparseVec unit(int dim, int idx, const F& c = F(1)) {
    SparseVec v;
    v.dim = dim;
    if (!(c == F(0))) v.entries.push_back({idx, c});
    return v;
  }

  friend SparseVec operator+(const SparseVec& a, const SparseVec& b) {
    SparseVec r = a;
    for (auto& [i, c] : b.entries) r.add_at(i, c);
    return r;
  }

  SparseVec scaled(const F& c) const {
    SparseVec r;
    r.dim = dim;
    if (c == F(0)) return r;
    r.entries.reserve(entries.size());
    for (auto& [i, v] : entries) r.entries.push_back({i, v * c});
    return r;
  }

  // v -= c * other
  void axpy(const F& c, const SparseVec& other) {
    for (auto& [i, v] : other.entries) add_at(i, F(0) - c * v);
  }

  friend bool operator==(const SparseVec& a, const SparseVec& b) {
    return a.dim == b.dim && a.entries == b.entries;
  }
};

// A vector tagged with the ordered basis it is written in. Mixing handles in
// one elimination is a caller bug and rejected.
template <class F>
struct VectorInBasis {
  std::string basis;
  SparseVec<F> vec;
};

// Reduced row-echelon form. Rows are stored sorted by pivot column, each
// pivot normalized to 1 and cleared from every other row.
template <class F>
struct Echelon {
  int dim = 0;
  std::vector<int> pivots;           // ascending
  std::vector<SparseVec<F>> rows;    // rows[k] has pivot pivots[k]
  int rank() const { return static_cast<int>(rows.size()); }

  // Reduce v against the rows; the result has zero coordinates at every
  // pivot column.
  SparseVec<F> reduce(SparseVec<F> v) const {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      int p = pivots[k];
      auto it = std::lower_bound(
          v.entries.begin(), v.entries.end(), p,
          [](const std::pair<int, F>& e, int i) { return e.first < i; });
      if (it != v.entries.end() && it->first == p) {
        F c = it->second;
        v.axpy(c, rows[k]);
      }
    }
    return v;
  }
};

// Deterministic Gauss-Jordan: rows consumed in input order, pivot always the
// leftmost nonzero column of the reduced row. Exact over Rational and Fp.
template <class F>
Echelon<F> row_reduce(int dim, const std::vector<SparseVec<F>>& input) {
  Echelon<F> e;
  e.dim = dim;
  for (const auto& raw : input) {
    if (raw.dim != dim) throw DomainError("row_reduce: dimension mismatch");
    SparseVec<F> r = e.reduce(raw);
    if (r.is_zero()) continue;
    int p = r.entries.front().first;
    F lead = r.entries.front().second;
    r = r.scaled(F(1) / lead);
    // Clear the new pivot from existing rows.
    for (auto& row : e.rows) {
      for (auto& [i, c] : row.entries) {
        if (i == p) {
          F coef = c;  // copy: axpy mutates row.entries
          row.axpy(coef, r);
          break;
        }
        if (i > p) break;
      }
    }
    auto pos = std::lower_bound(e.pivots.begin(), e.pivots.end(), p);
    std::size_t k = static_cast<std::size_t>(pos - e.pivots.begin());
    e.pivots.insert(pos, p);
    e.rows.insert(e.rows.begin() + static_cast<long>(k), std::move(r));
  }
  return e;
}

template <class F>
Echelon<F> row_reduce(const std::vector<VectorInBasis<F>>& input) {
  if (input.empty()) return Echelon<F>{};
  const std::string& handle = input.front().basis;
  std::vector<SparseVec<F>> rows;
  rows.reserve(input.size());
  for (auto& v : input) {
    if (v.basis != handle) throw DomainError("row_reduce: mixed basis handles");
    rows.push_back(v.vec);
  }
  return row_reduce(input.front().vec.dim, rows);
}

template <class F>
struct MembershipResult {
  bool inside;
  SparseVec<F> residual;  // zero iff inside
};

template <class F>
MembershipResult<F> membership(const SparseVec<F>& v, const Echelon<F>& span) {
  if (v.dim != span.dim && span.rank() > 0)
    throw DomainError("membership: basis mismatch");
  SparseVec<F> r = span.reduce(v);
  return {r.is_zero(), std::move(r)};
}

}  // namespace meshkit
