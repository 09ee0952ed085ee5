#pragma once

#include <climits>
#include <deque>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>
#include <vector>

#include "meshkit/linalg.hpp"
#include "meshkit/quiver.hpp"

namespace meshkit {

inline std::string path_key(const Path& p) {
  std::string k = p.start;
  for (const ArrowId& a : p.arrows) {
    k += ',';
    k += a;
  }
  return k;
}

// Degree-n hom space of the mesh category: paths x -> y of length n modulo
// the embedded mesh relations. `exact` is false when the truncation window
// could have cut off paths or relations (see MeshEngine::is_exact).
template <class F>
struct HomSpace {
  VertexId x, y;
  int n = 0;
  std::vector<Path> basis;  // lex order, from enumerate_paths
  std::map<std::string, int> index;
  Echelon<F> relations;
  int quotient_dim = 0;
  bool exact = false;
  std::string handle;

  int column_of(const Path& p) const {
    auto it = index.find(path_key(p));
    if (it == index.end())
      throw DomainError("hom space has no basis path " + path_key(p));
    return it->second;
  }
};

// A residue class in a fixed hom space, stored as the unique normal form
// against the reduced relation rows.
template <class F>
struct ClassVector {
  std::shared_ptr<const HomSpace<F>> space;
  SparseVec<F> normal_form;

  bool is_zero() const { return normal_form.is_zero(); }
  int degree() const { return space->n; }
};

// Hom space engine with a memo table per (x, y, n). All queries are pure
// given the immutable quiver; the memo table is the only shared state.
template <class F>
class MeshEngine {
 public:
  explicit MeshEngine(const TranslationQuiver& q) : q_(q) {
    // Directed distances to and from the frontier, for the exactness rule.
    std::deque<VertexId> queue;
    for (auto& [v, inf] : q.vertices) {
      if (!inf.frontier) continue;
      has_frontier_ = true;
      to_frontier_[v] = 0;
      from_frontier_[v] = 0;
      queue.push_back(v);
    }
    std::deque<VertexId> q2 = queue;
    while (!queue.empty()) {  // walk arrows backwards: distance v -> frontier
      VertexId v = queue.front();
      queue.pop_front();
      for (const ArrowId& a : q.in_arrows(v)) {
        const VertexId& u = q.arrow(a).source;
        if (!to_frontier_.count(u)) {
          to_frontier_[u] = to_frontier_[v] + 1;
          queue.push_back(u);
        }
      }
    }
    while (!q2.empty()) {  // forwards: distance frontier -> v
      VertexId v = q2.front();
      q2.pop_front();
      for (const ArrowId& a : q.out_arrows(v)) {
        const VertexId& u = q.arrow(a).target;
        if (!from_frontier_.count(u)) {
          from_frontier_[u] = from_frontier_[v] + 1;
          q2.push_back(u);
        }
      }
    }
  }

  const TranslationQuiver& quiver() const { return q_; }

  // No degree-n path from x to y can touch the frontier: every such visit
  // costs at least dist(x -> frontier) + dist(frontier -> y) steps. Then all
  // paths and all embeddable mesh relations lie in the validated interior
  // and the truncated dimension equals the untruncated one.
  bool is_exact(const VertexId& x, const VertexId& y, int n) const {
    if (!has_frontier_) return true;
    auto it = to_frontier_.find(x);
    auto jt = from_frontier_.find(y);
    long dx = it == to_frontier_.end() ? LONG_MAX / 4 : it->second;
    long dy = jt == from_frontier_.end() ? LONG_MAX / 4 : jt->second;
    return dx + dy > n;
  }

  std::vector<VectorInBasis<F>> relation_generators(const VertexId& x,
                                                    const VertexId& y, int n) {
    if (n < 2) throw DomainError("relation_generators: need degree >= 2");
    std::shared_ptr<const HomSpace<F>> hs = hom_space(x, y, n);
    std::vector<VectorInBasis<F>> out;
    for (auto& row : raw_relations(x, y, n, *hs))
      out.push_back({hs->handle, std::move(row)});
    return out;
  }

  std::shared_ptr<const HomSpace<F>> hom_space(const VertexId& x,
                                               const VertexId& y, int n) {
    if (n < 0) throw DomainError("hom_space: negative degree");
    std::tuple<VertexId, VertexId, int> key{x, y, n};
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    auto hs = std::make_shared<HomSpace<F>>();
    hs->x = x;
    hs->y = y;
    hs->n = n;
    hs->basis = enumerate_paths(q_, x, y, n);
    std::ostringstream h;
    h << q_.name << '|' << x << '|' << y << '|' << n;
    hs->handle = h.str();
    for (int i = 0; i < static_cast<int>(hs->basis.size()); ++i)
      hs->index[path_key(hs->basis[i])] = i;
    if (n >= 2)
      hs->relations = row_reduce(static_cast<int>(hs->basis.size()),
                                 raw_relations(x, y, n, *hs));
    else
      hs->relations.dim = static_cast<int>(hs->basis.size());
    hs->quotient_dim =
        static_cast<int>(hs->basis.size()) - hs->relations.rank();
    hs->exact = is_exact(x, y, n);
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = memo_.emplace(key, std::move(hs));
    return it->second;
  }

  ClassVector<F> class_of_path(const Path& p) {
    VertexId end = path_end(q_, p);
    std::shared_ptr<const HomSpace<F>> hs =
        hom_space(p.start, end, p.length());
    if (!hs->exact)
      throw OutOfWindowError("class_of_path: hom space " + hs->handle +
                             " is frontier-tainted");
    int col = hs->column_of(p);
    SparseVec<F> v = SparseVec<F>::unit(static_cast<int>(hs->basis.size()), col);
    return {hs, hs->relations.reduce(std::move(v))};
  }

  // c2 after c1 (c1 first in traversal order): x --c1--> y --c2--> z.
  ClassVector<F> compose(const ClassVector<F>& c2, const ClassVector<F>& c1) {
    if (c1.space->y != c2.space->x)
      throw DomainError("compose: endpoint mismatch " + c1.space->y + " vs " +
                        c2.space->x);
    std::shared_ptr<const HomSpace<F>> hs =
        hom_space(c1.space->x, c2.space->y, c1.space->n + c2.space->n);
    if (!hs->exact)
      throw OutOfWindowError("compose: hom space " + hs->handle +
                             " is frontier-tainted");
    SparseVec<F> v;
    v.dim = static_cast<int>(hs->basis.size());
    for (auto& [i, ci] : c1.normal_form.entries) {
      for (auto& [j, cj] : c2.normal_form.entries) {
        Path cat = c1.space->basis[i];
        const Path& tail = c2.space->basis[j];
        cat.arrows.insert(cat.arrows.end(), tail.arrows.begin(),
                          tail.arrows.end());
        v.add_at(hs->column_of(cat), ci * cj);
      }
    }
    return {hs, hs->relations.reduce(std::move(v))};
  }

  struct GradedDim {
    int dim;
    bool exact;
  };
  std::vector<GradedDim> graded_dims(const VertexId& x, const VertexId& y,
                                     int max_deg) {
    if (max_deg < 0) throw DomainError("graded_dims: negative degree");
    std::vector<GradedDim> out;
    for (int n = 0; n <= max_deg; ++n) {
      auto hs = hom_space(x, y, n);
      out.push_back({hs->quotient_dim, hs->exact});
    }
    return out;
  }

  // Representatives of a quotient basis: the basis paths at non-pivot
  // columns, reduced to normal form.
  std::vector<ClassVector<F>> basis_classes(
      const std::shared_ptr<const HomSpace<F>>& hs) {
    std::vector<ClassVector<F>> out;
    std::size_t k = 0;
    for (int col = 0; col < static_cast<int>(hs->basis.size()); ++col) {
      if (k < hs->relations.pivots.size() &&
          hs->relations.pivots[k] == col) {
        ++k;
        continue;
      }
      SparseVec<F> v =
          SparseVec<F>::unit(static_cast<int>(hs->basis.size()), col);
      out.push_back({hs, hs->relations.reduce(std::move(v))});
    }
    return out;
  }

 private:
  // Mesh relations embedded in degree n: p (x -> tau z, length a), the mesh
  // at z, q' (z -> y, length b), a + 2 + b = n. Triples ordered by z, then a,
  // then p, then q'; every term path gets coefficient +1.
  std::vector<SparseVec<F>> raw_relations(const VertexId& x, const VertexId& y,
                                          int n, const HomSpace<F>& hs) {
    std::vector<SparseVec<F>> rows;
    for (auto& [z, inf] : q_.vertices) {
      if (inf.projective || inf.frontier) continue;
      Mesh m;
      try {
        m = mesh_at(q_, z);
      } catch (const DomainError&) {
        continue;
      }
      for (int a = 0; a + 2 <= n; ++a) {
        int b = n - 2 - a;
        std::vector<Path> ps = enumerate_paths(q_, x, m.translate, a);
        if (ps.empty()) continue;
        std::vector<Path> qs = enumerate_paths(q_, z, y, b);
        if (qs.empty()) continue;
        for (const Path& p : ps) {
          for (const Path& suffix : qs) {
            SparseVec<F> row;
            row.dim = static_cast<int>(hs.basis.size());
            for (auto& [alpha, salpha] : m.spokes) {
              Path term = p;
              term.arrows.push_back(salpha);
              term.arrows.push_back(alpha);
              term.arrows.insert(term.arrows.end(), suffix.arrows.begin(),
                                 suffix.arrows.end());
              row.add_at(hs.column_of(term), F(1));
            }
            rows.push_back(std::move(row));
          }
        }
      }
    }
    return rows;
  }

  const TranslationQuiver& q_;
  bool has_frontier_ = false;
  std::map<VertexId, long> to_frontier_;
  std::map<VertexId, long> from_frontier_;
  std::mutex mu_;
  std::map<std::tuple<VertexId, VertexId, int>,
           std::shared_ptr<const HomSpace<F>>>
      memo_;
};

}  // namespace meshkit
