#pragma once

#include <deque>
#include <optional>
#include <set>

#include "meshkit/covering.hpp"
#include "meshkit/meshcat.hpp"

namespace meshkit {

enum class Radical { exactly_rad_n, in_rad_n_plus_1 };

template <class F>
struct RadicalVerdict {
  Path path;
  int n = 0;
  Radical verdict = Radical::exactly_rad_n;
  bool sectional = false;
  ClassVector<F> cls;
};

// The composite of p lies one radical power deeper than its length exactly
// when its class vanishes in the mesh category.
template <class F>
RadicalVerdict<F> radical_verdict(MeshEngine<F>& eng, const Path& p) {
  RadicalVerdict<F> r;
  r.path = p;
  r.n = p.length();
  r.cls = eng.class_of_path(p);
  r.verdict = r.cls.is_zero() ? Radical::in_rad_n_plus_1 : Radical::exactly_rad_n;
  r.sectional = is_sectional(eng.quiver(), p);
  return r;
}

// All strictly longer parallel paths (p is a shortcut for each), ordered by
// length then lexicographically.
inline std::vector<Path> find_shortcut_targets(const TranslationQuiver& q,
                                               const Path& p, int max_len) {
  if (max_len <= p.length())
    throw DomainError("find_shortcut_targets: maxLen must exceed the length");
  VertexId end = path_end(q, p);
  std::vector<Path> out;
  for (int len = p.length() + 1; len <= max_len; ++len)
    for (Path& cand : enumerate_paths(q, p.start, end, len))
      out.push_back(std::move(cand));
  return out;
}

template <class F>
struct DepthCertificate {
  Path base;
  std::vector<int> positions;              // 1-based arrow indices, ascending
  std::vector<ClassVector<F>> substitutes; // one per position, degree >= 2
  int total_degree = 0;
  ClassVector<F> witness;                  // nonzero composed class
};

namespace detail {

// Composes the substituted chain as raw path concatenation of normal-form
// representatives, reduced once in the final hom space. Valid because the
// final space is exact: the class of a concatenation depends only on the
// classes of the factors.
template <class F>
SparseVec<F> substituted_composite(
    const Path& base, const std::vector<int>& pos,
    const std::vector<ClassVector<F>>& subs,
    const std::shared_ptr<const HomSpace<F>>& target) {
  struct Factor {
    const SparseVec<F>* vec;   // nullptr: the single kept arrow
    const std::vector<Path>* basis;
    ArrowId kept;
  };
  std::vector<Factor> factors;
  std::size_t k = 0;
  for (int i = 1; i <= base.length(); ++i) {
    if (k < pos.size() && pos[k] == i) {
      factors.push_back(
          {&subs[k].normal_form, &subs[k].space->basis, {}});
      ++k;
    } else {
      factors.push_back({nullptr, nullptr, base.arrows[i - 1]});
    }
  }
  SparseVec<F> acc;
  acc.dim = static_cast<int>(target->basis.size());
  std::vector<ArrowId> arrows;
  F one(1);
  // depth-first product over the factors
  struct Rec {
    const std::vector<Factor>& factors;
    const std::shared_ptr<const HomSpace<F>>& target;
    SparseVec<F>& acc;
    std::vector<ArrowId>& arrows;
    void go(std::size_t fi, const F& coeff) {
      if (fi == factors.size()) {
        Path p{target->x, arrows};
        acc.add_at(target->column_of(p), coeff);
        return;
      }
      const Factor& f = factors[fi];
      if (!f.vec) {
        arrows.push_back(f.kept);
        go(fi + 1, coeff);
        arrows.pop_back();
        return;
      }
      for (auto& [col, c] : f.vec->entries) {
        const Path& part = (*f.basis)[col];
        arrows.insert(arrows.end(), part.arrows.begin(), part.arrows.end());
        go(fi + 1, coeff * c);
        arrows.resize(arrows.size() - part.arrows.size());
      }
    }
  } rec{factors, target, acc, arrows};
  rec.go(0, one);
  return target->relations.reduce(std::move(acc));
}

inline bool next_composition(std::vector<int>& degs, int lo, int hi, int total) {
  // next sequence with entries in [lo, hi] summing to `total`, lex order
  int l = static_cast<int>(degs.size());
  for (int i = l - 1; i >= 0; --i) {
    while (degs[i] < hi) {
      ++degs[i];
      int used = 0;
      for (int j = 0; j <= i; ++j) used += degs[j];
      int rest = total - used;
      int slots = l - i - 1;
      if (rest < slots * lo || rest > slots * hi) continue;
      // refill the suffix minimally
      for (int j = i + 1; j < l; ++j) {
        int later = l - j - 1;
        int d = std::max(lo, rest - later * hi);
        degs[j] = d;
        rest -= d;
      }
      return true;
    }
    degs[i] = lo;  // will be overwritten by the next carry round
  }
  return false;
}

inline bool first_composition(std::vector<int>& degs, int lo, int hi,
                              int total) {
  int l = static_cast<int>(degs.size());
  if (total < l * lo || total > l * hi) return false;
  int rest = total;
  for (int i = 0; i < l; ++i) {
    int later = l - i - 1;
    int d = std::max(lo, rest - later * hi);
    degs[i] = d;
    rest -= d;
  }
  return true;
}

}  // namespace detail

// Searches for a witness that the zero-class composite of `p` survives in a
// higher radical power: substitute degree >= 2 classes at some positions so
// the recomposed class is nonzero. Search order: minimal total degree, then
// position tuples lexicographically, then degree tuples, then basis order.
template <class F>
std::optional<DepthCertificate<F>> depth_certificate(MeshEngine<F>& eng,
                                                     const Path& p,
                                                     int max_extra, int cap_d) {
  const TranslationQuiver& q = eng.quiver();
  int n = p.length();
  if (n < 1) throw DomainError("depth_certificate: empty path");
  {
    RadicalVerdict<F> v = radical_verdict(eng, p);
    if (v.verdict != Radical::in_rad_n_plus_1)
      throw DomainError("depth_certificate: class of the path is nonzero");
  }
  if (max_extra <= 0 || cap_d < 2) return std::nullopt;
  std::vector<VertexId> verts = path_vertices(q, p);

  // All position subsets in lex order (prefix-first).
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  auto gen = [&](auto&& self, int from) -> void {
    for (int i = from; i <= n; ++i) {
      cur.push_back(i);
      subsets.push_back(cur);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  gen(gen, 1);

  for (int total = n + 1; total <= n + max_extra; ++total) {
    for (const std::vector<int>& pos : subsets) {
      int l = static_cast<int>(pos.size());
      std::vector<int> degs(l);
      // total = n + sum(deg_i - 1)  =>  sum(deg_i) = total - n + l
      if (!detail::first_composition(degs, 2, cap_d, total - n + l)) continue;
      do {
        std::vector<std::shared_ptr<const HomSpace<F>>> spaces(l);
        std::vector<std::vector<ClassVector<F>>> cands(l);
        bool viable = true;
        for (int j = 0; j < l; ++j) {
          spaces[j] =
              eng.hom_space(verts[pos[j] - 1], verts[pos[j]], degs[j]);
          if (!spaces[j]->exact)
            throw OutOfWindowError("depth_certificate: hom space " +
                                   spaces[j]->handle + " is frontier-tainted");
          cands[j] = eng.basis_classes(spaces[j]);
          if (cands[j].empty()) {
            viable = false;
            break;
          }
        }
        if (!viable) continue;
        auto target = eng.hom_space(p.start, verts[n], total);
        if (!target->exact)
          throw OutOfWindowError("depth_certificate: hom space " +
                                 target->handle + " is frontier-tainted");
        std::vector<std::size_t> pick(l, 0);
        for (;;) {
          std::vector<ClassVector<F>> subs;
          for (int j = 0; j < l; ++j) subs.push_back(cands[j][pick[j]]);
          SparseVec<F> nf =
              detail::substituted_composite(p, pos, subs, target);
          if (!nf.is_zero()) {
            DepthCertificate<F> cert;
            cert.base = p;
            cert.positions = pos;
            cert.substitutes = std::move(subs);
            cert.total_degree = total;
            cert.witness = {target, std::move(nf)};
            return cert;
          }
          int j = l - 1;
          while (j >= 0 && ++pick[j] == cands[j].size()) pick[j--] = 0;
          if (j < 0) break;
        }
      } while (detail::next_composition(degs, 2, cap_d, total - n + l));
    }
  }
  return std::nullopt;
}

template <class F>
struct FiberSum {
  int sum = 0;
  std::map<VertexId, int> per_fiber;  // delta vertex in the fiber -> dim
};

// Dimension form of the fiber-sum identity: over all delta vertices z in the
// fiber of Y, the degree-n dims from x add up to the base dimension.
template <class F>
FiberSum<F> theoremB_fiber_sum(MeshEngine<F>& eng, const CoveringBall& ball,
                               const VertexId& x, const VertexId& base_y,
                               int n) {
  if (&eng.quiver() != &ball.delta)
    throw DomainError("theoremB_fiber_sum: engine not over the ball");
  if (!ball.delta.has_vertex(x))
    throw DomainError("theoremB_fiber_sum: unknown vertex " + x);

  // undirected distances from x inside the ball
  std::map<VertexId, int> dist;
  dist[x] = 0;
  std::deque<VertexId> queue{x};
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    auto visit = [&](const VertexId& u) {
      if (!dist.count(u)) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    };
    for (const ArrowId& a : ball.delta.out_arrows(v))
      visit(ball.delta.arrow(a).target);
    for (const ArrowId& a : ball.delta.in_arrows(v))
      visit(ball.delta.arrow(a).source);
  }

  FiberSum<F> out;
  for (auto& [z, bv] : ball.pi_vertex) {
    if (bv != base_y) continue;
    auto hs = eng.hom_space(x, z, n);
    if (!hs->exact) {
      bool reachable = dist.count(z) && dist.at(z) <= n;
      if (!hs->basis.empty() || reachable)
        throw OutOfWindowError("theoremB_fiber_sum: fiber vertex " + z +
                               " lies in the frontier-tainted region");
      out.per_fiber[z] = 0;
      continue;
    }
    out.per_fiber[z] = hs->quotient_dim;
    out.sum += hs->quotient_dim;
  }
  return out;
}

struct MeshAnalysis {
  bool cond3 = false;  // some middle-to-middle degree>=2 class composes nonzero
  bool cond4 = false;  // some dim hom(tau z, z, d) > 0 with 4 <= d <= capM
  int cap = 0;
};

// Mesh-level shadow of the n = 2 composite criterion: existence of a deep
// detour through the mesh middles versus a surviving degree >= 4 hom class.
template <class F>
MeshAnalysis n2_mesh_analysis(MeshEngine<F>& eng, const VertexId& z,
                              int cap_m) {
  if (cap_m < 4) throw DomainError("n2_mesh_analysis: capM must be >= 4");
  const TranslationQuiver& q = eng.quiver();
  Mesh m = mesh_at(q, z);
  MeshAnalysis out;
  out.cap = cap_m;

  for (int d = 4; d <= cap_m; ++d) {
    auto hs = eng.hom_space(m.translate, z, d);
    if (!hs->exact)
      throw OutOfWindowError("n2_mesh_analysis: hom space " + hs->handle +
                             " is frontier-tainted");
    if (hs->quotient_dim > 0) {
      out.cond4 = true;
      break;
    }
  }

  for (auto& [ai, sai] : m.spokes) {
    VertexId yi = q.arrow(ai).source;  // target of sigma spoke into y_i
    ClassVector<F> into = eng.class_of_path({m.translate, {sai}});
    for (auto& [aj, saj] : m.spokes) {
      VertexId yj = q.arrow(aj).source;
      ClassVector<F> outof = eng.class_of_path({yj, {aj}});
      for (int d = 2; d + 2 <= cap_m; ++d) {
        auto hs = eng.hom_space(yi, yj, d);
        if (!hs->exact)
          throw OutOfWindowError("n2_mesh_analysis: hom space " + hs->handle +
                                 " is frontier-tainted");
        for (ClassVector<F>& phi : eng.basis_classes(hs)) {
          ClassVector<F> comp = eng.compose(outof, eng.compose(phi, into));
          if (!comp.is_zero()) {
            out.cond3 = true;
            return out;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace meshkit
