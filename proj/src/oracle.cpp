#include "meshkit/oracle.hpp"

#include <algorithm>
#include <map>

namespace meshkit {

namespace {

constexpr std::size_t kPathCap = 200;

// Backward enumeration: grow from the target along incoming arrows, visiting
// them in descending id order. Intentionally unlike the engine's forward DFS.
void back_enum(const TranslationQuiver& q, const VertexId& x,
               const VertexId& at, int remaining, std::vector<ArrowId>& tail,
               std::vector<std::vector<ArrowId>>& out) {
  if (remaining == 0) {
    if (at == x) {
      std::vector<ArrowId> seq(tail.rbegin(), tail.rend());
      out.push_back(std::move(seq));
    }
    return;
  }
  std::vector<ArrowId> ins = q.in_arrows(at);
  std::sort(ins.rbegin(), ins.rend());
  for (const ArrowId& a : ins) {
    tail.push_back(a);
    back_enum(q, x, q.arrow(a).source, remaining - 1, tail, out);
    tail.pop_back();
  }
}

std::vector<std::vector<ArrowId>> all_paths(const TranslationQuiver& q,
                                            const VertexId& x,
                                            const VertexId& y, int n) {
  std::vector<std::vector<ArrowId>> out;
  std::vector<ArrowId> tail;
  back_enum(q, x, y, n, tail, out);
  return out;
}

std::string key_of(const std::vector<ArrowId>& seq) {
  std::string k;
  for (const ArrowId& a : seq) {
    k += a;
    k += '|';
  }
  return k;
}

struct OMesh {
  VertexId end, translate;
  std::vector<std::pair<ArrowId, ArrowId>> spokes;
};

std::vector<OMesh> complete_meshes(const TranslationQuiver& q) {
  std::vector<OMesh> out;
  for (auto& [z, inf] : q.vertices) {
    if (inf.projective || inf.frontier) continue;
    VertexId t = q.tau_of(z);
    if (t.empty()) continue;
    OMesh m{z, t, {}};
    bool complete = true;
    for (const ArrowId& a : q.in_arrows(z)) {
      ArrowId s = q.sigma_of(a);
      if (s.empty()) {
        complete = false;
        break;
      }
      m.spokes.push_back({a, s});
    }
    if (complete) out.push_back(std::move(m));
  }
  return out;
}

// Dense relation matrix in the column order of `paths`.
std::vector<std::vector<Rational>> relation_matrix(
    const TranslationQuiver& q, const VertexId& x, const VertexId& y, int n,
    const std::vector<std::vector<ArrowId>>& paths) {
  std::map<std::string, int> col;
  for (int i = 0; i < static_cast<int>(paths.size()); ++i)
    col[key_of(paths[i])] = i;
  std::vector<std::vector<Rational>> rows;
  for (const OMesh& m : complete_meshes(q)) {
    for (int a = 0; a + 2 <= n; ++a) {
      for (auto& pre : all_paths(q, x, m.translate, a)) {
        for (auto& post : all_paths(q, m.end, y, n - 2 - a)) {
          std::vector<Rational> row(paths.size(), Rational(0));
          for (auto& [al, sal] : m.spokes) {
            std::vector<ArrowId> term = pre;
            term.push_back(sal);
            term.push_back(al);
            term.insert(term.end(), post.begin(), post.end());
            row[col.at(key_of(term))] += 1;
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

int dense_rank(std::vector<std::vector<Rational>> m) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pr = -1;
    for (int r = rank; r < rows; ++r) {
      if (m[r][c] != 0) {
        pr = r;
        break;
      }
    }
    if (pr < 0) continue;
    std::swap(m[rank], m[pr]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (int k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int oracle_hom_dim(const TranslationQuiver& q, const VertexId& x,
                   const VertexId& y, int n) {
  if (n < 0) throw DomainError("oracle: negative degree");
  std::vector<std::vector<ArrowId>> paths = all_paths(q, x, y, n);
  if (paths.size() > kPathCap)
    throw DomainError("oracle: instance too large (" +
                      std::to_string(paths.size()) + " paths)");
  int rank = n >= 2 ? dense_rank(relation_matrix(q, x, y, n, paths)) : 0;
  return static_cast<int>(paths.size()) - rank;
}

bool oracle_class_is_zero(const TranslationQuiver& q, const Path& p) {
  VertexId end = path_end(q, p);
  std::vector<std::vector<ArrowId>> paths =
      all_paths(q, p.start, end, p.length());
  if (paths.size() > kPathCap)
    throw DomainError("oracle: instance too large (" +
                      std::to_string(paths.size()) + " paths)");
  if (p.length() < 2) return false;  // no relations below degree 2
  std::vector<std::vector<Rational>> rel =
      relation_matrix(q, p.start, end, p.length(), paths);
  int base = dense_rank(rel);
  std::vector<Rational> unit(paths.size(), Rational(0));
  bool seen = false;
  for (int i = 0; i < static_cast<int>(paths.size()); ++i) {
    if (paths[i] == p.arrows) {
      unit[i] = 1;
      seen = true;
      break;
    }
  }
  if (!seen) throw DomainError("oracle: path not found among enumerations");
  rel.push_back(std::move(unit));
  return dense_rank(rel) == base;
}

OracleDepthResult oracle_depth_search(const TranslationQuiver& q,
                                      const Path& p, int m, int d_cap) {
  int n = p.length();
  if (n < 1) throw DomainError("oracle: empty path");
  if (m <= 0 || d_cap < 2) return {};
  std::vector<VertexId> verts = path_vertices(q, p);

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

  for (int total = n + 1; total <= n + m; ++total) {
    for (const std::vector<int>& pos : subsets) {
      int l = static_cast<int>(pos.size());
      int need = total - n + l;  // sum of substitute degrees
      if (need < 2 * l || need > d_cap * l) continue;
      std::vector<int> degs(l, 2);
      // enumerate all degree tuples in [2, d_cap]^l with the right sum
      auto sweep = [&](auto&& self, int j, int rest) -> bool {
        if (j == l) {
          if (rest != 0) return false;
          // all substitute path tuples
          std::vector<std::vector<std::vector<ArrowId>>> cands(l);
          for (int k = 0; k < l; ++k) {
            cands[k] = all_paths(q, verts[pos[k] - 1], verts[pos[k]], degs[k]);
            if (cands[k].empty()) return false;
          }
          std::vector<std::size_t> pick(l, 0);
          for (;;) {
            Path composed{p.start, {}};
            std::size_t kk = 0;
            for (int i = 1; i <= n; ++i) {
              if (kk < pos.size() && pos[kk] == static_cast<int>(i)) {
                auto& sub = cands[kk][pick[kk]];
                composed.arrows.insert(composed.arrows.end(), sub.begin(),
                                       sub.end());
                ++kk;
              } else {
                composed.arrows.push_back(p.arrows[i - 1]);
              }
            }
            if (!oracle_class_is_zero(q, composed)) return true;
            int j2 = l - 1;
            while (j2 >= 0 && ++pick[j2] == cands[j2].size()) pick[j2--] = 0;
            if (j2 < 0) return false;
          }
        }
        for (int d = 2; d <= d_cap && d <= rest; ++d) {
          degs[j] = d;
          if (self(self, j + 1, rest - d)) return true;
        }
        return false;
      };
      if (sweep(sweep, 0, need)) return {true, total};
    }
  }
  return {};
}

}  // namespace meshkit
