#include "meshkit/generators.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace meshkit {

TreeSpec TreeSpec::line(int n) {
  TreeSpec t;
  for (int i = 1; i <= n; ++i) t.vertices.push_back(std::to_string(i));
  for (int i = 1; i < n; ++i)
    t.edges.push_back({std::to_string(i), std::to_string(i + 1)});
  return t;
}

TreeSpec TreeSpec::d4() {
  TreeSpec t;
  t.vertices = {"1", "2", "3", "4"};
  t.edges = {{"1", "2"}, {"2", "3"}, {"2", "4"}};
  return t;
}

namespace {

std::string zv(int i, const std::string& v) {
  return "(" + std::to_string(i) + "," + v + ")";
}

std::string pair_id(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

// Letters for ztree arrow families: edge k gets letter 2k for the in-slice
// arrow and letter 2k+1 for the cross-slice arrow.
char edge_letter(int idx) {
  if (idx > 25) throw DomainError("gen_ztree: tree too large for arrow naming");
  return static_cast<char>('a' + idx);
}

}  // namespace

TranslationQuiver gen_ztree(const TreeSpec& t, int i0, int i1) {
  if (i0 > i1) throw DomainError("gen_ztree: empty window");
  if (t.vertices.empty()) throw DomainError("gen_ztree: empty tree");

  // Check tree shape and orient edges away from the least vertex.
  std::set<std::string> vs(t.vertices.begin(), t.vertices.end());
  if (vs.size() != t.vertices.size())
    throw DomainError("gen_ztree: duplicate tree vertices");
  std::map<std::string, std::vector<std::string>> adj;
  for (auto& [u, v] : t.edges) {
    if (!vs.count(u) || !vs.count(v) || u == v)
      throw DomainError("gen_ztree: bad edge " + u + "-" + v);
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  if (t.edges.size() + 1 != vs.size())
    throw DomainError("gen_ztree: not a tree (edge count)");
  for (auto& [k, lst] : adj) std::sort(lst.begin(), lst.end());

  std::string root = *vs.begin();
  std::vector<std::pair<std::string, std::string>> oriented;  // parent -> child
  {
    std::set<std::string> seen{root};
    std::deque<std::string> queue{root};
    while (!queue.empty()) {
      std::string u = queue.front();
      queue.pop_front();
      for (const std::string& w : adj[u]) {
        if (seen.insert(w).second) {
          oriented.push_back({u, w});
          queue.push_back(w);
        }
      }
    }
    if (seen.size() != vs.size())
      throw DomainError("gen_ztree: tree not connected");
  }

  TranslationQuiver q;
  q.name = "ztree";
  for (int i = i0; i <= i1; ++i)
    for (const std::string& v : t.vertices)
      q.vertices[zv(i, v)] = {false, false, i == i0 || i == i1};

  for (std::size_t k = 0; k < oriented.size(); ++k) {
    auto& [u, v] = oriented[k];
    std::string up(1, edge_letter(static_cast<int>(2 * k)));
    std::string down(1, edge_letter(static_cast<int>(2 * k + 1)));
    for (int i = i0; i <= i1; ++i)
      q.arrows[up + std::to_string(i)] = {zv(i, u), zv(i, v)};
    for (int i = i0; i < i1; ++i)
      q.arrows[down + std::to_string(i)] = {zv(i, v), zv(i + 1, u)};
  }
  for (int i = i0 + 1; i <= i1; ++i)
    for (const std::string& v : t.vertices) q.tau[zv(i, v)] = zv(i - 1, v);

  // sigma around the mesh at (i,v), i > i0:
  //   up arrow (i,u)->(i,v) for edge u->v  pairs with  down (i-1,v)->(i,u)
  //   down arrow (i-1,w)->(i,v) for edge v->w  pairs with  up at slice i-1
  for (std::size_t k = 0; k < oriented.size(); ++k) {
    auto& [u, v] = oriented[k];
    std::string up(1, edge_letter(static_cast<int>(2 * k)));
    std::string down(1, edge_letter(static_cast<int>(2 * k + 1)));
    for (int i = i0 + 1; i <= i1; ++i)
      q.sigma[up + std::to_string(i)] = down + std::to_string(i - 1);
    for (int i = i0; i < i1; ++i)
      q.sigma[down + std::to_string(i)] = up + std::to_string(i);
  }
  q.freeze();
  return q;
}

TranslationQuiver gen_tube(int rank_p, int rows_h) {
  if (rank_p < 1 || rows_h < 2) throw DomainError("gen_tube: need p >= 1, h >= 2");
  TranslationQuiver q;
  q.name = "tube";
  auto tv = [&](int c, int j) {
    return zv(((c % rank_p) + rank_p) % rank_p, std::to_string(j));
  };
  for (int c = 0; c < rank_p; ++c)
    for (int j = 1; j <= rows_h; ++j)
      q.vertices[tv(c, j)] = {false, false, j == rows_h};

  auto up_id = [&](int c, int j) { return "u" + pair_id(c, j); };
  auto down_id = [&](int c, int j) { return "d" + pair_id(c, j); };
  for (int c = 0; c < rank_p; ++c) {
    for (int j = 1; j < rows_h; ++j) q.arrows[up_id(c, j)] = {tv(c, j), tv(c, j + 1)};
    for (int j = 2; j <= rows_h; ++j)
      q.arrows[down_id(c, j)] = {tv(c, j), tv(c + 1, j - 1)};
  }
  for (int c = 0; c < rank_p; ++c)
    for (int j = 1; j <= rows_h; ++j) q.tau[tv(c, j)] = tv(c - 1, j);

  // Mesh at (c,j): up spoke u(c,j-1) pairs with d(c-1,j); down spoke
  // d(c-1,j+1) pairs with u(c-1,j).
  for (int c = 0; c < rank_p; ++c) {
    int cm = ((c - 1) % rank_p + rank_p) % rank_p;
    for (int j = 2; j <= rows_h; ++j) q.sigma[up_id(c, j - 1)] = down_id(cm, j);
    for (int j = 1; j < rows_h; ++j) q.sigma[down_id(cm, j + 1)] = up_id(cm, j);
  }
  q.freeze();
  return q;
}

TranslationQuiver gen_triangle_an(int n) {
  if (n < 1) throw DomainError("gen_triangle_an: need n >= 1");
  TranslationQuiver q;
  q.name = "triangle";
  for (int a = 1; a <= n; ++a)
    for (int b = a; b <= n; ++b)
      q.vertices[pair_id(a, b)] = {b == n, a == 1, false};

  auto left_id = [](int a, int b) { return "l" + pair_id(a, b); };   // (a,b)->(a-1,b)
  auto down_id = [](int a, int b) { return "r" + pair_id(a, b); };   // (a,b)->(a,b-1)
  for (int a = 1; a <= n; ++a)
    for (int b = a; b <= n; ++b) {
      if (a > 1) q.arrows[left_id(a, b)] = {pair_id(a, b), pair_id(a - 1, b)};
      if (b > a) q.arrows[down_id(a, b)] = {pair_id(a, b), pair_id(a, b - 1)};
    }
  for (int a = 1; a <= n; ++a)
    for (int b = a; b < n; ++b) q.tau[pair_id(a, b)] = pair_id(a + 1, b + 1);

  // Mesh at (a,b), b < n: spokes from (a+1,b) and (a,b+1); translate (a+1,b+1).
  for (int a = 1; a <= n; ++a)
    for (int b = a; b < n; ++b) {
      if (a + 1 <= b) q.sigma[left_id(a + 1, b)] = down_id(a + 1, b + 1);
      if (b + 1 <= n) q.sigma[down_id(a, b + 1)] = left_id(a + 1, b + 1);
    }
  q.freeze();
  return q;
}

TranslationQuiver gen_kronecker(int m) {
  if (m < 2) throw DomainError("gen_kronecker: need m >= 2");
  TranslationQuiver q;
  q.name = "kronecker";
  for (int i = 0; i <= m; ++i) {
    VertexInfo inf;
    inf.projective = i <= 1;
    inf.frontier = i >= m - 1;
    q.vertices["v" + std::to_string(i)] = inf;
  }
  for (int i = 0; i < m; ++i) {
    q.arrows["a" + std::to_string(i)] = {"v" + std::to_string(i),
                                         "v" + std::to_string(i + 1)};
    q.arrows["b" + std::to_string(i)] = {"v" + std::to_string(i),
                                         "v" + std::to_string(i + 1)};
  }
  for (int i = 0; i + 2 <= m; ++i)
    q.tau["v" + std::to_string(i + 2)] = "v" + std::to_string(i);
  // Lexicographic pairing across each mesh.
  for (int i = 1; i < m; ++i) {
    q.sigma["a" + std::to_string(i)] = "a" + std::to_string(i - 1);
    q.sigma["b" + std::to_string(i)] = "b" + std::to_string(i - 1);
  }
  q.freeze();
  return q;
}

}  // namespace meshkit
