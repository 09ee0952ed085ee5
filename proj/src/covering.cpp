#include "meshkit/covering.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <map>
#include <set>
#include <vector>

namespace meshkit {

namespace {

constexpr std::size_t kNodeBudget = 1'000'000;

// Congruence closure over walk classes from the basepoint. Nodes carry
// functional out/in slots keyed by base arrow id; mesh relations and (for the
// generic kind) parallel-arrow identifications drive unifications, bounded at
// walk length `bound`.
class Builder {
 public:
  Builder(const TranslationQuiver& q, const VertexId& base, HomotopyKind kind,
          int bound)
      : q_(q), kind_(kind), bound_(bound) {
    if (!q.has_vertex(base))
      throw DomainError("covering: unknown basepoint " + base);
    if (bound < 0) throw DomainError("covering: negative bound");
    for (auto& [v, inf] : q.vertices) {
      if (inf.projective || inf.frontier) continue;
      try {
        meshes_[v] = mesh_at(q, v);
      } catch (const DomainError&) {
        // incomplete mesh inside the window: no relation contributed
      }
    }
    if (kind == HomotopyKind::generic) {
      std::map<std::pair<VertexId, VertexId>, std::vector<ArrowId>> cls;
      for (auto& [id, a] : q.arrows) cls[{a.source, a.target}].push_back(id);
      for (auto& [st, members] : cls) {
        if (members.size() < 2) continue;
        par_by_source_[st.first].push_back(members);
        par_by_target_[st.second].push_back(members);
      }
    }
    root_ = make_node(base, 0);
    run();
  }

  const TranslationQuiver& base_quiver() const { return q_; }

  struct Extract {
    std::vector<int> order;                 // included roots, canonical order
    std::map<int, std::string> name;        // root -> n%d
    std::map<int, Walk> repr;               // root -> canonical base walk
    std::map<int, int> dist;                // canonical distance
  };

  // Canonical naming of the radius-r ball by priority BFS over
  // (length, lex token sequence); tokens are base arrow id + direction.
  Extract extract(int radius) {
    using Toks = std::vector<std::pair<ArrowId, char>>;
    struct ToksLess {
      bool operator()(const Toks& a, const Toks& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
      }
    };
    std::map<Toks, int, ToksLess> frontier;
    std::map<int, Toks> canon;
    frontier[{}] = find(root_);
    while (!frontier.empty()) {
      auto [toks, raw] = *frontier.begin();
      frontier.erase(frontier.begin());
      int n = find(raw);
      if (canon.count(n)) continue;
      canon[n] = toks;
      if (static_cast<int>(toks.size()) >= bound_) continue;
      for (auto& [a, y] : nodes_[n].fwd) {
        int t = find(y);
        if (canon.count(t)) continue;
        Toks nt = toks;
        nt.push_back({a, '>'});
        frontier.emplace(std::move(nt), t);
      }
      for (auto& [a, y] : nodes_[n].bwd) {
        int t = find(y);
        if (canon.count(t)) continue;
        Toks nt = toks;
        nt.push_back({a, '<'});
        frontier.emplace(std::move(nt), t);
      }
    }

    std::vector<std::pair<Toks, int>> ordered;
    for (auto& [n, toks] : canon)
      if (static_cast<int>(toks.size()) <= radius) ordered.push_back({toks, n});
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) {
                return ToksLess{}(a.first, b.first) ||
                       (!ToksLess{}(b.first, a.first) && a.second < b.second);
              });

    Extract e;
    int idx = 0;
    for (auto& [toks, n] : ordered) {
      e.order.push_back(n);
      e.name[n] = "n" + std::to_string(idx++);
      e.dist[n] = static_cast<int>(toks.size());
      Walk w;
      w.start = nodes_[find(root_)].base;
      for (auto& [a, d] : toks)
        w.steps.push_back({a, d == '>' ? Dir::forward : Dir::inverse});
      e.repr[n] = std::move(w);
    }
    return e;
  }

  int find(int x) {
    while (nodes_[x].parent != x) {
      nodes_[x].parent = nodes_[nodes_[x].parent].parent;
      x = nodes_[x].parent;
    }
    return x;
  }

  int get_fwd(int x, const ArrowId& a) {
    x = find(x);
    auto it = nodes_[x].fwd.find(a);
    return it == nodes_[x].fwd.end() ? -1 : find(it->second);
  }
  int get_bwd(int x, const ArrowId& a) {
    x = find(x);
    auto it = nodes_[x].bwd.find(a);
    return it == nodes_[x].bwd.end() ? -1 : find(it->second);
  }
  const VertexId& base_of(int x) { return nodes_[find(x)].base; }
  int root() { return find(root_); }

 private:
  struct UNode {
    int parent;
    VertexId base;
    int dist;
    std::map<ArrowId, int> fwd;  // base arrow out of `base` -> node class
    std::map<ArrowId, int> bwd;  // base arrow into `base` -> node class
  };

  int make_node(const VertexId& v, int dist) {
    if (nodes_.size() >= kNodeBudget)
      throw DomainError("covering: node budget exceeded");
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({id, v, dist, {}, {}});
    return id;
  }

  void merge(int a, int b) {
    pending_.push_back({a, b});
    drain();
  }

  void drain() {
    while (!pending_.empty()) {
      auto [ra, rb] = pending_.back();
      pending_.pop_back();
      int a = find(ra), b = find(rb);
      if (a == b) continue;
      if (nodes_[a].base != nodes_[b].base)
        throw DomainError("covering: inconsistent identification across fibers");
      if (nodes_[a].fwd.size() + nodes_[a].bwd.size() <
          nodes_[b].fwd.size() + nodes_[b].bwd.size())
        std::swap(a, b);
      nodes_[b].parent = a;
      nodes_[a].dist = std::min(nodes_[a].dist, nodes_[b].dist);
      changed_ = true;
      for (auto& [k, v] : nodes_[b].fwd) {
        auto it = nodes_[a].fwd.find(k);
        if (it == nodes_[a].fwd.end())
          nodes_[a].fwd[k] = v;
        else if (find(it->second) != find(v))
          pending_.push_back({it->second, v});
      }
      for (auto& [k, v] : nodes_[b].bwd) {
        auto it = nodes_[a].bwd.find(k);
        if (it == nodes_[a].bwd.end())
          nodes_[a].bwd[k] = v;
        else if (find(it->second) != find(v))
          pending_.push_back({it->second, v});
      }
      nodes_[b].fwd.clear();
      nodes_[b].bwd.clear();
    }
  }

  // Records the arrow `a` from class x to class y, in both slot directions.
  void link(int x, const ArrowId& a, int y) {
    x = find(x);
    y = find(y);
    auto it = nodes_[x].fwd.find(a);
    if (it == nodes_[x].fwd.end()) {
      nodes_[x].fwd[a] = y;
      changed_ = true;
    } else if (find(it->second) != y) {
      merge(it->second, y);
    }
    x = find(x);
    y = get_fwd(x, a);
    auto jt = nodes_[y].bwd.find(a);
    if (jt == nodes_[y].bwd.end()) {
      nodes_[y].bwd[a] = x;
      changed_ = true;
    } else if (find(jt->second) != x) {
      merge(jt->second, x);
    }
  }

  std::vector<int> live_roots() {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
      if (find(i) == i) out.push_back(i);
    return out;
  }

  void recompute_dist() {
    for (UNode& n : nodes_) n.dist = INT_MAX;
    int r = root();
    nodes_[r].dist = 0;
    std::deque<int> queue{r};
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      int d = nodes_[x].dist;
      auto visit = [&](int y) {
        y = find(y);
        if (nodes_[y].dist > d + 1) {
          nodes_[y].dist = d + 1;
          queue.push_back(y);
        }
      };
      for (auto& [a, y] : nodes_[x].fwd) visit(y);
      for (auto& [a, y] : nodes_[x].bwd) visit(y);
    }
  }

  void deduce_pass() {
    for (int raw : live_roots()) {
      int x = find(raw);
      if (x != raw) continue;
      // slot/reverse-slot consistency (slots may point at merged nodes)
      auto fwd_copy = nodes_[x].fwd;
      for (auto& [a, y] : fwd_copy) link(find(x), a, y);
      auto bwd_copy = nodes_[find(x)].bwd;
      for (auto& [a, z] : bwd_copy) link(z, a, find(x));

      x = find(x);
      const VertexId v = nodes_[x].base;

      // mesh relation, downward: x lies over a mesh end
      auto mit = meshes_.find(v);
      if (mit != meshes_.end()) apply_mesh_down(x, mit->second);

      // mesh relation, upward: x lies over a mesh translate
      VertexId up = q_.tau_inv_of(v);
      if (!up.empty()) {
        auto uit = meshes_.find(up);
        if (uit != meshes_.end()) apply_mesh_up(find(x), uit->second);
      }

      if (kind_ == HomotopyKind::generic) apply_parallel(find(x));
    }
  }

  void apply_mesh_down(int x, const Mesh& m) {
    // w * (sigma a) * a homotopic across spokes: unify the nodes over tau(end)
    int known = -1;
    std::vector<std::pair<int, int>> chains;  // (b1 over s(a), b2 over tau)
    for (auto& [al, sal] : m.spokes) {
      int b1 = get_bwd(x, al);
      int b2 = b1 < 0 ? -1 : get_bwd(b1, sal);
      chains.push_back({b1, b2});
      if (b2 >= 0 && known < 0) known = b2;
    }
    if (known < 0) return;
    for (std::size_t i = 0; i < m.spokes.size(); ++i) {
      auto [b1, b2] = chains[i];
      if (b2 >= 0) {
        if (find(b2) != find(known)) merge(b2, known);
      } else if (b1 >= 0) {
        link(find(known), m.spokes[i].second, b1);
      }
      known = find(known);
      x = find(x);
    }
  }

  void apply_mesh_up(int t, const Mesh& m) {
    int known = -1;
    std::vector<std::pair<int, int>> chains;  // (a1 over s(a), a2 over end)
    for (auto& [al, sal] : m.spokes) {
      int a1 = get_fwd(t, sal);
      int a2 = a1 < 0 ? -1 : get_fwd(a1, al);
      chains.push_back({a1, a2});
      if (a2 >= 0 && known < 0) known = a2;
    }
    if (known < 0) return;
    for (std::size_t i = 0; i < m.spokes.size(); ++i) {
      auto [a1, a2] = chains[i];
      if (a2 >= 0) {
        if (find(a2) != find(known)) merge(a2, known);
      } else if (a1 >= 0) {
        link(a1, m.spokes[i].first, known);
      }
      known = find(known);
      t = find(t);
    }
  }

  void apply_parallel(int x) {
    const VertexId v = nodes_[x].base;
    auto sit = par_by_source_.find(v);
    if (sit != par_by_source_.end()) {
      for (const auto& cls : sit->second) {
        int known = -1;
        for (const ArrowId& a : cls) {
          int y = get_fwd(x, a);
          if (y >= 0) {
            known = y;
            break;
          }
        }
        if (known < 0) continue;
        for (const ArrowId& a : cls) link(find(x), a, find(known));
      }
    }
    x = find(x);
    auto tit = par_by_target_.find(v);
    if (tit != par_by_target_.end()) {
      for (const auto& cls : tit->second) {
        int known = -1;
        for (const ArrowId& a : cls) {
          int z = get_bwd(x, a);
          if (z >= 0) {
            known = z;
            break;
          }
        }
        if (known < 0) continue;
        for (const ArrowId& a : cls) link(find(known), a, find(x));
        x = find(x);
      }
    }
  }

  bool expand() {
    recompute_dist();
    bool grew = false;
    for (int raw : live_roots()) {
      int x = find(raw);
      if (x != raw) continue;
      if (nodes_[x].dist >= bound_) continue;
      const VertexId v = nodes_[x].base;
      for (const ArrowId& a : q_.out_arrows(v)) {
        if (get_fwd(x, a) >= 0) continue;
        int y = make_node(q_.arrow(a).target, nodes_[find(x)].dist + 1);
        link(find(x), a, y);
        grew = true;
        x = find(x);
      }
      for (const ArrowId& a : q_.in_arrows(v)) {
        if (get_bwd(x, a) >= 0) continue;
        int y = make_node(q_.arrow(a).source, nodes_[find(x)].dist + 1);
        link(y, a, find(x));
        grew = true;
        x = find(x);
      }
    }
    return grew;
  }

  void run() {
    bool any = true;
    while (any) {
      any = false;
      for (;;) {
        changed_ = false;
        deduce_pass();
        if (!changed_) break;
        any = true;
      }
      if (expand()) any = true;
    }
    recompute_dist();
  }

  const TranslationQuiver& q_;
  HomotopyKind kind_;
  int bound_;
  int root_ = 0;
  std::vector<UNode> nodes_;
  std::vector<std::pair<int, int>> pending_;
  bool changed_ = false;
  std::map<VertexId, Mesh> meshes_;
  std::map<VertexId, std::vector<std::vector<ArrowId>>> par_by_source_;
  std::map<VertexId, std::vector<std::vector<ArrowId>>> par_by_target_;
};

std::string delta_arrow_id(const ArrowId& base_arrow, const std::string& src) {
  return base_arrow + "@" + src;
}

// Builds the canonical radius-r ball from a bounded closure; no stability run.
CoveringBall build_core(const TranslationQuiver& q, const VertexId& base,
                        int radius, HomotopyKind kind, int bound) {
  Builder b(q, base, kind, bound);
  Builder::Extract e = b.extract(radius);

  CoveringBall ball;
  ball.radius = radius;
  ball.kind = kind;
  ball.basepoint = e.name.at(b.root());
  TranslationQuiver& d = ball.delta;
  d.name = q.name + (kind == HomotopyKind::universal ? ".ucov" : ".gcov");

  auto included = [&](int n) { return e.name.count(n) > 0; };

  for (int n : e.order) {
    const VertexId& bv = b.base_of(n);
    const VertexInfo& binf = q.info(bv);
    VertexInfo inf;
    inf.projective = binf.projective;
    inf.injective = binf.injective;
    inf.frontier = e.dist.at(n) == radius || binf.frontier;
    d.vertices[e.name.at(n)] = inf;
    ball.pi_vertex[e.name.at(n)] = bv;
    ball.repr[e.name.at(n)] = e.repr.at(n);
  }
  for (int n : e.order) {
    const VertexId& bv = b.base_of(n);
    for (const ArrowId& a : q.out_arrows(bv)) {
      int t = b.get_fwd(n, a);
      if (t < 0 || !included(t)) continue;
      ArrowId id = delta_arrow_id(a, e.name.at(n));
      d.arrows[id] = {e.name.at(n), e.name.at(t)};
      ball.pi_arrow[id] = a;
    }
  }

  // tau and sigma through the lifted meshes
  for (int n : e.order) {
    const VertexId& bv = b.base_of(n);
    VertexId tb = q.tau_of(bv);
    if (tb.empty()) continue;
    Mesh m;
    try {
      m = mesh_at(q, bv);
    } catch (const DomainError&) {
      continue;  // base mesh incomplete: lift stays frontier
    }
    int t = -1;
    for (auto& [al, sal] : m.spokes) {
      int b1 = b.get_bwd(n, al);
      if (b1 < 0) continue;
      int b2 = b.get_bwd(b1, sal);
      if (b2 >= 0) {
        t = b2;
        break;
      }
    }
    if (t < 0 || !included(t)) continue;
    d.tau[e.name.at(n)] = e.name.at(t);
    for (auto& [al, sal] : m.spokes) {
      int b1 = b.get_bwd(n, al);
      if (b1 < 0 || !included(b1)) continue;
      ArrowId in_id = delta_arrow_id(al, e.name.at(b1));
      ArrowId out_id = delta_arrow_id(sal, e.name.at(t));
      if (d.arrows.count(in_id) && d.arrows.count(out_id))
        d.sigma[in_id] = out_id;
    }
  }
  d.freeze();

  // Widen the frontier until the window validates cleanly. Nodes whose tau
  // or mesh data fell outside the ball are boundary nodes even below the
  // radius.
  for (;;) {
    ValidationReport rep = validate(d);
    if (rep.ok()) break;
    bool marked = false;
    for (const Violation& viol : rep.violations) {
      VertexId v;
      if (viol.code == "tau-missing" || viol.code == "tau-image-missing" ||
          viol.code == "sigma-not-onto") {
        v = viol.where;
      } else if (viol.code == "sigma-missing") {
        v = d.arrow(viol.where).target;
      } else {
        throw DomainError("covering: inconsistent ball (" + viol.code + " at " +
                          viol.where + ")");
      }
      if (!d.vertices.at(v).frontier) {
        d.vertices.at(v).frontier = true;
        marked = true;
      }
    }
    if (!marked)
      throw DomainError("covering: frontier marking did not converge");
  }
  return ball;
}

bool core_equal(const CoveringBall& a, const CoveringBall& b) {
  return a.basepoint == b.basepoint && a.delta.vertices == b.delta.vertices &&
         a.delta.arrows == b.delta.arrows && a.delta.tau == b.delta.tau &&
         a.delta.sigma == b.delta.sigma && a.pi_vertex == b.pi_vertex &&
         a.pi_arrow == b.pi_arrow && a.repr == b.repr;
}

}  // namespace

CoveringBall build_covering_ball(const TranslationQuiver& q,
                                 const VertexId& base, int radius,
                                 HomotopyKind kind, int slack) {
  if (radius < 0) throw DomainError("covering: negative radius");
  if (slack < 0) slack = 2 * radius;
  CoveringBall ball = build_core(q, base, radius, kind, radius + slack);
  ball.slack = slack;
  CoveringBall again = build_core(q, base, radius, kind, radius + slack + 2);
  ball.stable = core_equal(ball, again);
  return ball;
}

ValidationReport check_covering(const CoveringBall& ball,
                                const TranslationQuiver& q) {
  ValidationReport rep;
  auto fail = [&](std::string code, std::string where, std::string detail) {
    rep.violations.push_back(
        {std::move(code), std::move(where), std::move(detail)});
  };

  for (auto& [id, a] : ball.delta.arrows) {
    auto pit = ball.pi_arrow.find(id);
    if (pit == ball.pi_arrow.end()) {
      fail("pi-arrow-missing", id, "delta arrow without projection");
      continue;
    }
    if (!q.has_arrow(pit->second)) {
      fail("pi-arrow-dangling", id, "projects to unknown arrow " + pit->second);
      continue;
    }
    const Arrow& ba = q.arrow(pit->second);
    auto ps = ball.pi_vertex.find(a.source);
    auto pt = ball.pi_vertex.find(a.target);
    if (ps == ball.pi_vertex.end() || pt == ball.pi_vertex.end()) continue;
    if (ps->second != ba.source || pt->second != ba.target)
      fail("pi-arrow-endpoints", id,
           "projection endpoints disagree with base arrow " + pit->second);
  }

  for (auto& [v, inf] : ball.delta.vertices) {
    auto pit = ball.pi_vertex.find(v);
    if (pit == ball.pi_vertex.end()) {
      fail("pi-missing", v, "delta vertex without projection");
      continue;
    }
    if (!q.has_vertex(pit->second)) {
      fail("pi-dangling", v, "projects to unknown vertex " + pit->second);
      continue;
    }
    if (inf.frontier) continue;
    const VertexInfo& binf = q.info(pit->second);
    if (inf.projective != binf.projective)
      fail("flag-projective", v, "projective flag disagrees with " + pit->second);
    if (inf.injective != binf.injective)
      fail("flag-injective", v, "injective flag disagrees with " + pit->second);

    VertexId td = ball.delta.tau_of(v);
    VertexId tb = q.tau_of(pit->second);
    if (td.empty() != tb.empty())
      fail("tau-mismatch", v, "tau defined on only one side of pi");
    else if (!td.empty() && ball.pi_vertex.count(td) &&
             ball.pi_vertex.at(td) != tb)
      fail("tau-commute", v, "pi(tau(" + v + ")) != tau(pi(" + v + "))");

    std::multiset<ArrowId> got, want;
    for (const ArrowId& a : ball.delta.out_arrows(v))
      if (ball.pi_arrow.count(a)) got.insert(ball.pi_arrow.at(a));
    for (const ArrowId& a : q.out_arrows(pit->second)) want.insert(a);
    if (got != want)
      fail("out-bijection", v, "outgoing arrows do not match base under pi");
    got.clear();
    want.clear();
    for (const ArrowId& a : ball.delta.in_arrows(v))
      if (ball.pi_arrow.count(a)) got.insert(ball.pi_arrow.at(a));
    for (const ArrowId& a : q.in_arrows(pit->second)) want.insert(a);
    if (got != want)
      fail("in-bijection", v, "incoming arrows do not match base under pi");
  }
  return rep;
}

Path lift_path(const CoveringBall& ball, const Path& base_path,
               const VertexId& start_lift) {
  if (!ball.delta.has_vertex(start_lift))
    throw DomainError("lift: unknown vertex " + start_lift);
  if (ball.pi_vertex.at(start_lift) != base_path.start)
    throw DomainError("lift: " + start_lift + " does not lie over " +
                      base_path.start);
  Path lifted{start_lift, {}};
  VertexId at = start_lift;
  for (const ArrowId& a : base_path.arrows) {
    ArrowId found;
    for (const ArrowId& c : ball.delta.out_arrows(at)) {
      if (ball.pi_arrow.at(c) == a) {
        found = c;
        break;
      }
    }
    if (found.empty())
      throw OutOfWindowError("lift leaves the ball at " + at + " along " + a);
    lifted.arrows.push_back(found);
    at = ball.delta.arrow(found).target;
  }
  return lifted;
}

Walk lift_walk(const CoveringBall& ball, const Walk& base_walk,
               const VertexId& start_lift) {
  if (!ball.delta.has_vertex(start_lift))
    throw DomainError("lift: unknown vertex " + start_lift);
  if (ball.pi_vertex.at(start_lift) != base_walk.start)
    throw DomainError("lift: " + start_lift + " does not lie over " +
                      base_walk.start);
  Walk lifted{start_lift, {}};
  VertexId at = start_lift;
  for (const Step& s : base_walk.steps) {
    const std::vector<ArrowId>& cands = s.dir == Dir::forward
                                            ? ball.delta.out_arrows(at)
                                            : ball.delta.in_arrows(at);
    ArrowId found;
    for (const ArrowId& c : cands) {
      if (ball.pi_arrow.at(c) == s.arrow) {
        found = c;
        break;
      }
    }
    if (found.empty())
      throw OutOfWindowError("lift leaves the ball at " + at + " along " +
                             s.arrow);
    lifted.steps.push_back({found, s.dir});
    const Arrow& a = ball.delta.arrow(found);
    at = s.dir == Dir::forward ? a.target : a.source;
  }
  return lifted;
}

bool ball_isomorphic(const CoveringBall& b1, const CoveringBall& b2) {
  if (b1.pi_vertex.at(b1.basepoint) != b2.pi_vertex.at(b2.basepoint))
    return false;

  std::map<VertexId, VertexId> m12, m21;
  std::deque<std::pair<VertexId, VertexId>> queue;
  bool conflict = false;
  auto pair_up = [&](const VertexId& x, const VertexId& y) {
    auto i = m12.find(x);
    auto j = m21.find(y);
    if (i != m12.end() || j != m21.end()) {
      if (i == m12.end() || j == m21.end() || i->second != y || j->second != x)
        conflict = true;
      return;
    }
    if (b1.pi_vertex.at(x) != b2.pi_vertex.at(y)) {
      conflict = true;
      return;
    }
    m12[x] = y;
    m21[y] = x;
    queue.push_back({x, y});
  };
  pair_up(b1.basepoint, b2.basepoint);

  while (!queue.empty() && !conflict) {
    auto [x, y] = queue.front();
    queue.pop_front();
    bool xf = b1.delta.info(x).frontier;
    bool yf = b2.delta.info(y).frontier;
    if (xf != yf) return false;

    auto labels_of = [](const CoveringBall& b, const std::vector<ArrowId>& as) {
      std::map<ArrowId, ArrowId> m;  // base label -> delta arrow
      for (const ArrowId& a : as) m[b.pi_arrow.at(a)] = a;
      return m;
    };
    auto walk_side = [&](const std::map<ArrowId, ArrowId>& l1,
                         const std::map<ArrowId, ArrowId>& l2, bool outward) {
      if (!xf) {
        std::set<ArrowId> k1, k2;
        for (auto& [k, v] : l1) k1.insert(k);
        for (auto& [k, v] : l2) k2.insert(k);
        if (k1 != k2) {
          conflict = true;
          return;
        }
      }
      for (auto& [lab, a1] : l1) {
        auto it = l2.find(lab);
        if (it == l2.end()) continue;  // frontier vertex, partial slots
        const Arrow& e1 = b1.delta.arrow(a1);
        const Arrow& e2 = b2.delta.arrow(it->second);
        pair_up(outward ? e1.target : e1.source,
                outward ? e2.target : e2.source);
        if (conflict) return;
      }
    };
    walk_side(labels_of(b1, b1.delta.out_arrows(x)),
              labels_of(b2, b2.delta.out_arrows(y)), true);
    walk_side(labels_of(b1, b1.delta.in_arrows(x)),
              labels_of(b2, b2.delta.in_arrows(y)), false);
    if (conflict) return false;

    if (!xf) {
      if (b1.delta.info(x) != b2.delta.info(y)) return false;
      VertexId t1 = b1.delta.tau_of(x);
      VertexId t2 = b2.delta.tau_of(y);
      if (t1.empty() != t2.empty()) return false;
      if (!t1.empty()) {
        pair_up(t1, t2);
        if (conflict) return false;
      }
    }
  }
  if (conflict) return false;

  for (auto& [v, inf] : b1.delta.vertices) {
    if (inf.frontier) continue;
    auto it = m12.find(v);
    if (it == m12.end() || b2.delta.info(it->second).frontier) return false;
  }
  for (auto& [v, inf] : b2.delta.vertices) {
    if (inf.frontier) continue;
    auto it = m21.find(v);
    if (it == m21.end() || b1.delta.info(it->second).frontier) return false;
  }
  return true;
}

CoveringBall collapse_ball(const CoveringBall& ball) {
  CoveringBall r;
  CollapseResult cr = collapse(ball.delta);
  r.delta = cr.quiver;
  r.basepoint = ball.basepoint;
  r.radius = ball.radius;
  r.slack = ball.slack;
  r.kind = ball.kind;
  r.stable = ball.stable;
  r.pi_vertex = ball.pi_vertex;

  // Base parallel classes reconstructed from the observed projections; the
  // class representative is the least label, matching collapse() on the base.
  std::map<std::pair<VertexId, VertexId>, std::set<ArrowId>> bcls;
  for (auto& [id, a] : ball.delta.arrows)
    bcls[{ball.pi_vertex.at(a.source), ball.pi_vertex.at(a.target)}].insert(
        ball.pi_arrow.at(id));
  std::map<ArrowId, ArrowId> brep;
  for (auto& [st, members] : bcls)
    for (const ArrowId& a : members) brep[a] = *members.begin();

  for (auto& [id, a] : r.delta.arrows)
    r.pi_arrow[id] = brep.at(ball.pi_arrow.at(id));
  for (auto& [v, w] : ball.repr) {
    Walk nw = w;
    for (Step& s : nw.steps) s.arrow = brep.at(s.arrow);
    r.repr[v] = std::move(nw);
  }
  return r;
}

}  // namespace meshkit
