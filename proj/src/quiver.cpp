#include "meshkit/quiver.hpp"

#include <algorithm>
#include <set>

namespace meshkit {

namespace {
const std::vector<ArrowId> kNoArrows;
}

void TranslationQuiver::freeze() {
  out.clear();
  in.clear();
  tau_inv.clear();
  for (auto& [id, a] : arrows) {
    out[a.source].push_back(id);
    in[a.target].push_back(id);
  }
  for (auto& [v, lst] : out) std::sort(lst.begin(), lst.end());
  for (auto& [v, lst] : in) std::sort(lst.begin(), lst.end());
  for (auto& [x, y] : tau) tau_inv[y] = x;
}

const VertexInfo& TranslationQuiver::info(const VertexId& v) const {
  auto it = vertices.find(v);
  if (it == vertices.end()) throw DomainError("unknown vertex " + v);
  return it->second;
}

const Arrow& TranslationQuiver::arrow(const ArrowId& a) const {
  auto it = arrows.find(a);
  if (it == arrows.end()) throw DomainError("unknown arrow " + a);
  return it->second;
}

const std::vector<ArrowId>& TranslationQuiver::out_arrows(
    const VertexId& v) const {
  auto it = out.find(v);
  return it == out.end() ? kNoArrows : it->second;
}

const std::vector<ArrowId>& TranslationQuiver::in_arrows(
    const VertexId& v) const {
  auto it = in.find(v);
  return it == in.end() ? kNoArrows : it->second;
}

VertexId TranslationQuiver::tau_of(const VertexId& v) const {
  auto it = tau.find(v);
  return it == tau.end() ? VertexId{} : it->second;
}

VertexId TranslationQuiver::tau_inv_of(const VertexId& v) const {
  auto it = tau_inv.find(v);
  return it == tau_inv.end() ? VertexId{} : it->second;
}

ArrowId TranslationQuiver::sigma_of(const ArrowId& a) const {
  auto it = sigma.find(a);
  return it == sigma.end() ? ArrowId{} : it->second;
}

VertexId walk_end(const TranslationQuiver& q, const Walk& w) {
  if (!q.has_vertex(w.start)) throw DomainError("walk start unknown: " + w.start);
  VertexId at = w.start;
  for (const Step& s : w.steps) {
    const Arrow& a = q.arrow(s.arrow);
    VertexId from = s.dir == Dir::forward ? a.source : a.target;
    VertexId to = s.dir == Dir::forward ? a.target : a.source;
    if (from != at)
      throw DomainError("walk not composable at " + at + " via " + s.arrow);
    at = to;
  }
  return at;
}

bool walk_is_valid(const TranslationQuiver& q, const Walk& w) {
  try {
    walk_end(q, w);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

Walk path_to_walk(const Path& p) {
  Walk w;
  w.start = p.start;
  for (const ArrowId& a : p.arrows) w.steps.push_back({a, Dir::forward});
  return w;
}

VertexId path_end(const TranslationQuiver& q, const Path& p) {
  return walk_end(q, path_to_walk(p));
}

std::vector<VertexId> path_vertices(const TranslationQuiver& q, const Path& p) {
  std::vector<VertexId> vs{p.start};
  VertexId at = p.start;
  for (const ArrowId& id : p.arrows) {
    const Arrow& a = q.arrow(id);
    if (a.source != at) throw DomainError("path not composable at " + at);
    at = a.target;
    vs.push_back(at);
  }
  return vs;
}

ValidationReport validate(const TranslationQuiver& q) {
  ValidationReport rep;
  auto fail = [&](std::string code, std::string where, std::string detail) {
    rep.violations.push_back({std::move(code), std::move(where), std::move(detail)});
  };
  auto excuse = [&](std::string code, std::string where, std::string detail) {
    rep.frontier_warnings.push_back(
        {std::move(code), std::move(where), std::move(detail)});
  };

  for (auto& [id, a] : q.arrows) {
    if (!q.has_vertex(a.source))
      fail("dangling-source", id, "source " + a.source + " missing");
    if (!q.has_vertex(a.target))
      fail("dangling-target", id, "target " + a.target + " missing");
    if (a.source == a.target) fail("loop", id, "loop at " + a.source);
  }

  // tau: defined exactly on non-projectives, injective, image exactly the
  // non-injectives. Frontier vertices may legitimately miss entries.
  std::set<VertexId> tau_image;
  for (auto& [x, y] : q.tau) {
    if (!q.has_vertex(x) || !q.has_vertex(y)) {
      fail("tau-dangling", x, "tau " + x + " -> " + y);
      continue;
    }
    if (q.info(x).projective)
      fail("tau-on-projective", x, "tau defined on projective vertex");
    if (q.info(y).injective)
      fail("tau-image-injective", x, "tau image " + y + " is injective");
    if (!tau_image.insert(y).second)
      fail("tau-not-injective", y, "two vertices translate to " + y);
  }
  for (auto& [v, inf] : q.vertices) {
    if (!inf.projective && q.tau.find(v) == q.tau.end()) {
      if (inf.frontier)
        excuse("tau-missing", v, "non-projective frontier vertex without tau");
      else
        fail("tau-missing", v, "non-projective vertex without tau");
    }
    if (!inf.injective && tau_image.find(v) == tau_image.end()) {
      if (inf.frontier)
        excuse("tau-image-missing", v,
               "non-injective frontier vertex not in tau image");
      else
        fail("tau-image-missing", v, "non-injective vertex not in tau image");
    }
  }

  // sigma: per non-projective x, a bijection from arrows ending at x to
  // arrows starting at tau(x), with s(sigma a) = tau(x), e(sigma a) = s(a).
  for (auto& [id, s] : q.sigma) {
    if (!q.has_arrow(id) || !q.has_arrow(s)) {
      fail("sigma-dangling", id, "sigma " + id + " -> " + s);
      continue;
    }
    const Arrow& a = q.arrow(id);
    if (!q.has_vertex(a.target)) continue;
    if (q.info(a.target).projective)
      fail("sigma-at-projective", id, "sigma on arrow into projective " + a.target);
  }
  for (auto& [x, inf] : q.vertices) {
    if (inf.projective) continue;
    VertexId tx = q.tau_of(x);
    if (tx.empty()) continue;  // reported above
    std::set<ArrowId> hit;
    bool complete = true;
    for (const ArrowId& id : q.in_arrows(x)) {
      ArrowId s = q.sigma_of(id);
      if (s.empty()) {
        complete = false;
        if (inf.frontier)
          excuse("sigma-missing", id, "arrow into frontier vertex " + x);
        else
          fail("sigma-missing", id, "arrow into " + x + " without sigma");
        continue;
      }
      const Arrow& sa = q.arrow(s);
      if (sa.source != tx)
        fail("sigma-start", id, "sigma(" + id + ") starts at " + sa.source +
                                    ", expected tau(" + x + ") = " + tx);
      if (sa.target != q.arrow(id).source)
        fail("sigma-end", id, "sigma(" + id + ") ends at " + sa.target +
                                  ", expected " + q.arrow(id).source);
      if (!hit.insert(s).second)
        fail("sigma-not-injective", id, "two spokes share " + s);
    }
    if (complete) {
      for (const ArrowId& id : q.out_arrows(tx)) {
        if (hit.find(id) == hit.end()) {
          if (inf.frontier || q.info(tx).frontier)
            excuse("sigma-not-onto", x, "arrow " + id + " out of " + tx +
                                            " not a sigma image");
          else
            fail("sigma-not-onto", x,
                 "arrow " + id + " out of " + tx + " not a sigma image");
        }
      }
    }
  }
  return rep;
}

Mesh mesh_at(const TranslationQuiver& q, const VertexId& x) {
  const VertexInfo& inf = q.info(x);
  if (inf.projective) throw DomainError("mesh_at: " + x + " is projective");
  if (inf.frontier)
    throw OutOfWindowError("mesh_at: " + x + " is a frontier vertex");
  Mesh m;
  m.end = x;
  m.translate = q.tau_of(x);
  if (m.translate.empty()) throw DomainError("mesh_at: tau undefined at " + x);
  for (const ArrowId& id : q.in_arrows(x)) {
    ArrowId s = q.sigma_of(id);
    if (s.empty())
      throw DomainError("mesh_at: sigma undefined on " + id + " into " + x);
    m.spokes.push_back({id, s});
  }
  return m;
}

bool is_sectional(const TranslationQuiver& q, const Path& p) {
  std::vector<VertexId> vs = path_vertices(q, p);
  for (std::size_t i = 0; i + 2 < vs.size(); ++i) {
    const VertexId& v2 = vs[i + 2];
    if (q.info(v2).projective) continue;  // tau undefined: condition holds
    VertexId t = q.tau_of(v2);
    if (t.empty()) {
      if (q.info(v2).frontier)
        throw OutOfWindowError("is_sectional: tau unknown at frontier " + v2);
      throw DomainError("is_sectional: tau undefined at " + v2);
    }
    if (vs[i] == t) return false;
  }
  return true;
}

namespace {
void enumerate_rec(const TranslationQuiver& q, const VertexId& at,
                   const VertexId& y, int remaining, Path& cur,
                   std::vector<Path>& out) {
  if (remaining == 0) {
    if (at == y) out.push_back(cur);
    return;
  }
  for (const ArrowId& id : q.out_arrows(at)) {
    cur.arrows.push_back(id);
    enumerate_rec(q, q.arrow(id).target, y, remaining - 1, cur, out);
    cur.arrows.pop_back();
  }
}
}  // namespace

std::vector<Path> enumerate_paths(const TranslationQuiver& q, const VertexId& x,
                                  const VertexId& y, int n) {
  if (n < 0) throw DomainError("enumerate_paths: negative length");
  if (!q.has_vertex(x) || !q.has_vertex(y))
    throw DomainError("enumerate_paths: unknown endpoint");
  std::vector<Path> result;
  Path cur{x, {}};
  enumerate_rec(q, x, y, n, cur, result);
  return result;
}

CollapseResult collapse(const TranslationQuiver& q) {
  CollapseResult res;
  res.quiver.name = q.name;
  res.quiver.vertices = q.vertices;
  res.quiver.tau = q.tau;

  // Parallel class -> representative (least arrow id) and count.
  std::map<std::pair<VertexId, VertexId>, std::vector<ArrowId>> classes;
  for (auto& [id, a] : q.arrows) classes[{a.source, a.target}].push_back(id);
  std::map<ArrowId, ArrowId> rep_of;  // original arrow -> class representative
  for (auto& [st, members] : classes) {
    const ArrowId& rep = members.front();  // map order: already least
    res.quiver.arrows[rep] = q.arrows.at(rep);
    res.multiplicity[rep] = static_cast<int>(members.size());
    for (const ArrowId& m : members) rep_of[m] = rep;
  }
  // sigma induced on representatives; sigma preserves parallel classes, so
  // any member's image determines the class image.
  for (auto& [st, members] : classes) {
    ArrowId s = q.sigma_of(members.front());
    if (s.empty()) continue;
    res.quiver.sigma[rep_of.at(members.front())] = rep_of.at(s);
  }
  res.quiver.freeze();
  return res;
}

}  // namespace meshkit
