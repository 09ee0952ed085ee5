#include "meshkit/homotopy.hpp"

#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace meshkit {

namespace {

std::string walk_key(const Walk& w) {
  std::string k = w.start;
  for (const Step& s : w.steps) {
    k += '|';
    k += s.arrow;
    k += s.dir == Dir::forward ? '>' : '<';
  }
  return k;
}

VertexId step_from(const TranslationQuiver& q, const Step& s) {
  const Arrow& a = q.arrow(s.arrow);
  return s.dir == Dir::forward ? a.source : a.target;
}

VertexId step_to(const TranslationQuiver& q, const Step& s) {
  const Arrow& a = q.arrow(s.arrow);
  return s.dir == Dir::forward ? a.target : a.source;
}

// Vertex at position i (before step i) of a validated walk.
std::vector<VertexId> walk_stops(const TranslationQuiver& q, const Walk& w) {
  std::vector<VertexId> stops{w.start};
  for (const Step& s : w.steps) stops.push_back(step_to(q, s));
  return stops;
}

}  // namespace

Walk apply_move(const TranslationQuiver& q, const Walk& w,
                const HomotopyMove& m) {
  Walk r = w;
  switch (m.type) {
    case HomotopyMove::Type::cancel_delete: {
      if (m.pos + 1 >= w.steps.size())
        throw DomainError("cancel_delete out of range");
      const Step& s1 = w.steps[m.pos];
      const Step& s2 = w.steps[m.pos + 1];
      if (s1.arrow != s2.arrow || s1.dir == s2.dir)
        throw DomainError("cancel_delete: steps do not cancel");
      r.steps.erase(r.steps.begin() + static_cast<long>(m.pos),
                    r.steps.begin() + static_cast<long>(m.pos) + 2);
      break;
    }
    case HomotopyMove::Type::cancel_insert: {
      if (m.pos > w.steps.size()) throw DomainError("cancel_insert out of range");
      VertexId at = walk_stops(q, w)[m.pos];
      const Arrow& a = q.arrow(m.a);
      Dir d = m.dir;
      VertexId from = d == Dir::forward ? a.source : a.target;
      if (from != at) throw DomainError("cancel_insert: arrow not incident");
      Dir back = d == Dir::forward ? Dir::inverse : Dir::forward;
      r.steps.insert(r.steps.begin() + static_cast<long>(m.pos),
                     {Step{m.a, d}, Step{m.a, back}});
      break;
    }
    case HomotopyMove::Type::mesh_swap: {
      // Pattern at pos: either (sigma a, +)(a, +) -> (sigma b, +)(b, +) or
      // the inverse orientation (a, -)(sigma a, -) -> (b, -)(sigma b, -).
      if (m.pos + 1 >= w.steps.size()) throw DomainError("mesh_swap out of range");
      ArrowId sa = q.sigma_of(m.a);
      ArrowId sb = q.sigma_of(m.b);
      if (sa.empty() || sb.empty()) throw DomainError("mesh_swap: sigma missing");
      Step& s1 = r.steps[m.pos];
      Step& s2 = r.steps[m.pos + 1];
      if (s1.dir == Dir::forward && s2.dir == Dir::forward &&
          s1.arrow == sa && s2.arrow == m.a) {
        s1.arrow = sb;
        s2.arrow = m.b;
      } else if (s1.dir == Dir::inverse && s2.dir == Dir::inverse &&
                 s1.arrow == m.a && s2.arrow == sa) {
        s1.arrow = m.b;
        s2.arrow = sb;
      } else {
        throw DomainError("mesh_swap: pattern mismatch");
      }
      break;
    }
    case HomotopyMove::Type::parallel_swap: {
      if (m.pos >= w.steps.size()) throw DomainError("parallel_swap out of range");
      Step& s = r.steps[m.pos];
      if (s.arrow != m.a) throw DomainError("parallel_swap: arrow mismatch");
      const Arrow& a = q.arrow(m.a);
      const Arrow& b = q.arrow(m.b);
      if (a.source != b.source || a.target != b.target)
        throw DomainError("parallel_swap: arrows not parallel");
      s.arrow = m.b;
      break;
    }
  }
  walk_end(q, r);  // validate
  return r;
}

HomotopyAnswer walks_homotopic(const TranslationQuiver& q, const Walk& w1,
                               const Walk& w2, HomotopyKind kind, int bound) {
  VertexId e1 = walk_end(q, w1);
  VertexId e2 = walk_end(q, w2);
  if (w1.start != w2.start || e1 != e2)
    throw DomainError("walks_homotopic: endpoint mismatch");
  if (bound < static_cast<int>(w1.steps.size()) ||
      bound < static_cast<int>(w2.steps.size()))
    throw DomainError("walks_homotopic: bound below walk length");

  const std::string target = walk_key(w2);
  struct Prev {
    std::string parent;
    HomotopyMove move;
  };
  std::unordered_map<std::string, Prev> prev;
  std::unordered_set<std::string> seen;
  std::deque<Walk> queue;
  seen.insert(walk_key(w1));
  queue.push_back(w1);

  constexpr std::size_t kStateCap = 2'000'000;

  auto emit_chain = [&](std::string key) {
    std::vector<HomotopyMove> chain;
    while (key != walk_key(w1)) {
      auto it = prev.find(key);
      chain.push_back(it->second.move);
      key = it->second.parent;
    }
    std::reverse(chain.begin(), chain.end());
    return HomotopyAnswer{true, std::move(chain)};
  };

  if (walk_key(w1) == target) return {true, {}};

  while (!queue.empty()) {
    Walk w = std::move(queue.front());
    queue.pop_front();
    std::string wkey = walk_key(w);
    std::vector<VertexId> stops = walk_stops(q, w);

    auto try_move = [&](const HomotopyMove& m) -> bool {
      Walk nw = apply_move(q, w, m);
      std::string k = walk_key(nw);
      if (!seen.insert(k).second) return false;
      prev[k] = {wkey, m};
      if (k == target) return true;
      if (seen.size() < kStateCap) queue.push_back(std::move(nw));
      return false;
    };

    // a) delete cancelling pairs.
    for (std::size_t i = 0; i + 1 < w.steps.size(); ++i) {
      if (w.steps[i].arrow == w.steps[i + 1].arrow &&
          w.steps[i].dir != w.steps[i + 1].dir) {
        HomotopyMove m{HomotopyMove::Type::cancel_delete, i, w.steps[i].arrow,
                       {}, w.steps[i].dir};
        if (try_move(m)) return emit_chain(target);
      }
    }
    // a) insert cancelling pairs (length budget permitting).
    if (static_cast<int>(w.steps.size()) + 2 <= bound) {
      for (std::size_t i = 0; i <= w.steps.size(); ++i) {
        for (const ArrowId& a : q.out_arrows(stops[i])) {
          HomotopyMove m{HomotopyMove::Type::cancel_insert, i, a, {},
                         Dir::forward};
          if (try_move(m)) return emit_chain(target);
        }
        for (const ArrowId& a : q.in_arrows(stops[i])) {
          HomotopyMove m{HomotopyMove::Type::cancel_insert, i, a, {},
                         Dir::inverse};
          if (try_move(m)) return emit_chain(target);
        }
      }
    }
    // b) mesh swaps, both orientations.
    for (std::size_t i = 0; i + 1 < w.steps.size(); ++i) {
      const Step& s1 = w.steps[i];
      const Step& s2 = w.steps[i + 1];
      if (s1.dir == Dir::forward && s2.dir == Dir::forward &&
          q.sigma_of(s2.arrow) == s1.arrow && !s1.arrow.empty()) {
        VertexId x = q.arrow(s2.arrow).target;
        for (const ArrowId& b : q.in_arrows(x)) {
          if (b == s2.arrow || q.sigma_of(b).empty()) continue;
          HomotopyMove m{HomotopyMove::Type::mesh_swap, i, s2.arrow, b,
                         Dir::forward};
          if (try_move(m)) return emit_chain(target);
        }
      }
      if (s1.dir == Dir::inverse && s2.dir == Dir::inverse &&
          q.sigma_of(s1.arrow) == s2.arrow && !s2.arrow.empty()) {
        VertexId x = q.arrow(s1.arrow).target;
        for (const ArrowId& b : q.in_arrows(x)) {
          if (b == s1.arrow || q.sigma_of(b).empty()) continue;
          HomotopyMove m{HomotopyMove::Type::mesh_swap, i, s1.arrow, b,
                         Dir::inverse};
          if (try_move(m)) return emit_chain(target);
        }
      }
    }
    // d) parallel swaps (generic only).
    if (kind == HomotopyKind::generic) {
      for (std::size_t i = 0; i < w.steps.size(); ++i) {
        const Arrow& a = q.arrow(w.steps[i].arrow);
        for (const ArrowId& b : q.out_arrows(a.source)) {
          if (b == w.steps[i].arrow || q.arrow(b).target != a.target) continue;
          HomotopyMove m{HomotopyMove::Type::parallel_swap, i,
                         w.steps[i].arrow, b, w.steps[i].dir};
          if (try_move(m)) return emit_chain(target);
        }
      }
    }
  }
  return {false, {}};
}

}  // namespace meshkit
