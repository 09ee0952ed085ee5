#include "meshkit/textio.hpp"

#include <fstream>
#include <sstream>

namespace meshkit {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

// Shared core: parses quiver lines, hands unknown keywords to `extra` (used
// by the covering format); extra == nullptr makes them errors.
struct QuiverReader {
  TranslationQuiver q;
  bool saw_header = false;

  // returns false when the keyword is not a quiver keyword
  bool line(int no, const std::vector<std::string>& t) {
    auto err = [&](const std::string& m) { throw ParseError(no, m); };
    const std::string& kw = t[0];
    if (kw == "quiver") {
      if (t.size() != 2) err("expected: quiver <name>");
      if (saw_header) err("duplicate quiver header");
      saw_header = true;
      q.name = t[1];
      return true;
    }
    if (kw == "vertex") {
      if (t.size() < 2) err("expected: vertex <id> [proj] [inj] [frontier]");
      if (q.vertices.count(t[1])) err("duplicate vertex " + t[1]);
      VertexInfo inf;
      for (std::size_t i = 2; i < t.size(); ++i) {
        if (t[i] == "proj")
          inf.projective = true;
        else if (t[i] == "inj")
          inf.injective = true;
        else if (t[i] == "frontier")
          inf.frontier = true;
        else
          err("unknown vertex flag " + t[i]);
      }
      q.vertices[t[1]] = inf;
      return true;
    }
    if (kw == "arrow") {
      if (t.size() != 6 || t[2] != ":" || t[4] != "->")
        err("expected: arrow <id> : <src> -> <tgt>");
      if (q.arrows.count(t[1])) err("duplicate arrow " + t[1]);
      if (!q.vertices.count(t[3])) err("arrow source " + t[3] + " not declared");
      if (!q.vertices.count(t[5])) err("arrow target " + t[5] + " not declared");
      q.arrows[t[1]] = {t[3], t[5]};
      return true;
    }
    if (kw == "tau") {
      if (t.size() != 4 || t[2] != "->") err("expected: tau <x> -> <y>");
      if (!q.vertices.count(t[1])) err("tau source " + t[1] + " not declared");
      if (!q.vertices.count(t[3])) err("tau target " + t[3] + " not declared");
      if (q.tau.count(t[1])) err("duplicate tau for " + t[1]);
      q.tau[t[1]] = t[3];
      return true;
    }
    if (kw == "sigma") {
      if (t.size() != 4 || t[2] != "->") err("expected: sigma <a> -> <b>");
      if (!q.arrows.count(t[1])) err("sigma source " + t[1] + " not declared");
      if (!q.arrows.count(t[3])) err("sigma target " + t[3] + " not declared");
      if (q.sigma.count(t[1])) err("duplicate sigma for " + t[1]);
      q.sigma[t[1]] = t[3];
      return true;
    }
    return false;
  }

  TranslationQuiver finish(int no) {
    if (!saw_header) throw ParseError(no, "missing quiver header");
    q.freeze();
    return std::move(q);
  }
};

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(0, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit_quiver_body(std::ostream& os, const TranslationQuiver& q) {
  os << "quiver " << q.name << "\n";
  for (auto& [v, inf] : q.vertices) {
    os << "vertex " << v;
    if (inf.projective) os << " proj";
    if (inf.injective) os << " inj";
    if (inf.frontier) os << " frontier";
    os << "\n";
  }
  for (auto& [id, a] : q.arrows)
    os << "arrow " << id << " : " << a.source << " -> " << a.target << "\n";
  for (auto& [x, y] : q.tau) os << "tau " << x << " -> " << y << "\n";
  for (auto& [a, b] : q.sigma) os << "sigma " << a << " -> " << b << "\n";
}

}  // namespace

TranslationQuiver parse_quiver(const std::string& text) {
  QuiverReader reader;
  std::istringstream is(text);
  std::string raw;
  int no = 0;
  while (std::getline(is, raw)) {
    ++no;
    std::vector<std::string> t = tokenize(raw);
    if (t.empty()) continue;
    if (!reader.line(no, t)) throw ParseError(no, "unknown keyword " + t[0]);
  }
  return reader.finish(no);
}

TranslationQuiver parse_quiver_file(const std::string& path) {
  return parse_quiver(read_file(path));
}

std::string emit_quiver(const TranslationQuiver& q) {
  std::ostringstream os;
  emit_quiver_body(os, q);
  return os.str();
}

CoveringBall parse_covering(const std::string& text) {
  QuiverReader reader;
  CoveringBall ball;
  bool saw_basepoint = false, saw_radius = false;
  std::istringstream is(text);
  std::string raw;
  int no = 0;
  while (std::getline(is, raw)) {
    ++no;
    std::vector<std::string> t = tokenize(raw);
    if (t.empty()) continue;
    if (reader.line(no, t)) continue;
    auto err = [&](const std::string& m) { throw ParseError(no, m); };
    const std::string& kw = t[0];
    if (kw == "basepoint") {
      if (t.size() != 2) err("expected: basepoint <v>");
      if (!reader.q.vertices.count(t[1])) err("basepoint " + t[1] + " not declared");
      ball.basepoint = t[1];
      saw_basepoint = true;
    } else if (kw == "radius") {
      if (t.size() != 2) err("expected: radius <r>");
      ball.radius = std::stoi(t[1]);
      saw_radius = true;
    } else if (kw == "slack") {
      if (t.size() != 2) err("expected: slack <s>");
      ball.slack = std::stoi(t[1]);
    } else if (kw == "kind") {
      if (t.size() != 2) err("expected: kind <universal|generic>");
      if (t[1] == "universal")
        ball.kind = HomotopyKind::universal;
      else if (t[1] == "generic")
        ball.kind = HomotopyKind::generic;
      else
        err("unknown kind " + t[1]);
    } else if (kw == "stable") {
      if (t.size() != 2 || (t[1] != "true" && t[1] != "false"))
        err("expected: stable <true|false>");
      ball.stable = t[1] == "true";
    } else if (kw == "pi") {
      if (t.size() != 4 || t[2] != "->") err("expected: pi <v> -> <base>");
      if (!reader.q.vertices.count(t[1])) err("pi source " + t[1] + " not declared");
      if (ball.pi_vertex.count(t[1])) err("duplicate pi for " + t[1]);
      ball.pi_vertex[t[1]] = t[3];
    } else if (kw == "pi-arrow") {
      if (t.size() != 4 || t[2] != "->") err("expected: pi-arrow <a> -> <base>");
      if (!reader.q.arrows.count(t[1]))
        err("pi-arrow source " + t[1] + " not declared");
      if (ball.pi_arrow.count(t[1])) err("duplicate pi-arrow for " + t[1]);
      ball.pi_arrow[t[1]] = t[3];
    } else {
      err("unknown keyword " + kw);
    }
  }
  if (!saw_basepoint) throw ParseError(no, "missing basepoint");
  if (!saw_radius) throw ParseError(no, "missing radius");
  ball.delta = reader.finish(no);
  for (auto& [v, inf] : ball.delta.vertices)
    if (!ball.pi_vertex.count(v)) throw ParseError(no, "missing pi for " + v);
  for (auto& [a, ar] : ball.delta.arrows)
    if (!ball.pi_arrow.count(a)) throw ParseError(no, "missing pi-arrow for " + a);
  return ball;
}

CoveringBall parse_covering_file(const std::string& path) {
  return parse_covering(read_file(path));
}

std::string emit_covering(const CoveringBall& ball) {
  std::ostringstream os;
  emit_quiver_body(os, ball.delta);
  os << "basepoint " << ball.basepoint << "\n";
  os << "radius " << ball.radius << "\n";
  os << "slack " << ball.slack << "\n";
  os << "kind " << (ball.kind == HomotopyKind::universal ? "universal" : "generic")
     << "\n";
  os << "stable " << (ball.stable ? "true" : "false") << "\n";
  for (auto& [v, b] : ball.pi_vertex) os << "pi " << v << " -> " << b << "\n";
  for (auto& [a, b] : ball.pi_arrow)
    os << "pi-arrow " << a << " -> " << b << "\n";
  return os.str();
}

}  // namespace meshkit
