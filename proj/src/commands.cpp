#include "meshkit/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "meshkit/criterion.hpp"
#include "meshkit/dimstable.hpp"
#include "meshkit/generators.hpp"
#include "meshkit/oracle.hpp"
#include "meshkit/textio.hpp"

namespace meshkit {

namespace {

using json = nlohmann::ordered_json;

std::string path_str(const Path& p) {
  if (p.arrows.empty()) return "eps@" + p.start;
  std::string s;
  for (const ArrowId& a : p.arrows) {
    if (!s.empty()) s += ',';
    s += a;
  }
  return s;
}

template <class F>
std::string render_class(const ClassVector<F>& c) {
  if (c.is_zero()) return "0";
  std::string s;
  for (auto& [i, v] : c.normal_form.entries) {
    if (!s.empty()) s += " + ";
    s += scalar_to_string(v) + "*[" + path_str(c.space->basis[i]) + "]";
  }
  return s;
}

// Comma-separated arrow list. Arrow ids may themselves contain commas (the
// generated names do), so fragments are regrouped by longest match against
// the declared arrows.
template <class Has>
std::vector<ArrowId> split_arrows(const std::string& csv, Has&& has) {
  std::vector<std::string> frags;
  std::string cur;
  std::istringstream is(csv);
  while (std::getline(is, cur, ',')) frags.push_back(cur);
  std::vector<ArrowId> arrows;
  std::size_t pos = 0;
  while (pos < frags.size()) {
    std::string acc;
    std::size_t best = frags.size();
    std::string best_id;
    for (std::size_t k = pos; k < frags.size(); ++k) {
      if (k > pos) acc += ',';
      acc += frags[k];
      if (has(acc)) {
        best = k;
        best_id = acc;
      }
    }
    if (best == frags.size())
      throw DomainError("unknown arrow " + frags[pos]);
    arrows.push_back(best_id);
    pos = best + 1;
  }
  if (arrows.empty()) throw DomainError("empty path argument");
  return arrows;
}

Path parse_path_arg(const TranslationQuiver& q, const std::string& csv) {
  std::vector<ArrowId> arrows =
      split_arrows(csv, [&](const std::string& s) { return q.has_arrow(s); });
  Path p{q.arrow(arrows.front()).source, std::move(arrows)};
  path_end(q, p);  // validates composability
  return p;
}

json violations_json(const std::vector<Violation>& vs) {
  json arr = json::array();
  for (const Violation& v : vs)
    arr.push_back({{"code", v.code}, {"where", v.where}, {"detail", v.detail}});
  return arr;
}

void print_violations(std::ostream& out, const std::string& label,
                      const std::vector<Violation>& vs) {
  for (const Violation& v : vs)
    out << label << " " << v.code << " at " << v.where << ": " << v.detail
        << "\n";
}

template <class Fn>
void with_field(Fn&& fn) {
  const char* e = std::getenv("MESHKIT_FIELD");
  std::string s = e ? e : "rational";
  if (s == "rational")
    fn(Rational{});
  else if (s == "fp")
    fn(Fp{});
  else
    throw DomainError("unknown MESHKIT_FIELD value " + s);
}

struct Args {
  std::string input, cover_file, family, tree = "a2";
  std::string from_v, to_v, base, path_csv, start_lift, vertex, fiber_base;
  std::string kind = "universal";
  int deg = 0, radius = 0, slack = -1, max_deg = 4, max_extra = 0, cap = 4;
  int i0 = 0, i1 = 1, rank = 1, rows = 2, n = 1, m = 2;
  bool json_out = false, use_oracle = false, parallel = false;
};

TranslationQuiver load(const Args& a) { return parse_quiver_file(a.input); }

HomotopyKind kind_of(const std::string& s) {
  if (s == "universal") return HomotopyKind::universal;
  if (s == "generic") return HomotopyKind::generic;
  throw DomainError("unknown covering kind " + s);
}

int cmd_validate(const Args& a, std::ostream& out) {
  TranslationQuiver q = load(a);
  ValidationReport rep = validate(q);
  if (a.json_out) {
    json j{{"ok", rep.ok()},
           {"violations", violations_json(rep.violations)},
           {"frontier_warnings", violations_json(rep.frontier_warnings)}};
    out << j.dump(2) << "\n";
  } else {
    print_violations(out, "violation", rep.violations);
    print_violations(out, "warning", rep.frontier_warnings);
    out << (rep.ok() ? "ok" : "invalid") << "\n";
  }
  return rep.ok() ? 0 : 1;
}

int cmd_generate(const Args& a, std::ostream& out) {
  TranslationQuiver q;
  if (a.family == "ztree") {
    TreeSpec t;
    if (a.tree == "d4")
      t = TreeSpec::d4();
    else if (a.tree.size() > 1 && a.tree[0] == 'a')
      t = TreeSpec::line(std::stoi(a.tree.substr(1)));
    else
      throw DomainError("unknown tree " + a.tree);
    q = gen_ztree(t, a.i0, a.i1);
  } else if (a.family == "tube") {
    q = gen_tube(a.rank, a.rows);
  } else if (a.family == "triangle") {
    q = gen_triangle_an(a.n);
  } else if (a.family == "kronecker") {
    q = gen_kronecker(a.m);
  } else {
    throw DomainError("unknown family " + a.family);
  }
  out << emit_quiver(q);
  return 0;
}

int cmd_collapse(const Args& a, std::ostream& out) {
  TranslationQuiver q = load(a);
  CollapseResult r = collapse(q);
  if (a.json_out) {
    json mult = json::object();
    for (auto& [arrow, count] : r.multiplicity) mult[arrow] = count;
    json j{{"quiver", emit_quiver(r.quiver)}, {"multiplicity", mult}};
    out << j.dump(2) << "\n";
  } else {
    out << emit_quiver(r.quiver);
    for (auto& [arrow, count] : r.multiplicity)
      out << "# mult " << arrow << " " << count << "\n";
  }
  return 0;
}

int cmd_cover(const Args& a, std::ostream& out) {
  TranslationQuiver q = load(a);
  CoveringBall ball =
      build_covering_ball(q, a.base, a.radius, kind_of(a.kind), a.slack);
  out << emit_covering(ball);
  return 0;
}

int cmd_check_cover(const Args& a, std::ostream& out) {
  TranslationQuiver q = load(a);
  CoveringBall ball = parse_covering_file(a.cover_file);
  ValidationReport rep = check_covering(ball, q);
  if (a.json_out) {
    json j{{"ok", rep.ok()},
           {"stable", ball.stable},
           {"violations", violations_json(rep.violations)}};
    out << j.dump(2) << "\n";
  } else {
    print_violations(out, "violation", rep.violations);
    out << (rep.ok() ? "ok" : "invalid") << "\n";
  }
  return rep.ok() ? 0 : 1;
}

int cmd_lift(const Args& a, std::ostream& out) {
  CoveringBall ball = parse_covering_file(a.cover_file);
  // the base path is spelled with base arrow ids; rebuild it over pi
  std::set<ArrowId> base_arrows;
  for (auto& [da, ba] : ball.pi_arrow) base_arrows.insert(ba);
  std::vector<ArrowId> arrows = split_arrows(
      a.path_csv, [&](const std::string& s) { return base_arrows.count(s) > 0; });
  if (!ball.pi_vertex.count(a.start_lift))
    throw DomainError("unknown vertex " + a.start_lift);
  Path base{ball.pi_vertex.at(a.start_lift), arrows};
  Path lifted = lift_path(ball, base, a.start_lift);
  VertexId end = path_end(ball.delta, lifted);
  if (a.json_out) {
    json j{{"path", path_str(lifted)}, {"end", end}};
    out << j.dump(2) << "\n";
  } else {
    out << path_str(lifted) << " -> " << end << "\n";
  }
  return 0;
}

template <class F>
int cmd_mesh_dim(const Args& a, std::ostream& out) {
  TranslationQuiver q = load(a);
  MeshEngine<F> eng(q);
  auto hs = eng.hom_space(a.from_v, a.to_v, a.deg);
  json j{{"x", a.from_v},
         {"y", a.to_v},
         {"deg", a.deg},
         {"dim", hs->quotient_dim},
         {"exact", hs->exact}};
  bool agree = true;
  if (a.use_oracle) {
    int od = oracle_hom_dim(q, a.from_v, a.to_v, a.deg);
    agree = od == hs->quotient_dim;
    j["oracle_dim"] = od;
    j["agree"] = agree;
  }
  if (a.json_out)
    out << j.dump(2) << "\n";
  else
    out << "dim " << hs->quotient_dim << " exact "
        << (hs->exact ? "true" : "false") << "\n";
  return agree ? 0 : 1;
}

template <class F>
int cmd_compose(const Args& a, std::ostream& out) {
  TranslationQuiver q = load(a);
  MeshEngine<F> eng(q);
  Path p = parse_path_arg(q, a.path_csv);
  // fold the degree-1 classes left to right
  ClassVector<F> acc = eng.class_of_path({p.start, {p.arrows.front()}});
  for (std::size_t i = 1; i < p.arrows.size(); ++i) {
    VertexId at = acc.space->y;
    acc = eng.compose(eng.class_of_path({at, {p.arrows[i]}}), acc);
  }
  json j{{"dim", acc.space->quotient_dim},
         {"exact", acc.space->exact},
         {"class", acc.is_zero() ? "zero" : "nonzero"},
         {"normal_form", render_class(acc)}};
  if (a.json_out)
    out << j.dump(2) << "\n";
  else
    out << (acc.is_zero() ? "zero" : "nonzero") << " : " << render_class(acc)
        << "\n";
  return 0;
}

template <class F>
int cmd_verdict(const Args& a, std::ostream& out) {
  TranslationQuiver q = load(a);
  MeshEngine<F> eng(q);
  Path p = parse_path_arg(q, a.path_csv);
  RadicalVerdict<F> v = radical_verdict(eng, p);
  std::string verdict = v.verdict == Radical::in_rad_n_plus_1
                            ? "in_rad_n_plus_1"
                            : "exactly_rad_n";
  json j{{"path", path_str(p)},
         {"n", v.n},
         {"verdict", verdict},
         {"sectional", v.sectional},
         {"exact", true},
         {"normal_form", render_class(v.cls)}};
  if (a.json_out)
    out << j.dump(2) << "\n";
  else
    out << verdict << (v.sectional ? " sectional" : "") << "\n";
  return 0;
}

template <class F>
int cmd_depth(const Args& a, std::ostream& out) {
  TranslationQuiver q = load(a);
  MeshEngine<F> eng(q);
  Path p = parse_path_arg(q, a.path_csv);
  std::optional<DepthCertificate<F>> cert =
      depth_certificate(eng, p, a.max_extra, a.cap);
  json j{{"found", cert.has_value()}};
  if (cert) {
    j["total_degree"] = cert->total_degree;
    j["positions"] = cert->positions;
    json subs = json::array();
    for (std::size_t i = 0; i < cert->substitutes.size(); ++i)
      subs.push_back({{"position", cert->positions[i]},
                      {"degree", cert->substitutes[i].degree()},
                      {"class", render_class(cert->substitutes[i])}});
    j["substitutes"] = subs;
    j["witness"] = render_class(cert->witness);
  }
  bool agree = true;
  if (a.use_oracle) {
    OracleDepthResult od = oracle_depth_search(q, p, a.max_extra, a.cap);
    agree = od.found == cert.has_value() &&
            (!od.found || od.total_degree == cert->total_degree);
    j["oracle"] = {{"found", od.found}, {"total_degree", od.total_degree}};
    j["agree"] = agree;
  }
  if (a.json_out)
    out << j.dump(2) << "\n";
  else if (cert)
    out << "certificate of total degree " << cert->total_degree << "\n";
  else
    out << "none\n";
  return agree ? 0 : 1;
}

template <class F>
int cmd_fiber_sum(const Args& a, std::ostream& out) {
  CoveringBall ball = parse_covering_file(a.cover_file);
  MeshEngine<F> eng(ball.delta);
  FiberSum<F> fs = theoremB_fiber_sum(eng, ball, a.from_v, a.fiber_base, a.deg);
  json per = json::object();
  for (auto& [z, d] : fs.per_fiber) per[z] = d;
  json j{{"x", a.from_v},
         {"Y", a.fiber_base},
         {"deg", a.deg},
         {"sum", fs.sum},
         {"per_fiber", per},
         {"exact", true}};
  if (a.json_out)
    out << j.dump(2) << "\n";
  else
    out << "sum " << fs.sum << "\n";
  return 0;
}

template <class F>
int cmd_mesh2(const Args& a, std::ostream& out) {
  TranslationQuiver q = load(a);
  MeshEngine<F> eng(q);
  MeshAnalysis r = n2_mesh_analysis(eng, a.vertex, a.cap);
  json j{{"vertex", a.vertex},
         {"cap", r.cap},
         {"cond3", r.cond3},
         {"cond4", r.cond4}};
  if (a.json_out)
    out << j.dump(2) << "\n";
  else
    out << "cond3 " << (r.cond3 ? "true" : "false") << " cond4 "
        << (r.cond4 ? "true" : "false") << "\n";
  return 0;
}

template <class F>
int cmd_dims_table(const Args& a, std::ostream& out) {
  TranslationQuiver q = load(a);
  std::vector<DimsRow<F>> rows = dims_table<F>(q, a.max_deg, a.parallel);
  if (a.json_out) {
    json arr = json::array();
    for (const DimsRow<F>& r : rows) {
      json dims = json::array();
      for (auto& d : r.dims)
        dims.push_back({{"dim", d.dim}, {"exact", d.exact}});
      arr.push_back({{"x", r.x}, {"y", r.y}, {"dims", dims}});
    }
    out << json{{"max_deg", a.max_deg}, {"rows", arr}}.dump(2) << "\n";
  } else {
    for (const DimsRow<F>& r : rows) {
      out << r.x << " -> " << r.y << " :";
      for (auto& d : r.dims) out << " " << d.dim << (d.exact ? "" : "*");
      out << "\n";
    }
  }
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"translation quiver and mesh category toolkit"};
  app.require_subcommand(1);
  Args a;
  int code = 0;
  auto run = [&](auto&& fn) { return [&a, &code, fn]() { code = fn(); }; };

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input)
      sub->add_option("--input", a.input, "quiver file")->required();
    sub->add_flag("--json", a.json_out, "emit a JSON document");
  };

  auto* v = app.add_subcommand("validate", "check translation quiver axioms");
  add_common(v, true);
  v->callback(run([&] { return cmd_validate(a, out); }));

  auto* g = app.add_subcommand("generate", "emit a standard family");
  add_common(g, false);
  g->add_option("--family", a.family, "ztree|tube|triangle|kronecker")
      ->required();
  g->add_option("--tree", a.tree, "ztree tree: aN or d4");
  g->add_option("--from", a.i0, "ztree window start");
  g->add_option("--to", a.i1, "ztree window end");
  g->add_option("--rank", a.rank, "tube rank p");
  g->add_option("--rows", a.rows, "tube rows h");
  g->add_option("--n", a.n, "triangle size");
  g->add_option("--m", a.m, "kronecker window length");
  g->callback(run([&] { return cmd_generate(a, out); }));

  auto* c = app.add_subcommand("collapse", "collapse parallel arrows");
  add_common(c, true);
  c->callback(run([&] { return cmd_collapse(a, out); }));

  auto* cov = app.add_subcommand("cover", "build a covering ball");
  add_common(cov, true);
  cov->add_option("--base", a.base, "basepoint vertex")->required();
  cov->add_option("--radius", a.radius, "ball radius")->required();
  cov->add_option("--slack", a.slack, "closure slack (default 2*radius)");
  cov->add_option("--kind", a.kind, "universal|generic");
  cov->callback(run([&] { return cmd_cover(a, out); }));

  auto* cc = app.add_subcommand("check-cover", "verify covering axioms");
  add_common(cc, true);
  cc->add_option("--cover", a.cover_file, "covering file")->required();
  cc->callback(run([&] { return cmd_check_cover(a, out); }));

  auto* lf = app.add_subcommand("lift", "lift a base path into a ball");
  lf->add_flag("--json", a.json_out, "emit a JSON document");
  lf->add_option("--cover", a.cover_file, "covering file")->required();
  lf->add_option("--path", a.path_csv, "base arrows, comma separated")
      ->required();
  lf->add_option("--start", a.start_lift, "delta start vertex")->required();
  lf->callback(run([&] { return cmd_lift(a, out); }));

  auto* md = app.add_subcommand("mesh-dim", "graded hom space dimension");
  add_common(md, true);
  md->add_option("--from", a.from_v, "source vertex")->required();
  md->add_option("--to", a.to_v, "target vertex")->required();
  md->add_option("--deg", a.deg, "degree")->required();
  md->add_flag("--oracle", a.use_oracle, "cross-check against the oracle")
      ->group("");
  md->callback(run([&] {
    int r = 0;
    with_field([&](auto tag) {
      r = cmd_mesh_dim<decltype(tag)>(a, out);
    });
    return r;
  }));

  auto* cp = app.add_subcommand("compose", "compose arrow classes");
  add_common(cp, true);
  cp->add_option("--path", a.path_csv, "arrows, comma separated")->required();
  cp->callback(run([&] {
    int r = 0;
    with_field([&](auto tag) { r = cmd_compose<decltype(tag)>(a, out); });
    return r;
  }));

  auto* vd = app.add_subcommand("verdict", "radical power verdict");
  add_common(vd, true);
  vd->add_option("--path", a.path_csv, "arrows, comma separated")->required();
  vd->callback(run([&] {
    int r = 0;
    with_field([&](auto tag) { r = cmd_verdict<decltype(tag)>(a, out); });
    return r;
  }));

  auto* dp = app.add_subcommand("depth", "search for a depth certificate");
  add_common(dp, true);
  dp->add_option("--path", a.path_csv, "arrows, comma separated")->required();
  dp->add_option("--max-extra", a.max_extra, "extra degree budget")->required();
  dp->add_option("--cap", a.cap, "per-position degree cap")->required();
  dp->add_flag("--oracle", a.use_oracle, "cross-check against the oracle")
      ->group("");
  dp->callback(run([&] {
    int r = 0;
    with_field([&](auto tag) { r = cmd_depth<decltype(tag)>(a, out); });
    return r;
  }));

  auto* fsum = app.add_subcommand("fiber-sum", "covering fiber dimension sum");
  fsum->add_flag("--json", a.json_out, "emit a JSON document");
  fsum->add_option("--cover", a.cover_file, "covering file")->required();
  fsum->add_option("--x", a.from_v, "delta source vertex")->required();
  fsum->add_option("--Y", a.fiber_base, "base target vertex")->required();
  fsum->add_option("--deg", a.deg, "degree")->required();
  fsum->callback(run([&] {
    int r = 0;
    with_field([&](auto tag) { r = cmd_fiber_sum<decltype(tag)>(a, out); });
    return r;
  }));

  auto* m2 = app.add_subcommand("mesh2", "n=2 mesh-level analysis");
  add_common(m2, true);
  m2->add_option("--vertex", a.vertex, "mesh end vertex")->required();
  m2->add_option("--cap", a.cap, "degree sweep bound")->required();
  m2->callback(run([&] {
    int r = 0;
    with_field([&](auto tag) { r = cmd_mesh2<decltype(tag)>(a, out); });
    return r;
  }));

  auto* dt = app.add_subcommand("dims-table", "graded dims over all pairs");
  add_common(dt, true);
  dt->add_option("--max-deg", a.max_deg, "max degree");
  dt->add_flag("--parallel", a.parallel, "sweep pairs with OpenMP");
  dt->callback(run([&] {
    int r = 0;
    with_field([&](auto tag) { r = cmd_dims_table<decltype(tag)>(a, out); });
    return r;
  }));

  std::vector<const char*> argv;
  argv.push_back("meshkit");
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}

}  // namespace meshkit
