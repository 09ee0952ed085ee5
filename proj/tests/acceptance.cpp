// End-to-end acceptance suite: ten independent checks, one PASS/FAIL line
// each, nonzero exit when any fails. Everything is recomputed from scratch;
// the brute-force reference implementations cross-check the engine wherever
// they are cheap enough.
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "meshkit/cli.hpp"
#include "meshkit/criterion.hpp"
#include "meshkit/field.hpp"
#include "meshkit/generators.hpp"
#include "meshkit/oracle.hpp"
#include "meshkit/textio.hpp"

using namespace meshkit;

namespace {

int failures = 0;

void report(int idx, const char* name, bool ok, const std::string& note) {
  std::printf("%2d %-28s %s%s%s\n", idx, name, ok ? "PASS" : "FAIL",
              note.empty() ? "" : "  ", note.c_str());
  if (!ok) ++failures;
}

std::vector<TranslationQuiver> generator_grid() {
  std::vector<TranslationQuiver> qs;
  for (const TreeSpec& t : {TreeSpec::line(2), TreeSpec::line(3),
                            TreeSpec::d4()})
    for (auto [i0, i1] : {std::pair{-3, 3}, std::pair{0, 6}, std::pair{-2, 1}})
      qs.push_back(gen_ztree(t, i0, i1));
  for (int p = 1; p <= 3; ++p)
    for (int h = 2; h <= 6; ++h) qs.push_back(gen_tube(p, h));
  for (int n = 1; n <= 6; ++n) qs.push_back(gen_triangle_an(n));
  for (int m = 2; m <= 6; ++m) qs.push_back(gen_kronecker(m));
  return qs;
}

// 1: every generated quiver satisfies the axioms
void crit_generators() {
  int bad = 0;
  for (const auto& q : generator_grid())
    if (!validate(q).ok()) ++bad;
  report(1, "generator-validity", bad == 0,
         bad ? std::to_string(bad) + " invalid" : "");
}

// 2: the mesh composite vanishes at every complete mesh
void crit_mesh_vanishing() {
  int checked = 0, bad = 0;
  for (const auto& q : generator_grid()) {
    MeshEngine<Rational> eng(q);
    for (auto& [z, inf] : q.vertices) {
      if (inf.projective || inf.frontier) continue;
      Mesh m = mesh_at(q, z);
      if (!eng.is_exact(m.translate, z, 2)) continue;
      auto hs = eng.hom_space(m.translate, z, 2);
      SparseVec<Rational> acc;
      acc.dim = static_cast<int>(hs->basis.size());
      for (auto& [alpha, salpha] : m.spokes)
        acc = acc + eng.class_of_path({m.translate, {salpha, alpha}})
                        .normal_form;
      ++checked;
      if (!acc.is_zero()) ++bad;
    }
  }
  report(2, "mesh-vanishing", checked > 0 && bad == 0,
         std::to_string(checked) + " meshes");
}

// 3: sectional composites with trustworthy hom spaces never vanish
void crit_sectional() {
  int checked = 0, bad = 0;
  std::vector<TranslationQuiver> qs = {gen_triangle_an(5), gen_tube(3, 6),
                                       gen_ztree(TreeSpec::line(3), -4, 5)};
  for (const auto& q : qs) {
    MeshEngine<Rational> eng(q);
    for (auto& [x, xi] : q.vertices)
      for (auto& [y, yi] : q.vertices)
        for (int n = 1; n <= 6; ++n) {
          if (!eng.is_exact(x, y, n)) continue;
          for (const Path& p : enumerate_paths(q, x, y, n)) {
            bool sect;
            try {
              sect = is_sectional(q, p);
            } catch (const OutOfWindowError&) {
              continue;
            }
            if (!sect) continue;
            ++checked;
            if (eng.class_of_path(p).is_zero()) ++bad;
          }
        }
  }
  report(3, "sectional-nonvanishing", checked > 0 && bad == 0,
         std::to_string(checked) + " paths");
}

// 4: vanishing class == membership in the relation span == deeper-radical
//    verdict == brute-force recomputation, for every short path
void crit_coherence() {
  auto q = gen_triangle_an(4);
  MeshEngine<Rational> eng(q);
  int checked = 0, bad = 0;
  for (auto& [x, xi] : q.vertices)
    for (auto& [y, yi] : q.vertices)
      for (int n = 1; n <= 5; ++n)
        for (const Path& p : enumerate_paths(q, x, y, n)) {
          auto hs = eng.hom_space(x, y, n);
          auto cls = eng.class_of_path(p);
          auto unit = SparseVec<Rational>::unit(
              static_cast<int>(hs->basis.size()), hs->column_of(p));
          bool in_span = membership(unit, hs->relations).inside;
          auto v = radical_verdict(eng, p);
          bool deep = v.verdict == Radical::in_rad_n_plus_1;
          bool ref = oracle_class_is_zero(q, p);
          ++checked;
          if (cls.is_zero() != in_span || in_span != deep || deep != ref)
            ++bad;
        }
  report(4, "vanishing-coherence", checked > 0 && bad == 0,
         std::to_string(checked) + " paths");
}

// 5: covering axioms and stability across bases, radii and both homotopies
void crit_covering_axioms() {
  int bad = 0, built = 0;
  std::vector<std::pair<TranslationQuiver, VertexId>> bases;
  bases.push_back({gen_tube(2, 4), "(0,1)"});
  bases.push_back({gen_tube(1, 3), "(0,1)"});
  bases.push_back({gen_kronecker(4), "v0"});
  for (auto& [q, bp] : bases)
    for (int r = 0; r <= 5; ++r)
      for (HomotopyKind k : {HomotopyKind::universal, HomotopyKind::generic}) {
        auto ball = build_covering_ball(q, bp, r, k);
        ++built;
        if (!ball.stable || !check_covering(ball, q).ok()) ++bad;
      }
  report(5, "covering-axioms", built == 36 && bad == 0,
         std::to_string(built) + " balls");
}

// 6: collapsing commutes with covering, and the two homotopies differ
void crit_collapse_exchange() {
  auto q = gen_kronecker(4);
  auto gen4 = build_covering_ball(q, "v0", 4, HomotopyKind::generic);
  auto collapsedBase = collapse(q).quiver;
  auto uni4 = build_covering_ball(collapsedBase, "v0", 4,
                                  HomotopyKind::universal);
  bool same = ball_isomorphic(collapse_ball(gen4), uni4);
  auto uni3 = build_covering_ball(q, "v0", 3, HomotopyKind::universal);
  auto gen3 = build_covering_ball(q, "v0", 3, HomotopyKind::generic);
  bool differ = !ball_isomorphic(uni3, gen3);
  report(6, "collapse-exchange", same && differ,
         same ? (differ ? "" : "kinds coincide") : "exchange broken");
}

// 7: fiber dimension sums match the base dimensions, independent of the
//    representative
void crit_fiber_sums() {
  int checked = 0, bad = 0;
  for (int p : {1, 2}) {
    auto q = gen_tube(p, 4);
    auto ball = build_covering_ball(q, "(0,1)", 8, HomotopyKind::universal);
    MeshEngine<Rational> base(q);
    MeshEngine<Rational> eng(ball.delta);
    for (auto& [v, bx] : ball.pi_vertex) {
      if (ball.delta.info(v).frontier) continue;
      for (auto& [by, byi] : q.vertices)
        for (int n = 0; n <= 6; ++n) {
          if (!base.is_exact(bx, by, n)) continue;
          FiberSum<Rational> fs;
          try {
            fs = theoremB_fiber_sum(eng, ball, v, by, n);
          } catch (const OutOfWindowError&) {
            continue;
          }
          ++checked;
          if (fs.sum != base.hom_space(bx, by, n)->quotient_dim) ++bad;
        }
    }
  }
  report(7, "fiber-sum-identity", checked > 0 && bad == 0,
         std::to_string(checked) + " instances");
}

// 8: depth certificates are sound and match the exhaustive reference on
//    randomly sampled vanishing composites
void crit_depth_soundness() {
  auto q = gen_tube(2, 6);
  MeshEngine<Rational> eng(q);
  std::mt19937 rng(20260823);
  std::vector<VertexId> verts;
  for (auto& [v, inf] : q.vertices) verts.push_back(v);
  int sampled = 0, bad = 0, found = 0, guard = 0;
  while (sampled < 50 && ++guard < 100000) {
    VertexId at = verts[rng() % verts.size()];
    int len = 2 + static_cast<int>(rng() % 3);  // 2..4
    Path p{at, {}};
    bool dead = false;
    for (int i = 0; i < len; ++i) {
      const auto& outs = q.out_arrows(at);
      if (outs.empty()) {
        dead = true;
        break;
      }
      const ArrowId& a = outs[rng() % outs.size()];
      p.arrows.push_back(a);
      at = q.arrow(a).target;
    }
    if (dead) continue;
    if (!eng.is_exact(p.start, at, len)) continue;
    if (!oracle_class_is_zero(q, p)) continue;
    std::optional<DepthCertificate<Rational>> cert;
    try {
      cert = depth_certificate(eng, p, 4, 4);
    } catch (const OutOfWindowError&) {
      continue;
    }
    auto ref = oracle_depth_search(q, p, 4, 4);
    ++sampled;
    if (cert.has_value() != ref.found) {
      ++bad;
      continue;
    }
    if (cert) {
      ++found;
      bool sound = !cert->witness.is_zero() &&
                   cert->witness.degree() == cert->total_degree &&
                   cert->total_degree == ref.total_degree;
      int total = p.length();
      for (auto& s : cert->substitutes) total += s.degree() - 1;
      if (!sound || total != cert->total_degree) ++bad;
    }
  }
  report(8, "depth-certificates", sampled == 50 && bad == 0,
         std::to_string(sampled) + " sampled, " + std::to_string(found) +
             " certified");
}

// 9: pinned dimension values, each confirmed by the reference implementation
void crit_pinned_values() {
  bool ok = true;
  auto za3 = gen_ztree(TreeSpec::line(3), -4, 5);
  MeshEngine<Rational> e3(za3);
  ok &= e3.hom_space("(0,2)", "(1,2)", 2)->quotient_dim == 1;
  ok &= oracle_hom_dim(za3, "(0,2)", "(1,2)", 2) == 1;

  auto za2 = gen_ztree(TreeSpec::line(2), -3, 4);
  MeshEngine<Rational> e2(za2);
  ok &= e2.hom_space("(0,1)", "(1,1)", 2)->quotient_dim == 0;
  ok &= oracle_hom_dim(za2, "(0,1)", "(1,1)", 2) == 0;

  auto tri = gen_triangle_an(3);
  MeshEngine<Rational> et(tri);
  ok &= et.hom_space("(2,3)", "(1,1)", 3)->quotient_dim == 0;
  ok &= oracle_hom_dim(tri, "(2,3)", "(1,1)", 3) == 0;
  report(9, "pinned-values", ok, "");
}

// 10: text round-trips are exact and the whole CLI surface is deterministic
void crit_determinism() {
  bool ok = true;
  const std::string dir = FIXTURE_DIR;
  for (const char* name :
       {"za2.quiver", "za3.quiver", "triangle_a3.quiver", "kronecker4.quiver",
        "tube23.quiver", "corrupted.quiver"}) {
    auto q = parse_quiver_file(dir + "/" + name);
    ok &= parse_quiver(emit_quiver(q)).vertices == q.vertices;
    ok &= emit_quiver(parse_quiver(emit_quiver(q))) == emit_quiver(q);
  }

  auto sweep = [&dir]() {
    std::ostringstream all, err;
    std::vector<std::vector<std::string>> cmds = {
        {"validate", "--input", dir + "/za3.quiver", "--json"},
        {"mesh-dim", "--input", dir + "/za3.quiver", "--from", "(0,2)",
         "--to", "(1,2)", "--deg", "2", "--json", "--oracle"},
        {"verdict", "--input", dir + "/za2.quiver", "--path", "a0,b0",
         "--json"},
        {"collapse", "--input", dir + "/kronecker4.quiver", "--json"},
        {"cover", "--input", dir + "/kronecker4.quiver", "--base", "v0",
         "--radius", "3", "--kind", "generic"},
        {"dims-table", "--input", dir + "/triangle_a3.quiver", "--max-deg",
         "4", "--json", "--parallel"},
        {"depth", "--input", dir + "/triangle_a3.quiver", "--path",
         "l(2,2),r(1,2)", "--max-extra", "3", "--cap", "4", "--json",
         "--oracle"},
    };
    for (auto& c : cmds) run_command(c, all, err);
    return all.str();
  };
  std::string first = sweep();
  ok &= !first.empty();
  ok &= sweep() == first;
  report(10, "roundtrip-determinism", ok, "");
}

}  // namespace

int main() {
  crit_generators();
  crit_mesh_vanishing();
  crit_sectional();
  crit_coherence();
  crit_covering_axioms();
  crit_collapse_exchange();
  crit_fiber_sums();
  crit_depth_soundness();
  crit_pinned_values();
  crit_determinism();
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
