#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "meshkit/generators.hpp"
#include "meshkit/quiver.hpp"

using namespace meshkit;

namespace {

TranslationQuiver loop_quiver() {
  TranslationQuiver q;
  q.name = "loop";
  q.vertices["v"] = {true, true, false};
  q.arrows["l"] = {"v", "v"};
  q.freeze();
  return q;
}

bool has_code(const std::vector<Violation>& vs, const std::string& code) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.code == code; });
}

}  // namespace

TEST_CASE("validate accepts the finite triangle with no warnings") {
  auto q = gen_triangle_an(4);
  auto rep = validate(q);
  CHECK(rep.ok());
  CHECK(rep.frontier_warnings.empty());
}

TEST_CASE("validate excuses missing structure only at the frontier") {
  auto q = gen_ztree(TreeSpec::line(2), -3, 4);
  auto rep = validate(q);
  CHECK(rep.ok());
  CHECK(!rep.frontier_warnings.empty());
  for (const auto& w : rep.frontier_warnings)
    CHECK(q.info(w.where).frontier);
}

TEST_CASE("validate flags a loop") {
  auto rep = validate(loop_quiver());
  CHECK(!rep.ok());
  CHECK(has_code(rep.violations, "loop"));
}

TEST_CASE("validate flags tau on a projective vertex") {
  auto q = gen_triangle_an(3);
  q.tau["(3,3)"] = "(1,1)";  // (3,3) is projective
  q.freeze();
  auto rep = validate(q);
  CHECK(has_code(rep.violations, "tau-on-projective"));
}

TEST_CASE("validate flags a non-injective tau") {
  auto q = gen_triangle_an(3);
  q.tau["(1,2)"] = "(2,2)";  // collides with tau(1,1)
  q.freeze();
  auto rep = validate(q);
  CHECK(has_code(rep.violations, "tau-not-injective"));
}

TEST_CASE("mesh_at pairs every in-arrow with its sigma partner") {
  auto q = gen_triangle_an(3);
  Mesh m = mesh_at(q, "(1,2)");
  CHECK(m.translate == "(2,3)");
  CHECK(m.spokes.size() == q.in_arrows("(1,2)").size());
  for (auto& [alpha, salpha] : m.spokes) {
    CHECK(q.arrow(alpha).target == "(1,2)");
    CHECK(q.arrow(salpha).source == "(2,3)");
    CHECK(q.sigma_of(alpha) == salpha);
  }
}

TEST_CASE("mesh_at refuses projective and frontier vertices") {
  auto tri = gen_triangle_an(3);
  CHECK_THROWS_AS(mesh_at(tri, "(3,3)"), DomainError);
  auto tube = gen_tube(1, 3);
  CHECK_THROWS_AS(mesh_at(tube, "(0,3)"), DomainError);
}

TEST_CASE("mesh in the two-arrow chain has two spokes per parallel pair") {
  auto q = gen_kronecker(4);
  Mesh m = mesh_at(q, "v2");
  CHECK(m.translate == "v0");
  CHECK(m.spokes.size() == 2);
}

TEST_CASE("is_sectional distinguishes hooks from straight runs") {
  auto q = gen_triangle_an(4);
  // straight run down the left edge
  CHECK(is_sectional(q, {"(4,4)", {"l(4,4)", "l(3,4)"}}));
  // hook through a mesh: (2,2) -> (1,2) -> (1,1) has (2,2) = tau((1,1))
  CHECK(!is_sectional(q, {"(2,2)", {"l(2,2)", "r(1,2)"}}));
  // trivial and length-1 paths are always sectional
  CHECK(is_sectional(q, {"(2,3)", {}}));
  CHECK(is_sectional(q, {"(2,3)", {"r(2,3)"}}));
}

TEST_CASE("is_sectional errors when tau is unknown at the window edge") {
  auto q = gen_tube(1, 3);
  q.tau.erase("(0,3)");  // cut the frontier row loose
  q.freeze();
  CHECK_THROWS_AS(is_sectional(q, {"(0,1)", {"u(0,1)", "u(0,2)"}}),
                  OutOfWindowError);
}

TEST_CASE("enumerate_paths returns lexicographically sorted exact-length paths") {
  auto q = gen_kronecker(4);
  auto ps = enumerate_paths(q, "v0", "v2", 2);
  REQUIRE(ps.size() == 4);
  CHECK(ps[0].arrows == std::vector<ArrowId>{"a0", "a1"});
  CHECK(ps[1].arrows == std::vector<ArrowId>{"a0", "b1"});
  CHECK(ps[2].arrows == std::vector<ArrowId>{"b0", "a1"});
  CHECK(ps[3].arrows == std::vector<ArrowId>{"b0", "b1"});
  CHECK(std::is_sorted(ps.begin(), ps.end(),
                       [](const Path& a, const Path& b) {
                         return a.arrows < b.arrows;
                       }));
}

TEST_CASE("enumerate_paths degree zero is the trivial path only on the diagonal") {
  auto q = gen_triangle_an(3);
  auto same = enumerate_paths(q, "(2,2)", "(2,2)", 0);
  REQUIRE(same.size() == 1);
  CHECK(same[0].length() == 0);
  CHECK(enumerate_paths(q, "(2,2)", "(1,1)", 0).empty());
}

TEST_CASE("every enumerated path is a valid walk with the right endpoints") {
  auto q = gen_tube(2, 4);
  for (auto& [x, xi] : q.vertices)
    for (auto& [y, yi] : q.vertices)
      for (int n = 0; n <= 4; ++n)
        for (const Path& p : enumerate_paths(q, x, y, n)) {
          CHECK(p.start == x);
          CHECK(path_end(q, p) == y);
          CHECK(p.length() == n);
          CHECK(walk_is_valid(q, path_to_walk(p)));
        }
}

TEST_CASE("path_vertices lists the n+1 vertices in traversal order") {
  auto q = gen_triangle_an(3);
  Path p{"(3,3)", {"l(3,3)", "r(2,3)", "l(2,2)"}};
  auto vs = path_vertices(q, p);
  REQUIRE(vs.size() == 4);
  CHECK(vs.front() == "(3,3)");
  CHECK(vs[1] == "(2,3)");
  CHECK(vs[2] == "(2,2)");
  CHECK(vs.back() == "(1,2)");
}

TEST_CASE("collapse merges parallel arrows and keeps tau") {
  auto q = gen_kronecker(4);
  auto res = collapse(q);
  CHECK(res.quiver.arrows.size() == 4);
  CHECK(res.quiver.arrows.count("a0") == 1);  // least member names the class
  CHECK(res.quiver.arrows.count("b0") == 0);
  CHECK(res.multiplicity.at("a0") == 2);
  CHECK(res.quiver.tau == q.tau);
  CHECK(validate(res.quiver).ok());
}

TEST_CASE("collapse is the identity on a quiver without parallel arrows") {
  auto q = gen_triangle_an(4);
  auto res = collapse(q);
  CHECK(res.quiver.arrows == q.arrows);
  CHECK(res.quiver.sigma == q.sigma);
  for (auto& [a, mult] : res.multiplicity) CHECK(mult == 1);
}

TEST_CASE("collapse is idempotent") {
  auto once = collapse(gen_kronecker(5)).quiver;
  auto twice = collapse(once).quiver;
  CHECK(twice.arrows == once.arrows);
  CHECK(twice.vertices == once.vertices);
}

TEST_CASE("walk_end follows inverse steps backwards") {
  auto q = gen_triangle_an(3);
  Walk w{"(1,2)", {{"l(2,2)", Dir::inverse}, {"r(2,3)", Dir::inverse}}};
  CHECK(walk_end(q, w) == "(2,3)");
  Walk broken{"(1,2)", {{"r(2,3)", Dir::forward}}};
  CHECK(!walk_is_valid(q, broken));
}
