#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "doctest.h"
#include "meshkit/field.hpp"
#include "meshkit/linalg.hpp"

using namespace meshkit;

namespace {

template <class F>
SparseVec<F> vec(int dim, std::initializer_list<long long> dense) {
  SparseVec<F> v;
  v.dim = dim;
  int i = 0;
  for (long long c : dense) v.add_at(i++, F(c));
  return v;
}

}  // namespace

TEST_CASE("row_reduce finds the rank of a dependent set") {
  std::vector<SparseVec<Rational>> rows = {
      vec<Rational>(3, {1, 1, 0}),
      vec<Rational>(3, {0, 1, 1}),
      vec<Rational>(3, {1, 0, -1}),  // = row0 - row1
  };
  auto e = row_reduce(3, rows);
  CHECK(e.rank() == 2);
  CHECK(e.pivots == std::vector<int>{0, 1});
}

TEST_CASE("row_reduce of nothing has rank zero") {
  auto e = row_reduce<Rational>(4, {});
  CHECK(e.rank() == 0);
  auto r = e.reduce(vec<Rational>(4, {0, 2, 0, 5}));
  CHECK(r == vec<Rational>(4, {0, 2, 0, 5}));
}

TEST_CASE("echelon rows are fully reduced") {
  std::vector<SparseVec<Rational>> rows = {
      vec<Rational>(4, {2, 4, 0, 2}),
      vec<Rational>(4, {1, 2, 1, 0}),
      vec<Rational>(4, {0, 0, 3, 3}),
  };
  auto e = row_reduce(4, rows);
  for (std::size_t k = 0; k < e.rows.size(); ++k) {
    CHECK(e.rows[k].entries.front().first == e.pivots[k]);
    CHECK(e.rows[k].entries.front().second == Rational(1));
    // no row has support on another row's pivot
    for (std::size_t j = 0; j < e.rows.size(); ++j) {
      if (j == k) continue;
      for (auto& [i, c] : e.rows[k].entries) CHECK(i != e.pivots[j]);
    }
  }
}

TEST_CASE("rank is invariant under row permutation") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SparseVec<Rational>> rows;
    for (int r = 0; r < 6; ++r) {
      SparseVec<Rational> v;
      v.dim = 5;
      for (int i = 0; i < 5; ++i) v.add_at(i, Rational(coeff(rng)));
      rows.push_back(std::move(v));
    }
    int rank0 = row_reduce(5, rows).rank();
    std::shuffle(rows.begin(), rows.end(), rng);
    CHECK(row_reduce(5, rows).rank() == rank0);
  }
}

TEST_CASE("membership is closed under addition") {
  std::vector<SparseVec<Rational>> rows = {
      vec<Rational>(4, {1, 2, 0, 0}),
      vec<Rational>(4, {0, 0, 1, 1}),
  };
  auto e = row_reduce(4, rows);
  auto sum = rows[0] + rows[1].scaled(Rational(-5));
  CHECK(membership(sum, e).inside);
  auto out = membership(vec<Rational>(4, {1, 0, 0, 0}), e);
  CHECK(!out.inside);
  CHECK(!out.residual.is_zero());
  // the residual itself reduces to zero once adjoined
  rows.push_back(out.residual);
  CHECK(membership(vec<Rational>(4, {1, 0, 0, 0}), row_reduce(4, rows)).inside);
}

TEST_CASE("reduce is idempotent") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::vector<SparseVec<Rational>> rows;
  for (int r = 0; r < 4; ++r) {
    SparseVec<Rational> v;
    v.dim = 6;
    for (int i = 0; i < 6; ++i) v.add_at(i, Rational(coeff(rng)));
    rows.push_back(std::move(v));
  }
  auto e = row_reduce(6, rows);
  for (int trial = 0; trial < 10; ++trial) {
    SparseVec<Rational> v;
    v.dim = 6;
    for (int i = 0; i < 6; ++i) v.add_at(i, Rational(coeff(rng)));
    auto once = e.reduce(v);
    CHECK(e.reduce(once) == once);
  }
}

TEST_CASE("rational and prime-field ranks agree on small integer matrices") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<SparseVec<Rational>> rq;
    std::vector<SparseVec<Fp>> rp;
    for (int r = 0; r < 5; ++r) {
      SparseVec<Rational> vq;
      SparseVec<Fp> vp;
      vq.dim = vp.dim = 5;
      for (int i = 0; i < 5; ++i) {
        int c = coeff(rng);
        vq.add_at(i, Rational(c));
        vp.add_at(i, Fp(c));
      }
      rq.push_back(std::move(vq));
      rp.push_back(std::move(vp));
    }
    CHECK(row_reduce(5, rq).rank() == row_reduce(5, rp).rank());
  }
}

TEST_CASE("dimension mismatches and mixed handles are rejected") {
  std::vector<SparseVec<Rational>> rows = {vec<Rational>(3, {1, 0, 0})};
  CHECK_THROWS_AS(row_reduce(4, rows), DomainError);
  std::vector<VectorInBasis<Rational>> tagged = {
      {"A", vec<Rational>(3, {1, 0, 0})},
      {"B", vec<Rational>(3, {0, 1, 0})},
  };
  CHECK_THROWS_AS(row_reduce(tagged), DomainError);
  tagged[1].basis = "A";
  CHECK(row_reduce(tagged).rank() == 2);
}

TEST_CASE("sparse vectors drop explicit zeros") {
  SparseVec<Rational> v;
  v.dim = 3;
  v.add_at(1, Rational(2));
  v.add_at(1, Rational(-2));
  CHECK(v.is_zero());
  v.add_at(0, Rational(0));
  CHECK(v.entries.empty());
  auto u = SparseVec<Rational>::unit(3, 2);
  u.axpy(Rational(1), SparseVec<Rational>::unit(3, 2));
  CHECK(u.is_zero());
}
