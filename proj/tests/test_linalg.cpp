#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "qnil/linalg.hpp"

using namespace qnil;

namespace {

std::mt19937 rng(20240817);

RatFun random_entry() {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> deg(0, 2);
  Poly p(coef(rng));
  for (int d = deg(rng); d > 0; --d) p += Poly::term(coef(rng), d);
  if (p.is_zero()) p = Poly(1);
  std::uniform_int_distribution<int> den(0, 1);
  return den(rng) ? RatFun(Poly(1), Poly::q(1) + Poly(1)) * RatFun(p) : RatFun(p);
}

RMat random_matrix(int r, int c) {
  RMat m(r, RVec(c));
  for (auto& row : m)
    for (auto& e : row) e = random_entry();
  return m;
}

RMat mat_mul(const RMat& a, const RMat& b) {
  RMat out(a.size(), RVec(b[0].size(), RatFun(0)));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < b[0].size(); ++j)
        out[i][j] = out[i][j] + a[i][k] * b[k][j];
    }
  return out;
}

bool is_identity(const RMat& m) {
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) {
      if (i == j && !m[i][j].is_one()) return false;
      if (i != j && !m[i][j].is_zero()) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("echelon ranks") {
  RMat id3{{RatFun(1), RatFun(0), RatFun(0)},
           {RatFun(0), RatFun(1), RatFun(0)},
           {RatFun(0), RatFun(0), RatFun(1)}};
  CHECK(exact_rank(id3) == 3);

  RMat deficient{{RatFun(1), RatFun::q(1)},
                 {RatFun::q(1), RatFun(Poly::q(1) * Poly::q(1))}};
  CHECK(exact_rank(deficient) == 1);

  RMat zero(2, RVec(4, RatFun(0)));
  CHECK(exact_rank(zero) == 0);
}

TEST_CASE("echelon insert reports span membership") {
  Echelon e;
  RVec v1{RatFun(1), RatFun::q(1), RatFun(0)};
  RVec v2{RatFun(0), RatFun(1), RatFun(1)};
  CHECK(e.insert(v1));
  CHECK(e.insert(v2));
  RVec combo(3);
  for (int j = 0; j < 3; ++j) combo[j] = v1[j] * RatFun::q(-2) + v2[j] * RatFun(5);
  CHECK_FALSE(e.insert(combo));
  CHECK(e.rank() == 2);
}

TEST_CASE("null space is canonical and annihilates") {
  RMat m{{RatFun(1), RatFun::q(1)}, {RatFun::q(1), RatFun(Poly::q(1) * Poly::q(1))}};
  auto basis = null_space(m);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0][0] == RatFun(0) - RatFun::q(1));
  CHECK(basis[0][1] == RatFun(1));

  for (int trial = 0; trial < 10; ++trial) {
    RMat a = random_matrix(3, 5);
    auto ker = null_space(a);
    CHECK((int)ker.size() == 5 - exact_rank(a));
    for (const auto& x : ker) {
      RVec y = mat_apply(a, x);
      for (const auto& c : y) CHECK(c.is_zero());
    }
  }
}

TEST_CASE("solve returns an exact solution when one exists") {
  for (int trial = 0; trial < 10; ++trial) {
    RMat a = random_matrix(3, 3);
    RVec x{random_entry(), random_entry(), random_entry()};
    RVec b = mat_apply(a, x);
    auto got = solve(a, b);
    REQUIRE(got.has_value());
    RVec back = mat_apply(a, *got);
    for (int i = 0; i < 3; ++i) CHECK(back[i] == b[i]);
  }
  RMat a{{RatFun(1), RatFun(1)}, {RatFun(1), RatFun(1)}};
  CHECK_FALSE(solve(a, RVec{RatFun(0), RatFun(1)}).has_value());
}

TEST_CASE("inverse multiplies to identity") {
  for (int trial = 0; trial < 8; ++trial) {
    int n = 3;
    RMat a = random_matrix(n, n);
    if (exact_rank(a) < n) continue;
    RMat inv = invert(a);
    CHECK(is_identity(mat_mul(a, inv)));
    CHECK(is_identity(mat_mul(inv, a)));
  }
  RMat sing{{RatFun(1), RatFun(1)}, {RatFun(1), RatFun(1)}};
  CHECK_THROWS_AS(invert(sing), error);
}

TEST_CASE("modular rank never exceeds the exact rank") {
  for (int trial = 0; trial < 20; ++trial) {
    RMat a = random_matrix(4, 4);
    int re = exact_rank(a);
    int rp = modp_rank(a, trial);
    CHECK(rp <= re);
    CHECK(rp == re);  // random entries rarely hit the bad locus
  }
  RMat sing{{RatFun(1), RatFun::q(1)}, {RatFun::q(1), RatFun(Poly::q(1) * Poly::q(1))}};
  CHECK(modp_rank(sing) == 1);
}
