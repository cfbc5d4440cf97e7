#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <tuple>

#include "doctest.h"
#include "qnil/component.hpp"

using namespace qnil;

namespace {

std::mt19937 rng(20240817);

CartanData a2() { return CartanData::make({{2, -1}, {-1, 2}}, {1, 1}); }
CartanData b2() { return CartanData::make({{2, -2}, {-1, 2}}, {1, 2}); }
CartanData a3() {
  return CartanData::make({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, {1, 1, 1});
}
CartanData g2() { return CartanData::make({{2, -3}, {-1, 2}}, {1, 3}); }

RatFun qq(int e) { return RatFun::q(e); }

Word random_word(const CartanData& d, int len) {
  std::uniform_int_distribution<int> pick(1, d.rank());
  Word w;
  for (int k = 0; k < len; ++k) w.push_back(pick(rng));
  return w;
}

// q-Serre combination E_i^{(p)} E_j E_i^{(p')} summed over p+p' = 1-a_ij with
// sign (-1)^p and twist v_i^{twist*p*p'}; divided powers in base q^{2 d_i}.
FreeElement serre_element(const CartanData& d, int i, int j, int twist) {
  int m = 1 - d.a(i, j);
  Poly base = Poly::q(2 * d.d(i));
  FreeElement total;
  for (int p = 0; p <= m; ++p) {
    int pp = m - p;
    RatFun c = RatFun(1) / RatFun(q_factorial(p, base) * q_factorial(pp, base));
    if (p % 2) c = RatFun(0) - c;
    c = c * qq(twist * p * pp * d.d(i));
    Word w;
    for (int t = 0; t < p; ++t) w.push_back(i);
    w.push_back(j);
    for (int t = 0; t < pp; ++t) w.push_back(i);
    total = total + FreeElement::from_word(w, c);
  }
  return total;
}

bool in_radical(Algebra& alg, const FreeElement& u) {
  return dual_of(alg, u).is_zero();
}

using Triple = std::tuple<Word, Word, Word>;

void accumulate(std::map<Triple, RatFun>& m, const Triple& k, const RatFun& c) {
  auto it = m.find(k);
  if (it == m.end()) {
    if (!c.is_zero()) m.emplace(k, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) m.erase(it);
}

std::map<Triple, RatFun> split_left(const CartanData& d, const Word& w) {
  std::map<Triple, RatFun> out;
  for (const auto& [k, c] : coproduct(d, FreeElement::from_word(w)).terms)
    for (const auto& [k2, c2] : coproduct(d, FreeElement::from_word(k.first)).terms)
      accumulate(out, {k2.first, k2.second, k.second}, c * c2);
  return out;
}

std::map<Triple, RatFun> split_right(const CartanData& d, const Word& w) {
  std::map<Triple, RatFun> out;
  for (const auto& [k, c] : coproduct(d, FreeElement::from_word(w)).terms)
    for (const auto& [k2, c2] : coproduct(d, FreeElement::from_word(k.second)).terms)
      accumulate(out, {k.first, k2.first, k2.second}, c * c2);
  return out;
}

// Number of ways to write g as a sum of the positive roots extracted from a
// reduced expression; the graded dimension the Gram rank must reproduce.
int kostant_count(const CartanData& d, const Word& w0, const MultiDegree& g) {
  std::vector<std::vector<long>> roots;
  for (size_t k = 0; k < w0.size(); ++k) {
    RootVector beta = RootVector::simple(w0[k], d.rank());
    for (int t = (int)k - 1; t >= 0; --t) beta = reflect(d, w0[t], beta);
    roots.push_back(beta.coords);
  }
  std::function<int(size_t, std::vector<int>)> rec = [&](size_t at, std::vector<int> left) -> int {
    if (at == roots.size()) {
      for (int c : left)
        if (c != 0) return 0;
      return 1;
    }
    int total = 0;
    while (true) {
      total += rec(at + 1, left);
      bool ok = true;
      for (int i = 0; i < d.rank(); ++i) {
        left[i] -= roots[at][i];
        if (left[i] < 0) ok = false;
      }
      if (!ok) break;
    }
    return total;
  };
  return rec(0, std::vector<int>(g.begin(), g.end()));
}

}  // namespace

TEST_CASE("degrees and word enumeration") {
  CartanData d = a2();
  CHECK(degree_of_word(d, {1, 2, 1}) == MultiDegree{2, 1});
  CHECK(height(MultiDegree{2, 1}) == 3);
  auto words = words_of_degree(d, {2, 1});
  REQUIRE(words.size() == 3);
  CHECK(words[0] == Word{1, 1, 2});
  CHECK(words[1] == Word{1, 2, 1});
  CHECK(words[2] == Word{2, 1, 1});
  CHECK(words_of_degree(d, {0, 0}) == std::vector<Word>{{}});
  CHECK(words_of_degree(a3(), {1, 1, 1}).size() == 6);
}

TEST_CASE("braiding factor") {
  CartanData d = a2();
  CHECK(braiding_factor(d, {1, 0}, {0, 1}) == qq(-1));
  CHECK(braiding_factor(d, {1, 0}, {1, 0}) == qq(2));
  CHECK(braiding_factor(b2(), {0, 1}, {0, 1}) == qq(4));
  CHECK(braiding_factor(b2(), {1, 0}, {0, 1}) == qq(-2));
}

TEST_CASE("free element arithmetic") {
  FreeElement u = FreeElement::generator(1) * FreeElement::generator(2);
  CHECK(u.terms.size() == 1);
  CHECK(u.terms.count(Word{1, 2}) == 1);
  FreeElement z = u - u;
  CHECK(z.is_zero());
  CartanData d = a2();
  CHECK(u.homogeneous_degree(d) == MultiDegree{1, 1});
  FreeElement mixed = u + FreeElement::generator(1);
  CHECK_FALSE(mixed.homogeneous_degree(d).has_value());
}

TEST_CASE("coproduct agrees with the generator-fold computation") {
  for (const CartanData& d : {a2(), b2(), a3()}) {
    for (int trial = 0; trial < 12; ++trial) {
      std::uniform_int_distribution<int> len(0, 5);
      FreeElement u = FreeElement::from_word(random_word(d, len(rng)));
      CHECK(coproduct(d, u) == coproduct_by_products(d, u));
    }
  }
}

TEST_CASE("coproduct is coassociative") {
  for (const CartanData& d : {a2(), b2()}) {
    for (int trial = 0; trial < 8; ++trial) {
      std::uniform_int_distribution<int> len(0, 4);
      Word w = random_word(d, len(rng));
      CHECK(split_left(d, w) == split_right(d, w));
    }
  }
}

TEST_CASE("pairing basics") {
  Algebra alg(a2());
  CHECK(alg.pairing({1, 2}, {1, 2}) == RatFun(1));
  CHECK(alg.pairing({1, 2}, {2, 1}) == qq(-1));
  CHECK(alg.pairing({1, 1}, {1, 1}) == RatFun(Poly(1) + Poly::q(2)));
  CHECK(alg.pairing({1}, {2}) == RatFun(0));
  CHECK(alg.pairing({1, 2}, {1}) == RatFun(0));
  CHECK(alg.pairing({}, {}) == RatFun(1));
}

TEST_CASE("pairing is symmetric") {
  for (CartanData d : {a2(), b2(), a3()}) {
    Algebra alg(d);
    for (int trial = 0; trial < 20; ++trial) {
      std::uniform_int_distribution<int> len(0, 5);
      Word u = random_word(d, len(rng));
      Word v = random_word(d, len(rng));
      CHECK(alg.pairing(u, v) == alg.pairing(v, u));
    }
  }
}

TEST_CASE("pairing is multiplicative against the coproduct") {
  for (CartanData d : {a2(), b2()}) {
    Algebra alg(d);
    for (int trial = 0; trial < 10; ++trial) {
      std::uniform_int_distribution<int> len(0, 3);
      Word u = random_word(d, len(rng));
      Word v = random_word(d, len(rng));
      FreeElement prod = FreeElement::from_word(u) * FreeElement::from_word(v);
      DualElement lhs = dual_of(alg, prod);
      DualElement rhs =
          dual_multiply(d, dual_of(alg, FreeElement::from_word(u)),
                        dual_of(alg, FreeElement::from_word(v)));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("rank-two adjacent component") {
  Algebra alg(a2());
  const GradedBasis& gb = alg.component({2, 1});
  REQUIRE(gb.words.size() == 3);
  RatFun two_cosh = qq(1) + qq(-1);
  RMat expect{{RatFun(Poly(1) + Poly::q(2)), two_cosh, qq(-2) + RatFun(1)},
              {two_cosh, RatFun(2), two_cosh},
              {qq(-2) + RatFun(1), two_cosh, RatFun(Poly(1) + Poly::q(2))}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(gb.gram[i][j] == expect[i][j]);
  CHECK(gb.dim() == 2);
  CHECK(gb.u_basis == std::vector<int>{0, 1});
  REQUIRE(gb.radical_basis.size() == 1);
  FreeElement rad = FreeElement::from_word({1, 1, 2}) -
                    FreeElement::from_word({1, 2, 1}, two_cosh) +
                    FreeElement::from_word({2, 1, 1});
  CHECK(gb.radical_basis[0] == rad);
  CHECK(gb.coords[2][0] == RatFun(-1));
  CHECK(gb.coords[2][1] == two_cosh);
  CHECK(in_radical(alg, rad));
}

TEST_CASE("component dimensions match the positive-root partition count") {
  struct Case {
    CartanData d;
    Word w0;
  };
  for (const auto& [d, w0] : {Case{a2(), {1, 2, 1}}, Case{b2(), {1, 2, 1, 2}},
                              Case{a3(), {1, 2, 1, 3, 2, 1}}}) {
    Algebra alg(d);
    std::vector<MultiDegree> degs;
    MultiDegree g(d.rank(), 0);
    std::function<void(int, int)> walk = [&](int at, int left) {
      if (at == d.rank()) {
        degs.push_back(g);
        return;
      }
      for (int c = 0; c <= left; ++c) {
        g[at] = c;
        walk(at + 1, left - c);
      }
      g[at] = 0;
    };
    walk(0, 4);
    for (const auto& deg : degs) {
      CHECK(alg.component(deg).dim() == kostant_count(d, w0, deg));
    }
  }
}

TEST_CASE("coordinates reproduce pairings against every word") {
  for (CartanData d : {a2(), b2()}) {
    Algebra alg(d);
    for (MultiDegree g : {MultiDegree{2, 1}, MultiDegree{2, 2}, MultiDegree{1, 2}}) {
      const GradedBasis& gb = alg.component(g);
      for (size_t w = 0; w < gb.words.size(); ++w) {
        for (size_t z = 0; z < gb.words.size(); ++z) {
          RatFun via_coords(0);
          for (int b = 0; b < gb.dim(); ++b)
            via_coords = via_coords + gb.coords[w][b] * gb.gram[gb.u_basis[b]][z];
          CHECK(via_coords == gb.gram[w][z]);
        }
      }
    }
  }
}

TEST_CASE("serre combinations fall in the radical only with the negative twist") {
  for (CartanData d : {a2(), b2(), g2()}) {
    Algebra alg(d);
    for (int i = 1; i <= 2; ++i) {
      int j = 3 - i;
      CHECK(in_radical(alg, serre_element(d, i, j, -1)));
      CHECK_FALSE(in_radical(alg, serre_element(d, i, j, +1)));
    }
  }
}

TEST_CASE("dual functional products") {
  CartanData d = a2();
  DualElement x1 = dual_generator(d, 1);
  DualElement x2 = dual_generator(d, 2);
  DualElement x11 = dual_multiply(d, x1, x1);
  CHECK(x11.value({1, 1}) == RatFun(Poly(1) + Poly::q(2)));
  DualElement x12 = dual_multiply(d, x1, x2);
  CHECK(x12.value({2, 1}) == qq(-1));
  CHECK(x12.value({1, 2}) == RatFun(1));
  DualElement u = dual_unit(d);
  CHECK(dual_multiply(d, x12, u) == x12);
  CHECK(dual_multiply(d, u, x12) == x12);
}

TEST_CASE("dual product is associative") {
  for (CartanData d : {a2(), b2()}) {
    std::uniform_int_distribution<int> pick(1, d.rank());
    for (int trial = 0; trial < 6; ++trial) {
      DualElement x = dual_generator(d, pick(rng));
      DualElement y = dual_multiply(d, dual_generator(d, pick(rng)), dual_generator(d, pick(rng)));
      DualElement z = dual_generator(d, pick(rng));
      CHECK(dual_multiply(d, dual_multiply(d, x, y), z) ==
            dual_multiply(d, x, dual_multiply(d, y, z)));
    }
  }
}

TEST_CASE("generator fast paths match the generic product") {
  for (CartanData d : {a2(), b2()}) {
    std::uniform_int_distribution<int> pick(1, d.rank());
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int trial = 0; trial < 10; ++trial) {
      Word w = random_word(d, 3);
      MultiDegree g = degree_of_word(d, w);
      DualElement x{g, {}};
      for (const Word& c : words_of_degree(d, g)) x.set(c, RatFun(coef(rng)));
      int i = pick(rng);
      CHECK(mult_generator_right(d, x, i) == dual_multiply(d, x, dual_generator(d, i)));
      CHECK(mult_generator_left(d, i, x) == dual_multiply(d, dual_generator(d, i), x));
    }
  }
}

TEST_CASE("letter-stripping adjoints") {
  CartanData d = a2();
  DualElement x1 = dual_generator(d, 1);
  CHECK(estar_apply(d, 1, x1) == dual_unit(d));
  CHECK(estar_apply(d, 2, x1).is_zero());
  CHECK(eop_apply(d, 1, x1) == dual_unit(d));
  DualElement x12 = dual_multiply(d, x1, dual_generator(d, 2));
  DualElement s = estar_apply(d, 1, x12);
  CHECK(s.degree == MultiDegree{0, 1});
  CHECK(s.value({2}) == RatFun(1));
  DualElement e = eop_apply(d, 2, x12);
  CHECK(e.degree == MultiDegree{1, 0});
  CHECK(e.value({1}) == RatFun(1));
  // adjunction: (eop_i x)(w) = x(w i) and (estar_i x)(w) = x(i w)
  for (int trial = 0; trial < 8; ++trial) {
    Word w = random_word(d, 3);
    Algebra alg(d);
    DualElement x = dual_of(alg, FreeElement::from_word(w));
    for (int i = 1; i <= 2; ++i) {
      DualElement lhs = eop_apply(d, i, x);
      for (const Word& u : words_of_degree(d, lhs.degree)) {
        Word ui = u;
        ui.push_back(i);
        CHECK(lhs.value(u) == x.value(ui));
      }
    }
  }
}

TEST_CASE("component cache round trip") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "qnil-cache-test";
  fs::remove_all(dir);
  MultiDegree g{2, 2};
  GradedBasis fresh;
  {
    Algebra alg(b2(), dir.string());
    fresh = alg.component(g);
  }
  int files = 0;
  fs::path comp_file;
  for (const auto& e : fs::directory_iterator(dir)) {
    ++files;
    comp_file = e.path();
  }
  CHECK(files == 1);
  {
    Algebra alg(b2(), dir.string());
    const GradedBasis& warm = alg.component(g);
    CHECK(warm.words == fresh.words);
    CHECK(warm.u_basis == fresh.u_basis);
    CHECK(warm.gram == fresh.gram);
    CHECK(warm.coords == fresh.coords);
    REQUIRE(warm.radical_basis.size() == fresh.radical_basis.size());
    for (size_t i = 0; i < warm.radical_basis.size(); ++i)
      CHECK(warm.radical_basis[i] == fresh.radical_basis[i]);
  }
  {
    std::ofstream corrupt(comp_file, std::ios::trunc);
    corrupt << "garbage\n";
  }
  {
    Algebra alg(b2(), dir.string());
    const GradedBasis& redo = alg.component(g);
    CHECK(redo.gram == fresh.gram);
    CHECK(redo.coords == fresh.coords);
  }
  fs::remove_all(dir);
}
