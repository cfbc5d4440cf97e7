#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "qnil/cartan.hpp"

using namespace qnil;

namespace {

CartanData a2() { return CartanData::make({{2, -1}, {-1, 2}}, {1, 1}); }
CartanData b2() { return CartanData::make({{2, -2}, {-1, 2}}, {1, 2}); }
CartanData a3() { return CartanData::make({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, {1, 1, 1}); }
CartanData g2() { return CartanData::make({{2, -3}, {-1, 2}}, {1, 3}); }

std::vector<CartanData> desk() { return {a2(), b2(), a3()}; }

}  // namespace

TEST_CASE("cartan construction and validation") {
  CartanData d = b2();
  CHECK(d.rank() == 2);
  CHECK(d.a(1, 2) == -2);
  CHECK(d.c(1, 2) == -2);
  CHECK(d.c(2, 1) == -2);
  CHECK(d.c(2, 2) == 4);
  CHECK_THROWS_AS(CartanData::make({{2, -1}, {-1, 2}}, {1}), error);
  CHECK_THROWS_AS(CartanData::make({{2, 1}, {1, 2}}, {1, 1}), error);
  CHECK_THROWS_AS(CartanData::make({{2, -2}, {-1, 2}}, {1, 1}), error);
  CHECK_THROWS_AS(CartanData::make({{2, -1}, {0, 2}}, {1, 1}), error);
}

TEST_CASE("cartan json round trip") {
  CartanData d = CartanData::from_json(R"({"A": [[2,-2],[-1,2]], "d": [1,2]})");
  CHECK(d.key() == b2().key());
  CHECK_THROWS_AS(CartanData::from_json("{}"), error);
  CHECK_THROWS_AS(CartanData::from_json("not json"), error);
}

TEST_CASE("simple reflections") {
  CartanData d = a2();
  RootVector a1 = RootVector::simple(1, 2), a2v = RootVector::simple(2, 2);
  CHECK(reflect(d, 1, a2v).coords == std::vector<long>{1, 1});
  CHECK(reflect(d, 1, a1).coords == std::vector<long>{-1, 0});
  RootVector a2co = RootVector::simple(2, 2, RootVector::Lattice::coroot);
  CHECK(reflect(d, 1, a2co).coords == std::vector<long>{1, 1});
  CHECK_THROWS_AS(reflect(d, 3, a1), error);
}

TEST_CASE("reflections are involutions") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> coord(-4, 4);
  for (const CartanData& d : desk()) {
    for (int trial = 0; trial < 30; ++trial) {
      RootVector v;
      v.lattice = trial % 2 ? RootVector::Lattice::root : RootVector::Lattice::coroot;
      for (int k = 0; k < d.rank(); ++k) v.coords.push_back(coord(rng));
      for (int i = 1; i <= d.rank(); ++i) CHECK(reflect(d, i, reflect(d, i, v)) == v);
    }
  }
}

TEST_CASE("reflections preserve the symmetric pairing") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> coord(-4, 4);
  for (const CartanData& d : desk()) {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<long> g;
      for (int k = 0; k < d.rank(); ++k) g.push_back(coord(rng));
      RootVector v{g, RootVector::Lattice::root};
      for (int i = 1; i <= d.rank(); ++i) {
        RootVector sv = reflect(d, i, v);
        for (int j = 1; j <= d.rank(); ++j) {
          RootVector sj = reflect(d, i, RootVector::simple(j, d.rank()));
          long lhs = 0, rhs = 0;
          for (int x = 1; x <= d.rank(); ++x)
            for (int y = 1; y <= d.rank(); ++y) {
              lhs += sv.coords[x - 1] * d.c(x, y) * sj.coords[y - 1];
              rhs += v.coords[x - 1] * d.c(x, y) * (y == j);
            }
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("reducedness") {
  CHECK(is_reduced(a2(), {1, 2, 1}));
  CHECK(is_reduced(a2(), {}));
  CHECK_FALSE(is_reduced(a2(), {1, 1}));
  CHECK_FALSE(is_reduced(b2(), {2, 2}));
  CHECK_FALSE(is_reduced(a2(), {1, 2, 1, 2}));
  CHECK(is_reduced(b2(), {1, 2, 1, 2}));
  CHECK_FALSE(is_reduced(b2(), {1, 2, 1, 2, 1}));
  CHECK_THROWS_AS(is_reduced(a2(), {3}), error);
}

TEST_CASE("braid orbits") {
  CHECK(enumerate_reduced(a2(), {1, 2, 1}) == std::vector<Word>{{1, 2, 1}, {2, 1, 2}});
  CHECK(enumerate_reduced(a2(), {1}) == std::vector<Word>{{1}});
  CHECK(enumerate_reduced(b2(), {1, 2, 1, 2}) == std::vector<Word>{{1, 2, 1, 2}, {2, 1, 2, 1}});
  Word w0 = longest_word(a3());
  CHECK(w0.size() == 6);
  CHECK(enumerate_reduced(a3(), w0).size() == 16);
  CHECK_THROWS_AS(enumerate_reduced(a2(), {1, 1}), error);
}

TEST_CASE("braid neighbors stay reduced with equal orbits") {
  for (const CartanData& d : desk()) {
    Word w0 = longest_word(d);
    for (const Word& w : enumerate_reduced(d, w0)) {
      auto orbit = enumerate_reduced(d, w);
      for (const Word& nb : braid_neighbors(d, w)) {
        CHECK(is_reduced(d, nb));
        CHECK(enumerate_reduced(d, nb) == orbit);
      }
    }
  }
}

TEST_CASE("longest words") {
  CHECK(longest_word(a2()) == Word{1, 2, 1});
  CHECK(longest_word(b2()) == Word{1, 2, 1, 2});
  CHECK(longest_word(g2()).size() == 6);
}

TEST_CASE("weight sequences") {
  CHECK(weight_sequence(a2(), Weight{{1, 0}}, {1, 2}) == std::vector<int>{1, 1});
  CHECK(weight_sequence(a2(), Weight{{1, 1}}, {1, 2, 1}) == std::vector<int>{1, 2, 1});
  CHECK(weight_sequence(a2(), Weight{{0, 1}}, {1, 2})[0] == 0);
  CHECK(weight_sequence(b2(), Weight{{2, 2}}, {1, 2, 1, 2}) == std::vector<int>{2, 4, 6, 2});
  CHECK_THROWS_AS(weight_sequence(a2(), Weight{{1, 1}}, {1, 1}), error);
}

TEST_CASE("weight sequence entries are nonnegative") {
  for (const CartanData& d : desk()) {
    std::vector<Word> words;
    Word w0 = longest_word(d);
    for (const Word& w : enumerate_reduced(d, w0)) words.push_back(w);
    for (int i = 1; i <= d.rank(); ++i) words.push_back({i});
    std::vector<int> caps(d.rank(), 3);
    std::vector<int> l(d.rank(), 0);
    for (;;) {
      for (const Word& w : words)
        for (int a : weight_sequence(d, Weight{l}, w)) CHECK(a >= 0);
      int pos = 0;
      while (pos < d.rank() && l[pos] == caps[pos]) l[pos++] = 0;
      if (pos == d.rank()) break;
      ++l[pos];
    }
  }
}

TEST_CASE("reduced subsequences") {
  CHECK(reduced_subsequence(a2(), {1, 1}) == Word{1});
  CHECK(reduced_subsequence(a2(), {1, 2, 1, 2}) == Word{1, 2, 1});
  CHECK(reduced_subsequence(b2(), {1, 2, 1, 2}) == Word{1, 2, 1, 2});
  CHECK(reduced_subsequence(a2(), {2, 2, 2}) == Word{2});
}

TEST_CASE("word parsing") {
  CHECK(parse_word("1,2,1") == Word{1, 2, 1});
  CHECK(parse_word("") == Word{});
  CHECK_THROWS_AS(parse_word("1,x"), error);
}
