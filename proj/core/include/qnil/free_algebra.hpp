#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qnil/cartan.hpp"
#include "qnil/ratfun.hpp"

namespace qnil {

using MultiDegree = std::vector<int>;

MultiDegree degree_of_word(const CartanData& data, const Word& w);
int height(const MultiDegree& g);
MultiDegree add_degree(const MultiDegree& a, const MultiDegree& b);
// Componentwise difference, or nullopt if any entry would go negative.
std::optional<MultiDegree> sub_degree(const MultiDegree& a, const MultiDegree& b);
std::string degree_str(const MultiDegree& g);

// All words with the given letter content, lexicographically sorted.
std::vector<Word> words_of_degree(const CartanData& data, const MultiDegree& g);

// q^{sum_ij C_ij g_i h_j}: the factor picked up when a tensor leg of degree h
// moves left past one of degree g.
RatFun braiding_factor(const CartanData& data, const MultiDegree& g, const MultiDegree& h);
long braiding_exponent(const CartanData& data, const MultiDegree& g, const MultiDegree& h);

struct FreeElement {
  std::map<Word, RatFun> terms;

  static FreeElement unit();
  static FreeElement generator(int i);
  static FreeElement from_word(const Word& w, const RatFun& c = RatFun(1));

  void add_term(const Word& w, const RatFun& c);
  bool is_zero() const { return terms.empty(); }

  FreeElement operator+(const FreeElement& o) const;
  FreeElement operator-(const FreeElement& o) const;
  FreeElement operator*(const FreeElement& o) const;  // concatenation product
  FreeElement scaled(const RatFun& c) const;

  bool operator==(const FreeElement& o) const { return terms == o.terms; }
  // Common degree of all words, or nullopt if mixed; unit element is degree 0
  // only when the rank is known, hence the data argument.
  std::optional<MultiDegree> homogeneous_degree(const CartanData& data) const;
  std::string str() const;
};

struct TensorElement {
  std::map<std::pair<Word, Word>, RatFun> terms;

  void add_term(const Word& a, const Word& b, const RatFun& c);
  bool is_zero() const { return terms.empty(); }

  TensorElement operator+(const TensorElement& o) const;
  TensorElement operator-(const TensorElement& o) const;
  TensorElement scaled(const RatFun& c) const;
  bool operator==(const TensorElement& o) const { return terms == o.terms; }
};

// Product on the twisted tensor square: (a@b)(c@d) = q^{B(deg b, deg c)} ac@bd.
TensorElement braided_multiply(const CartanData& data, const TensorElement& x,
                               const TensorElement& y);

// Splits every word over all position subsets with the braiding weight on
// each crossing pair.
TensorElement coproduct(const CartanData& data, const FreeElement& u);
// Same map computed as a fold of generator coproducts; cross-check path.
TensorElement coproduct_by_products(const CartanData& data, const FreeElement& u);

}  // namespace qnil
