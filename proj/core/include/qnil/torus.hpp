#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qnil/cartan.hpp"
#include "qnil/free_algebra.hpp"

namespace qnil {

// q-commuting Laurent variables t_1..t_m with t_l t_k = q^{s[k][l]} t_k t_l
// for k < l.
struct TorusContext {
  std::vector<std::vector<long>> s;

  int m() const { return (int)s.size(); }
  static TorusContext from_word(const CartanData& data, const Word& w);
  static TorusContext two_variable(long hat);
  // t^a t^b = q^e t^{a+b}; this computes e.
  long reorder_exponent(const std::vector<int>& a, const std::vector<int>& b) const;
};

// t^a t^b as (q-power coefficient, combined exponent).
std::pair<RatFun, std::vector<int>> reorder_product(const TorusContext& ctx,
                                                    const std::vector<int>& a,
                                                    const std::vector<int>& b);

struct TorusElement {
  std::map<std::vector<int>, RatFun> terms;  // exponent vector -> coefficient

  static TorusElement zero();
  static TorusElement one(int m);
  static TorusElement monomial(const std::vector<int>& e, const RatFun& c = RatFun(1));
  static TorusElement variable(int k, int m);  // t_k, 1-based

  bool is_zero() const { return terms.empty(); }
  bool is_monomial() const { return terms.size() == 1; }
  void add_term(const std::vector<int>& e, const RatFun& c);

  TorusElement operator+(const TorusElement& o) const;
  TorusElement operator-(const TorusElement& o) const;
  TorusElement scaled(const RatFun& c) const;
  bool operator==(const TorusElement& o) const { return terms == o.terms; }

  std::string str() const;  // descending lex, e.g. "t1 + q^2*t2*t3^-1"
};

TorusElement torus_mul(const TorusContext& ctx, const TorusElement& a, const TorusElement& b);
TorusElement torus_pow(const TorusContext& ctx, const TorusElement& a, int n);  // n >= 0

// Given x != 0 and y, finds (y', x') with x^{-1} y = y' x'^{-1}, i.e.
// y x' = x y'.  Searches supports of increasing depth (products of up to
// `cap` monomials of x against those of y) for a kernel vector of the
// resulting linear system, so cap bounds how far the supports grow before
// giving up.  The pair is scaled so every coefficient is a polynomial in q
// with no common factor and the first coefficient of y' leads positive.
std::pair<TorusElement, TorusElement> ore_resolve(const TorusContext& ctx,
                                                  const TorusElement& x,
                                                  const TorusElement& y, int cap = 8);

// Right fraction num * den^{-1}.
struct OreFraction {
  TorusElement num, den;

  static OreFraction from_element(TorusElement t, int m);
  static OreFraction make(TorusElement num, TorusElement den);
  bool is_zero() const { return num.is_zero(); }
  std::string str() const;
};

OreFraction frac_normalize(const TorusContext& ctx, OreFraction f);
OreFraction frac_mul(const TorusContext& ctx, const OreFraction& a, const OreFraction& b,
                     int cap = 8);
OreFraction frac_add(const TorusContext& ctx, const OreFraction& a, const OreFraction& b,
                     int cap = 8);
OreFraction frac_sub(const TorusContext& ctx, const OreFraction& a, const OreFraction& b,
                     int cap = 8);
OreFraction frac_inv(const TorusContext& ctx, const OreFraction& a);
OreFraction frac_pow(const TorusContext& ctx, const OreFraction& a, int n, int cap = 8);
bool frac_eq(const TorusContext& ctx, const OreFraction& a, const OreFraction& b, int cap = 8);

// Truncated check of the exponential rule: with y x = q^hat x y, the series
// sum_n z^n/[n]_{q^hat}! satisfies E(x+y) = E(x) E(y) through total degree
// cap.  factorial_hat lets a caller try a mismatched denominator base.
bool qexp_rule_check(long hat, int cap);
bool qexp_rule_check(long hat, long factorial_hat, int cap);

// [l] and [l]! with base q^e, as rational functions (e may be negative).
RatFun rat_q_int(unsigned l, long e);
RatFun rat_q_factorial(unsigned l, long e);

}  // namespace qnil
