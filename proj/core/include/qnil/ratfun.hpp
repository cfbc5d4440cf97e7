#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "qnil/error.hpp"

namespace qnil {

// Sparse element of Z[q]; exponents are nonnegative machine ints.
class Poly {
 public:
  Poly() = default;
  Poly(long c);
  explicit Poly(const mpz_class& c);

  static Poly q(int e = 1);
  static Poly term(const mpz_class& c, int e);

  bool is_zero() const { return c_.empty(); }
  int degree() const;      // -1 for the zero polynomial
  int low_degree() const;  // smallest exponent with nonzero coefficient, -1 for zero
  mpz_class coeff(int e) const;
  const mpz_class& leading() const;
  bool is_monomial() const { return c_.size() == 1; }
  bool is_one() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o);
  Poly scaled(const mpz_class& c) const;
  Poly shifted(int e) const;  // multiply by q^e; e may be negative if low_degree allows
  Poly pow(unsigned n) const;

  bool operator==(const Poly& o) const { return c_ == o.c_; }

  mpz_class content() const;  // nonnegative; 0 only for the zero polynomial
  Poly primitive_part() const;
  static Poly gcd(const Poly& a, const Poly& b);  // positive leading coefficient
  Poly divexact(const Poly& d) const;

  std::uint64_t eval_mod(std::uint64_t x, std::uint64_t p) const;

  std::string str() const;
  static Poly parse(const std::string& s);

  const std::map<int, mpz_class>& terms() const { return c_; }

 private:
  std::map<int, mpz_class> c_;  // exponent -> nonzero coefficient
};

// [n] = 1 + base + ... + base^(n-1); [0] = 0.
Poly q_int(unsigned n, const Poly& base);
// [n]! = [1][2]...[n]; [0]! = 1.
Poly q_factorial(unsigned n, const Poly& base);

// Reduced fraction num/den over Z[q].  Canonical form: gcd(num, den) = 1 and the
// denominator has a positive leading coefficient, so equality is structural.
class RatFun {
 public:
  RatFun() : num_(), den_(1) {}
  RatFun(long c) : num_(c), den_(1) {}
  RatFun(const mpz_class& c) : num_(c), den_(1) {}
  RatFun(const Poly& p) : num_(p), den_(1) {}
  RatFun(const Poly& num, const Poly& den);

  static RatFun q(int e);  // q^e for any sign of e

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  RatFun operator-() const;
  RatFun& operator+=(const RatFun& o);
  RatFun& operator-=(const RatFun& o);
  RatFun& operator*=(const RatFun& o);
  RatFun& operator/=(const RatFun& o);
  friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
  friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
  friend RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
  friend RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }
  RatFun inverse() const;
  RatFun pow(long n) const;

  bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }

  std::optional<std::uint64_t> eval_mod(std::uint64_t x, std::uint64_t p) const;

  std::string str() const;  // "(num)/(den)"
  static RatFun parse(const std::string& s);

 private:
  Poly num_, den_;
  void normalize();
};

inline RatFun ratfun_normalize(const Poly& num, const Poly& den) { return RatFun(num, den); }

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p);

}  // namespace qnil
