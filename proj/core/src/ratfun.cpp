#include "qnil/ratfun.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <vector>

namespace qnil {

Poly::Poly(long c) {
  if (c != 0) c_[0] = c;
}

Poly::Poly(const mpz_class& c) {
  if (c != 0) c_[0] = c;
}

Poly Poly::q(int e) { return term(1, e); }

Poly Poly::term(const mpz_class& c, int e) {
  if (e < 0) fail(errc::bad_input, "negative exponent in polynomial term");
  Poly p;
  if (c != 0) p.c_[e] = c;
  return p;
}

int Poly::degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }

int Poly::low_degree() const { return c_.empty() ? -1 : c_.begin()->first; }

mpz_class Poly::coeff(int e) const {
  auto it = c_.find(e);
  return it == c_.end() ? mpz_class(0) : it->second;
}

const mpz_class& Poly::leading() const {
  if (c_.empty()) fail(errc::internal_inconsistency, "leading coefficient of zero polynomial");
  return c_.rbegin()->second;
}

bool Poly::is_one() const { return c_.size() == 1 && c_.begin()->first == 0 && c_.begin()->second == 1; }

Poly Poly::operator-() const {
  Poly r;
  for (auto& [e, c] : c_) r.c_[e] = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (auto& [e, c] : o.c_) {
    auto it = c_.find(e);
    if (it == c_.end()) {
      c_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) c_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (auto& [e, c] : o.c_) {
    auto it = c_.find(e);
    if (it == c_.end()) {
      c_[e] = -c;
    } else {
      it->second -= c;
      if (it->second == 0) c_.erase(it);
    }
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (auto& [ea, ca] : a.c_)
    for (auto& [eb, cb] : b.c_) {
      auto& slot = r.c_[ea + eb];
      slot += ca * cb;
    }
  for (auto it = r.c_.begin(); it != r.c_.end();)
    it = it->second == 0 ? r.c_.erase(it) : std::next(it);
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly Poly::scaled(const mpz_class& c) const {
  Poly r;
  if (c == 0) return r;
  for (auto& [e, v] : c_) r.c_[e] = v * c;
  return r;
}

Poly Poly::shifted(int e) const {
  if (is_zero()) return Poly();
  if (low_degree() + e < 0) fail(errc::bad_input, "shift below q^0");
  Poly r;
  for (auto& [d, v] : c_) r.c_[d + e] = v;
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly r(1), b = *this;
  while (n) {
    if (n & 1) r *= b;
    b = (n >>= 1) ? b * b : b;
  }
  return r;
}

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (auto& [e, c] : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Poly Poly::primitive_part() const {
  if (is_zero()) return Poly();
  mpz_class g = content();
  Poly r;
  for (auto& [e, c] : c_) r.c_[e] = c / g;
  return r;
}

namespace {

// Pseudo-remainder: repeatedly kill the leading term of a against b, scaling a by
// b's leading coefficient as needed.  Only used inside the gcd, where scalar
// factors are irrelevant.
Poly prem(Poly a, const Poly& b) {
  const int db = b.degree();
  const mpz_class& lb = b.leading();
  while (!a.is_zero() && a.degree() >= db) {
    mpz_class la = a.leading();
    int sh = a.degree() - db;
    a = a.scaled(lb) - b.shifted(sh).scaled(la);
  }
  return a;
}

Poly positive_leading(Poly p) { return !p.is_zero() && p.leading() < 0 ? -p : p; }

}  // namespace

namespace {

// Certifies that two primitive polynomials are coprime: when both leading
// coefficients survive mod p, any common factor would keep its degree mod p
// and show up in the modular gcd, so a unit gcd there is a proof.
bool coprime_mod_p(const Poly& a, const Poly& b) {
  constexpr std::uint64_t p = 2305843009213693951ull;  // 2^61 - 1
  auto dense = [](const Poly& f) {
    std::vector<std::uint64_t> out(f.degree() + 1, 0);
    for (const auto& [e, c] : f.terms()) out[e] = mpz_fdiv_ui(c.get_mpz_t(), p);
    return out;
  };
  auto trim = [](std::vector<std::uint64_t>& f) {
    while (!f.empty() && !f.back()) f.pop_back();
  };
  std::vector<std::uint64_t> fa = dense(a), fb = dense(b);
  if (fa.back() == 0 || fb.back() == 0) return false;  // degree dropped: inconclusive
  while (true) {
    if (fb.empty()) return fa.size() == 1;
    if (fb.size() == 1) return true;
    std::uint64_t inv = invmod_u64(fb.back(), p);
    while (fa.size() >= fb.size()) {
      std::uint64_t f = mulmod_u64(fa.back(), inv, p);
      size_t off = fa.size() - fb.size();
      for (size_t i = 0; i < fb.size(); ++i) {
        std::uint64_t s = mulmod_u64(f, fb[i], p);
        std::uint64_t& t = fa[off + i];
        t = (t >= s) ? t - s : t + p - s;
      }
      trim(fa);
      if (fa.empty()) break;
    }
    std::swap(fa, fb);
  }
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return positive_leading(b);
  if (b.is_zero()) return positive_leading(a);
  mpz_class c;
  mpz_class ca = a.content(), cb = b.content();
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  int lo = std::min(a.low_degree(), b.low_degree());
  Poly pa = a.primitive_part().shifted(-a.low_degree());
  Poly pb = b.primitive_part().shifted(-b.low_degree());
  Poly g;
  if (pa.is_monomial() || pb.is_monomial()) {
    g = Poly(1);
  } else if (coprime_mod_p(pa, pb)) {
    g = Poly(1);
  } else {
    // primitive PRS on the q^0-anchored parts
    while (!pb.is_zero()) {
      Poly r = prem(pa, pb);
      pa = pb;
      pb = r.is_zero() ? Poly() : r.primitive_part();
    }
    g = positive_leading(pa);
  }
  return g.shifted(lo).scaled(c);
}

Poly Poly::divexact(const Poly& d) const {
  if (d.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
  if (is_zero()) return Poly();
  Poly a = *this, quot;
  const int dd = d.degree();
  while (!a.is_zero()) {
    if (a.degree() < dd) fail(errc::internal_inconsistency, "inexact polynomial division");
    mpz_class c;
    if (!mpz_divisible_p(a.leading().get_mpz_t(), d.leading().get_mpz_t()))
      fail(errc::internal_inconsistency, "inexact polynomial division");
    mpz_divexact(c.get_mpz_t(), a.leading().get_mpz_t(), d.leading().get_mpz_t());
    int e = a.degree() - dd;
    quot += term(c, e);
    a -= d.shifted(e).scaled(c);
  }
  return quot;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (std::uint64_t)((unsigned __int128)a * b % p);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, p);
    a = mulmod_u64(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) { return powmod_u64(a, p - 2, p); }

std::uint64_t Poly::eval_mod(std::uint64_t x, std::uint64_t p) const {
  std::uint64_t r = 0;
  int last = 0;
  std::uint64_t xe = 1;
  for (auto& [e, c] : c_) {
    xe = mulmod_u64(xe, powmod_u64(x, (std::uint64_t)(e - last), p), p);
    last = e;
    std::uint64_t cm = mpz_fdiv_ui(c.get_mpz_t(), p);
    r = (r + mulmod_u64(cm, xe, p)) % p;
  }
  return r;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& [e, c] : c_) {
    bool neg = c < 0;
    mpz_class a = abs(c);
    std::string t;
    if (e == 0) {
      t = a.get_str();
    } else {
      if (a != 1) t = a.get_str() + "*";
      t += e == 1 ? "q" : "q^" + std::to_string(e);
    }
    if (first) {
      out = (neg ? "-" : "") + t;
      first = false;
    } else {
      out += (neg ? "-" : "+") + t;
    }
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(const std::string& s) { fail(errc::bad_input, "cannot parse '" + s + "'"); }

}  // namespace

Poly Poly::parse(const std::string& s) {
  Poly out;
  size_t i = 0;
  auto skip_ws = [&] { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; };
  skip_ws();
  if (i == s.size()) parse_fail(s);
  bool first = true;
  while (i < s.size()) {
    skip_ws();
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      parse_fail(s);
    }
    skip_ws();
    std::string digits;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) digits += s[i++];
    mpz_class c = digits.empty() ? mpz_class(1) : mpz_class(digits);
    skip_ws();
    if (i < s.size() && s[i] == '*') {
      ++i;
      skip_ws();
    }
    int e = 0;
    if (i < s.size() && s[i] == 'q') {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string ed;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ed += s[i++];
        if (ed.empty()) parse_fail(s);
        e = std::atoi(ed.c_str());
      }
    } else if (digits.empty()) {
      parse_fail(s);
    }
    out += term(sign * c, e);
    first = false;
    skip_ws();
  }
  return out;
}

Poly q_int(unsigned n, const Poly& base) {
  if (base.is_zero()) fail(errc::bad_input, "q_int with zero base");
  Poly r, p(1);
  for (unsigned k = 0; k < n; ++k) {
    r += p;
    p *= base;
  }
  return r;
}

Poly q_factorial(unsigned n, const Poly& base) {
  Poly r(1);
  for (unsigned k = 1; k <= n; ++k) r *= q_int(k, base);
  return r;
}

RatFun::RatFun(const Poly& num, const Poly& den) : num_(num), den_(den) { normalize(); }

void RatFun::normalize() {
  if (den_.is_zero()) fail(errc::zero_denominator, "fraction with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_.divexact(g);
    den_ = den_.divexact(g);
  }
  if (den_.leading() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

RatFun RatFun::q(int e) {
  return e >= 0 ? RatFun(Poly::q(e)) : RatFun(Poly(1), Poly::q(-e));
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun& RatFun::operator+=(const RatFun& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFun& RatFun::operator-=(const RatFun& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFun& RatFun::operator*=(const RatFun& o) {
  if (is_zero() || o.is_zero()) {
    *this = RatFun();
    return *this;
  }
  // the cross-cancelled product of reduced fractions is already reduced
  Poly g1 = Poly::gcd(num_, o.den_);
  Poly g2 = Poly::gcd(o.num_, den_);
  num_ = num_.divexact(g1) * o.num_.divexact(g2);
  den_ = den_.divexact(g2) * o.den_.divexact(g1);
  if (den_.leading() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  return *this;
}

RatFun& RatFun::operator/=(const RatFun& o) { return *this *= o.inverse(); }

RatFun RatFun::inverse() const {
  if (is_zero()) fail(errc::division_by_zero, "inverse of zero");
  RatFun r;
  r.num_ = den_;
  r.den_ = num_;
  if (r.den_.leading() < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

RatFun RatFun::pow(long n) const {
  RatFun b = n < 0 ? inverse() : *this;
  unsigned long e = n < 0 ? -(unsigned long)n : (unsigned long)n;
  RatFun r(1);
  while (e) {
    if (e & 1) r *= b;
    b = (e >>= 1) ? b * b : b;
  }
  return r;
}

std::optional<std::uint64_t> RatFun::eval_mod(std::uint64_t x, std::uint64_t p) const {
  std::uint64_t d = den_.eval_mod(x, p);
  if (d == 0) return std::nullopt;
  return mulmod_u64(num_.eval_mod(x, p), invmod_u64(d, p), p);
}

std::string RatFun::str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

RatFun RatFun::parse(const std::string& s) {
  auto sep = s.find(")/(");
  if (sep == std::string::npos) return RatFun(Poly::parse(s));
  if (s.empty() || s.front() != '(' || s.back() != ')') parse_fail(s);
  return RatFun(Poly::parse(s.substr(1, sep - 1)), Poly::parse(s.substr(sep + 3, s.size() - sep - 4)));
}

}  // namespace qnil
