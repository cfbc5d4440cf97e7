#include "qnil/free_algebra.hpp"

#include <algorithm>
#include <sstream>

#include "qnil/error.hpp"

namespace qnil {

MultiDegree degree_of_word(const CartanData& data, const Word& w) {
  MultiDegree g(data.rank(), 0);
  for (int c : w) {
    if (c < 1 || c > data.rank()) fail(errc::index_out_of_range, "letter out of range");
    ++g[c - 1];
  }
  return g;
}

int height(const MultiDegree& g) {
  int h = 0;
  for (int c : g) {
    if (c < 0) fail(errc::bad_input, "negative degree entry");
    h += c;
  }
  return h;
}

MultiDegree add_degree(const MultiDegree& a, const MultiDegree& b) {
  if (a.size() != b.size()) fail(errc::size_mismatch, "degree ranks differ");
  MultiDegree out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

std::optional<MultiDegree> sub_degree(const MultiDegree& a, const MultiDegree& b) {
  if (a.size() != b.size()) fail(errc::size_mismatch, "degree ranks differ");
  MultiDegree out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] - b[i];
    if (out[i] < 0) return std::nullopt;
  }
  return out;
}

std::string degree_str(const MultiDegree& g) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < g.size(); ++i) {
    if (i) os << ',';
    os << g[i];
  }
  os << ')';
  return os.str();
}

static void words_rec(MultiDegree& left, Word& acc, std::vector<Word>& out) {
  bool done = true;
  for (size_t i = 0; i < left.size(); ++i) {
    if (left[i] == 0) continue;
    done = false;
    --left[i];
    acc.push_back((int)i + 1);
    words_rec(left, acc, out);
    acc.pop_back();
    ++left[i];
  }
  if (done) out.push_back(acc);
}

std::vector<Word> words_of_degree(const CartanData& data, const MultiDegree& g) {
  if ((int)g.size() != data.rank()) fail(errc::size_mismatch, "degree rank mismatch");
  MultiDegree left = g;
  (void)height(left);
  Word acc;
  std::vector<Word> out;
  words_rec(left, acc, out);
  return out;
}

long braiding_exponent(const CartanData& data, const MultiDegree& g, const MultiDegree& h) {
  if ((int)g.size() != data.rank() || (int)h.size() != data.rank())
    fail(errc::size_mismatch, "degree rank mismatch");
  long e = 0;
  for (int i = 1; i <= data.rank(); ++i)
    for (int j = 1; j <= data.rank(); ++j)
      e += (long)data.c(i, j) * g[i - 1] * h[j - 1];
  return e;
}

RatFun braiding_factor(const CartanData& data, const MultiDegree& g, const MultiDegree& h) {
  return RatFun::q((int)braiding_exponent(data, g, h));
}

FreeElement FreeElement::unit() { return from_word({}); }

FreeElement FreeElement::generator(int i) { return from_word({i}); }

FreeElement FreeElement::from_word(const Word& w, const RatFun& c) {
  FreeElement e;
  e.add_term(w, c);
  return e;
}

void FreeElement::add_term(const Word& w, const RatFun& c) {
  if (c.is_zero()) return;
  auto it = terms.find(w);
  if (it == terms.end()) {
    terms.emplace(w, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms.erase(it);
}

FreeElement FreeElement::operator+(const FreeElement& o) const {
  FreeElement out = *this;
  for (const auto& [w, c] : o.terms) out.add_term(w, c);
  return out;
}

FreeElement FreeElement::operator-(const FreeElement& o) const {
  FreeElement out = *this;
  for (const auto& [w, c] : o.terms) out.add_term(w, RatFun(0) - c);
  return out;
}

FreeElement FreeElement::operator*(const FreeElement& o) const {
  FreeElement out;
  for (const auto& [u, cu] : terms)
    for (const auto& [v, cv] : o.terms) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      out.add_term(w, cu * cv);
    }
  return out;
}

FreeElement FreeElement::scaled(const RatFun& c) const {
  FreeElement out;
  for (const auto& [w, cw] : terms) out.add_term(w, cw * c);
  return out;
}

std::optional<MultiDegree> FreeElement::homogeneous_degree(const CartanData& data) const {
  std::optional<MultiDegree> deg;
  for (const auto& [w, c] : terms) {
    MultiDegree g = degree_of_word(data, w);
    if (!deg)
      deg = g;
    else if (*deg != g)
      return std::nullopt;
  }
  if (!deg) deg = MultiDegree(data.rank(), 0);
  return deg;
}

std::string FreeElement::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << '[' << c.str() << "]*" << (w.empty() ? std::string("1") : word_str(w));
  }
  return os.str();
}

void TensorElement::add_term(const Word& a, const Word& b, const RatFun& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(a, b);
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(std::move(key), c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms.erase(it);
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
  TensorElement out = *this;
  for (const auto& [k, c] : o.terms) out.add_term(k.first, k.second, c);
  return out;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
  TensorElement out = *this;
  for (const auto& [k, c] : o.terms) out.add_term(k.first, k.second, RatFun(0) - c);
  return out;
}

TensorElement TensorElement::scaled(const RatFun& c) const {
  TensorElement out;
  for (const auto& [k, ck] : terms) out.add_term(k.first, k.second, ck * c);
  return out;
}

TensorElement braided_multiply(const CartanData& data, const TensorElement& x,
                               const TensorElement& y) {
  TensorElement out;
  for (const auto& [kx, cx] : x.terms) {
    MultiDegree degb = degree_of_word(data, kx.second);
    for (const auto& [ky, cy] : y.terms) {
      MultiDegree degc = degree_of_word(data, ky.first);
      RatFun coeff = cx * cy * braiding_factor(data, degb, degc);
      Word left = kx.first;
      left.insert(left.end(), ky.first.begin(), ky.first.end());
      Word right = kx.second;
      right.insert(right.end(), ky.second.begin(), ky.second.end());
      out.add_term(left, right, coeff);
    }
  }
  return out;
}

TensorElement coproduct(const CartanData& data, const FreeElement& u) {
  TensorElement out;
  for (const auto& [w, c] : u.terms) {
    int n = (int)w.size();
    if (n > 30) fail(errc::cap_exceeded, "coproduct word too long");
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Word left, right;
      long e = 0;
      for (int p = 0; p < n; ++p) {
        if (mask & (1u << p)) {
          // crossing weight: earlier right-leg letters slide past w[p]
          for (int k = 0; k < p; ++k)
            if (!(mask & (1u << k))) e += data.c(w[k], w[p]);
          left.push_back(w[p]);
        } else {
          right.push_back(w[p]);
        }
      }
      out.add_term(left, right, c * RatFun::q((int)e));
    }
  }
  return out;
}

TensorElement coproduct_by_products(const CartanData& data, const FreeElement& u) {
  TensorElement out;
  for (const auto& [w, c] : u.terms) {
    TensorElement acc;
    acc.add_term({}, {}, RatFun(1));
    for (int letter : w) {
      TensorElement step;
      step.add_term({letter}, {}, RatFun(1));
      step.add_term({}, {letter}, RatFun(1));
      acc = braided_multiply(data, acc, step);
    }
    out = out + acc.scaled(c);
  }
  return out;
}

}  // namespace qnil
