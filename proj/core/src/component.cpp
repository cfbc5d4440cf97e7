#include "qnil/component.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qnil/error.hpp"

namespace qnil {

int GradedBasis::word_index(const Word& w) const {
  auto it = std::lower_bound(words.begin(), words.end(), w);
  if (it == words.end() || *it != w)
    fail(errc::index_out_of_range, "word not in component " + degree_str(degree));
  return (int)(it - words.begin());
}

RatFun DualElement::value(const Word& w) const {
  auto it = values.find(w);
  return it == values.end() ? RatFun(0) : it->second;
}

RatFun DualElement::operator()(const FreeElement& u) const {
  RatFun out(0);
  for (const auto& [w, c] : u.terms) {
    RatFun v = value(w);
    if (!v.is_zero()) out = out + c * v;
  }
  return out;
}

void DualElement::set(const Word& w, const RatFun& v) {
  if (v.is_zero())
    values.erase(w);
  else
    values[w] = v;
}

DualElement DualElement::operator+(const DualElement& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (degree != o.degree)
    fail(errc::size_mismatch, "adding functionals of different degrees");
  DualElement out = *this;
  for (const auto& [w, v] : o.values) out.set(w, out.value(w) + v);
  return out;
}

DualElement DualElement::operator-(const DualElement& o) const {
  return *this + o.scaled(RatFun(-1));
}

DualElement DualElement::scaled(const RatFun& c) const {
  DualElement out{degree, {}};
  if (c.is_zero()) return out;
  for (const auto& [w, v] : values) out.values.emplace(w, v * c);
  return out;
}

std::string DualElement::str() const {
  if (values.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, v] : values) {
    if (!first) os << ", ";
    first = false;
    os << word_str(w) << " -> " << v.str();
  }
  return os.str();
}

Algebra::Algebra(CartanData data, std::string cache_dir)
    : data_(std::move(data)), cache_dir_(std::move(cache_dir)) {
  if (cache_dir_.empty()) {
    const char* env = std::getenv("QNIL_CACHE_DIR");
    if (env) cache_dir_ = env;
  }
  if (!cache_dir_.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cache_dir_, ec);
    if (ec) cache_dir_.clear();
  }
}

RatFun Algebra::pairing(const Word& u, const Word& v) {
  std::lock_guard<std::mutex> lk(mu_);
  return pairing_locked(u, v);
}

RatFun Algebra::pairing_locked(const Word& u, const Word& v) {
  if (u.size() != v.size()) return RatFun(0);
  if (u.empty()) return RatFun(1);
  auto key = (u <= v) ? std::make_pair(u, v) : std::make_pair(v, u);
  auto it = pair_memo_.find(key);
  if (it != pair_memo_.end()) return it->second;
  int j = v[0];
  Word vp(v.begin() + 1, v.end());
  RatFun total(0);
  long e = 0;
  for (int p = 0; p < (int)u.size(); ++p) {
    if (u[p] == j) {
      Word up;
      up.reserve(u.size() - 1);
      for (int k = 0; k < (int)u.size(); ++k)
        if (k != p) up.push_back(u[k]);
      RatFun sub = pairing_locked(up, vp);
      if (!sub.is_zero()) total = total + RatFun::q((int)e) * sub;
    }
    e += data_.c(u[p], j);
  }
  pair_memo_.emplace(std::move(key), total);
  return total;
}

static void finish_radical(GradedBasis& gb) {
  gb.radical_basis.clear();
  std::vector<char> in_basis(gb.words.size(), 0);
  for (int i : gb.u_basis) in_basis[i] = 1;
  for (int w = 0; w < (int)gb.words.size(); ++w) {
    if (in_basis[w]) continue;
    FreeElement r = FreeElement::from_word(gb.words[w]);
    for (int b = 0; b < gb.dim(); ++b)
      if (!gb.coords[w][b].is_zero())
        r.add_term(gb.words[gb.u_basis[b]], RatFun(0) - gb.coords[w][b]);
    gb.radical_basis.push_back(std::move(r));
  }
}

GradedBasis Algebra::compute_component(const MultiDegree& g) {
  GradedBasis gb;
  gb.degree = g;
  gb.words = words_of_degree(data_, g);
  int n = (int)gb.words.size();
  gb.gram = RMat(n, RVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      RatFun p = pairing_locked(gb.words[i], gb.words[j]);
      gb.gram[i][j] = p;
      gb.gram[j][i] = p;
    }
  Echelon ech;
  for (int i = 0; i < n; ++i)
    if (ech.insert(gb.gram[i])) gb.u_basis.push_back(i);
  int k = gb.dim();
  RMat gii(k, RVec(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) gii[a][b] = gb.gram[gb.u_basis[a]][gb.u_basis[b]];
  RMat inv = invert(gii);
  gb.coords = RMat(n, RVec(k));
  for (int w = 0; w < n; ++w) {
    RVec rhs(k);
    for (int b = 0; b < k; ++b) rhs[b] = gb.gram[gb.u_basis[b]][w];
    gb.coords[w] = mat_apply(inv, rhs);
  }
  finish_radical(gb);
  return gb;
}

static std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

static const char* kCacheMagic = "qnil-comp 1";

std::string Algebra::cache_path(const MultiDegree& g) const {
  std::string key = std::string(kCacheMagic) + "|" + data_.key() + "|" + degree_str(g);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a64(key));
  return cache_dir_ + "/comp-" + buf + ".txt";
}

bool Algebra::load_component(const MultiDegree& g, GradedBasis& out) const {
  if (cache_dir_.empty()) return false;
  std::ifstream in(cache_path(g));
  if (!in) return false;
  std::string line;
  auto next = [&](std::string& s) { return static_cast<bool>(std::getline(in, s)); };
  if (!next(line) || line != kCacheMagic) return false;
  if (!next(line) || line != "key " + data_.key()) return false;
  if (!next(line) || line != "gamma " + degree_str(g)) return false;
  out.degree = g;
  out.words = words_of_degree(data_, g);
  int n = (int)out.words.size();
  int nfile = 0, k = 0;
  if (!next(line) || std::sscanf(line.c_str(), "words %d", &nfile) != 1 || nfile != n)
    return false;
  if (!next(line) || std::sscanf(line.c_str(), "rank %d", &k) != 1 || k < 0 || k > n)
    return false;
  out.u_basis.assign(k, 0);
  if (!next(line)) return false;
  {
    std::istringstream is(line);
    std::string tag;
    is >> tag;
    if (tag != "ubasis") return false;
    for (int b = 0; b < k; ++b)
      if (!(is >> out.u_basis[b]) || out.u_basis[b] < 0 || out.u_basis[b] >= n) return false;
  }
  try {
    out.gram = RMat(n, RVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        if (!next(line)) return false;
        RatFun v = RatFun::parse(line);
        out.gram[i][j] = v;
        out.gram[j][i] = v;
      }
    out.coords = RMat(n, RVec(k));
    for (int w = 0; w < n; ++w)
      for (int b = 0; b < k; ++b) {
        if (!next(line)) return false;
        out.coords[w][b] = RatFun::parse(line);
      }
  } catch (const error&) {
    return false;
  }
  if (!next(line) || line != "end") return false;
  finish_radical(out);
  return true;
}

void Algebra::store_component(const GradedBasis& gb) const {
  if (cache_dir_.empty()) return;
  std::string path = cache_path(gb.degree);
  std::string tmp = path + ".tmp";
  {
    std::ofstream outf(tmp, std::ios::trunc);
    if (!outf) return;
    int n = (int)gb.words.size();
    outf << kCacheMagic << '\n';
    outf << "key " << data_.key() << '\n';
    outf << "gamma " << degree_str(gb.degree) << '\n';
    outf << "words " << n << '\n';
    outf << "rank " << gb.dim() << '\n';
    outf << "ubasis";
    for (int b : gb.u_basis) outf << ' ' << b;
    outf << '\n';
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) outf << gb.gram[i][j].str() << '\n';
    for (int w = 0; w < n; ++w)
      for (int b = 0; b < gb.dim(); ++b) outf << gb.coords[w][b].str() << '\n';
    outf << "end\n";
    if (!outf) {
      outf.close();
      std::remove(tmp.c_str());
      return;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::remove(tmp.c_str());
}

const GradedBasis& Algebra::component(const MultiDegree& g) {
  std::lock_guard<std::mutex> lk(mu_);
  auto it = comp_memo_.find(g);
  if (it != comp_memo_.end()) return *it->second;
  auto gb = std::make_unique<GradedBasis>();
  if (!load_component(g, *gb)) {
    *gb = compute_component(g);
    store_component(*gb);
  }
  auto [pos, inserted] = comp_memo_.emplace(g, std::move(gb));
  (void)inserted;
  return *pos->second;
}

RatFun gram_pairing(Algebra& alg, const Word& u, const Word& v) { return alg.pairing(u, v); }

const GradedBasis& component_data(Algebra& alg, const MultiDegree& g) {
  return alg.component(g);
}

DualElement dual_of(Algebra& alg, const FreeElement& u) {
  auto deg = u.homogeneous_degree(alg.cartan());
  if (!deg) fail(errc::not_homogeneous, "dual_of needs a homogeneous element");
  DualElement out{*deg, {}};
  for (const Word& w : words_of_degree(alg.cartan(), *deg)) {
    RatFun v(0);
    for (const auto& [t, c] : u.terms) {
      RatFun p = alg.pairing(t, w);
      if (!p.is_zero()) v = v + c * p;
    }
    out.set(w, v);
  }
  return out;
}

DualElement dual_unit(const CartanData& data) {
  DualElement out{MultiDegree(data.rank(), 0), {}};
  out.set({}, RatFun(1));
  return out;
}

DualElement dual_generator(const CartanData& data, int i) {
  if (i < 1 || i > data.rank()) fail(errc::index_out_of_range, "generator index");
  MultiDegree g(data.rank(), 0);
  g[i - 1] = 1;
  DualElement out{g, {}};
  out.set({i}, RatFun(1));
  return out;
}

DualElement dual_multiply(const CartanData& data, const DualElement& x, const DualElement& y) {
  DualElement out{add_degree(x.degree, y.degree), {}};
  int hx = height(x.degree);
  for (const Word& w : words_of_degree(data, out.degree)) {
    int n = (int)w.size();
    if (n > 30) fail(errc::cap_exceeded, "dual_multiply word too long");
    RatFun total(0);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != hx) continue;
      Word left, right;
      long e = 0;
      for (int p = 0; p < n; ++p) {
        if (mask & (1u << p)) {
          for (int k = 0; k < p; ++k)
            if (!(mask & (1u << k))) e += data.c(w[k], w[p]);
          left.push_back(w[p]);
        } else {
          right.push_back(w[p]);
        }
      }
      if (degree_of_word(data, left) != x.degree) continue;
      RatFun xv = x.value(left);
      if (xv.is_zero()) continue;
      RatFun yv = y.value(right);
      if (yv.is_zero()) continue;
      total = total + RatFun::q((int)e) * xv * yv;
    }
    out.set(w, total);
  }
  return out;
}

DualElement mult_generator_right(const CartanData& data, const DualElement& x, int i) {
  MultiDegree gi(data.rank(), 0);
  gi[i - 1] = 1;
  DualElement out{add_degree(x.degree, gi), {}};
  for (const auto& [u, val] : x.values) {
    int n = (int)u.size();
    for (int p = 0; p <= n; ++p) {
      Word w;
      w.reserve(n + 1);
      w.insert(w.end(), u.begin(), u.begin() + p);
      w.push_back(i);
      w.insert(w.end(), u.begin() + p, u.end());
      long e = 0;
      for (int k = p; k < n; ++k) e += data.c(i, u[k]);
      out.set(w, out.value(w) + RatFun::q((int)e) * val);
    }
  }
  return out;
}

DualElement mult_generator_left(const CartanData& data, int i, const DualElement& x) {
  MultiDegree gi(data.rank(), 0);
  gi[i - 1] = 1;
  DualElement out{add_degree(x.degree, gi), {}};
  for (const auto& [u, val] : x.values) {
    int n = (int)u.size();
    for (int p = 0; p <= n; ++p) {
      Word w;
      w.reserve(n + 1);
      w.insert(w.end(), u.begin(), u.begin() + p);
      w.push_back(i);
      w.insert(w.end(), u.begin() + p, u.end());
      long e = 0;
      for (int k = 0; k < p; ++k) e += data.c(u[k], i);
      out.set(w, out.value(w) + RatFun::q((int)e) * val);
    }
  }
  return out;
}

DualElement estar_apply(const CartanData& data, int i, const DualElement& x) {
  if (i < 1 || i > data.rank()) fail(errc::index_out_of_range, "generator index");
  MultiDegree gi(data.rank(), 0);
  gi[i - 1] = 1;
  auto deg = sub_degree(x.degree, gi);
  DualElement out{deg ? *deg : x.degree, {}};
  if (!deg) return out;
  for (const auto& [w, val] : x.values) {
    if (w.empty() || w[0] != i) continue;
    Word tail(w.begin() + 1, w.end());
    out.set(tail, val);
  }
  return out;
}

DualElement eop_apply(const CartanData& data, int i, const DualElement& x) {
  if (i < 1 || i > data.rank()) fail(errc::index_out_of_range, "generator index");
  MultiDegree gi(data.rank(), 0);
  gi[i - 1] = 1;
  auto deg = sub_degree(x.degree, gi);
  DualElement out{deg ? *deg : x.degree, {}};
  if (!deg) return out;
  for (const auto& [w, val] : x.values) {
    if (w.empty() || w.back() != i) continue;
    Word head(w.begin(), w.end() - 1);
    out.set(head, val);
  }
  return out;
}

}  // namespace qnil
