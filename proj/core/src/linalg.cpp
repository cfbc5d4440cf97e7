#include "qnil/linalg.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>

#include "qnil/error.hpp"

namespace qnil {

static int first_nonzero(const RVec& v) {
  for (int i = 0; i < (int)v.size(); ++i)
    if (!v[i].is_zero()) return i;
  return -1;
}

RVec Echelon::reduce(RVec v) const {
  for (int r = 0; r < (int)rows_.size(); ++r) {
    const RatFun& c = v[pivots_[r]];
    if (c.is_zero()) continue;
    RatFun f = c;
    for (int j = pivots_[r]; j < (int)v.size(); ++j)
      if (!rows_[r][j].is_zero()) v[j] = v[j] - f * rows_[r][j];
  }
  return v;
}

bool Echelon::insert(RVec v) {
  v = reduce(std::move(v));
  int p = first_nonzero(v);
  if (p < 0) return false;
  RatFun inv = v[p].inverse();
  for (auto& c : v) c = c * inv;
  v[p] = RatFun(1);
  for (int r = 0; r < (int)rows_.size(); ++r) {
    const RatFun& c = rows_[r][p];
    if (c.is_zero()) continue;
    RatFun f = c;
    for (int j = p; j < (int)v.size(); ++j)
      if (!v[j].is_zero()) rows_[r][j] = rows_[r][j] - f * v[j];
  }
  auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

int exact_rank(const RMat& m) {
  Echelon e;
  for (const auto& row : m) e.insert(row);
  return e.rank();
}

std::vector<RVec> null_space(const RMat& m) {
  if (m.empty()) return {};
  int n = (int)m[0].size();
  Echelon e;
  for (const auto& row : m) {
    if ((int)row.size() != n) fail(errc::size_mismatch, "null_space: ragged matrix");
    e.insert(row);
  }
  std::vector<char> is_pivot(n, 0);
  for (int p : e.pivots()) is_pivot[p] = 1;
  std::vector<RVec> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RVec x(n, RatFun(0));
    x[f] = RatFun(1);
    for (int r = 0; r < (int)e.rows().size(); ++r)
      x[e.pivots()[r]] = RatFun(0) - e.rows()[r][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<RVec> solve(const RMat& m, const RVec& b) {
  int rows = (int)m.size();
  if ((int)b.size() != rows) fail(errc::size_mismatch, "solve: rhs length");
  int n = rows ? (int)m[0].size() : 0;
  Echelon e;
  for (int i = 0; i < rows; ++i) {
    RVec aug = m[i];
    aug.push_back(b[i]);
    e.insert(std::move(aug));
  }
  RVec x(n, RatFun(0));
  for (int r = 0; r < (int)e.rows().size(); ++r) {
    int p = e.pivots()[r];
    if (p == n) return std::nullopt;
    x[p] = e.rows()[r][n];
  }
  return x;
}

RMat invert(const RMat& m) {
  int n = (int)m.size();
  RMat work = m;
  for (int i = 0; i < n; ++i) {
    if ((int)work[i].size() != n) fail(errc::size_mismatch, "invert: not square");
    for (int j = 0; j < n; ++j) work[i].push_back(RatFun(i == j ? 1 : 0));
  }
  Echelon e;
  for (auto& row : work) e.insert(std::move(row));
  if (e.rank() != n) fail(errc::internal_inconsistency, "invert: singular matrix");
  RMat out(n, RVec(n));
  for (int r = 0; r < n; ++r) {
    if (e.pivots()[r] != r) fail(errc::internal_inconsistency, "invert: singular matrix");
    for (int j = 0; j < n; ++j) out[r][j] = e.rows()[r][n + j];
  }
  return out;
}

RVec mat_apply(const RMat& m, const RVec& v) {
  RVec out(m.size(), RatFun(0));
  for (int i = 0; i < (int)m.size(); ++i) {
    if (m[i].size() != v.size()) fail(errc::size_mismatch, "mat_apply");
    for (int j = 0; j < (int)v.size(); ++j)
      if (!m[i][j].is_zero() && !v[j].is_zero()) out[i] = out[i] + m[i][j] * v[j];
  }
  return out;
}

namespace {

constexpr std::uint64_t kPrime = (1ull << 61) - 1;

// Reduced row echelon form mod p; returns pivot column per echelon row.
std::vector<int> rref_mod_p(std::vector<std::vector<std::uint64_t>>& a) {
  int rows = (int)a.size();
  int cols = rows ? (int)a[0].size() : 0;
  std::vector<int> pivots;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][c]) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    std::uint64_t inv = invmod_u64(a[rank][c], kPrime);
    for (int j = c; j < cols; ++j) a[rank][j] = mulmod_u64(a[rank][j], inv, kPrime);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || !a[r][c]) continue;
      std::uint64_t f = a[r][c];
      for (int j = c; j < cols; ++j) {
        std::uint64_t sub = mulmod_u64(f, a[rank][j], kPrime);
        a[r][j] = (a[r][j] >= sub) ? a[r][j] - sub : a[r][j] + kPrime - sub;
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

// Evaluates every entry at a deterministic pseudorandom point, retrying when a
// denominator vanishes; calls sink with the specialized matrix.
template <typename F>
auto with_specialization(const RMat& m, std::uint64_t salt, F&& sink) {
  std::uint64_t x0 = 0x9e3779b97f4a7c15ull ^ (salt * 0xbf58476d1ce4e5b9ull);
  for (int attempt = 0; attempt < 16; ++attempt) {
    x0 = x0 * 6364136223846793005ull + 1442695040888963407ull;
    std::uint64_t point = x0 % (kPrime - 2) + 1;
    std::vector<std::vector<std::uint64_t>> a;
    a.reserve(m.size());
    bool ok = true;
    for (const auto& row : m) {
      std::vector<std::uint64_t> r;
      r.reserve(row.size());
      for (const auto& f : row) {
        auto v = f.eval_mod(point, kPrime);
        if (!v) { ok = false; break; }
        r.push_back(*v);
      }
      if (!ok) break;
      a.push_back(std::move(r));
    }
    if (ok) return sink(std::move(a));
  }
  fail(errc::internal_inconsistency, "no usable modular evaluation point");
}

using U64Poly = std::vector<std::uint64_t>;  // dense mod-p coefficients, low to high

void poly_trim(U64Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int poly_deg(const U64Poly& a) { return (int)a.size() - 1; }

std::uint64_t poly_eval(const U64Poly& a, std::uint64_t x) {
  std::uint64_t v = 0;
  for (int k = (int)a.size() - 1; k >= 0; --k) v = (mulmod_u64(v, x, kPrime) + a[k]) % kPrime;
  return v;
}

U64Poly poly_sub(const U64Poly& a, const U64Poly& b) {
  U64Poly out(std::max(a.size(), b.size()), 0);
  for (size_t k = 0; k < out.size(); ++k) {
    std::uint64_t x = k < a.size() ? a[k] : 0, y = k < b.size() ? b[k] : 0;
    out[k] = (x >= y) ? x - y : x + kPrime - y;
  }
  poly_trim(out);
  return out;
}

// a -= c * x^k * b
void poly_submul(U64Poly& a, std::uint64_t c, int k, const U64Poly& b) {
  if (a.size() < b.size() + k) a.resize(b.size() + k, 0);
  for (size_t j = 0; j < b.size(); ++j) {
    std::uint64_t s = mulmod_u64(c, b[j], kPrime);
    std::uint64_t& t = a[j + k];
    t = (t >= s) ? t - s : t + kPrime - s;
  }
  poly_trim(a);
}

// Inverses of 1..top mod kPrime by the linear recurrence, so the divided
// differences below can look up xs[i] - xs[i-level] directly (the sample
// points are ascending integers, so differences stay small).
void extend_small_inverses(std::vector<std::uint64_t>& inv, std::uint64_t top) {
  if (inv.empty()) inv = {0, 1};
  while (inv.size() <= top) {
    std::uint64_t i = inv.size();
    inv.push_back(mulmod_u64(kPrime - kPrime / i, inv[kPrime % i], kPrime));
  }
}

// Newton interpolation through (xs[i], ys[i]), i < n.
U64Poly newton_interp(const std::vector<std::uint64_t>& xs, const std::vector<std::uint64_t>& ys,
                      int n, const std::vector<std::uint64_t>& inv) {
  std::vector<std::uint64_t> dd(ys.begin(), ys.begin() + n);
  for (int level = 1; level < n; ++level)
    for (int i = n - 1; i >= level; --i) {
      std::uint64_t num = (dd[i] >= dd[i - 1]) ? dd[i] - dd[i - 1] : dd[i] + kPrime - dd[i - 1];
      dd[i] = mulmod_u64(num, inv[xs[i] - xs[i - level]], kPrime);
    }
  U64Poly result, basis{1};
  for (int k = 0; k < n; ++k) {
    if (result.size() < basis.size()) result.resize(basis.size(), 0);
    for (size_t j = 0; j < basis.size(); ++j)
      result[j] = (result[j] + mulmod_u64(dd[k], basis[j], kPrime)) % kPrime;
    // basis *= (x - xs[k])
    basis.insert(basis.begin(), 0);
    std::uint64_t neg = xs[k] ? kPrime - xs[k] : 0;
    for (size_t j = 0; j + 1 < basis.size(); ++j)
      basis[j] = (basis[j] + mulmod_u64(neg, basis[j + 1], kPrime)) % kPrime;
    poly_trim(result);
  }
  return result;
}

// Cauchy interpolation: the reduced rational function n/d through the first
// n_used points, validated on the next extra points.  nullopt when the data is
// not consistent with a function of the reachable degrees.
std::optional<std::pair<U64Poly, U64Poly>> cauchy_reconstruct(
    const std::vector<std::uint64_t>& xs, const std::vector<std::uint64_t>& ys, int n_used,
    int extra, const U64Poly& mod, const std::vector<std::uint64_t>& inv) {
  U64Poly h = newton_interp(xs, ys, n_used, inv);
  U64Poly r0 = mod, r1 = h, t0, t1{1};
  int stop = (n_used - 1) / 2;
  while (poly_deg(r1) > stop) {
    // r0 = q*r1 + rem; advance (r, t) by the quotient
    U64Poly rem = r0, q;
    std::uint64_t lead_inv = invmod_u64(r1.back(), kPrime);
    while (poly_deg(rem) >= poly_deg(r1)) {
      int k = poly_deg(rem) - poly_deg(r1);
      std::uint64_t c = mulmod_u64(rem.back(), lead_inv, kPrime);
      if ((int)q.size() < k + 1) q.resize(k + 1, 0);
      q[k] = (q[k] + c) % kPrime;
      poly_submul(rem, c, k, r1);
    }
    U64Poly tnew = t0;
    for (size_t k = 0; k < q.size(); ++k)
      if (q[k]) poly_submul(tnew, q[k], (int)k, t1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(tnew);
    if (r1.empty()) break;
  }
  if (t1.empty()) return std::nullopt;
  for (int i = n_used; i < n_used + extra; ++i) {
    std::uint64_t dv = poly_eval(t1, xs[i]);
    if (!dv) return std::nullopt;
    if (poly_eval(r1, xs[i]) != mulmod_u64(ys[i], dv, kPrime)) return std::nullopt;
  }
  return std::make_pair(std::move(r1), std::move(t1));
}

// c = u/v mod p with |u|, v < 2^30; nullopt when no such pair exists
std::optional<std::pair<long long, long long>> rat_recon(std::uint64_t c) {
  constexpr long long kBound = (1LL << 30) - 1;
  long long r0 = (long long)kPrime, r1 = (long long)c, t0 = 0, t1 = 1;
  while (r1 > kBound) {
    long long q = r0 / r1;
    long long r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || std::llabs(t1) > kBound) return std::nullopt;
  if (t1 < 0) {
    t1 = -t1;
    r1 = -r1;
  }
  long long g = std::gcd(std::llabs(r1), t1);
  if (g > 1) {
    r1 /= g;
    t1 /= g;
  }
  return std::make_pair(r1, t1);
}

// The EEA pair is scaled arbitrarily mod p, so make the denominator monic,
// recover every coefficient as a rational number, and clear the common
// denominator to land on an integer polynomial pair.
std::optional<std::pair<Poly, Poly>> lift_rational_pair(U64Poly num, U64Poly den) {
  if (den.empty()) return std::nullopt;
  std::uint64_t inv = invmod_u64(den.back(), kPrime);
  for (auto& c : num) c = mulmod_u64(c, inv, kPrime);
  for (auto& c : den) c = mulmod_u64(c, inv, kPrime);
  std::vector<std::pair<long long, long long>> nc(num.size()), dc(den.size());
  mpz_class scale = 1;
  auto take = [&](const U64Poly& a, std::vector<std::pair<long long, long long>>& out) -> bool {
    for (size_t k = 0; k < a.size(); ++k) {
      auto uv = rat_recon(a[k]);
      if (!uv) return false;
      out[k] = *uv;
      mpz_class v((long)uv->second), g;
      mpz_gcd(g.get_mpz_t(), scale.get_mpz_t(), v.get_mpz_t());
      scale = scale / g * v;
    }
    return true;
  };
  if (!take(num, nc) || !take(den, dc)) return std::nullopt;
  auto build = [&](const std::vector<std::pair<long long, long long>>& cs) {
    Poly out;
    for (size_t k = 0; k < cs.size(); ++k) {
      if (!cs[k].first) continue;
      out += Poly::term(mpz_class((long)cs[k].first) * (scale / mpz_class((long)cs[k].second)),
                        (int)k);
    }
    return out;
  };
  return std::make_pair(build(nc), build(dc));
}

}  // namespace

std::optional<RVec> kernel_vector_reconstruct(const std::vector<MatEntry>& entries, int rows,
                                              int cols, std::uint64_t salt, bool* no_kernel) {
  if (no_kernel) *no_kernel = false;
  if (!rows || !cols) return std::nullopt;
  std::vector<std::vector<std::pair<int, RatFun>>> colv(cols);
  for (const auto& e : entries) colv[e.col].push_back({e.row, e.c});
  for (auto& v : colv) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    size_t o = 0;
    for (size_t i = 0; i < v.size(); ++i) {
      if (o && v[o - 1].first == v[i].first)
        v[o - 1].second = v[o - 1].second + v[i].second;
      else {
        if (o != i) v[o] = std::move(v[i]);
        ++o;
      }
    }
    v.resize(o);
  }
  auto col_at_point = [&](int j, std::uint64_t point, std::vector<std::uint64_t>& w) -> bool {
    std::fill(w.begin(), w.end(), 0);
    for (const auto& [r, f] : colv[j]) {
      auto v = f.eval_mod(point, kPrime);
      if (!v) return false;
      w[r] = *v;
    }
    return true;
  };
  // Scan columns in order, keeping a forward-reduced echelon of those seen so
  // far together with each echelon vector's expansion over the pivot columns.
  // The first column that reduces to zero closes the least-depth dependence;
  // the pivots appearing in it are the only components to recover, and each
  // sample point then solves a system of just that size.
  struct Probe {
    std::vector<int> pivcols, pivrows;
    int free_col = -1;
    bool full_rank = false;
  };
  auto try_probe = [&](std::uint64_t point) -> std::optional<Probe> {
    Probe pr;
    std::vector<std::vector<std::uint64_t>> piv;
    std::vector<std::vector<std::pair<int, std::uint64_t>>> lam;
    std::vector<int> pivrowv, pivcolv;
    std::vector<std::uint64_t> w(rows), mu(cols, 0);
    for (int j = 0; j < cols; ++j) {
      if (!col_at_point(j, point, w)) return std::nullopt;
      std::fill(mu.begin(), mu.begin() + pivcolv.size(), 0);
      for (size_t i = 0; i < piv.size(); ++i) {
        std::uint64_t f = w[pivrowv[i]];
        if (!f) continue;
        const auto& p = piv[i];
        for (int r = 0; r < rows; ++r) {
          if (!p[r]) continue;
          std::uint64_t s = mulmod_u64(f, p[r], kPrime);
          w[r] = (w[r] >= s) ? w[r] - s : w[r] + kPrime - s;
        }
        for (const auto& [t, lv] : lam[i])
          mu[t] = (mu[t] + mulmod_u64(f, lv, kPrime)) % kPrime;
      }
      int lead = -1;
      for (int r = 0; r < rows; ++r)
        if (w[r]) { lead = r; break; }
      if (lead < 0) {
        pr.free_col = j;
        for (size_t t = 0; t < pivcolv.size(); ++t)
          if (mu[t]) pr.pivcols.push_back(pivcolv[t]);
        break;
      }
      std::uint64_t inv = invmod_u64(w[lead], kPrime);
      for (auto& c : w)
        if (c) c = mulmod_u64(c, inv, kPrime);
      std::vector<std::pair<int, std::uint64_t>> l;
      for (size_t t = 0; t < pivcolv.size(); ++t)
        if (mu[t]) l.push_back({(int)t, mulmod_u64(kPrime - mu[t], inv, kPrime)});
      l.push_back({(int)pivcolv.size(), inv});
      piv.push_back(w);
      lam.push_back(std::move(l));
      pivrowv.push_back(lead);
      pivcolv.push_back(j);
    }
    if (pr.free_col < 0) {
      pr.full_rank = true;
      return pr;
    }
    // rows that give the dependence columns full rank, found by tagged
    // forward elimination over just the rows those columns touch
    int need = (int)pr.pivcols.size();
    std::map<int, int> rowid;
    for (int t = 0; t < need; ++t)
      for (const auto& [r, f] : colv[pr.pivcols[t]]) rowid.emplace(r, (int)rowid.size());
    int nr = (int)rowid.size();
    std::vector<std::vector<std::uint64_t>> sub(nr, std::vector<std::uint64_t>(need, 0));
    std::vector<int> tag(nr);
    for (const auto& [r, id] : rowid) tag[id] = r;
    for (int t = 0; t < need; ++t)
      for (const auto& [r, f] : colv[pr.pivcols[t]]) {
        auto v = f.eval_mod(point, kPrime);
        if (!v) return std::nullopt;
        sub[rowid[r]][t] = *v;
      }
    int rk = 0;
    for (int c = 0; c < need && rk < nr; ++c) {
      int piv2 = -1;
      for (int r = rk; r < nr; ++r)
        if (sub[r][c]) { piv2 = r; break; }
      if (piv2 < 0) fail(errc::internal_inconsistency, "kernel probe lost column rank");
      std::swap(sub[rk], sub[piv2]);
      std::swap(tag[rk], tag[piv2]);
      std::uint64_t inv = invmod_u64(sub[rk][c], kPrime);
      for (int j = c; j < need; ++j) sub[rk][j] = mulmod_u64(sub[rk][j], inv, kPrime);
      for (int r = rk + 1; r < nr; ++r) {
        if (!sub[r][c]) continue;
        std::uint64_t f = sub[r][c];
        for (int j = c; j < need; ++j) {
          std::uint64_t s = mulmod_u64(f, sub[rk][j], kPrime);
          sub[r][j] = (sub[r][j] >= s) ? sub[r][j] - s : sub[r][j] + kPrime - s;
        }
      }
      pr.pivrows.push_back(tag[rk]);
      ++rk;
    }
    return pr;
  };
  std::uint64_t x0 = 0x9e3779b97f4a7c15ull ^ (salt * 0xbf58476d1ce4e5b9ull);
  std::optional<Probe> got;
  for (int attempt = 0; attempt < 16 && !got; ++attempt) {
    x0 = x0 * 6364136223846793005ull + 1442695040888963407ull;
    got = try_probe(x0 % (kPrime - 2) + 1);
  }
  if (!got) fail(errc::internal_inconsistency, "no usable modular evaluation point");
  Probe& probe = *got;
  if (probe.full_rank) {
    if (no_kernel) *no_kernel = true;
    return std::nullopt;
  }
  int r = (int)probe.pivcols.size();
  int f = probe.free_col;
  auto entry_at = [&](int row, int col) -> const RatFun* {
    const auto& v = colv[col];
    auto it = std::lower_bound(v.begin(), v.end(), row,
                               [](const auto& a, int rr) { return a.first < rr; });
    if (it != v.end() && it->first == row) return &it->second;
    return nullptr;
  };
  // reduce every used entry to dense coefficient arrays once, so each sample
  // point costs only machine-word arithmetic
  struct Dense {
    U64Poly num, den;  // empty den means 1; empty num means 0
  };
  auto to_dense = [](const Poly& p) {
    U64Poly out;
    for (const auto& [e, c] : p.terms()) {
      if ((int)out.size() < e + 1) out.resize(e + 1, 0);
      out[e] = mpz_fdiv_ui(c.get_mpz_t(), kPrime);
    }
    poly_trim(out);
    return out;
  };
  std::vector<std::vector<Dense>> pre(r, std::vector<Dense>(r + 1));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j <= r; ++j) {
      const RatFun* e = entry_at(probe.pivrows[i], j < r ? probe.pivcols[j] : f);
      if (!e || e->is_zero()) continue;
      pre[i][j].num = to_dense(e->num());
      if (!e->den().is_one()) pre[i][j].den = to_dense(e->den());
    }
  // sample -z where (pivot submatrix) z = (column f); the kernel component
  // ratios v_pivcol / v_f are rational functions of q recovered from samples
  constexpr int kExtra = 4;
  constexpr int kMaxPoints = 4096;
  std::vector<std::uint64_t> xs;
  std::vector<std::vector<std::uint64_t>> ys(r);
  std::uint64_t next_point = 2;
  auto add_point = [&]() -> bool {
    for (; next_point < kPrime && next_point < 100 * kMaxPoints; ++next_point) {
      std::uint64_t x = next_point;
      std::vector<std::vector<std::uint64_t>> a(r, std::vector<std::uint64_t>(r + 1));
      bool ok = true;
      for (int i = 0; i < r && ok; ++i)
        for (int j = 0; j <= r; ++j) {
          const Dense& d = pre[i][j];
          if (d.num.empty()) {
            a[i][j] = 0;
            continue;
          }
          std::uint64_t nv = poly_eval(d.num, x);
          if (d.den.empty()) {
            a[i][j] = nv;
            continue;
          }
          std::uint64_t dv = poly_eval(d.den, x);
          if (!dv) {
            ok = false;
            break;
          }
          a[i][j] = mulmod_u64(nv, invmod_u64(dv, kPrime), kPrime);
        }
      if (!ok) continue;
      // forward elimination with back substitution; skip singular points
      for (int c = 0; c < r && ok; ++c) {
        int piv = -1;
        for (int i = c; i < r; ++i)
          if (a[i][c]) { piv = i; break; }
        if (piv < 0) { ok = false; break; }
        std::swap(a[c], a[piv]);
        std::uint64_t inv = invmod_u64(a[c][c], kPrime);
        for (int j = c; j <= r; ++j) a[c][j] = mulmod_u64(a[c][j], inv, kPrime);
        for (int i = c + 1; i < r; ++i) {
          if (!a[i][c]) continue;
          std::uint64_t fac = a[i][c];
          for (int j = c; j <= r; ++j) {
            std::uint64_t s = mulmod_u64(fac, a[c][j], kPrime);
            a[i][j] = (a[i][j] >= s) ? a[i][j] - s : a[i][j] + kPrime - s;
          }
        }
      }
      if (!ok) continue;
      std::vector<std::uint64_t> z(r);
      for (int i = r - 1; i >= 0; --i) {
        std::uint64_t v = a[i][r];
        for (int j = i + 1; j < r; ++j) {
          std::uint64_t s = mulmod_u64(a[i][j], z[j], kPrime);
          v = (v >= s) ? v - s : v + kPrime - s;
        }
        z[i] = v;
      }
      xs.push_back(x);
      for (int i = 0; i < r; ++i) ys[i].push_back(z[i] ? kPrime - z[i] : 0);
      ++next_point;
      return true;
    }
    return false;
  };
  const bool trace = std::getenv("QNIL_KVR_TRACE") != nullptr;
  if (trace)
    std::fprintf(stderr, "[kvr] %dx%d rank=%d free=%d\n", rows, cols, r, f);
  std::vector<std::optional<RatFun>> comp(r);
  std::vector<std::uint64_t> inv;
  for (int n_used = 16; n_used <= kMaxPoints; n_used *= 2) {
    auto t0 = std::chrono::steady_clock::now();
    while ((int)xs.size() < n_used + kExtra)
      if (!add_point()) return std::nullopt;
    auto t1 = std::chrono::steady_clock::now();
    // confirm the stage on one pending component before reconstructing the rest
    int rep = -1;
    for (int i = 0; i < r; ++i)
      if (!comp[i]) { rep = i; break; }
    U64Poly mod{1};
    if (rep >= 0) {
      for (int i = 0; i < n_used; ++i) {
        mod.insert(mod.begin(), 0);
        std::uint64_t neg = xs[i] ? kPrime - xs[i] : 0;
        for (size_t j = 0; j + 1 < mod.size(); ++j)
          mod[j] = (mod[j] + mulmod_u64(neg, mod[j + 1], kPrime)) % kPrime;
      }
      extend_small_inverses(inv, xs[n_used - 1] - xs[0]);
    }
    auto recover = [&](int i) -> bool {
      auto nd = cauchy_reconstruct(xs, ys[i], n_used, kExtra, mod, inv);
      if (!nd) return false;
      auto lifted = lift_rational_pair(std::move(nd->first), std::move(nd->second));
      if (!lifted) return false;
      comp[i] = RatFun(std::move(lifted->first), std::move(lifted->second));
      return true;
    };
    if (rep >= 0 && !recover(rep)) {
      if (trace) {
        auto t2 = std::chrono::steady_clock::now();
        std::fprintf(stderr, "[kvr]  n=%d pts=%.2fs rep-miss rec=%.2fs\n", n_used,
                     std::chrono::duration<double>(t1 - t0).count(),
                     std::chrono::duration<double>(t2 - t1).count());
      }
      continue;
    }
    bool good = true;
    for (int i = 0; i < r; ++i)
      if (!comp[i] && !recover(i)) good = false;
    if (trace) {
      auto t2 = std::chrono::steady_clock::now();
      int ndone = 0;
      for (int i = 0; i < r; ++i) ndone += comp[i].has_value();
      std::fprintf(stderr, "[kvr]  n=%d pts=%.2fs rec=%.2fs done=%d/%d\n", n_used,
                   std::chrono::duration<double>(t1 - t0).count(),
                   std::chrono::duration<double>(t2 - t1).count(), ndone, r);
    }
    if (good) {
      RVec out(cols, RatFun(0));
      out[f] = RatFun(1);
      for (int i = 0; i < r; ++i) out[probe.pivcols[i]] = std::move(*comp[i]);
      return out;
    }
  }
  return std::nullopt;
}

std::optional<RVec> kernel_vector_reconstruct(const RMat& m, std::uint64_t salt,
                                              bool* no_kernel) {
  if (no_kernel) *no_kernel = false;
  if (m.empty()) return std::nullopt;
  std::vector<MatEntry> entries;
  for (int i = 0; i < (int)m.size(); ++i)
    for (int j = 0; j < (int)m[i].size(); ++j)
      if (!m[i][j].is_zero()) entries.push_back({i, j, m[i][j]});
  return kernel_vector_reconstruct(entries, (int)m.size(), (int)m[0].size(), salt, no_kernel);
}

int modp_rank(const RMat& m, std::uint64_t salt) {
  if (m.empty()) return 0;
  return with_specialization(m, salt, [](std::vector<std::vector<std::uint64_t>> a) {
    return (int)rref_mod_p(a).size();
  });
}

std::vector<std::uint64_t> modp_kernel_vector(const RMat& m, std::uint64_t salt) {
  if (m.empty()) return {};
  int cols = (int)m[0].size();
  return with_specialization(
      m, salt, [cols](std::vector<std::vector<std::uint64_t>> a) -> std::vector<std::uint64_t> {
        std::vector<int> pivots = rref_mod_p(a);
        if ((int)pivots.size() == cols) return {};
        std::vector<char> is_pivot(cols, 0);
        for (int p : pivots) is_pivot[p] = 1;
        int free_col = 0;
        while (is_pivot[free_col]) ++free_col;
        std::vector<std::uint64_t> x(cols, 0);
        x[free_col] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) {
          std::uint64_t v = a[r][free_col];
          x[pivots[r]] = v ? kPrime - v : 0;
        }
        return x;
      });
}

}  // namespace qnil
