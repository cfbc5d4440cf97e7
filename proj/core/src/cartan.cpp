#include "qnil/cartan.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qnil {

RootVector RootVector::simple(int i, int rank, Lattice lat) {
  if (i < 1 || i > rank) fail(errc::index_out_of_range, "simple index " + std::to_string(i));
  RootVector v;
  v.coords.assign(rank, 0);
  v.coords[i - 1] = 1;
  v.lattice = lat;
  return v;
}

bool RootVector::nonneg() const {
  return std::all_of(coords.begin(), coords.end(), [](long c) { return c >= 0; });
}

CartanData CartanData::make(std::vector<std::vector<int>> A, std::vector<int> d) {
  const int r = (int)A.size();
  if (r == 0 || (int)d.size() != r) fail(errc::bad_input, "Cartan matrix and symmetrizer sizes differ");
  for (auto& row : A)
    if ((int)row.size() != r) fail(errc::bad_input, "Cartan matrix is not square");
  for (int i = 0; i < r; ++i) {
    if (A[i][i] != 2) fail(errc::bad_input, "diagonal Cartan entry is not 2");
    if (d[i] <= 0) fail(errc::bad_input, "symmetrizer entries must be positive");
    for (int j = 0; j < r; ++j) {
      if (i != j && A[i][j] > 0) fail(errc::bad_input, "positive off-diagonal Cartan entry");
      if ((A[i][j] == 0) != (A[j][i] == 0)) fail(errc::bad_input, "zero pattern is not symmetric");
      if ((long)d[i] * A[i][j] != (long)d[j] * A[j][i]) fail(errc::bad_input, "matrix is not symmetrizable by d");
    }
  }
  CartanData out;
  out.A_ = std::move(A);
  out.d_ = std::move(d);
  out.C_.assign(r, std::vector<int>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out.C_[i][j] = out.d_[i] * out.A_[i][j];
  return out;
}

CartanData CartanData::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::bad_input, std::string("Cartan JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("A") || !j.contains("d"))
    fail(errc::bad_input, "Cartan JSON needs fields \"A\" and \"d\"");
  try {
    return make(j["A"].get<std::vector<std::vector<int>>>(), j["d"].get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    fail(errc::bad_input, std::string("Cartan JSON: ") + e.what());
  }
}

std::string CartanData::key() const {
  std::ostringstream os;
  os << "A=";
  for (auto& row : A_) {
    os << '[';
    for (int v : row) os << v << ',';
    os << ']';
  }
  os << ";d=[";
  for (int v : d_) os << v << ',';
  os << ']';
  return os.str();
}

RootVector reflect(const CartanData& data, int i, const RootVector& v) {
  const int r = data.rank();
  if (i < 1 || i > r) fail(errc::index_out_of_range, "reflection index " + std::to_string(i));
  if ((int)v.coords.size() != r) fail(errc::size_mismatch, "root vector size");
  RootVector out = v;
  long pairing = 0;
  for (int j = 1; j <= r; ++j) {
    int coef = v.lattice == RootVector::Lattice::root ? data.a(i, j) : data.a(j, i);
    pairing += (long)coef * v.coords[j - 1];
  }
  out.coords[i - 1] -= pairing;
  return out;
}

bool is_reduced(const CartanData& data, const Word& w) {
  const int r = data.rank();
  for (int letter : w)
    if (letter < 1 || letter > r) fail(errc::index_out_of_range, "letter " + std::to_string(letter));
  for (size_t k = 0; k < w.size(); ++k) {
    RootVector beta = RootVector::simple(w[k], r);
    for (size_t j = k; j-- > 0;) beta = reflect(data, w[j], beta);
    if (!beta.nonneg()) return false;
  }
  return true;
}

namespace {

int braid_window(const CartanData& data, int i, int j) {
  int m = data.a(i, j) * data.a(j, i);
  switch (m) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return 0;  // infinite order, no move
  }
}

}  // namespace

std::vector<Word> braid_neighbors(const CartanData& data, const Word& w) {
  std::vector<Word> out;
  const int m = (int)w.size();
  for (int p = 0; p + 1 < m; ++p) {
    int i = w[p], j = w[p + 1];
    if (i == j) continue;
    int len = braid_window(data, i, j);
    if (len == 0 || p + len > m) continue;
    bool alternates = true;
    for (int k = 0; k < len; ++k)
      if (w[p + k] != (k % 2 == 0 ? i : j)) {
        alternates = false;
        break;
      }
    if (!alternates) continue;
    Word nb = w;
    for (int k = 0; k < len; ++k) nb[p + k] = k % 2 == 0 ? j : i;
    out.push_back(std::move(nb));
  }
  return out;
}

std::vector<Word> enumerate_reduced(const CartanData& data, const Word& w, std::size_t cap) {
  if (!is_reduced(data, w)) fail(errc::not_reduced, word_str(w));
  std::set<Word> seen{w};
  std::queue<Word> frontier;
  frontier.push(w);
  while (!frontier.empty()) {
    Word cur = std::move(frontier.front());
    frontier.pop();
    for (Word& nb : braid_neighbors(data, cur)) {
      if (seen.insert(nb).second) {
        if (seen.size() > cap) fail(errc::cap_exceeded, "braid orbit larger than " + std::to_string(cap));
        frontier.push(std::move(nb));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<int> weight_sequence(const CartanData& data, const Weight& lambda, const Word& w) {
  if (!is_reduced(data, w)) fail(errc::not_reduced, word_str(w));
  if ((int)lambda.l.size() != data.rank()) fail(errc::size_mismatch, "weight size");
  for (int v : lambda.l)
    if (v < 0) fail(errc::bad_input, "weights must be nonnegative");
  std::vector<int> a;
  a.reserve(w.size());
  for (size_t k = 0; k < w.size(); ++k) {
    RootVector beta = RootVector::simple(w[k], data.rank(), RootVector::Lattice::coroot);
    for (size_t j = k; j-- > 0;) beta = reflect(data, w[j], beta);
    long val = 0;
    for (int idx = 0; idx < data.rank(); ++idx) val += (long)lambda.l[idx] * beta.coords[idx];
    a.push_back((int)val);
  }
  return a;
}

Word reduced_subsequence(const CartanData& data, const Word& w) {
  Word out;
  for (int letter : w) {
    out.push_back(letter);
    if (!is_reduced(data, out)) out.pop_back();
  }
  return out;
}

Word longest_word(const CartanData& data, std::size_t cap) {
  Word w;
  for (;;) {
    bool extended = false;
    for (int i = 1; i <= data.rank() && !extended; ++i) {
      w.push_back(i);
      if (is_reduced(data, w))
        extended = true;
      else
        w.pop_back();
    }
    if (!extended) return w;
    if (w.size() > cap) fail(errc::cap_exceeded, "no longest element below length cap");
  }
}

Word parse_word(const std::string& csv) { return parse_int_list(csv); }

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::string tok;
  std::istringstream is(csv);
  while (std::getline(is, tok, ',')) {
    size_t pos = 0;
    int v;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      fail(errc::bad_input, "integer list: bad token '" + tok + "'");
    }
    while (pos < tok.size() && std::isspace((unsigned char)tok[pos])) ++pos;
    if (pos != tok.size()) fail(errc::bad_input, "integer list: bad token '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty() && !csv.empty()) fail(errc::bad_input, "empty integer list");
  return out;
}

std::string word_str(const Word& w) {
  std::string s = "(";
  for (size_t k = 0; k < w.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(w[k]);
  }
  return s + ")";
}

}  // namespace qnil
