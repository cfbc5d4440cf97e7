#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qnil/error.hpp"

namespace qnil {

// Letters are 1-based generator indices, matching the usual notation for words
// in simple reflections / generators.
using Word = std::vector<int>;

struct Weight {
  std::vector<int> l;  // nonnegative entries, one per generator
};

struct RootVector {
  enum class Lattice { root, coroot };
  std::vector<long> coords;  // coordinates over the simple basis
  Lattice lattice = Lattice::root;

  static RootVector simple(int i, int rank, Lattice lat = Lattice::root);
  bool nonneg() const;
  bool operator==(const RootVector&) const = default;
};

class CartanData {
 public:
  // A: generalized Cartan matrix, d: positive symmetrizers with d_i*a_ij = d_j*a_ji.
  static CartanData make(std::vector<std::vector<int>> A, std::vector<int> d);
  static CartanData from_json(const std::string& text);  // {"A": [[...]], "d": [...]}

  int rank() const { return (int)d_.size(); }
  int a(int i, int j) const { return A_[check(i) - 1][check(j) - 1]; }
  int c(int i, int j) const { return C_[check(i) - 1][check(j) - 1]; }
  int d(int i) const { return d_[check(i) - 1]; }
  const std::vector<std::vector<int>>& amatrix() const { return A_; }
  const std::vector<std::vector<int>>& cmatrix() const { return C_; }

  std::string key() const;  // canonical serialization, used in cache keys

 private:
  int check(int i) const {
    if (i < 1 || i > rank()) fail(errc::index_out_of_range, "generator index " + std::to_string(i));
    return i;
  }
  std::vector<std::vector<int>> A_, C_;
  std::vector<int> d_;
};

RootVector reflect(const CartanData& data, int i, const RootVector& v);

bool is_reduced(const CartanData& data, const Word& w);

// Braid-move orbit of a reduced word, sorted lexicographically.
std::vector<Word> enumerate_reduced(const CartanData& data, const Word& w, std::size_t cap = 100000);

// In-place braid moves applicable to w (not restricted to reduced words).
std::vector<Word> braid_neighbors(const CartanData& data, const Word& w);

std::vector<int> weight_sequence(const CartanData& data, const Weight& lambda, const Word& w);

// Greedy left-to-right subword that stays reduced; spans the same monomial set.
Word reduced_subsequence(const CartanData& data, const Word& w);

// Lexicographically-first reduced word for the longest element (finite types).
Word longest_word(const CartanData& data, std::size_t cap = 10000);

Word parse_word(const std::string& csv);
std::vector<int> parse_int_list(const std::string& csv);
std::string word_str(const Word& w);

}  // namespace qnil
