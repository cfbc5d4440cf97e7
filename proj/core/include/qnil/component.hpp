#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "qnil/free_algebra.hpp"
#include "qnil/linalg.hpp"

namespace qnil {

// One graded piece: word list, pairing Gram matrix, a distinguished set of
// words whose images span modulo the form's radical, and coordinates of every
// word in that spanning set.
struct GradedBasis {
  MultiDegree degree;
  std::vector<Word> words;      // lex order
  RMat gram;                    // gram[i][j] = <words[i], words[j]>
  std::vector<int> u_basis;     // indices into words; first independent rows
  RMat coords;                  // coords[w][b]: words[w] = sum_b c * words[u_basis[b]] + radical
  std::vector<FreeElement> radical_basis;

  int dim() const { return (int)u_basis.size(); }
  int word_index(const Word& w) const;  // index into words, or throws
};

// A graded functional, stored by its values on the free words of one degree.
struct DualElement {
  MultiDegree degree;
  std::map<Word, RatFun> values;  // zero values omitted

  RatFun value(const Word& w) const;
  RatFun operator()(const FreeElement& u) const;
  void set(const Word& w, const RatFun& v);
  bool is_zero() const { return values.empty(); }

  DualElement operator+(const DualElement& o) const;
  DualElement operator-(const DualElement& o) const;
  DualElement scaled(const RatFun& c) const;
  bool operator==(const DualElement& o) const {
    return degree == o.degree && values == o.values;
  }
  std::string str() const;
};

// Shared computation context: memoized pairings and graded components, with
// an optional on-disk component cache.
class Algebra {
 public:
  explicit Algebra(CartanData data, std::string cache_dir = "");

  const CartanData& cartan() const { return data_; }
  RatFun pairing(const Word& u, const Word& v);
  const GradedBasis& component(const MultiDegree& g);

 private:
  CartanData data_;
  std::string cache_dir_;
  std::mutex mu_;
  std::map<std::pair<Word, Word>, RatFun> pair_memo_;
  std::map<MultiDegree, std::unique_ptr<GradedBasis>> comp_memo_;

  RatFun pairing_locked(const Word& u, const Word& v);
  GradedBasis compute_component(const MultiDegree& g);
  std::string cache_path(const MultiDegree& g) const;
  bool load_component(const MultiDegree& g, GradedBasis& out) const;
  void store_component(const GradedBasis& gb) const;
};

RatFun gram_pairing(Algebra& alg, const Word& u, const Word& v);
const GradedBasis& component_data(Algebra& alg, const MultiDegree& g);

// Functional <u, -> of a homogeneous element.
DualElement dual_of(Algebra& alg, const FreeElement& u);
DualElement dual_unit(const CartanData& data);
DualElement dual_generator(const CartanData& data, int i);

// Convolution product: (xy)(w) = sum over splittings of w weighted by the
// coproduct's braiding powers.
DualElement dual_multiply(const CartanData& data, const DualElement& x, const DualElement& y);
// Fast paths for a generator factor; O(len) per word instead of 2^len.
DualElement mult_generator_right(const CartanData& data, const DualElement& x, int i);
DualElement mult_generator_left(const CartanData& data, int i, const DualElement& x);

// Adjoint of left/right multiplication by E_i: re-index values.
DualElement estar_apply(const CartanData& data, int i, const DualElement& x);  // (e*x)(w)=x(i.w)
DualElement eop_apply(const CartanData& data, int i, const DualElement& x);    // (ex)(w)=x(w.i)

}  // namespace qnil
