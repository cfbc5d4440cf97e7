#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qnil/ratfun.hpp"

namespace qnil {

using RVec = std::vector<RatFun>;
using RMat = std::vector<RVec>;

// Reduced row echelon accumulator: rows stay normalized (pivot entry 1, pivot
// columns cleared everywhere else), pivot columns strictly increasing.
class Echelon {
 public:
  // Remainder of v after subtracting its projection onto the stored rows.
  RVec reduce(RVec v) const;
  // Insert v's remainder; returns false when v was already in the span.
  bool insert(RVec v);
  int rank() const { return (int)rows_.size(); }
  const RMat& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

 private:
  RMat rows_;
  std::vector<int> pivots_;
};

int exact_rank(const RMat& m);

// Canonical basis of {x : m x = 0} read off the reduced echelon form.
std::vector<RVec> null_space(const RMat& m);

// One exact solution of m x = b (free variables set to 0), or nullopt.
std::optional<RVec> solve(const RMat& m, const RVec& b);

RMat invert(const RMat& m);

RVec mat_apply(const RMat& m, const RVec& v);

// Rank of the matrix specialized at a random q mod a 61-bit prime; always at
// most the exact rank, so a full-rank specialization is a certificate.
int modp_rank(const RMat& m, std::uint64_t salt = 0);

// First canonical kernel vector of the specialized matrix, or empty when the
// specialization has full column rank (which proves the exact kernel is 0).
// A nonempty result is only a hint: verify anything built from it exactly.
std::vector<std::uint64_t> modp_kernel_vector(const RMat& m, std::uint64_t salt = 0);

// One coefficient of a sparse matrix; repeated (row, col) slots add up.
struct MatEntry {
  int row, col;
  RatFun c;
};

// Kernel vector recovered from modular specializations: scans the columns in
// the given order until one depends on its predecessors, then rebuilds each
// component of that dependence as a reduced rational function in q by Cauchy
// interpolation over many evaluation points.  nullopt when every column is
// independent at the probe point (the exact kernel is then 0, and *no_kernel
// is set) or the point budget runs out (*no_kernel stays false: a kernel may
// still exist).  The result is not certified: verify it against the defining
// equations exactly before trusting it.
std::optional<RVec> kernel_vector_reconstruct(const std::vector<MatEntry>& entries, int rows,
                                              int cols, std::uint64_t salt = 0,
                                              bool* no_kernel = nullptr);
std::optional<RVec> kernel_vector_reconstruct(const RMat& m, std::uint64_t salt = 0,
                                              bool* no_kernel = nullptr);

}  // namespace qnil
