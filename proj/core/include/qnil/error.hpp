#pragma once

#include <stdexcept>
#include <string>

namespace qnil {

enum class errc {
  zero_denominator,
  division_by_zero,
  index_out_of_range,
  not_reduced,
  cap_exceeded,
  not_homogeneous,
  degenerate_weight,
  not_type_a,
  not_same_element,
  unsupported_order,
  size_mismatch,
  internal_inconsistency,
  bad_input,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::zero_denominator: return "zero denominator";
    case errc::division_by_zero: return "division by zero";
    case errc::index_out_of_range: return "index out of range";
    case errc::not_reduced: return "word is not reduced";
    case errc::cap_exceeded: return "cap exceeded";
    case errc::not_homogeneous: return "element is not homogeneous";
    case errc::degenerate_weight: return "degenerate weight";
    case errc::not_type_a: return "Cartan data is not of type A";
    case errc::not_same_element: return "words represent different elements";
    case errc::unsupported_order: return "unsupported braid-move order";
    case errc::size_mismatch: return "size mismatch";
    case errc::internal_inconsistency: return "internal inconsistency";
    case errc::bad_input: return "bad input";
  }
  return "unknown error";
}

class error : public std::runtime_error {
 public:
  error(errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code_(c) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

}  // namespace qnil
