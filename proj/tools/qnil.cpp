#include <cstdio>

#include "qnil/ratfun.hpp"

int main() {
  std::puts(qnil::q_int(2, qnil::Poly::q()).str().c_str());
  return 0;
}
