#include "fockrat/reduction.hpp"
#include "fockrat/valuation.hpp"

namespace fockrat {

std::strong_ordering cmp_component(const NumberState& a, const NumberState& b,
                                   Family family, int radix) {
  StandardForm fa = normalize(a, radix).form;
  StandardForm fb = normalize(b, radix).form;
  if (family == Family::real) return compare_parts(fa.real_part, fb.real_part);
  return compare_parts(fa.imag_part, fb.imag_part);
}

}  // namespace fockrat
