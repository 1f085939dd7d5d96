#pragma once

#include <vector>

#include "fockrat/core_state.hpp"
#include "fockrat/reduction.hpp"

namespace fockrat {

// Kind of the product of two unit systems (unit values multiply: real*real
// and imag*imag land real, mixed lands imaginary, imag*imag flips the sign).
SystemKind kind_product(SystemKind a, SystemKind b);

// Value-exact operations. add merges occupations (fermions pick up the sign
// of interleaving the two operator products); negate flips every system's
// sign; mul convolves occupation counts through kind_product and adds sites.
// Mixed statistics throw std::invalid_argument.
NumberState add(const NumberState& x, const NumberState& y);
NumberState negate(const NumberState& x);
NumberState sub(const NumberState& x, const NumberState& y);
NumberState mul(const NumberState& x, const NumberState& y);

// The remaining operations run at radix 2 and take an accuracy parameter ell:
// results are exact to within 2^-ell in the documented sense.

struct InverseCandidate {
  int h = 0;
  bool accepted = false;
  bool operator==(const InverseCandidate&) const = default;
};

struct InverseTrace {
  std::vector<InverseCandidate> candidates;
  // Product x*t after each accepted exponent, including the first.
  std::vector<StandardForm> partial_products;
};

// Greedy inverse of a positive real standard form: picks exponents h for t so
// that x*t climbs toward 1 from below, stopping once x*t lies in
// [1 - 2^-ell, 1), i.e. the product's digits hold the full run -1..-ell. Each
// new exponent starts from the position suggested by the product's current
// leading run of ones and walks down past rejections (candidates that would
// push the product to 1 or beyond).
StandardForm invert_pos_real(const StandardForm& x, int ell,
                             InverseTrace* trace = nullptr);

// Digit-recurrence square root of a nonnegative real standard form:
// r <= sqrt(x) < r + 2^-ell, digits of r chosen from the top position down
// to -ell by exact sign tests on x - r^2.
StandardForm sqrt_ell(const StandardForm& x, int ell);

// reciprocal_norm computes conj(x) * inv(u^2 + v^2); root_norm is a study
// variant dividing by an ell-accurate sqrt(u^2 + v^2) instead (it does not
// approximate 1/x, only conj(x)/|x|).
enum class InverseFormula { reciprocal_norm, root_norm };

// ell-accurate reciprocal of a nonzero standard form. Internally pads ell by
// 3 plus the leading exponent of x (when positive), so the result's relative
// error stays below 2^-ell.
NumberState invert_complex(const StandardForm& x, int ell,
                           InverseFormula formula = InverseFormula::reciprocal_norm);

// x * invert_complex(normalize(y)); relative error below 8 * 2^-ell.
NumberState div_ell(const NumberState& x, const NumberState& y, int ell);

}  // namespace fockrat
