#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <complex>
#include <string>
#include <utility>

#include "fockrat/core_state.hpp"

namespace fockrat {

using BigInt = boost::multiprecision::cpp_int;

// Exact scaled integer: value = numerator * radix^exponent, kept canonical
// (radix does not divide the numerator; zero is (0, 0)). Equality is
// therefore value equality at a fixed radix.
struct ExactRational {
  BigInt numerator;
  int exponent = 0;
  int radix = 2;

  static ExactRational make(BigInt numerator, int exponent, int radix);
  bool is_zero() const { return numerator == 0; }
  int sign() const { return numerator == 0 ? 0 : (numerator < 0 ? -1 : 1); }
  bool operator==(const ExactRational&) const = default;
};

struct ExactComplex {
  ExactRational re;
  ExactRational im;

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  std::complex<double> to_complex_double() const;
  // "255/64 - 8 i" style, components in lowest terms.
  std::string to_value_string() const;
  // Positional digits at the component radix, e.g. "11.111111 - i1000".
  std::string to_digit_string() const;
  bool operator==(const ExactComplex&) const = default;
};

// Lowest-terms numerator/denominator strings of the component.
std::pair<std::string, std::string> fraction_strings(const ExactRational& x);

// Total value of the state: each system contributes its signed unit times
// radix^site; phase and statistics never enter.
ExactComplex eval_N(const NumberState& state, int radix);

// Value of a single system of the kind at site j.
ExactComplex unit_value(SystemKind kind, int j, int radix);

// Order of one value component: normalizes both states and compares that
// family's standard parts positionally.
std::strong_ordering cmp_component(const NumberState& a, const NumberState& b,
                                   Family family, int radix);

}  // namespace fockrat
