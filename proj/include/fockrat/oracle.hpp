#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "fockrat/valuation.hpp"

namespace fockrat {

// Independent ground truth for the value arithmetic: plain big-rational field
// operations on the evaluated values, sharing no code with the state-level
// arithmetic. add/sub/mul of radix-scaled integers stay radix-scaled, so those
// return ExactComplex; division escapes to general fractions.

using BigRational = boost::multiprecision::cpp_rational;

struct OracleComplex {
  BigRational re;
  BigRational im;

  bool is_zero() const { return re == 0 && im == 0; }
  bool operator==(const OracleComplex&) const = default;
};

OracleComplex to_oracle(const ExactComplex& x);
// Throws std::domain_error when a denominator is not a radix power.
ExactComplex from_oracle(const OracleComplex& x, int radix);

ExactComplex oracle_add(const ExactComplex& x, const ExactComplex& y);
ExactComplex oracle_sub(const ExactComplex& x, const ExactComplex& y);
ExactComplex oracle_mul(const ExactComplex& x, const ExactComplex& y);
OracleComplex oracle_div(const ExactComplex& x, const ExactComplex& y);

// Fraction-level helpers for tests that need exact bounds.
OracleComplex oc_add(const OracleComplex& a, const OracleComplex& b);
OracleComplex oc_sub(const OracleComplex& a, const OracleComplex& b);
OracleComplex oc_mul(const OracleComplex& a, const OracleComplex& b);
OracleComplex oc_div(const OracleComplex& a, const OracleComplex& b);
BigRational oc_abs2(const OracleComplex& a);

}  // namespace fockrat
