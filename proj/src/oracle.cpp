#include "fockrat/oracle.hpp"

namespace fockrat {

namespace {

BigRational to_fraction(const ExactRational& x) {
  BigInt p = 1;
  for (int i = 0; i < (x.exponent < 0 ? -x.exponent : x.exponent); ++i) p *= x.radix;
  if (x.exponent >= 0) return BigRational(x.numerator * p);
  return BigRational(x.numerator, p);
}

ExactRational from_fraction(const BigRational& q, int radix) {
  BigInt den = boost::multiprecision::denominator(q);
  int exponent = 0;
  while (den > 1) {
    if (den % radix != 0)
      throw std::domain_error("value is not a radix-scaled integer");
    den /= radix;
    --exponent;
  }
  return ExactRational::make(boost::multiprecision::numerator(q), exponent, radix);
}

int common_radix(const ExactComplex& x, const ExactComplex& y) {
  int r = x.re.radix;
  if (x.im.radix != r || y.re.radix != r || y.im.radix != r)
    throw std::invalid_argument("mixed radices");
  return r;
}

}  // namespace

OracleComplex to_oracle(const ExactComplex& x) {
  return {to_fraction(x.re), to_fraction(x.im)};
}

ExactComplex from_oracle(const OracleComplex& x, int radix) {
  return {from_fraction(x.re, radix), from_fraction(x.im, radix)};
}

OracleComplex oc_add(const OracleComplex& a, const OracleComplex& b) {
  return {a.re + b.re, a.im + b.im};
}

OracleComplex oc_sub(const OracleComplex& a, const OracleComplex& b) {
  return {a.re - b.re, a.im - b.im};
}

OracleComplex oc_mul(const OracleComplex& a, const OracleComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

OracleComplex oc_div(const OracleComplex& a, const OracleComplex& b) {
  BigRational denom = b.re * b.re + b.im * b.im;
  if (denom == 0) throw std::domain_error("division by zero");
  return {(a.re * b.re + a.im * b.im) / denom,
          (a.im * b.re - a.re * b.im) / denom};
}

BigRational oc_abs2(const OracleComplex& a) { return a.re * a.re + a.im * a.im; }

ExactComplex oracle_add(const ExactComplex& x, const ExactComplex& y) {
  return from_oracle(oc_add(to_oracle(x), to_oracle(y)), common_radix(x, y));
}

ExactComplex oracle_sub(const ExactComplex& x, const ExactComplex& y) {
  return from_oracle(oc_sub(to_oracle(x), to_oracle(y)), common_radix(x, y));
}

ExactComplex oracle_mul(const ExactComplex& x, const ExactComplex& y) {
  return from_oracle(oc_mul(to_oracle(x), to_oracle(y)), common_radix(x, y));
}

OracleComplex oracle_div(const ExactComplex& x, const ExactComplex& y) {
  common_radix(x, y);
  return oc_div(to_oracle(x), to_oracle(y));
}

}  // namespace fockrat
