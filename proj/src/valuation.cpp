#include "fockrat/valuation.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <sstream>

namespace fockrat {

using boost::multiprecision::cpp_rational;

ExactRational ExactRational::make(BigInt numerator, int exponent, int radix) {
  if (radix < 2) throw std::invalid_argument("radix must be at least 2");
  if (numerator == 0) return {BigInt(0), 0, radix};
  while (numerator % radix == 0) {
    numerator /= radix;
    ++exponent;
  }
  return {std::move(numerator), exponent, radix};
}

namespace {

BigInt radix_pow(int radix, int e) {
  BigInt p = 1;
  for (int i = 0; i < e; ++i) p *= radix;
  return p;
}

cpp_rational to_fraction(const ExactRational& x) {
  if (x.exponent >= 0) return cpp_rational(x.numerator * radix_pow(x.radix, x.exponent));
  return cpp_rational(x.numerator, radix_pow(x.radix, -x.exponent));
}

std::string digit_string(const ExactRational& x) {
  if (x.is_zero()) return "0";
  BigInt mag = x.numerator < 0 ? BigInt(-x.numerator) : x.numerator;
  std::string digits;
  while (mag > 0) {
    digits += static_cast<char>('0' + static_cast<int>(mag % x.radix));
    mag /= x.radix;
  }
  std::reverse(digits.begin(), digits.end());
  std::string out;
  if (x.exponent >= 0) {
    out = digits + std::string(x.exponent, '0');
  } else {
    std::size_t frac = static_cast<std::size_t>(-x.exponent);
    if (digits.size() <= frac)
      out = "0." + std::string(frac - digits.size(), '0') + digits;
    else
      out = digits.substr(0, digits.size() - frac) + "." +
            digits.substr(digits.size() - frac);
  }
  if (x.numerator < 0) out = "-" + out;
  return out;
}

}  // namespace

std::pair<std::string, std::string> fraction_strings(const ExactRational& x) {
  cpp_rational q = to_fraction(x);
  return {boost::multiprecision::numerator(q).str(),
          boost::multiprecision::denominator(q).str()};
}

std::complex<double> ExactComplex::to_complex_double() const {
  auto component = [](const ExactRational& x) {
    return x.numerator.convert_to<double>() *
           std::pow(static_cast<double>(x.radix), x.exponent);
  };
  return {component(re), component(im)};
}

std::string ExactComplex::to_value_string() const {
  auto frac = [](const ExactRational& x) {
    auto [num, den] = fraction_strings(x);
    return den == "1" ? num : num + "/" + den;
  };
  if (is_zero()) return "0";
  if (im.is_zero()) return frac(re);
  ExactRational abs_im = im;
  if (abs_im.numerator < 0) abs_im.numerator = -abs_im.numerator;
  std::string im_text = frac(abs_im) + " i";
  if (re.is_zero()) return (im.sign() < 0 ? "-" : "") + im_text;
  return frac(re) + (im.sign() < 0 ? " - " : " + ") + im_text;
}

std::string ExactComplex::to_digit_string() const {
  if (is_zero()) return "0";
  if (im.is_zero()) return digit_string(re);
  ExactRational abs_im = im;
  if (abs_im.numerator < 0) abs_im.numerator = -abs_im.numerator;
  std::string im_text = "i" + digit_string(abs_im);
  if (re.is_zero()) return (im.sign() < 0 ? "-" : "") + im_text;
  return digit_string(re) + (im.sign() < 0 ? " - " : " + ") + im_text;
}

ExactComplex eval_N(const NumberState& state, int radix) {
  if (radix < 2) throw std::invalid_argument("radix must be at least 2");
  ExactComplex out{ExactRational::make(0, 0, radix), ExactRational::make(0, 0, radix)};
  for (Family f : {Family::real, Family::imaginary}) {
    bool any = false;
    int jmin = 0;
    for (const auto& [j, occ] : state.sites()) {
      if (occ.family_total(f) == 0) continue;
      if (!any) jmin = j;
      any = true;
    }
    if (!any) continue;
    BigInt acc = 0;
    for (const auto& [j, occ] : state.sites()) {
      std::int64_t net = occ.plus_count(f) - occ.minus_count(f);
      if (net != 0) acc += BigInt(net) * radix_pow(radix, j - jmin);
    }
    ExactRational value = ExactRational::make(std::move(acc), jmin, radix);
    if (f == Family::real) out.re = std::move(value);
    else out.im = std::move(value);
  }
  return out;
}

ExactComplex unit_value(SystemKind kind, int j, int radix) {
  ExactRational v = ExactRational::make(sign_of(kind), j, radix);
  ExactRational zero = ExactRational::make(0, 0, radix);
  if (family_of(kind) == Family::real) return {std::move(v), std::move(zero)};
  return {std::move(zero), std::move(v)};
}

}  // namespace fockrat
