#include "fockrat/arithmetic.hpp"

#include <algorithm>

namespace fockrat {

SystemKind kind_product(SystemKind a, SystemKind b) {
  bool both_imag =
      family_of(a) == Family::imaginary && family_of(b) == Family::imaginary;
  Family f = family_of(a) == family_of(b) ? Family::real : Family::imaginary;
  int sign = sign_of(a) * sign_of(b) * (both_imag ? -1 : +1);
  return make_kind(f, sign);
}

namespace {

void check_statistics(const NumberState& x, const NumberState& y) {
  if (x.statistics() != y.statistics())
    throw std::invalid_argument("mixed statistics");
}

// Sign of interleaving y's operator product after x's. In the merged canonical
// order y's operators sort before x's operators of the same (site, block)
// because their indices stack on top, so each y operator inverts with every x
// operator at its own slot or later.
int interleave_sign(const NumberState& x, const NumberState& y) {
  std::int64_t inversions = 0;
  for (Family f : {Family::real, Family::imaginary}) {
    // Slots ascending by (site, block); block 0 = plus, 1 = minus.
    std::vector<std::int64_t> x_counts;
    std::vector<std::pair<int, int>> x_keys;
    for (const auto& [j, occ] : x.sites()) {
      for (int block : {0, 1}) {
        std::int64_t c = block == 0 ? occ.plus_count(f) : occ.minus_count(f);
        if (c > 0) {
          x_keys.emplace_back(j, block);
          x_counts.push_back(c);
        }
      }
    }
    std::vector<std::int64_t> suffix(x_counts.size() + 1, 0);
    for (std::size_t i = x_counts.size(); i > 0; --i)
      suffix[i - 1] = suffix[i] + x_counts[i - 1];
    for (const auto& [j, occ] : y.sites()) {
      for (int block : {0, 1}) {
        std::int64_t c = block == 0 ? occ.plus_count(f) : occ.minus_count(f);
        if (c == 0) continue;
        auto it = std::lower_bound(x_keys.begin(), x_keys.end(),
                                   std::make_pair(j, block));
        inversions += c * suffix[it - x_keys.begin()];
      }
    }
  }
  return inversions % 2 == 0 ? +1 : -1;
}

}  // namespace

NumberState add(const NumberState& x, const NumberState& y) {
  check_statistics(x, y);
  NumberState out = x;
  for (const auto& [j, occ] : y.sites())
    for (SystemKind k : all_kinds)
      if (occ.count(k) > 0) out.add_systems(k, j, occ.count(k));
  if (x.statistics() == Statistics::fermion)
    out.set_phase(x.phase() * y.phase() * interleave_sign(x, y));
  return out;
}

NumberState negate(const NumberState& x) { return flip_signs(x); }

NumberState sub(const NumberState& x, const NumberState& y) {
  return add(x, negate(y));
}

NumberState mul(const NumberState& x, const NumberState& y) {
  check_statistics(x, y);
  NumberState out(x.statistics());
  for (const auto& [jx, ox] : x.sites())
    for (SystemKind kx : all_kinds) {
      std::int64_t cx = ox.count(kx);
      if (cx == 0) continue;
      for (const auto& [jy, oy] : y.sites())
        for (SystemKind ky : all_kinds) {
          std::int64_t cy = oy.count(ky);
          if (cy == 0) continue;
          out.add_systems(kind_product(kx, ky), jx + jy, cx * cy);
        }
    }
  if (x.statistics() == Statistics::fermion)
    out.set_phase(x.phase() * y.phase());
  return out;
}

namespace {

// Positive real, radix-2 standard part (every digit 1) as a boson state.
const StandardPart& binary_positive_part(const StandardForm& x,
                                         const char* what) {
  if (x.is_zero()) throw std::domain_error(std::string(what) + " of zero");
  if (x.imag_part || !x.real_part || x.real_part->sign < 0)
    throw std::invalid_argument(std::string(what) +
                                " needs a positive real standard form");
  for (const auto& [e, d] : x.real_part->digits)
    if (d != 1)
      throw std::invalid_argument(std::string(what) +
                                  " needs a radix-2 standard form");
  return *x.real_part;
}

NumberState part_state(const StandardPart& part) {
  NumberState out;
  for (const auto& [e, d] : part.digits)
    out.add_systems(make_kind(Family::real, part.sign), e, d);
  return out;
}

bool has_run_through(const StandardForm& form, int ell) {
  if (!form.real_part) return false;
  const auto& digits = form.real_part->digits;
  for (int e = -1; e >= -ell; --e)
    if (!digits.contains(e)) return false;
  return true;
}

}  // namespace

StandardForm invert_pos_real(const StandardForm& x, int ell,
                             InverseTrace* trace) {
  if (ell < 1) throw std::invalid_argument("accuracy must be at least 1");
  const StandardPart& part = binary_positive_part(x, "inverse");
  NumberState xstate = part_state(part);
  int k1 = part.digits.rbegin()->first;
  int width = part.digits.rbegin()->first - part.digits.begin()->first + 1;

  auto record = [&](int h, bool accepted) {
    if (trace) trace->candidates.push_back({h, accepted});
  };

  // First exponent scales the leading digit to 1/2; the product starts in
  // [1/2, 1) and only grows below 1 afterwards.
  int h = -1 - k1;
  NumberState product = translate(xstate, h);
  StandardForm pform = to_standard_form(product, 2);
  record(h, true);
  if (trace) trace->partial_products.push_back(pform);

  StandardPart result{+1, {{h, 1}}};
  // Every exponent at or below -ell - k1 - 1 is acceptable while unstopped,
  // and the walk only descends, so the visit count stays small.
  int outer_guard = 4 * ell + width + 64;
  while (!has_run_through(pform, ell)) {
    if (--outer_guard < 0)
      throw std::logic_error("inverse walk failed to converge");
    int run = 0;
    while (pform.real_part->digits.contains(-run - 1)) ++run;
    h = std::min(-(run + 1) - k1, h - 1);
    int inner_guard = ell + width + k1 + std::abs(k1) + 70;
    while (true) {
      if (--inner_guard < 0)
        throw std::logic_error("inverse walk failed to converge");
      NumberState t = add(product, translate(xstate, h));
      StandardForm tf = normalize(t, 2).form;
      if (tf.real_part->digits.rbegin()->first <= -1) {
        record(h, true);
        product = tf.to_state();
        pform = std::move(tf);
        result.digits[h] = 1;
        if (trace) trace->partial_products.push_back(pform);
        break;
      }
      record(h, false);
      --h;
    }
  }
  StandardForm out;
  out.real_part = std::move(result);
  return out;
}

StandardForm sqrt_ell(const StandardForm& x, int ell) {
  if (ell < 1) throw std::invalid_argument("accuracy must be at least 1");
  if (x.is_zero()) return {};
  if (x.imag_part || !x.real_part || x.real_part->sign < 0)
    throw std::domain_error("square root needs a nonnegative real value");
  for (const auto& [e, d] : x.real_part->digits)
    if (d != 1)
      throw std::invalid_argument("square root needs a radix-2 standard form");

  int emax = x.real_part->digits.rbegin()->first;
  // Top digit position: x < 2^(emax+1), so sqrt(x) < 2^(floor(emax/2)+1).
  int e0 = (emax >= 0 ? emax / 2 : (emax - 1) / 2) + 1;
  NumberState root;
  NumberState rem = part_state(*x.real_part);
  for (int e = e0; e >= -ell; --e) {
    // Trial digit: (r + 2^e)^2 - r^2 = 2^(e+1) r + 2^(2e).
    NumberState delta = translate(root, e + 1);
    delta.add_systems(SystemKind::real_plus, 2 * e, 1);
    StandardForm tf = normalize(sub(rem, delta), 2).form;
    if (!tf.real_part || tf.real_part->sign > 0) {
      rem = tf.to_state();
      root.add_systems(SystemKind::real_plus, e, 1);
    }
  }
  return to_standard_form(root, 2);
}

NumberState invert_complex(const StandardForm& x, int ell,
                           InverseFormula formula) {
  if (ell < 1) throw std::invalid_argument("accuracy must be at least 1");
  if (x.is_zero()) throw std::domain_error("inverse of zero");
  for (const auto* part : {&x.real_part, &x.imag_part})
    if (*part)
      for (const auto& [e, d] : (*part)->digits)
        if (d != 1)
          throw std::invalid_argument("inverse needs a radix-2 standard form");

  int lead = INT32_MIN;
  if (x.real_part) lead = std::max(lead, x.real_part->digits.rbegin()->first);
  if (x.imag_part) lead = std::max(lead, x.imag_part->digits.rbegin()->first);
  int padded = ell + 3 + std::max(0, lead);

  StandardForm conj = x;
  if (conj.imag_part) conj.imag_part->sign = -conj.imag_part->sign;
  NumberState xstate = x.to_state();
  NumberState cstate = conj.to_state();
  // u^2 + v^2: positive real, already standard after one normalize.
  StandardForm norm2 = normalize(mul(xstate, cstate), 2).form;
  StandardForm w = formula == InverseFormula::root_norm
                       ? invert_pos_real(sqrt_ell(norm2, padded), padded)
                       : invert_pos_real(norm2, padded);
  return mul(cstate, w.to_state().with_statistics(x.statistics));
}

NumberState div_ell(const NumberState& x, const NumberState& y, int ell) {
  check_statistics(x, y);
  NormalizeResult ny = normalize(y, 2);
  if (ny.form.is_zero()) throw std::domain_error("division by zero");
  return mul(x, invert_complex(ny.form, ell));
}

}  // namespace fockrat
