#include "fockrat/superposition.hpp"

#include <cmath>

#include "fockrat/arithmetic.hpp"
#include "fockrat/reduction.hpp"
#include "fockrat/valuation.hpp"

namespace fockrat {

namespace {

constexpr double kWeightTolerance = 1e-12;

template <typename Weight>
std::vector<std::pair<Weight, NumberState>> merge_terms(
    std::vector<std::pair<Weight, NumberState>> raw) {
  std::vector<std::pair<Weight, NumberState>> merged;
  for (auto& [w, st] : raw) {
    bool found = false;
    for (auto& [mw, mst] : merged) {
      if (mst == st) {
        mw += w;
        found = true;
        break;
      }
    }
    if (!found) merged.emplace_back(w, std::move(st));
  }
  return merged;
}

}  // namespace

Superposition Superposition::make(
    std::vector<std::pair<std::complex<double>, NumberState>> raw) {
  Superposition s;
  s.terms = merge_terms(std::move(raw));
  double total = 0;
  for (const auto& [amp, st] : s.terms) total += std::norm(amp);
  if (std::abs(total - 1.0) > kWeightTolerance)
    throw std::invalid_argument("superposition amplitudes must have unit norm");
  return s;
}

Superposition Superposition::make_normalized(
    std::vector<std::pair<std::complex<double>, NumberState>> raw) {
  double total = 0;
  for (const auto& [amp, st] : raw) total += std::norm(amp);
  if (total <= 0)
    throw std::invalid_argument("superposition needs positive total weight");
  double scale = 1.0 / std::sqrt(total);
  for (auto& [amp, st] : raw) amp *= scale;
  return make(std::move(raw));
}

Mixture Mixture::make(std::vector<std::pair<double, NumberState>> raw) {
  for (const auto& [p, st] : raw)
    if (p < 0) throw std::invalid_argument("probabilities must be nonnegative");
  Mixture m;
  m.terms = merge_terms(std::move(raw));
  double total = 0;
  for (const auto& [p, st] : m.terms) total += p;
  if (std::abs(total - 1.0) > kWeightTolerance)
    throw std::invalid_argument("probabilities must sum to one");
  return m;
}

namespace {

template <typename F>
Superposition map_states(const Superposition& s, F&& f) {
  Superposition out;
  out.terms.reserve(s.terms.size());
  for (const auto& [amp, st] : s.terms) out.terms.emplace_back(amp, f(st));
  return out;
}

}  // namespace

Superposition apply_W(const Superposition& s) {
  return map_states(s, [](const NumberState& st) { return flip_signs(st); });
}

Superposition apply_Q(const Superposition& s) {
  return map_states(s, [](const NumberState& st) { return swap_family(st); });
}

Superposition apply_T(const Superposition& s, int offset) {
  return map_states(s, [&](const NumberState& st) { return translate(st, offset); });
}

namespace {

template <typename Op>
std::vector<EntangledTerm> pair_terms(const Superposition& a,
                                      const Superposition& b, Op&& op) {
  std::vector<EntangledTerm> branches;
  branches.reserve(a.terms.size() * b.terms.size());
  for (const auto& [da, sa] : a.terms)
    for (const auto& [db, sb] : b.terms)
      branches.push_back({da * db, sa, sb, op(sa, sb)});
  return branches;
}

}  // namespace

std::vector<EntangledTerm> add_entangled(const Superposition& a,
                                         const Superposition& b) {
  return pair_terms(a, b, [](const NumberState& x, const NumberState& y) {
    return add(x, y);
  });
}

std::vector<EntangledTerm> mul_entangled(const Superposition& a,
                                         const Superposition& b) {
  return pair_terms(a, b, [](const NumberState& x, const NumberState& y) {
    return mul(x, y);
  });
}

Mixture trace_out(const std::vector<EntangledTerm>& branches) {
  std::vector<std::pair<double, NumberState>> raw;
  raw.reserve(branches.size());
  for (const auto& br : branches)
    raw.emplace_back(std::norm(br.amplitude), br.out);
  return Mixture::make(std::move(raw));
}

std::complex<double> expect_N(const Superposition& s, int radix) {
  std::complex<double> mean = 0;
  for (const auto& [amp, st] : s.terms)
    mean += std::norm(amp) * eval_N(st, radix).to_complex_double();
  return mean;
}

std::complex<double> expect_N(const Mixture& m, int radix) {
  std::complex<double> mean = 0;
  for (const auto& [p, st] : m.terms)
    mean += p * eval_N(st, radix).to_complex_double();
  return mean;
}

Mixture to_mixture(const Superposition& s) {
  std::vector<std::pair<double, NumberState>> raw;
  raw.reserve(s.terms.size());
  for (const auto& [amp, st] : s.terms) raw.emplace_back(std::norm(amp), st);
  return Mixture::make(std::move(raw));
}

namespace {

template <typename Op>
Mixture convolve(const Mixture& a, const Mixture& b, Op&& op) {
  std::vector<std::pair<double, NumberState>> raw;
  raw.reserve(a.terms.size() * b.terms.size());
  for (const auto& [pa, sa] : a.terms)
    for (const auto& [pb, sb] : b.terms) raw.emplace_back(pa * pb, op(sa, sb));
  return Mixture::make(std::move(raw));
}

}  // namespace

Mixture mixture_add(const Mixture& a, const Mixture& b) {
  return convolve(a, b, [](const NumberState& x, const NumberState& y) {
    return add(x, y);
  });
}

Mixture mixture_mul(const Mixture& a, const Mixture& b) {
  return convolve(a, b, [](const NumberState& x, const NumberState& y) {
    return mul(x, y);
  });
}

Mixture merge_by_n_equal(const Mixture& m, int radix) {
  std::vector<std::pair<double, NumberState>> raw;
  raw.reserve(m.terms.size());
  for (const auto& [p, st] : m.terms) {
    StandardForm form = normalize(st, radix).form;
    form.phase = +1;
    raw.emplace_back(p, form.to_state());
  }
  return Mixture::make(std::move(raw));
}

}  // namespace fockrat
