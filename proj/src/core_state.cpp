#include "fockrat/core_state.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fockrat {

parse_error::parse_error(const std::string& what, std::size_t position)
    : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
      position_(position) {}

std::int64_t NumberState::total_systems() const {
  std::int64_t t = 0;
  for (const auto& [j, occ] : sites_) t += occ.total();
  return t;
}

int NumberState::support_span() const {
  if (sites_.empty()) return 0;
  return sites_.rbegin()->first - sites_.begin()->first + 1;
}

void NumberState::add_systems(SystemKind k, int j, std::int64_t mult) {
  if (mult < 1) throw std::invalid_argument("multiplicity must be positive");
  sites_[j].count(k) += mult;
}

void NumberState::remove_systems(SystemKind k, int j, std::int64_t mult) {
  if (mult < 1) throw std::invalid_argument("multiplicity must be positive");
  auto it = sites_.find(j);
  if (it == sites_.end() || it->second.count(k) < mult)
    throw std::invalid_argument("removing more systems than present");
  it->second.count(k) -= mult;
  if (it->second.empty()) sites_.erase(it);
}

void NumberState::set_phase(int phase) {
  if (phase != 1 && phase != -1)
    throw std::invalid_argument("phase must be +1 or -1");
  if (statistics_ == Statistics::boson && phase == -1)
    throw std::invalid_argument("boson states carry phase +1");
  phase_ = phase;
}

NumberState NumberState::with_statistics(Statistics s) const {
  NumberState out(s);
  out.sites_ = sites_;
  if (s == Statistics::fermion) out.phase_ = phase_;
  return out;
}

NumberState from_systems(const std::vector<SystemEntry>& entries,
                         Statistics statistics) {
  NumberState out(statistics);
  for (const auto& e : entries) out.add_systems(e.kind, e.site, e.multiplicity);
  return out;
}

NumberState state_from_literal(std::string_view text, Family family, int radix) {
  if (radix < 2 || radix > 10)
    throw std::invalid_argument("literal radix must be in [2,10]");
  std::size_t pos = 0;
  int sign = +1;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    if (text[pos] == '-') sign = -1;
    ++pos;
  }
  std::string int_digits, frac_digits;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
    int_digits += text[pos++];
  if (int_digits.empty()) throw parse_error("expected a digit", pos);
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      frac_digits += text[pos++];
    if (frac_digits.empty())
      throw parse_error("expected a digit after the radix point", pos);
  }
  if (pos != text.size()) throw parse_error("unexpected character in literal", pos);

  NumberState out;
  SystemKind kind = make_kind(family, sign);
  auto place = [&](char c, int site, std::size_t at) {
    int d = c - '0';
    if (d >= radix) throw parse_error("digit out of range for radix", at);
    if (d > 0) out.add_systems(kind, site, d);
  };
  std::size_t base = (sign == -1 || text[0] == '+') ? 1 : 0;
  for (std::size_t i = 0; i < int_digits.size(); ++i)
    place(int_digits[i], static_cast<int>(int_digits.size() - 1 - i), base + i);
  for (std::size_t i = 0; i < frac_digits.size(); ++i)
    place(frac_digits[i], -static_cast<int>(i) - 1,
          base + int_digits.size() + 1 + i);
  return out;
}

bool is_standard(const NumberState& state, int radix) {
  if (radix < 2) throw std::invalid_argument("radix must be at least 2");
  for (Family f : {Family::real, Family::imaginary}) {
    int seen_sign = 0;
    for (const auto& [j, occ] : state.sites()) {
      std::int64_t p = occ.plus_count(f), m = occ.minus_count(f);
      if (p > 0 && m > 0) return false;
      if (p > radix - 1 || m > radix - 1) return false;
      int s = p > 0 ? +1 : (m > 0 ? -1 : 0);
      if (s == 0) continue;
      if (seen_sign == 0) seen_sign = s;
      else if (seen_sign != s) return false;
    }
  }
  return true;
}

StandardForm to_standard_form(const NumberState& state, int radix) {
  if (!is_standard(state, radix))
    throw std::invalid_argument("state is not in standard form");
  StandardForm form;
  form.statistics = state.statistics();
  form.phase = state.phase();
  for (Family f : {Family::real, Family::imaginary}) {
    StandardPart part;
    part.sign = 0;
    for (const auto& [j, occ] : state.sites()) {
      std::int64_t p = occ.plus_count(f), m = occ.minus_count(f);
      if (p > 0) {
        part.sign = +1;
        part.digits[j] = p;
      } else if (m > 0) {
        part.sign = -1;
        part.digits[j] = m;
      }
    }
    if (part.sign != 0) {
      if (f == Family::real) form.real_part = std::move(part);
      else form.imag_part = std::move(part);
    }
  }
  return form;
}

NumberState StandardForm::to_state() const {
  NumberState out(statistics);
  if (real_part)
    for (const auto& [j, d] : real_part->digits)
      out.add_systems(make_kind(Family::real, real_part->sign), j, d);
  if (imag_part)
    for (const auto& [j, d] : imag_part->digits)
      out.add_systems(make_kind(Family::imaginary, imag_part->sign), j, d);
  if (statistics == Statistics::fermion) out.set_phase(phase);
  return out;
}

int fermion_reorder_sign(const std::vector<OperatorRef>& ops) {
  // Canonical key within a family: site ascending, plus block before minus
  // block, h descending. Cross-family pairs cost nothing.
  struct Key {
    int site;
    int block;
    std::int64_t h;
  };
  auto key_less = [](const Key& a, const Key& b) {
    if (a.site != b.site) return a.site < b.site;
    if (a.block != b.block) return a.block < b.block;
    return a.h > b.h;
  };
  std::vector<Key> per_family[2];
  for (const auto& op : ops) {
    int f = family_of(op.kind) == Family::real ? 0 : 1;
    per_family[f].push_back(
        Key{op.site, sign_of(op.kind) > 0 ? 0 : 1, op.h});
  }
  std::int64_t inversions = 0;
  for (const auto& seq : per_family) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      for (std::size_t l = i + 1; l < seq.size(); ++l) {
        const Key &a = seq[i], &b = seq[l];
        if (a.site == b.site && a.block == b.block && a.h == b.h)
          throw std::domain_error("Pauli exclusion: repeated fermion operator");
        if (key_less(b, a)) ++inversions;
      }
    }
  }
  return inversions % 2 == 0 ? +1 : -1;
}

std::int64_t family_count_below(const NumberState& state, Family f, int j) {
  std::int64_t total = 0;
  for (const auto& [site, occ] : state.sites()) {
    if (site >= j) break;
    total += occ.family_total(f);
  }
  return total;
}

NumberState flip_signs(const NumberState& state) {
  NumberState out(state.statistics());
  std::int64_t crossings = 0;
  for (const auto& [j, occ] : state.sites()) {
    if (occ.n_r > 0) out.add_systems(SystemKind::real_minus, j, occ.n_r);
    if (occ.m_r > 0) out.add_systems(SystemKind::real_plus, j, occ.m_r);
    if (occ.n_i > 0) out.add_systems(SystemKind::imag_minus, j, occ.n_i);
    if (occ.m_i > 0) out.add_systems(SystemKind::imag_plus, j, occ.m_i);
    crossings += occ.n_r * occ.m_r + occ.n_i * occ.m_i;
  }
  if (state.statistics() == Statistics::fermion)
    out.set_phase(crossings % 2 == 0 ? state.phase() : -state.phase());
  return out;
}

NumberState swap_family(const NumberState& state) {
  NumberState out(state.statistics());
  for (const auto& [j, occ] : state.sites()) {
    if (occ.n_i > 0) out.add_systems(SystemKind::real_plus, j, occ.n_i);
    if (occ.m_i > 0) out.add_systems(SystemKind::real_minus, j, occ.m_i);
    if (occ.n_r > 0) out.add_systems(SystemKind::imag_plus, j, occ.n_r);
    if (occ.m_r > 0) out.add_systems(SystemKind::imag_minus, j, occ.m_r);
  }
  if (state.statistics() == Statistics::fermion) out.set_phase(state.phase());
  return out;
}

NumberState translate(const NumberState& state, int offset) {
  NumberState out(state.statistics());
  for (const auto& [j, occ] : state.sites())
    for (SystemKind k : all_kinds)
      if (occ.count(k) > 0) out.add_systems(k, j + offset, occ.count(k));
  if (state.statistics() == Statistics::fermion) out.set_phase(state.phase());
  return out;
}

std::strong_ordering compare_parts(const std::optional<StandardPart>& a,
                                   const std::optional<StandardPart>& b) {
  int sa = a ? a->sign : 0;
  int sb = b ? b->sign : 0;
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  // Like signs: walk merged exponents from the top; the first differing digit
  // decides. Reflected when both are negative.
  auto ita = a->digits.rbegin();
  auto itb = b->digits.rbegin();
  std::strong_ordering mag = std::strong_ordering::equal;
  while (ita != a->digits.rend() || itb != b->digits.rend()) {
    int ea = ita != a->digits.rend() ? ita->first : INT32_MIN;
    int eb = itb != b->digits.rend() ? itb->first : INT32_MIN;
    int e = std::max(ea, eb);
    std::int64_t da = ea == e ? ita->second : 0;
    std::int64_t db = eb == e ? itb->second : 0;
    if (da != db) {
      mag = da <=> db;
      break;
    }
    if (ea == e) ++ita;
    if (eb == e) ++itb;
  }
  if (mag == std::strong_ordering::equal) return mag;
  return sa > 0 ? mag : (mag == std::strong_ordering::less
                             ? std::strong_ordering::greater
                             : std::strong_ordering::less);
}

std::string to_text(const NumberState& state) {
  std::ostringstream os;
  if (state.statistics() == Statistics::fermion) os << "fermion: ";
  if (state.is_vacuum()) {
    os << "vac";
  } else {
    bool first = true;
    for (const auto& [j, occ] : state.sites()) {
      for (SystemKind k : all_kinds) {
        std::int64_t c = occ.count(k);
        if (c == 0) continue;
        if (!first) os << ' ';
        first = false;
        os << kind_token(k) << '@' << j;
        if (c > 1) os << '^' << c;
      }
    }
  }
  if (state.phase() == -1) os << " phase=-1";
  return os.str();
}

NumberState state_from_text(std::string_view text) {
  std::vector<std::pair<std::string, std::size_t>> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.emplace_back(std::string(text.substr(start, i - start)), start);
  }
  Statistics stats = Statistics::boson;
  std::size_t t = 0;
  if (t < tokens.size() && tokens[t].first == "fermion:") {
    stats = Statistics::fermion;
    ++t;
  }
  int phase = +1;
  if (!tokens.empty()) {
    const auto& [tok, at] = tokens.back();
    if (tok.rfind("phase=", 0) == 0) {
      std::string v = tok.substr(6);
      if (v == "-1") phase = -1;
      else if (v == "1" || v == "+1") phase = +1;
      else throw parse_error("bad phase value", at);
      tokens.pop_back();
    }
  }
  NumberState out(stats);
  bool saw_vac = false, saw_system = false;
  for (; t < tokens.size(); ++t) {
    const auto& [tok, at] = tokens[t];
    if (tok == "vac") {
      saw_vac = true;
      continue;
    }
    saw_system = true;
    if (tok.size() < 4) throw parse_error("bad system token", at);
    Family fam;
    if (tok[0] == 'r') fam = Family::real;
    else if (tok[0] == 'i') fam = Family::imaginary;
    else throw parse_error("bad system token", at);
    int sign;
    if (tok[1] == '+') sign = +1;
    else if (tok[1] == '-') sign = -1;
    else throw parse_error("bad system token", at);
    if (tok[2] != '@') throw parse_error("expected '@' in system token", at);
    std::size_t caret = tok.find('^', 3);
    std::string site_str = tok.substr(3, caret == std::string::npos
                                             ? std::string::npos
                                             : caret - 3);
    std::int64_t mult = 1;
    try {
      std::size_t used = 0;
      int site = std::stoi(site_str, &used);
      if (used != site_str.size()) throw std::invalid_argument("");
      if (caret != std::string::npos) {
        std::string mult_str = tok.substr(caret + 1);
        mult = std::stoll(mult_str, &used);
        if (used != mult_str.size() || mult < 1) throw std::invalid_argument("");
      }
      out.add_systems(make_kind(fam, sign), site, mult);
    } catch (const std::invalid_argument&) {
      throw parse_error("bad number in system token", at);
    } catch (const std::out_of_range&) {
      throw parse_error("number out of range in system token", at);
    }
  }
  if (saw_vac && saw_system)
    throw parse_error("'vac' cannot be combined with system tokens", 0);
  if (!saw_vac && !saw_system)
    throw parse_error("empty state text", 0);
  if (phase == -1) out.set_phase(-1);
  return out;
}

}  // namespace fockrat
