#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fockrat {

// A value is held as a multiset of unit "systems". Each system kind carries a
// unit value; a system of kind K at site j is worth unit(K) * radix^j:
//
//   real_plus   +radix^j        real_minus   -radix^j
//   imag_plus   +i radix^j      imag_minus   -i radix^j
//
// States with equal total value are related by the rewrite rules in
// reduction.hpp even when their occupation patterns differ.

enum class Family : std::uint8_t { real, imaginary };
enum class Statistics : std::uint8_t { boson, fermion };
enum class SystemKind : std::uint8_t { real_plus, real_minus, imag_plus, imag_minus };

inline constexpr SystemKind all_kinds[4] = {
    SystemKind::real_plus, SystemKind::real_minus,
    SystemKind::imag_plus, SystemKind::imag_minus};

constexpr Family family_of(SystemKind k) {
  return (k == SystemKind::real_plus || k == SystemKind::real_minus)
             ? Family::real
             : Family::imaginary;
}

constexpr int sign_of(SystemKind k) {
  return (k == SystemKind::real_plus || k == SystemKind::imag_plus) ? +1 : -1;
}

constexpr SystemKind make_kind(Family f, int sign) {
  if (f == Family::real)
    return sign > 0 ? SystemKind::real_plus : SystemKind::real_minus;
  return sign > 0 ? SystemKind::imag_plus : SystemKind::imag_minus;
}

constexpr const char* kind_token(SystemKind k) {
  switch (k) {
    case SystemKind::real_plus: return "r+";
    case SystemKind::real_minus: return "r-";
    case SystemKind::imag_plus: return "i+";
    case SystemKind::imag_minus: return "i-";
  }
  return "?";
}

constexpr char family_token(Family f) { return f == Family::real ? 'r' : 'i'; }

// Occupation counts of the four kinds at one site.
struct SiteOccupancy {
  std::int64_t n_r = 0;  // real_plus
  std::int64_t m_r = 0;  // real_minus
  std::int64_t n_i = 0;  // imag_plus
  std::int64_t m_i = 0;  // imag_minus

  std::int64_t& count(SystemKind k) {
    switch (k) {
      case SystemKind::real_plus: return n_r;
      case SystemKind::real_minus: return m_r;
      case SystemKind::imag_plus: return n_i;
      case SystemKind::imag_minus: return m_i;
    }
    return n_r;  // unreachable
  }
  std::int64_t count(SystemKind k) const {
    return const_cast<SiteOccupancy*>(this)->count(k);
  }
  std::int64_t plus_count(Family f) const {
    return f == Family::real ? n_r : n_i;
  }
  std::int64_t minus_count(Family f) const {
    return f == Family::real ? m_r : m_i;
  }
  std::int64_t family_total(Family f) const {
    return plus_count(f) + minus_count(f);
  }
  std::int64_t total() const { return n_r + m_r + n_i + m_i; }
  bool empty() const { return total() == 0; }
  bool operator==(const SiteOccupancy&) const = default;
};

// Occupation-number state: site -> counts, plus statistics and, for fermions,
// an accumulated sign. Zero-count sites are never stored, so equality of the
// map is structural equality of states. Fermion operator indices are implicit:
// a kind with count c at site j stands for the ops with h = 1..c, written in
// canonical order (sites ascending; within a site blocks r+, r-, i+, i-; within
// a block h descending). Bosons always carry phase +1.
class NumberState {
 public:
  NumberState() = default;
  explicit NumberState(Statistics s) : statistics_(s) {}

  const std::map<int, SiteOccupancy>& sites() const { return sites_; }
  Statistics statistics() const { return statistics_; }
  int phase() const { return phase_; }
  bool is_vacuum() const { return sites_.empty(); }

  std::int64_t count(SystemKind k, int j) const {
    auto it = sites_.find(j);
    return it == sites_.end() ? 0 : it->second.count(k);
  }
  std::int64_t total_systems() const;
  // Width of the occupied site window (0 for vacuum).
  int support_span() const;

  void add_systems(SystemKind k, int j, std::int64_t mult);
  void remove_systems(SystemKind k, int j, std::int64_t mult);
  void set_phase(int phase);
  void flip_phase() { set_phase(-phase_); }
  NumberState with_statistics(Statistics s) const;

  bool operator==(const NumberState&) const = default;

 private:
  std::map<int, SiteOccupancy> sites_;
  Statistics statistics_ = Statistics::boson;
  int phase_ = +1;
};

struct SystemEntry {
  SystemKind kind;
  int site = 0;
  std::int64_t multiplicity = 1;
};

// Builds a state from (kind, site, multiplicity) entries; repeated (kind, site)
// pairs accumulate. Phase starts at +1.
NumberState from_systems(const std::vector<SystemEntry>& entries,
                         Statistics statistics = Statistics::boson);

// Positional literal "digits[.digits]" with an optional leading sign, read in
// the given radix; digit d at weight radix^j becomes d systems of the family's
// signed kind at site j. "1001.01" at radix 2 -> {r+@3, r+@0, r+@-2} etc.
NumberState state_from_literal(std::string_view text, Family family, int radix);

// One addend of a standard form: a shared sign and exponent -> digit counts
// (each 1..radix-1). At radix 2 the digit map is just the exponent set.
struct StandardPart {
  int sign = +1;
  std::map<int, std::int64_t> digits;
  bool operator==(const StandardPart&) const = default;
};

// Canonical shape of a state's value. Absent part = that component is zero.
// Equality compares the value identity (the two parts) only; statistics and
// phase ride along as metadata about the state the form was packed from.
struct StandardForm {
  std::optional<StandardPart> real_part;
  std::optional<StandardPart> imag_part;
  Statistics statistics = Statistics::boson;
  int phase = +1;

  bool is_zero() const { return !real_part && !imag_part; }
  NumberState to_state() const;

  friend bool operator==(const StandardForm& a, const StandardForm& b) {
    return a.real_part == b.real_part && a.imag_part == b.imag_part;
  }
};

// True when every family carries one sign overall and every per-site count is
// at most radix-1 (so no site mixes signs within a family either).
bool is_standard(const NumberState& state, int radix);

// Packs a standard state into its form. Throws std::invalid_argument when
// is_standard(state, radix) fails.
StandardForm to_standard_form(const NumberState& state, int radix = 2);

// An explicit creation operator for sign bookkeeping: kind, operator index h,
// site j.
struct OperatorRef {
  SystemKind kind;
  std::int64_t h = 1;
  int site = 0;
};

// Sign of the permutation that sorts the given operator product into canonical
// order, counting only swaps within the same family (the two families
// commute). A repeated (kind, h, site) triple is a Pauli violation and throws
// std::domain_error.
int fermion_reorder_sign(const std::vector<OperatorRef>& ops);

// Number of family-f systems at sites strictly below j; the position offset
// used by fermion sign bookkeeping in the rewrite rules.
std::int64_t family_count_below(const NumberState& state, Family f, int j);

// Value transforms. flip_signs swaps +/- kinds everywhere (negation);
// swap_family exchanges real and imaginary roles; translate shifts every site
// by offset (scale by radix^offset). For fermions flip_signs picks up the
// block-swap sign (-1)^sum(n*m); the other two leave the phase alone.
NumberState flip_signs(const NumberState& state);
NumberState swap_family(const NumberState& state);
NumberState translate(const NumberState& state, int offset);

// Strict per-component order of standard parts (absent = zero): any negative
// part < zero < any positive part; like signs compare positionally from the
// top exponent, reflected for negatives.
std::strong_ordering compare_parts(const std::optional<StandardPart>& a,
                                   const std::optional<StandardPart>& b);

// Text serialization, e.g. "fermion: r+@3^2 i-@-1 phase=-1", "vac".
std::string to_text(const NumberState& state);
NumberState state_from_text(std::string_view text);

// Parse failure with the byte offset of the offending character.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace fockrat
