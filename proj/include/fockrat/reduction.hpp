#pragma once

#include <string>
#include <vector>

#include "fockrat/core_state.hpp"

namespace fockrat {

// Value-preserving rewrite rules. Each rule replaces systems by others with
// the same total value:
//
//   cancel  one + and one - of the same family at site j annihilate
//   carry   radix systems of one kind at site j become one at site j+1
//   borrow  one dominant-sign system at j_high plus one opposite at j_low
//           become radix-1 dominant systems at every site in [j_low, j_high)
//
// Every sequence of rule applications terminates, and all exhaustive
// schedules end in the same standard form (phases may differ by path).

enum class RewriteKind : std::uint8_t { cancel, carry, borrow };

struct RewriteStep {
  RewriteKind kind = RewriteKind::cancel;
  Family family = Family::real;
  int site = 0;       // cancel/carry site; borrow: the low site
  int site_high = 0;  // borrow only
  int sign = 0;       // carry: sign of the kind; borrow: dominant sign
  int phase_flip = +1;

  bool operator==(const RewriteStep&) const = default;
};

// One step per line, e.g. "cancel j=3 fam=r", "carry j=0 kind=r+",
// "borrow 3..0 fam=r sign=+"; a " phase=-1" suffix marks a fermion sign flip.
std::string to_line(const RewriteStep& step);

NumberState cancel_at(const NumberState& state, int j, Family family,
                      RewriteStep* step = nullptr);
NumberState carry_at(const NumberState& state, int j, SystemKind kind,
                     int radix, RewriteStep* step = nullptr);
NumberState borrow_run(const NumberState& state, int j_high, int j_low,
                       Family family, int dominant_sign, int radix,
                       RewriteStep* step = nullptr);

// Every rule instance applicable to the state, for schedule experiments.
std::vector<RewriteStep> applicable_steps(const NumberState& state, int radix);
NumberState apply_step(const NumberState& state, const RewriteStep& step,
                       int radix);

struct NormalizeResult {
  StandardForm form;
  int phase = +1;  // state phase times every step's phase_flip
};

// Deterministic reduction to the unique standard form: per-site cancels and
// carries in one ascending sweep, then sign unification per family by
// borrowing at the topmost minority site. Appends each step to *trace when
// given.
NormalizeResult normalize(const NumberState& state, int radix,
                          std::vector<RewriteStep>* trace = nullptr);

// Value equality: equal standard forms at this radix.
bool n_equal(const NumberState& a, const NumberState& b, int radix);

}  // namespace fockrat
