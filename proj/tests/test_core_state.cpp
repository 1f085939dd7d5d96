#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "fockrat/core_state.hpp"
#include "fockrat/rng.hpp"
#include "fockrat/valuation.hpp"
#include "support/generators.hpp"
#include "support/op_sequence.hpp"

using namespace fockrat;

namespace {

// Reference reorder sign: bubble the sequence into canonical order with
// explicit adjacent swaps, flipping the sign only when the swapped pair
// shares a family.
int bubble_sort_sign(std::vector<OperatorRef> ops) {
  int sign = +1;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i + 1 < ops.size(); ++i) {
      if (testgen::OpSequence::before(ops[i + 1], ops[i])) {
        if (family_of(ops[i].kind) == family_of(ops[i + 1].kind)) sign = -sign;
        std::swap(ops[i], ops[i + 1]);
        moved = true;
      }
    }
  }
  return sign;
}

}  // namespace

TEST_CASE("states accumulate systems and drop empty sites", "[core]") {
  NumberState st;
  st.add_systems(SystemKind::real_plus, 3, 2);
  st.add_systems(SystemKind::real_plus, 3, 1);
  st.add_systems(SystemKind::imag_minus, -1, 4);
  REQUIRE(st.count(SystemKind::real_plus, 3) == 3);
  REQUIRE(st.count(SystemKind::imag_minus, -1) == 4);
  REQUIRE(st.total_systems() == 7);
  REQUIRE(st.support_span() == 5);

  st.remove_systems(SystemKind::imag_minus, -1, 4);
  REQUIRE(st.sites().count(-1) == 0);
  REQUIRE(st.support_span() == 1);

  st.remove_systems(SystemKind::real_plus, 3, 3);
  REQUIRE(st.is_vacuum());
  REQUIRE(st == NumberState{});

  SECTION("removing more than present throws") {
    NumberState s2;
    s2.add_systems(SystemKind::real_plus, 0, 1);
    REQUIRE_THROWS_AS(s2.remove_systems(SystemKind::real_plus, 0, 2),
                      std::invalid_argument);
  }

  SECTION("bosons reject a negative phase") {
    NumberState s2;
    REQUIRE_THROWS_AS(s2.set_phase(-1), std::invalid_argument);
    NumberState f(Statistics::fermion);
    f.set_phase(-1);
    REQUIRE(f.phase() == -1);
  }
}

TEST_CASE("from_systems merges duplicate entries", "[core]") {
  NumberState st = from_systems({{SystemKind::real_plus, 2, 1},
                                 {SystemKind::real_minus, 0, 2},
                                 {SystemKind::real_plus, 2, 3}});
  REQUIRE(st.count(SystemKind::real_plus, 2) == 4);
  REQUIRE(st.count(SystemKind::real_minus, 0) == 2);
  REQUIRE(st.phase() == +1);
  REQUIRE_THROWS_AS(from_systems({{SystemKind::real_plus, 0, 0}}),
                    std::invalid_argument);
}

TEST_CASE("positional literals place digits at their weights", "[core]") {
  SECTION("binary integer and fraction digits") {
    NumberState st = state_from_literal("1001.01", Family::real, 2);
    REQUIRE(st.count(SystemKind::real_plus, 3) == 1);
    REQUIRE(st.count(SystemKind::real_plus, 0) == 1);
    REQUIRE(st.count(SystemKind::real_plus, -2) == 1);
    REQUIRE(st.total_systems() == 3);
  }

  SECTION("negative imaginary literal") {
    NumberState st = state_from_literal("-10.1", Family::imaginary, 2);
    REQUIRE(st.count(SystemKind::imag_minus, 1) == 1);
    REQUIRE(st.count(SystemKind::imag_minus, -1) == 1);
    REQUIRE(st.total_systems() == 2);
  }

  SECTION("larger radix keeps digit multiplicities") {
    NumberState st = state_from_literal("203", Family::real, 5);
    REQUIRE(st.count(SystemKind::real_plus, 2) == 2);
    REQUIRE(st.count(SystemKind::real_plus, 1) == 0);
    REQUIRE(st.count(SystemKind::real_plus, 0) == 3);
  }

  SECTION("digits at or above the radix are rejected with a position") {
    try {
      state_from_literal("12", Family::real, 2);
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      REQUIRE(e.position() == 1);
    }
  }

  SECTION("malformed literals") {
    REQUIRE_THROWS_AS(state_from_literal("", Family::real, 2), parse_error);
    REQUIRE_THROWS_AS(state_from_literal(".5", Family::real, 2), parse_error);
    REQUIRE_THROWS_AS(state_from_literal("1.", Family::real, 2), parse_error);
    REQUIRE_THROWS_AS(state_from_literal("-", Family::real, 2), parse_error);
    REQUIRE_THROWS_AS(state_from_literal("1..0", Family::real, 2), parse_error);
  }

  SECTION("zero literal is the vacuum") {
    REQUIRE(state_from_literal("0", Family::real, 2).is_vacuum());
    REQUIRE(state_from_literal("0.00", Family::imaginary, 2).is_vacuum());
  }
}

TEST_CASE("is_standard checks one sign per family and digit bounds", "[core]") {
  REQUIRE(is_standard(from_systems({{SystemKind::real_plus, 3, 1},
                                    {SystemKind::real_plus, 0, 1},
                                    {SystemKind::imag_minus, 2, 1}}),
                      2));
  REQUIRE(is_standard(NumberState{}, 2));

  SECTION("mixed signs within a family fail") {
    NumberState st = from_systems(
        {{SystemKind::real_plus, 3, 1}, {SystemKind::real_minus, 2, 1}});
    REQUIRE_FALSE(is_standard(st, 2));
  }

  SECTION("digit equal to the radix fails, below it passes") {
    NumberState st = from_systems({{SystemKind::real_plus, 0, 2}});
    REQUIRE_FALSE(is_standard(st, 2));
    REQUIRE(is_standard(st, 3));
  }

  SECTION("opposite signs in different families still pass") {
    NumberState st = from_systems(
        {{SystemKind::real_plus, 1, 1}, {SystemKind::imag_minus, 4, 1}});
    REQUIRE(is_standard(st, 2));
  }
}

TEST_CASE("standard form pack and unpack round-trips", "[core]") {
  NumberState st = from_systems({{SystemKind::real_plus, 1, 1},
                                 {SystemKind::real_plus, -2, 1},
                                 {SystemKind::imag_minus, 3, 1}});
  StandardForm form = to_standard_form(st, 2);
  REQUIRE(form.real_part.has_value());
  REQUIRE(form.real_part->sign == +1);
  REQUIRE(form.real_part->digits == std::map<int, std::int64_t>{{1, 1}, {-2, 1}});
  REQUIRE(form.imag_part.has_value());
  REQUIRE(form.imag_part->sign == -1);
  REQUIRE(form.to_state() == st);

  SECTION("vacuum packs to the zero form") {
    StandardForm z = to_standard_form(NumberState{}, 2);
    REQUIRE(z.is_zero());
    REQUIRE(z.to_state().is_vacuum());
  }

  SECTION("nonstandard states are rejected") {
    NumberState bad = from_systems(
        {{SystemKind::real_plus, 0, 1}, {SystemKind::real_minus, 5, 1}});
    REQUIRE_THROWS_AS(to_standard_form(bad, 2), std::invalid_argument);
  }

  SECTION("radix 5 keeps digit counts") {
    NumberState st5 = from_systems({{SystemKind::real_minus, 2, 4},
                                    {SystemKind::real_minus, 0, 1}});
    StandardForm f5 = to_standard_form(st5, 5);
    REQUIRE(f5.real_part->sign == -1);
    REQUIRE(f5.real_part->digits == std::map<int, std::int64_t>{{2, 4}, {0, 1}});
    REQUIRE(f5.to_state() == st5);
  }

  SECTION("random binary standard forms survive the round-trip") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
      StandardForm form = testgen::random_complex_form(rng, -10, 10, 5);
      NumberState st2 = form.to_state();
      REQUIRE(is_standard(st2, 2));
      REQUIRE(to_standard_form(st2, 2) == form);
    }
  }
}

TEST_CASE("fermion reorder sign counts same-family inversions", "[core]") {
  SECTION("swapping two operators of one family is odd") {
    REQUIRE(fermion_reorder_sign({{SystemKind::real_plus, 2, 0},
                                  {SystemKind::real_plus, 1, 0}}) == +1);
    REQUIRE(fermion_reorder_sign({{SystemKind::real_plus, 1, 0},
                                  {SystemKind::real_plus, 2, 0}}) == -1);
    REQUIRE(fermion_reorder_sign({{SystemKind::real_plus, 1, 5},
                                  {SystemKind::real_plus, 1, 3}}) == -1);
  }

  SECTION("different families commute freely") {
    REQUIRE(fermion_reorder_sign({{SystemKind::imag_plus, 1, 0},
                                  {SystemKind::real_plus, 1, 0}}) == +1);
    REQUIRE(fermion_reorder_sign({{SystemKind::imag_minus, 1, 7},
                                  {SystemKind::real_minus, 1, -3}}) == +1);
  }

  SECTION("same site orders blocks r+, r-, i+, i-") {
    REQUIRE(fermion_reorder_sign({{SystemKind::real_minus, 1, 0},
                                  {SystemKind::real_plus, 1, 0}}) == -1);
    REQUIRE(fermion_reorder_sign({{SystemKind::imag_minus, 1, 0},
                                  {SystemKind::imag_plus, 1, 0}}) == -1);
  }

  SECTION("a repeated operator is a Pauli violation") {
    REQUIRE_THROWS_AS(fermion_reorder_sign({{SystemKind::real_plus, 1, 0},
                                            {SystemKind::real_plus, 1, 0}}),
                      std::domain_error);
  }

  SECTION("matches a bubble sort with explicit swaps") {
    Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<OperatorRef> ops;
      int n = static_cast<int>(rng.range(0, 7));
      for (int i = 0; i < n; ++i) {
        OperatorRef op{all_kinds[rng.below(4)],
                       static_cast<std::int64_t>(rng.range(1, 3)),
                       static_cast<int>(rng.range(-2, 2))};
        bool dup = false;
        for (const auto& o : ops)
          dup = dup || (o.kind == op.kind && o.h == op.h && o.site == op.site);
        if (!dup) ops.push_back(op);
      }
      REQUIRE(fermion_reorder_sign(ops) == bubble_sort_sign(ops));
    }
  }

  SECTION("concatenation signs multiply") {
    Rng rng(29);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<OperatorRef> a, b;
      for (int i = 0; i < 3; ++i) {
        a.push_back({all_kinds[rng.below(4)], 1,
                     static_cast<int>(rng.range(-4, -1))});
        b.push_back({all_kinds[rng.below(4)], 1,
                     static_cast<int>(rng.range(1, 4))});
      }
      auto distinct = [](std::vector<OperatorRef> v) {
        for (std::size_t i = 0; i < v.size(); ++i)
          for (std::size_t k = i + 1; k < v.size(); ++k)
            if (v[i].kind == v[k].kind && v[i].h == v[k].h &&
                v[i].site == v[k].site)
              return false;
        return true;
      };
      if (!distinct(a) || !distinct(b)) continue;
      std::vector<OperatorRef> ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      // Low sites in a, high sites in b, so sorted(a) ++ sorted(b) is sorted.
      REQUIRE(fermion_reorder_sign(ab) ==
              fermion_reorder_sign(a) * fermion_reorder_sign(b));
    }
  }
}

TEST_CASE("family_count_below sums the family under a site", "[core]") {
  NumberState st = from_systems({{SystemKind::real_plus, -2, 3},
                                 {SystemKind::real_minus, 0, 1},
                                 {SystemKind::imag_plus, -1, 2},
                                 {SystemKind::real_plus, 4, 1}});
  REQUIRE(family_count_below(st, Family::real, -2) == 0);
  REQUIRE(family_count_below(st, Family::real, 0) == 3);
  REQUIRE(family_count_below(st, Family::real, 5) == 5);
  REQUIRE(family_count_below(st, Family::imaginary, 0) == 2);
}

TEST_CASE("value transforms act on kinds and sites", "[core]") {
  NumberState st = from_systems({{SystemKind::real_plus, 2, 1},
                                 {SystemKind::imag_minus, -1, 2}});

  SECTION("flip_signs negates the value and is an involution") {
    NumberState w = flip_signs(st);
    REQUIRE(w.count(SystemKind::real_minus, 2) == 1);
    REQUIRE(w.count(SystemKind::imag_plus, -1) == 2);
    REQUIRE(flip_signs(w) == st);
    ExactComplex v = eval_N(st, 2), vw = eval_N(w, 2);
    REQUIRE(vw.re.numerator == -v.re.numerator);
    REQUIRE(vw.im.numerator == -v.im.numerator);
  }

  SECTION("swap_family exchanges the component values") {
    NumberState q = swap_family(st);
    REQUIRE(q.count(SystemKind::imag_plus, 2) == 1);
    REQUIRE(q.count(SystemKind::real_minus, -1) == 2);
    REQUIRE(swap_family(q) == st);
    ExactComplex v = eval_N(st, 2), vq = eval_N(q, 2);
    REQUIRE(vq.re == v.im);
    REQUIRE(vq.im == v.re);
  }

  SECTION("translate scales by a radix power") {
    NumberState t = translate(st, 3);
    REQUIRE(t.count(SystemKind::real_plus, 5) == 1);
    REQUIRE(t.count(SystemKind::imag_minus, 2) == 2);
    REQUIRE(translate(t, -3) == st);
    ExactRational expect =
        ExactRational::make(eval_N(st, 2).re.numerator,
                            eval_N(st, 2).re.exponent + 3, 2);
    REQUIRE(eval_N(t, 2).re == expect);
  }

  SECTION("fermion flip_signs phase follows the pair count") {
    NumberState f(Statistics::fermion);
    f.add_systems(SystemKind::real_plus, 0, 1);
    f.add_systems(SystemKind::real_minus, 0, 1);
    REQUIRE(flip_signs(f).phase() == -1);
    REQUIRE(flip_signs(flip_signs(f)) == f);

    NumberState g(Statistics::fermion);
    g.add_systems(SystemKind::real_plus, 0, 1);
    g.add_systems(SystemKind::real_minus, 3, 1);
    REQUIRE(flip_signs(g).phase() == +1);

    REQUIRE(swap_family(f).phase() == +1);
    REQUIRE(translate(f, 2).phase() == +1);
  }
}

TEST_CASE("compare_parts orders signed positional parts", "[core]") {
  auto part = [](int sign, std::map<int, std::int64_t> digits) {
    return std::optional<StandardPart>(StandardPart{sign, std::move(digits)});
  };

  REQUIRE(compare_parts(part(+1, {{3, 1}}), part(+1, {{2, 1}, {1, 1}})) ==
          std::strong_ordering::greater);
  REQUIRE(compare_parts(part(+1, {{3, 1}}), part(+1, {{3, 1}, {-4, 1}})) ==
          std::strong_ordering::less);
  REQUIRE(compare_parts(part(+1, {{0, 2}}), part(+1, {{0, 1}})) ==
          std::strong_ordering::greater);
  REQUIRE(compare_parts(part(+1, {{5, 1}}), part(+1, {{5, 1}})) ==
          std::strong_ordering::equal);

  SECTION("negatives reflect the positional order") {
    REQUIRE(compare_parts(part(-1, {{3, 1}}), part(-1, {{5, 1}})) ==
            std::strong_ordering::greater);
    REQUIRE(compare_parts(part(-1, {{3, 1}}), part(-1, {{3, 1}, {0, 1}})) ==
            std::strong_ordering::greater);
  }

  SECTION("sign classes are ordered through zero") {
    REQUIRE(compare_parts(part(-1, {{9, 1}}), std::nullopt) ==
            std::strong_ordering::less);
    REQUIRE(compare_parts(std::nullopt, part(+1, {{-9, 1}})) ==
            std::strong_ordering::less);
    REQUIRE(compare_parts(std::nullopt, std::nullopt) ==
            std::strong_ordering::equal);
    REQUIRE(compare_parts(part(-1, {{0, 1}}), part(+1, {{0, 1}})) ==
            std::strong_ordering::less);
  }
}

TEST_CASE("state text round-trips", "[core]") {
  SECTION("fixed examples") {
    NumberState st = from_systems({{SystemKind::real_plus, 3, 2},
                                   {SystemKind::imag_minus, -1, 1}});
    REQUIRE(to_text(st) == "i-@-1 r+@3^2");
    REQUIRE(state_from_text(to_text(st)) == st);

    REQUIRE(to_text(NumberState{}) == "vac");
    REQUIRE(state_from_text("vac").is_vacuum());

    NumberState f(Statistics::fermion);
    f.add_systems(SystemKind::real_minus, 0, 1);
    f.set_phase(-1);
    REQUIRE(to_text(f) == "fermion: r-@0 phase=-1");
    REQUIRE(state_from_text(to_text(f)) == f);
  }

  SECTION("random states round-trip") {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
      testgen::StateParams p;
      p.statistics = (i % 2 == 0) ? Statistics::boson : Statistics::fermion;
      NumberState st = testgen::random_state(rng, p);
      REQUIRE(state_from_text(to_text(st)) == st);
    }
  }

  SECTION("bad text is rejected") {
    REQUIRE_THROWS_AS(state_from_text("r+@"), parse_error);
    REQUIRE_THROWS_AS(state_from_text("x+@3"), parse_error);
    REQUIRE_THROWS_AS(state_from_text("r+@3^0"), parse_error);
    REQUIRE_THROWS_AS(state_from_text("r+@3 junk"), parse_error);
  }
}
