#include "fockrat/reduction.hpp"

#include <algorithm>
#include <sstream>

namespace fockrat {

std::string to_line(const RewriteStep& step) {
  std::ostringstream os;
  switch (step.kind) {
    case RewriteKind::cancel:
      os << "cancel j=" << step.site << " fam=" << family_token(step.family);
      break;
    case RewriteKind::carry:
      os << "carry j=" << step.site << " kind="
         << kind_token(make_kind(step.family, step.sign));
      break;
    case RewriteKind::borrow:
      os << "borrow " << step.site_high << ".." << step.site << " fam="
         << family_token(step.family) << " sign=" << (step.sign > 0 ? '+' : '-');
      break;
  }
  if (step.phase_flip == -1) os << " phase=-1";
  return os.str();
}

namespace {

struct Work {
  NumberState st;
  int phase;
  std::vector<RewriteStep>* trace;
  bool fermion;

  explicit Work(const NumberState& s, std::vector<RewriteStep>* t = nullptr)
      : st(s), phase(s.phase()), trace(t),
        fermion(s.statistics() == Statistics::fermion) {}

  void record(RewriteStep step, int flip) {
    phase *= flip;
    if (trace) {
      step.phase_flip = flip;
      trace->push_back(step);
    }
  }

  NumberState finish() {
    if (fermion) st.set_phase(phase);
    return std::move(st);
  }
};

RewriteStep do_cancel(Work& w, int j, Family f) {
  std::int64_t n = w.st.count(make_kind(f, +1), j);
  std::int64_t m = w.st.count(make_kind(f, -1), j);
  if (n < 1 || m < 1)
    throw std::invalid_argument("cancel needs a +/- pair of the family at the site");
  // The minus operator leaves first, crossing the n plus operators of its own
  // family at this site; the plus operator then leaves from its block edge.
  int flip = (w.fermion && n % 2 != 0) ? -1 : +1;
  w.st.remove_systems(make_kind(f, -1), j, 1);
  w.st.remove_systems(make_kind(f, +1), j, 1);
  RewriteStep step{RewriteKind::cancel, f, j, 0, 0, flip};
  w.record(step, flip);
  return step;
}

// prefix = count of family systems strictly below site j (ignored for bosons).
RewriteStep do_carry(Work& w, int j, SystemKind kind, int radix,
                     std::int64_t prefix) {
  Family f = family_of(kind);
  int sign = sign_of(kind);
  if (w.st.count(kind, j) < radix)
    throw std::invalid_argument("carry needs radix systems of the kind at the site");
  int flip = +1;
  if (w.fermion) {
    std::int64_t n = w.st.count(make_kind(f, +1), j);
    std::int64_t m = w.st.count(make_kind(f, -1), j);
    // radix removals from the block edge, then one insertion at j+1 computed
    // on the state after the removals.
    std::int64_t edge = sign > 0 ? prefix : prefix + n;
    std::int64_t insert_at;
    if (sign > 0) {
      insert_at = prefix + (n - radix) + m;
    } else {
      insert_at = prefix + n + (m - radix) + w.st.count(make_kind(f, +1), j + 1);
    }
    flip = (radix * edge + insert_at) % 2 != 0 ? -1 : +1;
  }
  w.st.remove_systems(kind, j, radix);
  w.st.add_systems(kind, j + 1, 1);
  RewriteStep step{RewriteKind::carry, f, j, 0, sign, flip};
  w.record(step, flip);
  return step;
}

RewriteStep do_borrow(Work& w, int j_high, int j_low, Family f,
                      int dominant_sign, int radix) {
  if (j_low >= j_high)
    throw std::invalid_argument("borrow needs j_low < j_high");
  if (w.st.count(make_kind(f, dominant_sign), j_high) < 1)
    throw std::invalid_argument("borrow needs a dominant system at the high site");
  if (w.st.count(make_kind(f, -dominant_sign), j_low) < 1)
    throw std::invalid_argument("borrow needs an opposite system at the low site");
  for (const auto& [j, occ] : w.st.sites()) {
    if (j <= j_low) continue;
    if (j >= j_high) break;
    if (occ.family_total(f) != 0)
      throw std::invalid_argument("borrow needs an empty family gap between the sites");
  }

  std::int64_t parity = 0;
  auto edge_position = [&](SystemKind kind, int j) {
    std::int64_t pos = family_count_below(w.st, f, j);
    if (sign_of(kind) < 0) pos += w.st.count(make_kind(f, +1), j);
    return pos;
  };
  auto remove_one = [&](SystemKind kind, int j) {
    if (w.fermion) parity += edge_position(kind, j);
    w.st.remove_systems(kind, j, 1);
  };
  auto insert_one = [&](SystemKind kind, int j) {
    if (w.fermion) parity += edge_position(kind, j);
    w.st.add_systems(kind, j, 1);
  };

  remove_one(make_kind(f, -dominant_sign), j_low);
  remove_one(make_kind(f, dominant_sign), j_high);
  for (int j = j_low; j < j_high; ++j)
    for (int c = 0; c < radix - 1; ++c) insert_one(make_kind(f, dominant_sign), j);

  int flip = (w.fermion && parity % 2 != 0) ? -1 : +1;
  RewriteStep step{RewriteKind::borrow, f, j_low, j_high, dominant_sign, flip};
  w.record(step, flip);
  return step;
}

void check_radix(int radix) {
  if (radix < 2) throw std::invalid_argument("radix must be at least 2");
}

}  // namespace

NumberState cancel_at(const NumberState& state, int j, Family family,
                      RewriteStep* step) {
  Work w(state);
  RewriteStep s = do_cancel(w, j, family);
  if (step) *step = s;
  return w.finish();
}

NumberState carry_at(const NumberState& state, int j, SystemKind kind,
                     int radix, RewriteStep* step) {
  check_radix(radix);
  Work w(state);
  RewriteStep s =
      do_carry(w, j, kind, radix, family_count_below(state, family_of(kind), j));
  if (step) *step = s;
  return w.finish();
}

NumberState borrow_run(const NumberState& state, int j_high, int j_low,
                       Family family, int dominant_sign, int radix,
                       RewriteStep* step) {
  check_radix(radix);
  if (dominant_sign != 1 && dominant_sign != -1)
    throw std::invalid_argument("dominant sign must be +1 or -1");
  Work w(state);
  RewriteStep s = do_borrow(w, j_high, j_low, family, dominant_sign, radix);
  if (step) *step = s;
  return w.finish();
}

std::vector<RewriteStep> applicable_steps(const NumberState& state, int radix) {
  check_radix(radix);
  std::vector<RewriteStep> steps;
  for (const auto& [j, occ] : state.sites()) {
    for (Family f : {Family::real, Family::imaginary})
      if (occ.plus_count(f) > 0 && occ.minus_count(f) > 0)
        steps.push_back({RewriteKind::cancel, f, j, 0, 0, +1});
    for (SystemKind k : all_kinds)
      if (occ.count(k) >= radix)
        steps.push_back({RewriteKind::carry, family_of(k), j, 0, sign_of(k), +1});
  }
  for (Family f : {Family::real, Family::imaginary}) {
    int prev_site = 0;
    bool prev_plus = false, prev_minus = false, have_prev = false;
    for (const auto& [j, occ] : state.sites()) {
      bool plus = occ.plus_count(f) > 0, minus = occ.minus_count(f) > 0;
      if (!plus && !minus) continue;
      if (have_prev) {
        if (plus && prev_minus)
          steps.push_back({RewriteKind::borrow, f, prev_site, j, +1, +1});
        if (minus && prev_plus)
          steps.push_back({RewriteKind::borrow, f, prev_site, j, -1, +1});
      }
      prev_site = j;
      prev_plus = plus;
      prev_minus = minus;
      have_prev = true;
    }
  }
  return steps;
}

NumberState apply_step(const NumberState& state, const RewriteStep& step,
                       int radix) {
  switch (step.kind) {
    case RewriteKind::cancel:
      return cancel_at(state, step.site, step.family);
    case RewriteKind::carry:
      return carry_at(state, step.site, make_kind(step.family, step.sign), radix);
    case RewriteKind::borrow:
      return borrow_run(state, step.site_high, step.site, step.family,
                        step.sign, radix);
  }
  throw std::invalid_argument("unknown rewrite step");
}

NormalizeResult normalize(const NumberState& state, int radix,
                          std::vector<RewriteStep>* trace) {
  check_radix(radix);
  Work w(state, trace);

  // Ascending sweep: cancel mixed pairs at each site, then carry kinds with
  // full digits upward. Carries feed sites the sweep has not reached yet, so
  // one pass leaves every site pure per family with counts below the radix.
  std::int64_t prefix[2] = {0, 0};
  const auto& sites = w.st.sites();
  auto next_site = [&](bool first, int after) -> std::optional<int> {
    auto it = first ? sites.begin() : sites.upper_bound(after);
    if (it == sites.end()) return std::nullopt;
    return it->first;
  };
  std::optional<int> cur = next_site(true, 0);
  while (cur) {
    int j = *cur;
    for (Family f : {Family::real, Family::imaginary}) {
      std::int64_t pairs = std::min(w.st.count(make_kind(f, +1), j),
                                    w.st.count(make_kind(f, -1), j));
      for (std::int64_t i = 0; i < pairs; ++i) do_cancel(w, j, f);
    }
    for (SystemKind k : all_kinds) {
      int fi = family_of(k) == Family::real ? 0 : 1;
      while (w.st.count(k, j) >= radix) do_carry(w, j, k, radix, prefix[fi]);
    }
    if (auto it = sites.find(j); it != sites.end()) {
      prefix[0] += it->second.family_total(Family::real);
      prefix[1] += it->second.family_total(Family::imaginary);
    }
    cur = next_site(false, j);
  }

  // Sign unification per family: the top site's sign wins. Repeatedly borrow
  // across the gap above the topmost minority site, then cancel the leftovers
  // there. Digits stay below the radix throughout, so no carries reappear.
  for (Family f : {Family::real, Family::imaginary}) {
    while (true) {
      int sigma = 0;
      std::optional<int> j_low, j_high;
      for (auto it = sites.rbegin(); it != sites.rend(); ++it) {
        std::int64_t p = it->second.plus_count(f), m = it->second.minus_count(f);
        if (p == 0 && m == 0) continue;
        int s = p > 0 ? +1 : -1;  // sites are pure per family after the sweep
        if (sigma == 0) {
          sigma = s;
        } else if (s != sigma) {
          j_low = it->first;
          break;
        }
        if (!j_low) j_high = it->first;
      }
      if (!j_low) break;
      do_borrow(w, *j_high, *j_low, f, sigma, radix);
      while (w.st.count(make_kind(f, +1), *j_low) > 0 &&
             w.st.count(make_kind(f, -1), *j_low) > 0)
        do_cancel(w, *j_low, f);
    }
  }

  int phase = w.phase;
  StandardForm form = to_standard_form(w.finish(), radix);
  return {std::move(form), phase};
}

bool n_equal(const NumberState& a, const NumberState& b, int radix) {
  return normalize(a, radix).form == normalize(b, radix).form;
}

}  // namespace fockrat
