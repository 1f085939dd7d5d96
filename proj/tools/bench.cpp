#include "bench.hpp"

#include <chrono>
#include <cstdio>
#include <vector>

#include "fockrat/arithmetic.hpp"
#include "fockrat/oracle.hpp"
#include "fockrat/reduction.hpp"
#include "fockrat/rng.hpp"
#include "fockrat/valuation.hpp"

namespace fockrat::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

NumberState random_state(Rng& rng, int sites, std::int64_t max_count,
                         int slots) {
  NumberState st;
  int half = sites / 2;
  for (int i = 0; i < slots; ++i) {
    SystemKind kind = all_kinds[rng.below(4)];
    int j = static_cast<int>(rng.range(-half, sites - half - 1));
    st.add_systems(kind, j, rng.range(1, max_count));
  }
  return st;
}

// Exhausts the rewrite rules one enumerated step at a time, rotating through
// whatever is applicable. Used as the slow reference strategy.
NumberState rewrite_to_fixpoint(const NumberState& start, int radix,
                                std::int64_t* steps_out) {
  NumberState st = start;
  std::int64_t steps = 0;
  while (true) {
    std::vector<RewriteStep> options = applicable_steps(st, radix);
    if (options.empty()) break;
    st = apply_step(st, options[steps % options.size()], radix);
    ++steps;
  }
  if (steps_out) *steps_out += steps;
  return st;
}

}  // namespace

int run_normalize(const Options& opt) {
  Rng rng(opt.seed);
  std::vector<NumberState> workload;
  workload.reserve(opt.reps);
  for (int i = 0; i < opt.reps; ++i)
    workload.push_back(random_state(rng, opt.sites, opt.max_count,
                                    std::max(2, opt.sites / 2)));

  std::printf("bench normalize reps=%d sites=%d max_count=%lld radix=%d seed=%llu\n",
              opt.reps, opt.sites, static_cast<long long>(opt.max_count),
              opt.radix, static_cast<unsigned long long>(opt.seed));

  std::int64_t composite_steps = 0;
  std::vector<StandardForm> composite_forms;
  composite_forms.reserve(workload.size());
  auto t0 = Clock::now();
  for (const auto& st : workload) {
    std::vector<RewriteStep> trace;
    composite_forms.push_back(normalize(st, opt.radix, &trace).form);
    composite_steps += static_cast<std::int64_t>(trace.size());
  }
  double composite_time = seconds_since(t0);

  std::int64_t fair_steps = 0;
  int mismatches = 0;
  t0 = Clock::now();
  for (std::size_t i = 0; i < workload.size(); ++i) {
    NumberState done = rewrite_to_fixpoint(workload[i], opt.radix, &fair_steps);
    if (!(to_standard_form(done, opt.radix) == composite_forms[i])) ++mismatches;
  }
  double fair_time = seconds_since(t0);

  std::printf("composite: steps=%lld time=%.3fs rate=%.0f states/s\n",
              static_cast<long long>(composite_steps), composite_time,
              composite_time > 0 ? opt.reps / composite_time : 0.0);
  std::printf("fair: steps=%lld time=%.3fs rate=%.0f states/s\n",
              static_cast<long long>(fair_steps), fair_time,
              fair_time > 0 ? opt.reps / fair_time : 0.0);
  std::printf("cross-check: %d/%d standard forms agree\n", opt.reps - mismatches,
              opt.reps);
  return mismatches;
}

int run_mul(const Options& opt) {
  Rng rng(opt.seed);
  std::printf("bench mul reps=%d size=%dx%d max_count=%lld radix=%d seed=%llu\n",
              opt.reps, opt.size_left, opt.size_right,
              static_cast<long long>(opt.max_count), opt.radix,
              static_cast<unsigned long long>(opt.seed));
  std::vector<std::pair<NumberState, NumberState>> workload;
  workload.reserve(opt.reps);
  for (int i = 0; i < opt.reps; ++i)
    workload.emplace_back(
        random_state(rng, opt.sites, opt.max_count, opt.size_left),
        random_state(rng, opt.sites, opt.max_count, opt.size_right));

  int mismatches = 0;
  auto t0 = Clock::now();
  for (const auto& [x, y] : workload) {
    NumberState p = mul(x, y);
    normalize(p, opt.radix);
    if (!(eval_N(p, opt.radix) ==
          oracle_mul(eval_N(x, opt.radix), eval_N(y, opt.radix))))
      ++mismatches;
  }
  double elapsed = seconds_since(t0);
  std::printf("mul+normalize: time=%.3fs rate=%.0f products/s\n", elapsed,
              elapsed > 0 ? opt.reps / elapsed : 0.0);
  std::printf("cross-check: %d/%d products match the value oracle\n",
              opt.reps - mismatches, opt.reps);
  return mismatches;
}

int run_inv(const Options& opt) {
  Rng rng(opt.seed);
  std::printf("bench inv reps=%d ell=%d seed=%llu\n", opt.reps, opt.ell,
              static_cast<unsigned long long>(opt.seed));
  std::vector<StandardForm> workload;
  workload.reserve(opt.reps);
  for (int i = 0; i < opt.reps; ++i) {
    StandardPart part{+1, {}};
    int exps = static_cast<int>(rng.range(1, 8));
    while (static_cast<int>(part.digits.size()) < exps)
      part.digits[static_cast<int>(rng.range(-10, 10))] = 1;
    StandardForm form;
    form.real_part = part;
    workload.push_back(form);
  }

  int failures = 0;
  auto t0 = Clock::now();
  for (const auto& x : workload) {
    StandardForm t = invert_pos_real(x, opt.ell);
    StandardForm product =
        normalize(mul(x.to_state(), t.to_state()), 2).form;
    // Accuracy: product in [1 - 2^-ell, 1) means the full digit run -1..-ell.
    bool ok = product.real_part &&
              product.real_part->digits.rbegin()->first <= -1;
    for (int e = -1; ok && e >= -opt.ell; --e)
      ok = product.real_part->digits.contains(e);
    if (!ok) ++failures;
  }
  double elapsed = seconds_since(t0);
  std::printf("invert_pos_real: time=%.3fs rate=%.0f inversions/s\n", elapsed,
              elapsed > 0 ? opt.reps / elapsed : 0.0);
  std::printf("accuracy-check: %d/%d products inside [1-2^-ell, 1)\n",
              opt.reps - failures, opt.reps);
  return failures;
}

}  // namespace fockrat::bench
