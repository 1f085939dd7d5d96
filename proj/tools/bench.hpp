#pragma once

#include <cstdint>

namespace fockrat::bench {

struct Options {
  std::uint64_t seed = 7;
  int radix = 2;
  int reps = 200;
  int sites = 16;       // occupied-window width for normalize workloads
  std::int64_t max_count = 20;
  int size_left = 8;    // occupied slots per factor for mul workloads
  int size_right = 8;
  int ell = 16;
};

// Each suite prints its report and returns the number of cross-check
// failures (0 on success).
int run_normalize(const Options& opt);
int run_mul(const Options& opt);
int run_inv(const Options& opt);

}  // namespace fockrat::bench
