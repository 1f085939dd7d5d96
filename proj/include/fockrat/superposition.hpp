#pragma once

#include <complex>
#include <vector>

#include "fockrat/core_state.hpp"

namespace fockrat {

// Weighted combinations of number states. Construction merges structurally
// equal member states and enforces unit total weight to within 1e-12
// (amplitudes by squared magnitude, probabilities directly).

struct Superposition {
  std::vector<std::pair<std::complex<double>, NumberState>> terms;

  static Superposition make(
      std::vector<std::pair<std::complex<double>, NumberState>> raw);
  // Rescales to unit norm first; total weight must be positive.
  static Superposition make_normalized(
      std::vector<std::pair<std::complex<double>, NumberState>> raw);
};

struct Mixture {
  std::vector<std::pair<double, NumberState>> terms;

  static Mixture make(std::vector<std::pair<double, NumberState>> raw);
};

// Value transforms lifted termwise.
Superposition apply_W(const Superposition& s);
Superposition apply_Q(const Superposition& s);
Superposition apply_T(const Superposition& s, int offset);

// One branch of a pairing of two superpositions: the inputs that produced the
// branch and the resulting state, with the product amplitude.
struct EntangledTerm {
  std::complex<double> amplitude;
  NumberState in1;
  NumberState in2;
  NumberState out;
};

// Pair every term of a with every term of b through add/mul. The branches
// stay correlated with their inputs; discarding the inputs (trace_out) leaves
// a mixture over outcomes, not a superposition.
std::vector<EntangledTerm> add_entangled(const Superposition& a,
                                         const Superposition& b);
std::vector<EntangledTerm> mul_entangled(const Superposition& a,
                                         const Superposition& b);
Mixture trace_out(const std::vector<EntangledTerm>& branches);

// Mean value, weighting each member state's exact value by its probability.
std::complex<double> expect_N(const Superposition& s, int radix);
std::complex<double> expect_N(const Mixture& m, int radix);

Mixture to_mixture(const Superposition& s);
// Outcome distributions of adding/multiplying independent draws.
Mixture mixture_add(const Mixture& a, const Mixture& b);
Mixture mixture_mul(const Mixture& a, const Mixture& b);
// Collapses outcomes with equal standard forms onto the canonical state.
Mixture merge_by_n_equal(const Mixture& m, int radix);

}  // namespace fockrat
