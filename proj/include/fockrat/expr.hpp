#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fockrat/reduction.hpp"
#include "fockrat/valuation.hpp"

namespace fockrat {

struct SessionConfig {
  Statistics statistics = Statistics::boson;
  int radix = 2;
  int default_ell = 16;
  bool trace = false;
};

// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := literal | stateset | '(' expr ')' | call | 'vac'
//   call    := ('norm' | 'eval' | 'W' | 'Q') '(' expr ')'
//            | ('inv' | 'sqrt') '(' expr [',' 'ell' '=' int] ')'
//            | 'T' '(' expr [',' 'n' '=' int] ')'
//            | 'cmp' '(' expr ',' expr ')'
//   literal := ['-'] ['i'] digits ['.' digits]
//   stateset:= '{' systok (',' systok)* '}'
//   systok  := ('r' | 'i') ('+' | '-') '@' int ['^' count]
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { state, add, sub, mul, div, inv, sqrt, norm, eval, cmp, w, q, t };
  Kind kind = Kind::state;
  NumberState state;      // Kind::state
  std::string text;       // source text of a state node
  std::vector<ExprPtr> args;
  std::optional<int> ell;  // explicit accuracy on inv/sqrt
  int shift = 1;           // T
};

// Throws parse_error with the offset of the offending character; literal
// digits at or above the radix are rejected here too.
ExprPtr parse_expr(std::string_view text, const SessionConfig& config);

// Canonical text that reparses to an equal tree.
std::string render(const Expr& expr);
bool expr_equal(const Expr& a, const Expr& b);

struct RunOutput {
  bool is_comparison = false;
  NumberState result;
  StandardForm standard;
  int phase = +1;
  ExactComplex value;
  std::vector<RewriteStep> trace;  // root norm(...) with tracing enabled
  std::strong_ordering cmp_real = std::strong_ordering::equal;
  std::strong_ordering cmp_imag = std::strong_ordering::equal;
};

// Evaluates the tree under the session settings. Domain failures (division by
// zero, sqrt of a negative, inverse accuracy misuse) surface as
// std::domain_error / std::invalid_argument.
RunOutput run(const Expr& expr, const SessionConfig& config);

std::string format_text(const RunOutput& out);
std::string format_json(const RunOutput& out);

}  // namespace fockrat
