#include <unistd.h>

#include <algorithm>
#include <iostream>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bench.hpp"
#include "fockrat/expr.hpp"
#include "fockrat/superposition.hpp"
#include "fockrat/valuation.hpp"

namespace {

using namespace fockrat;

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;

int process_line(const std::string& line, const SessionConfig& cfg,
                 bool json) {
  ExprPtr expr = parse_expr(line, cfg);
  RunOutput out = run(*expr, cfg);
  std::cout << (json ? format_json(out) + "\n" : format_text(out));
  return 0;
}

// Reports the error and yields the exit code for it.
int report(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return dynamic_cast<const parse_error*>(&e) ? kExitParse : kExitDomain;
}

int eval_stream(std::istream& in, const SessionConfig& cfg, bool json,
                bool interactive) {
  int worst = 0;
  std::string line;
  while (true) {
    if (interactive) std::cout << "> " << std::flush;
    if (!std::getline(in, line)) break;
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    try {
      process_line(line, cfg, json);
    } catch (const std::exception& e) {
      worst = std::max(worst, report(e));
    }
  }
  return worst;
}

// One superposition term per ';': an amplitude token ("re" or "re,im"),
// whitespace, then an expression for the state.
Superposition parse_superposition(const std::string& text,
                                  const SessionConfig& cfg) {
  std::vector<std::pair<std::complex<double>, NumberState>> terms;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ';')) {
    std::size_t at = piece.find_first_not_of(" \t");
    if (at == std::string::npos)
      throw std::invalid_argument("empty superposition term");
    std::size_t amp_end = piece.find_first_of(" \t", at);
    if (amp_end == std::string::npos)
      throw std::invalid_argument("superposition term needs an amplitude and a state");
    std::string amp_text = piece.substr(at, amp_end - at);
    double re = 0, im = 0;
    std::size_t comma = amp_text.find(',');
    try {
      std::size_t used = 0;
      re = std::stod(amp_text.substr(0, comma), &used);
      if (used != (comma == std::string::npos ? amp_text.size() : comma))
        throw std::invalid_argument("");
      if (comma != std::string::npos) {
        std::string im_text = amp_text.substr(comma + 1);
        im = std::stod(im_text, &used);
        if (used != im_text.size()) throw std::invalid_argument("");
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("bad amplitude '" + amp_text + "'");
    }
    ExprPtr expr = parse_expr(piece.substr(amp_end), cfg);
    RunOutput out = run(*expr, cfg);
    terms.emplace_back(std::complex<double>(re, im), out.result);
  }
  return Superposition::make(terms);
}

int run_mix(const std::string& op, const std::string& psi1_text,
            const std::string& psi2_text, const SessionConfig& cfg) {
  Superposition psi1 = parse_superposition(psi1_text, cfg);
  Superposition psi2 = parse_superposition(psi2_text, cfg);
  std::vector<EntangledTerm> branches = op == "add"
                                            ? add_entangled(psi1, psi2)
                                            : mul_entangled(psi1, psi2);
  Mixture outcome = merge_by_n_equal(trace_out(branches), cfg.radix);
  std::vector<std::pair<double, std::string>> lines;
  lines.reserve(outcome.terms.size());
  for (const auto& [p, st] : outcome.terms)
    lines.emplace_back(p, "state=" + to_text(st) +
                              " eval=" + eval_N(st, cfg.radix).to_value_string());
  std::sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  for (const auto& [p, text] : lines) {
    std::ostringstream os;
    os.precision(12);
    os << "outcome p=" << p << ' ' << text;
    std::cout << os.str() << "\n";
  }
  std::complex<double> mean = expect_N(outcome, cfg.radix);
  std::ostringstream os;
  os.precision(12);
  os << "expect_N = " << mean.real() << " + " << mean.imag() << " i";
  std::cout << os.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic on occupation-number states"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string mode = "boson";
  int radix = 2;
  int ell = 16;
  bool trace = false;
  std::string format = "text";
  app.add_option("--mode", mode, "boson or fermion")
      ->check(CLI::IsMember({"boson", "fermion"}));
  app.add_option("--radix", radix, "digit radix (2..10)")
      ->check(CLI::Range(2, 10));
  app.add_option("--ell", ell, "default accuracy for inv/sqrt/div")
      ->check(CLI::PositiveNumber);
  app.add_flag("--trace", trace, "print rewrite steps of a top-level norm()");
  app.add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* eval_cmd = app.add_subcommand("eval", "evaluate expressions");
  std::string expr_text, batch_file;
  eval_cmd->add_option("-e,--expr", expr_text, "expression to evaluate");
  eval_cmd->add_option("-f,--file", batch_file, "batch file, one expression per line");

  auto* mix_cmd = app.add_subcommand("mix", "combine two superpositions");
  std::string mix_op = "add";
  std::string psi1_text, psi2_text;
  mix_cmd->add_option("--op", mix_op, "add or mul")
      ->check(CLI::IsMember({"add", "mul"}));
  mix_cmd->add_option("psi1", psi1_text, "first superposition")->required();
  mix_cmd->add_option("psi2", psi2_text, "second superposition")->required();

  auto* bench_cmd = app.add_subcommand("bench", "timing and cross-checks");
  std::string suite;
  fockrat::bench::Options bopt;
  bench_cmd->add_option("suite", suite, "normalize, mul, or inv")
      ->required()
      ->check(CLI::IsMember({"normalize", "mul", "inv"}));
  bench_cmd->add_option("--seed", bopt.seed, "workload seed");
  bench_cmd->add_option("--reps", bopt.reps, "workload size");
  bench_cmd->add_option("--sites", bopt.sites, "site window width");
  bench_cmd->add_option("--max-count", bopt.max_count, "occupation cap per slot");
  bench_cmd->add_option("--size-left", bopt.size_left, "occupied slots, left factor");
  bench_cmd->add_option("--size-right", bopt.size_right, "occupied slots, right factor");

  CLI11_PARSE(app, argc, argv);

  SessionConfig cfg;
  cfg.statistics = mode == "fermion" ? Statistics::fermion : Statistics::boson;
  cfg.radix = radix;
  cfg.default_ell = ell;
  cfg.trace = trace;
  bool json = format == "json";

  try {
    if (eval_cmd->parsed()) {
      if (!expr_text.empty()) return process_line(expr_text, cfg, json);
      if (!batch_file.empty()) {
        std::ifstream in(batch_file);
        if (!in) {
          std::cerr << "error: cannot open " << batch_file << "\n";
          return kExitDomain;
        }
        return eval_stream(in, cfg, json, false);
      }
      return eval_stream(std::cin, cfg, json, isatty(fileno(stdin)));
    }
    if (mix_cmd->parsed()) return run_mix(mix_op, psi1_text, psi2_text, cfg);
    if (bench_cmd->parsed()) {
      bopt.radix = cfg.radix;
      bopt.ell = cfg.default_ell;
      int failures = suite == "normalize" ? fockrat::bench::run_normalize(bopt)
                     : suite == "mul"     ? fockrat::bench::run_mul(bopt)
                                          : fockrat::bench::run_inv(bopt);
      return failures == 0 ? 0 : kExitDomain;
    }
  } catch (const std::exception& e) {
    return report(e);
  }
  return 0;
}
