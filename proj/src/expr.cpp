#include "fockrat/expr.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include <json.hpp>

#include "fockrat/arithmetic.hpp"

namespace fockrat {

namespace {

struct Parser {
  std::string_view s;
  const SessionConfig& cfg;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() const { return pos < s.size() ? s[pos] : '\0'; }
  char peek_at(std::size_t ahead) const {
    return pos + ahead < s.size() ? s[pos + ahead] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, pos);
  }
  bool match(char c) {
    skip_ws();
    if (peek() != c) return false;
    ++pos;
    return true;
  }
  void expect(char c, const char* what) {
    skip_ws();
    if (peek() != c) fail(std::string("expected ") + what);
    ++pos;
  }

  int parse_int() {
    skip_ws();
    std::size_t start = pos;
    if (peek() == '-') ++pos;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    int value = 0;
    auto [p, ec] = std::from_chars(s.data() + start, s.data() + pos, value);
    if (ec != std::errc() || p != s.data() + pos || start == pos) {
      pos = start;
      fail("expected an integer");
    }
    return value;
  }

  std::string parse_ident() {
    skip_ws();
    std::size_t start = pos;
    while (std::isalpha(static_cast<unsigned char>(peek()))) ++pos;
    return std::string(s.substr(start, pos - start));
  }

  ExprPtr parse_expression() {
    ExprPtr left = parse_term();
    while (true) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos;
      auto node = std::make_shared<Expr>();
      node->kind = c == '+' ? Expr::Kind::add : Expr::Kind::sub;
      node->args = {left, parse_term()};
      left = node;
    }
    return left;
  }

  ExprPtr parse_term() {
    ExprPtr left = parse_factor();
    while (true) {
      skip_ws();
      char c = peek();
      if (c != '*' && c != '/') break;
      ++pos;
      auto node = std::make_shared<Expr>();
      node->kind = c == '*' ? Expr::Kind::mul : Expr::Kind::div;
      node->args = {left, parse_factor()};
      left = node;
    }
    return left;
  }

  ExprPtr parse_factor() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos;
      ExprPtr inner = parse_expression();
      expect(')', "')'");
      return inner;
    }
    if (c == '{') return parse_stateset();
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c)) ||
        (c == 'i' && std::isdigit(static_cast<unsigned char>(peek_at(1)))))
      return parse_literal();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_call();
    fail("expected an expression");
  }

  ExprPtr parse_literal() {
    std::size_t start = pos;
    int sign = +1;
    if (peek() == '-') {
      sign = -1;
      ++pos;
    }
    Family family = Family::real;
    if (peek() == 'i' && std::isdigit(static_cast<unsigned char>(peek_at(1)))) {
      family = Family::imaginary;
      ++pos;
    }
    auto node = std::make_shared<Expr>();
    node->kind = Expr::Kind::state;
    NumberState st;
    SystemKind kind = make_kind(family, sign);
    auto place = [&](char d, int site) {
      int v = d - '0';
      if (v >= cfg.radix) fail("digit out of range for radix");
      if (v > 0) st.add_systems(kind, site, v);
    };
    std::size_t digit_start = pos;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    if (pos == digit_start) fail("expected a digit");
    std::size_t int_len = pos - digit_start;
    for (std::size_t i = 0; i < int_len; ++i) {
      pos = digit_start + i;
      place(s[digit_start + i], static_cast<int>(int_len - 1 - i));
    }
    pos = digit_start + int_len;
    if (peek() == '.') {
      ++pos;
      std::size_t frac_start = pos;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
      if (pos == frac_start) fail("expected a digit after the radix point");
      std::size_t frac_len = pos - frac_start;
      for (std::size_t i = 0; i < frac_len; ++i) {
        pos = frac_start + i;
        place(s[frac_start + i], -static_cast<int>(i) - 1);
      }
      pos = frac_start + frac_len;
    }
    node->state = st.with_statistics(cfg.statistics);
    node->text = std::string(s.substr(start, pos - start));
    return node;
  }

  ExprPtr parse_stateset() {
    std::size_t start = pos;
    expect('{', "'{'");
    NumberState st(cfg.statistics);
    do {
      skip_ws();
      Family family;
      if (peek() == 'r') family = Family::real;
      else if (peek() == 'i') family = Family::imaginary;
      else fail("expected a system token");
      ++pos;
      int sign;
      if (peek() == '+') sign = +1;
      else if (peek() == '-') sign = -1;
      else fail("expected '+' or '-' in system token");
      ++pos;
      if (peek() != '@') fail("expected '@' in system token");
      ++pos;
      int site = parse_site_int();
      std::int64_t mult = 1;
      if (peek() == '^') {
        ++pos;
        mult = parse_site_int();
        if (mult < 1) fail("multiplicity must be positive");
      }
      st.add_systems(make_kind(family, sign), site, mult);
    } while (match(','));
    expect('}', "'}'");
    auto node = std::make_shared<Expr>();
    node->kind = Expr::Kind::state;
    node->state = std::move(st);
    node->text = std::string(s.substr(start, pos - start));
    return node;
  }

  // Integer with no interior whitespace (sites and counts inside tokens).
  int parse_site_int() {
    std::size_t start = pos;
    if (peek() == '-') ++pos;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    int value = 0;
    auto [p, ec] = std::from_chars(s.data() + start, s.data() + pos, value);
    if (ec != std::errc() || p != s.data() + pos || start == pos) {
      pos = start;
      fail("expected an integer");
    }
    return value;
  }

  ExprPtr parse_call() {
    std::size_t name_at = pos;
    std::string name = parse_ident();
    if (name == "vac") {
      auto node = std::make_shared<Expr>();
      node->kind = Expr::Kind::state;
      node->state = NumberState(cfg.statistics);
      node->text = "vac";
      return node;
    }
    auto node = std::make_shared<Expr>();
    if (name == "norm") node->kind = Expr::Kind::norm;
    else if (name == "eval") node->kind = Expr::Kind::eval;
    else if (name == "inv") node->kind = Expr::Kind::inv;
    else if (name == "sqrt") node->kind = Expr::Kind::sqrt;
    else if (name == "cmp") node->kind = Expr::Kind::cmp;
    else if (name == "W") node->kind = Expr::Kind::w;
    else if (name == "Q") node->kind = Expr::Kind::q;
    else if (name == "T") node->kind = Expr::Kind::t;
    else {
      pos = name_at;
      fail("unknown function '" + name + "'");
    }
    expect('(', "'('");
    node->args.push_back(parse_expression());
    if (node->kind == Expr::Kind::cmp) {
      expect(',', "','");
      node->args.push_back(parse_expression());
    } else if (node->kind == Expr::Kind::inv || node->kind == Expr::Kind::sqrt) {
      if (match(',')) {
        if (parse_ident() != "ell") fail("expected 'ell='");
        expect('=', "'='");
        node->ell = parse_int();
      }
    } else if (node->kind == Expr::Kind::t) {
      if (match(',')) {
        if (parse_ident() != "n") fail("expected 'n='");
        expect('=', "'='");
        node->shift = parse_int();
      }
    }
    expect(')', "')'");
    return node;
  }
};

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
      return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div:
      return 2;
    default:
      return 3;
  }
}

void render_into(const Expr& e, std::ostringstream& os) {
  auto child = [&](const Expr& c, bool right) {
    bool parens = precedence(c.kind) < precedence(e.kind) ||
                  (right && precedence(c.kind) == precedence(e.kind));
    if (parens) os << '(';
    render_into(c, os);
    if (parens) os << ')';
  };
  switch (e.kind) {
    case Expr::Kind::state:
      os << e.text;
      return;
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul:
    case Expr::Kind::div: {
      const char* op = e.kind == Expr::Kind::add   ? " + "
                       : e.kind == Expr::Kind::sub ? " - "
                       : e.kind == Expr::Kind::mul ? " * "
                                                   : " / ";
      child(*e.args[0], false);
      os << op;
      child(*e.args[1], true);
      return;
    }
    case Expr::Kind::norm:
    case Expr::Kind::eval:
    case Expr::Kind::w:
    case Expr::Kind::q: {
      const char* name = e.kind == Expr::Kind::norm   ? "norm"
                         : e.kind == Expr::Kind::eval ? "eval"
                         : e.kind == Expr::Kind::w    ? "W"
                                                      : "Q";
      os << name << '(';
      render_into(*e.args[0], os);
      os << ')';
      return;
    }
    case Expr::Kind::inv:
    case Expr::Kind::sqrt:
      os << (e.kind == Expr::Kind::inv ? "inv(" : "sqrt(");
      render_into(*e.args[0], os);
      if (e.ell) os << ", ell=" << *e.ell;
      os << ')';
      return;
    case Expr::Kind::t:
      os << "T(";
      render_into(*e.args[0], os);
      if (e.shift != 1) os << ", n=" << e.shift;
      os << ')';
      return;
    case Expr::Kind::cmp:
      os << "cmp(";
      render_into(*e.args[0], os);
      os << ", ";
      render_into(*e.args[1], os);
      os << ')';
      return;
  }
}

NumberState evaluate(const Expr& e, const SessionConfig& cfg,
                     std::vector<RewriteStep>* root_trace) {
  auto require_binary_radix = [&](const char* what) {
    if (cfg.radix != 2)
      throw std::domain_error(std::string(what) + " requires radix 2");
  };
  switch (e.kind) {
    case Expr::Kind::state:
      return e.state;
    case Expr::Kind::add:
      return add(evaluate(*e.args[0], cfg, nullptr),
                 evaluate(*e.args[1], cfg, nullptr));
    case Expr::Kind::sub:
      return sub(evaluate(*e.args[0], cfg, nullptr),
                 evaluate(*e.args[1], cfg, nullptr));
    case Expr::Kind::mul:
      return mul(evaluate(*e.args[0], cfg, nullptr),
                 evaluate(*e.args[1], cfg, nullptr));
    case Expr::Kind::div:
      require_binary_radix("division");
      return div_ell(evaluate(*e.args[0], cfg, nullptr),
                     evaluate(*e.args[1], cfg, nullptr),
                     e.ell.value_or(cfg.default_ell));
    case Expr::Kind::inv: {
      require_binary_radix("inversion");
      NumberState operand = evaluate(*e.args[0], cfg, nullptr);
      NormalizeResult n = normalize(operand, cfg.radix);
      int ell = e.ell.value_or(cfg.default_ell);
      if (!n.form.imag_part && n.form.real_part && n.form.real_part->sign > 0)
        return invert_pos_real(n.form, ell)
            .to_state()
            .with_statistics(operand.statistics());
      return invert_complex(n.form, ell);
    }
    case Expr::Kind::sqrt: {
      require_binary_radix("square root");
      NumberState operand = evaluate(*e.args[0], cfg, nullptr);
      return sqrt_ell(normalize(operand, cfg.radix).form,
                      e.ell.value_or(cfg.default_ell))
          .to_state()
          .with_statistics(operand.statistics());
    }
    case Expr::Kind::norm: {
      NormalizeResult n =
          normalize(evaluate(*e.args[0], cfg, nullptr), cfg.radix, root_trace);
      return n.form.to_state();
    }
    case Expr::Kind::eval:
      return evaluate(*e.args[0], cfg, nullptr);
    case Expr::Kind::w:
      return flip_signs(evaluate(*e.args[0], cfg, nullptr));
    case Expr::Kind::q:
      return swap_family(evaluate(*e.args[0], cfg, nullptr));
    case Expr::Kind::t:
      return translate(evaluate(*e.args[0], cfg, nullptr), e.shift);
    case Expr::Kind::cmp:
      throw std::invalid_argument("cmp is only valid at the top level");
  }
  throw std::invalid_argument("unknown expression node");
}

std::string ordering_text(std::strong_ordering o) {
  if (o == std::strong_ordering::less) return "less";
  if (o == std::strong_ordering::greater) return "greater";
  return "equal";
}

// Standard-form content as plain system tokens (sign/phase metadata printed
// separately).
std::string form_tokens(const StandardForm& form) {
  if (form.is_zero()) return "vac";
  NumberState st = form.to_state().with_statistics(Statistics::boson);
  return to_text(st);
}

}  // namespace

ExprPtr parse_expr(std::string_view text, const SessionConfig& config) {
  if (config.radix < 2 || config.radix > 10)
    throw std::invalid_argument("radix must be in [2,10]");
  Parser p{text, config};
  ExprPtr root = p.parse_expression();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("unexpected trailing characters");
  return root;
}

std::string render(const Expr& expr) {
  std::ostringstream os;
  render_into(expr, os);
  return os.str();
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  if (a.kind == Expr::Kind::state && !(a.state == b.state)) return false;
  if (a.ell != b.ell || a.shift != b.shift) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!expr_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

RunOutput run(const Expr& expr, const SessionConfig& config) {
  RunOutput out;
  if (expr.kind == Expr::Kind::cmp) {
    NumberState a = evaluate(*expr.args[0], config, nullptr);
    NumberState b = evaluate(*expr.args[1], config, nullptr);
    out.is_comparison = true;
    out.cmp_real = cmp_component(a, b, Family::real, config.radix);
    out.cmp_imag = cmp_component(a, b, Family::imaginary, config.radix);
    return out;
  }
  std::vector<RewriteStep>* sink =
      (config.trace && expr.kind == Expr::Kind::norm) ? &out.trace : nullptr;
  out.result = evaluate(expr, config, sink);
  NormalizeResult n = normalize(out.result, config.radix);
  out.standard = n.form;
  out.phase = n.phase;
  out.value = eval_N(out.result, config.radix);
  return out;
}

std::string format_text(const RunOutput& out) {
  std::ostringstream os;
  if (out.is_comparison) {
    os << "cmp: real=" << ordering_text(out.cmp_real)
       << " imag=" << ordering_text(out.cmp_imag) << '\n';
    return os.str();
  }
  for (const auto& step : out.trace) os << to_line(step) << '\n';
  os << "standard: " << form_tokens(out.standard) << '\n';
  os << "eval: " << out.value.to_value_string() << '\n';
  os << "binary: " << out.value.to_digit_string() << '\n';
  os << "phase: " << (out.phase > 0 ? "+1" : "-1") << '\n';
  return os.str();
}

std::string format_json(const RunOutput& out) {
  nlohmann::json j;
  if (out.is_comparison) {
    j["cmp"] = {{"real", ordering_text(out.cmp_real)},
                {"imag", ordering_text(out.cmp_imag)}};
    return j.dump();
  }
  auto [re_num, re_den] = fraction_strings(out.value.re);
  auto [im_num, im_den] = fraction_strings(out.value.im);
  j["standard"] = form_tokens(out.standard);
  j["eval_num"] = {{"re", re_num}, {"im", im_num}};
  j["eval_den"] = {{"re", re_den}, {"im", im_den}};
  j["binary"] = out.value.to_digit_string();
  j["phase"] = out.phase;
  if (!out.trace.empty()) {
    nlohmann::json lines = nlohmann::json::array();
    for (const auto& step : out.trace) lines.push_back(to_line(step));
    j["trace"] = lines;
  }
  return j.dump();
}

}  // namespace fockrat
