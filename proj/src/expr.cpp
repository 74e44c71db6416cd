#include "bsym/expr.hpp"

#include "bsym/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <random>
#include <system_error>

namespace bsym {

std::string_view to_string(Parity p) {
  switch (p) {
  case Parity::Even: return "even";
  case Parity::Odd: return "odd";
  case Parity::Neither: return "neither";
  }
  return "?";
}

std::string_view to_string(Func f) {
  switch (f) {
  case Func::Sin: return "sin";
  case Func::Cos: return "cos";
  case Func::Exp: return "exp";
  case Func::Sinh: return "sinh";
  case Func::Cosh: return "cosh";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Construction

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Neg;
  n->lhs = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::binary(Kind op, Expr lhs, Expr rhs) {
  if (op != Kind::Add && op != Kind::Sub && op != Kind::Mul && op != Kind::Div)
    throw std::invalid_argument("Expr::binary: not a binary operator");
  auto n = std::make_shared<Node>();
  n->kind = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
  if (exponent < 0)
    throw std::invalid_argument("Expr::power: negative exponent");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->exponent = exponent;
  n->lhs = std::move(base);
  return Expr(std::move(n));
}

Expr Expr::call(Func f, Expr argument) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->func = f;
  n->lhs = std::move(argument);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const noexcept { return node_->value; }
int Expr::exponent() const noexcept { return node_->exponent; }
Func Expr::func() const noexcept { return node_->func; }
const Expr& Expr::lhs() const noexcept { return *node_->lhs; }
const Expr& Expr::rhs() const noexcept { return *node_->rhs; }

Expr operator-(const Expr& e) { return Expr::negate(e); }
Expr operator+(const Expr& l, const Expr& r) { return Expr::binary(Expr::Kind::Add, l, r); }
Expr operator-(const Expr& l, const Expr& r) { return Expr::binary(Expr::Kind::Sub, l, r); }
Expr operator*(const Expr& l, const Expr& r) { return Expr::binary(Expr::Kind::Mul, l, r); }
Expr operator/(const Expr& l, const Expr& r) { return Expr::binary(Expr::Kind::Div, l, r); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v))
    throw EvalError(std::string("non-finite value in ") + what);
  return v;
}

double apply(Func f, double x) {
  switch (f) {
  case Func::Sin: return std::sin(x);
  case Func::Cos: return std::cos(x);
  case Func::Exp: return checked(std::exp(x), "exp");
  case Func::Sinh: return checked(std::sinh(x), "sinh");
  case Func::Cosh: return checked(std::cosh(x), "cosh");
  }
  return 0.0;
}

} // namespace

double Expr::operator()(double t) const {
  const Node& n = *node_;
  switch (n.kind) {
  case Kind::Const: return n.value;
  case Kind::Var: return t;
  case Kind::Neg: return -(*n.lhs)(t);
  case Kind::Add: return checked((*n.lhs)(t) + (*n.rhs)(t), "sum");
  case Kind::Sub: return checked((*n.lhs)(t) - (*n.rhs)(t), "difference");
  case Kind::Mul: return checked((*n.lhs)(t) * (*n.rhs)(t), "product");
  case Kind::Div: {
    const double num = (*n.lhs)(t);
    const double den = (*n.rhs)(t);
    if (den == 0.0)
      throw EvalError("division by zero at t = " + std::to_string(t));
    return checked(num / den, "quotient");
  }
  case Kind::Pow: return checked(std::pow((*n.lhs)(t), n.exponent), "power");
  case Kind::Call: return apply(n.func, (*n.lhs)(t));
  }
  return 0.0;
}

double eval_expr(const Expr& e, double t) { return e(t); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { End, Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen };

struct Token {
  Tok kind = Tok::End;
  std::size_t offset = 0;
  std::string_view text;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

  void advance() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
      ++pos_;
    current_.offset = pos_;
    if (pos_ >= src_.size()) {
      current_.kind = Tok::End;
      current_.text = {};
      return;
    }
    const std::size_t start = pos_;
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      current_.kind = k;
      current_.text = src_.substr(start, 1);
    };
    switch (c) {
    case '+': return single(Tok::Plus);
    case '-': return single(Tok::Minus);
    case '*': return single(Tok::Star);
    case '/': return single(Tok::Slash);
    case '^': return single(Tok::Caret);
    case '(': return single(Tok::LParen);
    case ')': return single(Tok::RParen);
    default: break;
    }
    if (is_digit(c) || c == '.') {
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t p = pos_ + 1;
        if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
        if (p < src_.size() && is_digit(src_[p])) {
          while (p < src_.size() && is_digit(src_[p])) ++p;
          pos_ = p;
        }
      }
      current_.kind = Tok::Number;
      current_.text = src_.substr(start, pos_ - start);
      return;
    }
    if (is_alpha(c)) {
      while (pos_ < src_.size() && (is_alpha(src_[pos_]) || is_digit(src_[pos_]))) ++pos_;
      current_.kind = Tok::Ident;
      current_.text = src_.substr(start, pos_ - start);
      return;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_;
};

std::optional<Func> lookup_func(std::string_view name) {
  if (name == "sin") return Func::Sin;
  if (name == "cos") return Func::Cos;
  if (name == "exp") return Func::Exp;
  if (name == "sinh") return Func::Sinh;
  if (name == "cosh") return Func::Cosh;
  return std::nullopt;
}

class Parser {
public:
  explicit Parser(std::string_view src) : lex_(src) {}

  Expr parse() {
    if (lex_.peek().kind == Tok::End)
      throw SyntaxError("empty expression", lex_.peek().offset);
    Expr e = expr();
    if (lex_.peek().kind != Tok::End)
      throw SyntaxError("unexpected '" + std::string(lex_.peek().text) + "'", lex_.peek().offset);
    return e;
  }

private:
  Expr expr() {
    Expr lhs = term();
    for (;;) {
      const Tok k = lex_.peek().kind;
      if (k != Tok::Plus && k != Tok::Minus) return lhs;
      lex_.take();
      Expr rhs = term();
      lhs = Expr::binary(k == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub, std::move(lhs), std::move(rhs));
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      const Tok k = lex_.peek().kind;
      if (k != Tok::Star && k != Tok::Slash) return lhs;
      lex_.take();
      Expr rhs = factor();
      lhs = Expr::binary(k == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div, std::move(lhs), std::move(rhs));
    }
  }

  Expr factor() {
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      return Expr::negate(factor());
    }
    Expr base = primary();
    if (lex_.peek().kind != Tok::Caret) return base;
    lex_.take();
    const Token exp = lex_.peek();
    if (exp.kind != Tok::Number)
      throw SyntaxError("exponent must be a non-negative integer constant", exp.offset);
    int k = 0;
    const auto [end, ec] = std::from_chars(exp.text.data(), exp.text.data() + exp.text.size(), k);
    if (ec != std::errc() || end != exp.text.data() + exp.text.size())
      throw SyntaxError("exponent must be a non-negative integer constant", exp.offset);
    lex_.take();
    return Expr::power(std::move(base), k);
  }

  Expr primary() {
    const Token tok = lex_.take();
    switch (tok.kind) {
    case Tok::Number: {
      double v = 0.0;
      const auto [end, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
      if (ec != std::errc() || end != tok.text.data() + tok.text.size() || !std::isfinite(v))
        throw SyntaxError("malformed number '" + std::string(tok.text) + "'", tok.offset);
      return Expr::constant(v);
    }
    case Tok::Ident: {
      if (tok.text == "t") return Expr::variable();
      const auto f = lookup_func(tok.text);
      if (!f)
        throw SyntaxError("unknown identifier '" + std::string(tok.text) + "'", tok.offset);
      expect(Tok::LParen, "'(' after function name");
      Expr arg = expr();
      expect(Tok::RParen, "')'");
      return Expr::call(*f, std::move(arg));
    }
    case Tok::LParen: {
      Expr inner = expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    case Tok::End: throw SyntaxError("unexpected end of input", tok.offset);
    default: throw SyntaxError("unexpected '" + std::string(tok.text) + "'", tok.offset);
    }
  }

  void expect(Tok kind, const char* what) {
    if (lex_.peek().kind != kind)
      throw SyntaxError(std::string("expected ") + what, lex_.peek().offset);
    lex_.take();
  }

  Lexer lex_;
};

} // namespace

Expr parse_expr(std::string_view source) { return Parser(source).parse(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

// Binding strength of the printed form; higher binds tighter.
int level(const Expr& e) {
  switch (e.kind()) {
  case Expr::Kind::Add:
  case Expr::Kind::Sub: return 1;
  case Expr::Kind::Mul:
  case Expr::Kind::Div: return 2;
  case Expr::Kind::Neg: return 3;
  case Expr::Kind::Pow: return 4;
  case Expr::Kind::Const: return e.value() < 0.0 ? 0 : 5;
  case Expr::Kind::Var:
  case Expr::Kind::Call: return 5;
  }
  return 0;
}

std::string format_number(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

void emit(const Expr& e, std::string& out);

void emit_at(const Expr& e, int min_level, std::string& out) {
  if (level(e) < min_level) {
    out += '(';
    emit(e, out);
    out += ')';
  } else {
    emit(e, out);
  }
}

void emit(const Expr& e, std::string& out) {
  switch (e.kind()) {
  case Expr::Kind::Const: out += format_number(e.value()); return;
  case Expr::Kind::Var: out += 't'; return;
  case Expr::Kind::Neg:
    out += "-(";
    emit(e.lhs(), out);
    out += ')';
    return;
  case Expr::Kind::Add:
  case Expr::Kind::Sub:
    emit_at(e.lhs(), 1, out);
    out += e.kind() == Expr::Kind::Add ? " + " : " - ";
    emit_at(e.rhs(), 2, out);
    return;
  case Expr::Kind::Mul:
  case Expr::Kind::Div:
    emit_at(e.lhs(), 2, out);
    out += e.kind() == Expr::Kind::Mul ? '*' : '/';
    emit_at(e.rhs(), 3, out);
    return;
  case Expr::Kind::Pow:
    emit_at(e.lhs(), 5, out);
    out += '^';
    out += std::to_string(e.exponent());
    return;
  case Expr::Kind::Call:
    out += to_string(e.func());
    out += '(';
    emit(e.lhs(), out);
    out += ')';
    return;
  }
}

} // namespace

std::string print(const Expr& e) {
  std::string out;
  emit(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parity

ParityOptions ParityOptions::from_environment() {
  ParityOptions opts;
  if (const char* env = std::getenv("BSYM_SEED")) {
    std::string_view s(env);
    std::uint64_t seed = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
    if (ec == std::errc() && end == s.data() + s.size() && !s.empty())
      opts.seed = seed;
  }
  return opts;
}

namespace {

std::optional<Parity> product_parity(std::optional<Parity> l, std::optional<Parity> r) {
  if (!l || !r || *l == Parity::Neither || *r == Parity::Neither) return std::nullopt;
  return *l == *r ? Parity::Even : Parity::Odd;
}

} // namespace

std::optional<Parity> structural_parity(const Expr& e) {
  switch (e.kind()) {
  case Expr::Kind::Const: return Parity::Even;
  case Expr::Kind::Var: return Parity::Odd;
  case Expr::Kind::Neg: return structural_parity(e.lhs());
  case Expr::Kind::Add:
  case Expr::Kind::Sub: {
    const auto l = structural_parity(e.lhs());
    const auto r = structural_parity(e.rhs());
    if (l && r && *l == *r && *l != Parity::Neither) return l;
    return std::nullopt;
  }
  case Expr::Kind::Mul:
  case Expr::Kind::Div: return product_parity(structural_parity(e.lhs()), structural_parity(e.rhs()));
  case Expr::Kind::Pow: {
    const auto base = structural_parity(e.lhs());
    if (!base || *base == Parity::Neither) return std::nullopt;
    if (*base == Parity::Even || e.exponent() % 2 == 0) return Parity::Even;
    return Parity::Odd;
  }
  case Expr::Kind::Call: {
    const auto arg = structural_parity(e.lhs());
    if (!arg || *arg == Parity::Neither) return std::nullopt;
    if (*arg == Parity::Even) return Parity::Even;
    switch (e.func()) {
    case Func::Sin:
    case Func::Sinh: return Parity::Odd;
    case Func::Cos:
    case Func::Cosh: return Parity::Even;
    case Func::Exp: return std::nullopt;
    }
  }
  }
  return std::nullopt;
}

Parity sampled_parity(const Expr& e, const ParityOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> dist(-options.half_width, options.half_width);
  bool even = true;
  bool odd = true;
  for (int i = 0; i < options.samples && (even || odd); ++i) {
    const double t = dist(rng);
    const double fp = e(t);
    const double fm = e(-t);
    const double scale = 1e-10 * (1.0 + std::abs(fp));
    if (std::abs(fm - fp) > scale) even = false;
    if (std::abs(fm + fp) > scale) odd = false;
  }
  if (even) return Parity::Even;
  if (odd) return Parity::Odd;
  return Parity::Neither;
}

Parity detect_parity(const Expr& e) { return detect_parity(e, ParityOptions::from_environment()); }

Parity detect_parity(const Expr& e, const ParityOptions& options) {
  if (const auto p = structural_parity(e)) return *p;
  return sampled_parity(e, options);
}

} // namespace bsym
