#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace bsym {

enum class Parity { Even, Odd, Neither };

std::string_view to_string(Parity p);

enum class Func { Sin, Cos, Exp, Sinh, Cosh };

std::string_view to_string(Func f);

/// Immutable expression tree for a coefficient function of `t`.
///
/// Copies share structure; nodes are never mutated after construction, so an
/// Expr can be evaluated from several threads at once.
class Expr {
public:
  enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

  struct Node;

  static Expr constant(double value);
  static Expr variable();
  static Expr negate(Expr operand);
  static Expr binary(Kind op, Expr lhs, Expr rhs);
  /// `base ^ exponent`; the exponent must be a non-negative integer.
  static Expr power(Expr base, int exponent);
  static Expr call(Func f, Expr argument);

  Kind kind() const noexcept;
  double value() const noexcept;   // Const
  int exponent() const noexcept;   // Pow
  Func func() const noexcept;      // Call
  const Expr& lhs() const noexcept; // Neg, Pow, Call operand; left of binary ops
  const Expr& rhs() const noexcept;

  /// Evaluates at `t`. Throws EvalError on division by zero or a non-finite
  /// intermediate value.
  double operator()(double t) const;

private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Expr::Node {
  Kind kind = Kind::Const;
  double value = 0.0;
  int exponent = 0;
  Func func = Func::Sin;
  std::optional<Expr> lhs;
  std::optional<Expr> rhs;
};

Expr operator-(const Expr& e);
Expr operator+(const Expr& l, const Expr& r);
Expr operator-(const Expr& l, const Expr& r);
Expr operator*(const Expr& l, const Expr& r);
Expr operator/(const Expr& l, const Expr& r);

/// Parses the coefficient DSL:
///
///   expr    := term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := '-' factor | primary ('^' INT)?
///   primary := NUMBER | 't' | FUNC '(' expr ')' | '(' expr ')'
///
/// with FUNC one of sin, cos, exp, sinh, cosh. Throws SyntaxError carrying the
/// byte offset of the offending token.
Expr parse_expr(std::string_view source);

double eval_expr(const Expr& e, double t);

/// Renders `e` in a form parse_expr accepts. Negation is always written as
/// `-(...)`.
std::string print(const Expr& e);

/// Seed and sample domain used by the numerical parity fallback.
struct ParityOptions {
  static constexpr std::uint64_t kDefaultSeed = 0x6273796d2d706172ULL;

  std::uint64_t seed = kDefaultSeed;
  double half_width = 4.0;
  int samples = 64;

  /// Default options, with `seed` taken from BSYM_SEED when that variable
  /// holds an integer.
  static ParityOptions from_environment();
};

/// Parity derived from the composition rules alone, or nullopt when the rules
/// cannot decide (e.g. a sum of an even and an odd term, or exp of an odd
/// argument).
std::optional<Parity> structural_parity(const Expr& e);

/// Parity from comparing f(t) with f(-t) at pseudo-random sample points.
Parity sampled_parity(const Expr& e, const ParityOptions& options);

/// Structural classification first, sampling when that is inconclusive.
Parity detect_parity(const Expr& e);
Parity detect_parity(const Expr& e, const ParityOptions& options);

} // namespace bsym
