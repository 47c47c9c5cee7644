#pragma once

// Integrand expressions: parsing, evaluation, symbolic differentiation and a
// canonical text form.
//
// Grammar, lowest precedence first:
//   expr     := additive [ cmp additive ]          cmp: < <= > >= == !=
//   additive := term { (+|-) term }
//   term     := unary { (*|/) unary }
//   unary    := - unary | power
//   power    := primary [ ^ unary ]                (right associative)
//   primary  := number | pi | e | name | func ( expr ) | ( expr )
//             | piecewise ( expr -> expr { , expr -> expr } , else -> expr )
//   func     := sin cos tan exp ln sqrt abs
// There is no implicit multiplication and `**` is not a power operator.

#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace gaugequad::expr {

enum class UnaryOp { Neg, Sin, Cos, Tan, Exp, Ln, Sqrt, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class CompareOp { Lt, Le, Gt, Ge, Eq, Ne };
enum class Constant { Pi, E };

class Expr;

struct Number { double value; };
struct Const { Constant which; };
struct Var { std::string name; };
struct Unary;
struct Binary;
struct Compare;
struct Piecewise;

class Expr {
 public:
  struct Node;

  Expr() = default;  // the number 0

  const Node& node() const;
  bool operator==(const Expr& other) const;

  static Expr number(double v);  // negative values become Neg(Number(|v|))
  static Expr constant(Constant c);
  static Expr var(std::string name);
  static Expr unary(UnaryOp op, Expr child);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr compare(CompareOp op, Expr lhs, Expr rhs);
  static Expr piecewise(std::vector<std::pair<Expr, Expr>> branches, Expr otherwise);

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Unary { UnaryOp op; Expr child; };
struct Binary { BinaryOp op; Expr lhs; Expr rhs; };
struct Compare { CompareOp op; Expr lhs; Expr rhs; };
struct Piecewise {
  std::vector<std::pair<Expr, Expr>> branches;  // (condition, value), at least one
  Expr otherwise;
};

struct Expr::Node {
  std::variant<Number, Const, Var, Unary, Binary, Compare, Piecewise> v;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::vector<std::string> expected)
      : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownFunction : public ParseError {
 public:
  UnknownFunction(const std::string& name, std::size_t offset)
      : ParseError("unknown function '" + name + "' at offset " + std::to_string(offset),
                   offset, {}),
        name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UnboundVariable : public std::runtime_error {
 public:
  explicit UnboundVariable(const std::string& name)
      : std::runtime_error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, std::string subexpression)
      : std::runtime_error(what), subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const { return subexpression_; }

 private:
  std::string subexpression_;
};

class NotDifferentiable : public std::runtime_error {
 public:
  NotDifferentiable(const std::string& what, std::string node)
      : std::runtime_error(what), node_(std::move(node)) {}
  const std::string& node() const { return node_; }

 private:
  std::string node_;
};

using Env = std::map<std::string, double, std::less<>>;

Expr parse(std::string_view text);

double eval(const Expr& e, const Env& env);

Expr differentiate(const Expr& e, std::string_view var);

std::string to_text(const Expr& e);

std::set<std::string> free_variables(const Expr& e);
bool depends_on(const Expr& e, std::string_view var);

// Flattened form for repeated evaluation with variables bound by position.
// Domain errors produce NaN instead of throwing.
class Compiled {
 public:
  // Throws UnboundVariable if `e` uses a name not listed in `vars`.
  Compiled(const Expr& e, std::vector<std::string> vars);

  double operator()(std::span<const double> values) const;
  double operator()(double x) const { return (*this)(std::span<const double>(&x, 1)); }
  double operator()(double x, double y) const {
    const double v[2] = {x, y};
    return (*this)(std::span<const double>(v, 2));
  }
  const std::vector<std::string>& variables() const { return vars_; }

  struct Instr {
    int op;
    double value;
    int arg;
  };

 private:
  std::vector<Instr> code_;
  std::vector<std::string> vars_;
  int max_stack_ = 0;
};

}  // namespace gaugequad::expr
