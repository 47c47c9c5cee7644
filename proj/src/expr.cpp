#include "gaugequad/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace gaugequad::expr {

namespace {

const Expr::Node& zero_node() {
  static const Expr::Node z{Number{0.0}};
  return z;
}

template <class T>
const T* as(const Expr& e) {
  return std::get_if<T>(&e.node().v);
}

bool is_number(const Expr& e, double v) {
  const auto* n = as<Number>(e);
  return n && n->value == v;
}

// Numeric value of a literal, including a negated literal.
bool literal(const Expr& e, double& v) {
  if (const auto* n = as<Number>(e)) {
    v = n->value;
    return true;
  }
  if (const auto* u = as<Unary>(e); u && u->op == UnaryOp::Neg) {
    if (const auto* n = as<Number>(u->child)) {
      v = -n->value;
      return true;
    }
  }
  return false;
}

}  // namespace

const Expr::Node& Expr::node() const { return node_ ? *node_ : zero_node(); }

Expr Expr::number(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("expression literal must be finite");
  if (v == 0.0) v = 0.0;  // drop the sign of zero
  if (v < 0) return unary(UnaryOp::Neg, number(-v));
  return Expr(std::make_shared<const Node>(Node{Number{v}}));
}

Expr Expr::constant(Constant c) { return Expr(std::make_shared<const Node>(Node{Const{c}})); }

Expr Expr::var(std::string name) {
  bool ok = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
  for (char c : name)
    ok = ok && c > 0 && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
  if (!ok) throw std::invalid_argument("invalid variable name '" + name + "'");
  return Expr(std::make_shared<const Node>(Node{Var{std::move(name)}}));
}

Expr Expr::unary(UnaryOp op, Expr child) {
  return Expr(std::make_shared<const Node>(Node{Unary{op, std::move(child)}}));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{Binary{op, std::move(lhs), std::move(rhs)}}));
}

Expr Expr::compare(CompareOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{Compare{op, std::move(lhs), std::move(rhs)}}));
}

Expr Expr::piecewise(std::vector<std::pair<Expr, Expr>> branches, Expr otherwise) {
  if (branches.empty()) throw std::invalid_argument("piecewise needs a conditioned branch");
  return Expr(std::make_shared<const Node>(
      Node{Piecewise{std::move(branches), std::move(otherwise)}}));
}

bool Expr::operator==(const Expr& other) const {
  const Node& a = node();
  const Node& b = other.node();
  if (&a == &b) return true;
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, Number>) return x.value == y.value;
        else if constexpr (std::is_same_v<T, Const>) return x.which == y.which;
        else if constexpr (std::is_same_v<T, Var>) return x.name == y.name;
        else if constexpr (std::is_same_v<T, Unary>) return x.op == y.op && x.child == y.child;
        else if constexpr (std::is_same_v<T, Binary> || std::is_same_v<T, Compare>)
          return x.op == y.op && x.lhs == y.lhs && x.rhs == y.rhs;
        else return x.branches == y.branches && x.otherwise == y.otherwise;
      },
      a.v);
}

// ---------------------------------------------------------------- evaluation

namespace {

double apply(UnaryOp op, double x) {
  switch (op) {
    case UnaryOp::Neg: return -x;
    case UnaryOp::Sin: return std::sin(x);
    case UnaryOp::Cos: return std::cos(x);
    case UnaryOp::Tan: return std::tan(x);
    case UnaryOp::Exp: return std::exp(x);
    case UnaryOp::Ln: return x > 0 ? std::log(x) : std::nan("");
    case UnaryOp::Sqrt: return x >= 0 ? std::sqrt(x) : std::nan("");
    case UnaryOp::Abs: return std::fabs(x);
  }
  return std::nan("");
}

double apply(BinaryOp op, double a, double b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div: return b != 0 ? a / b : std::nan("");
    case BinaryOp::Pow: return std::pow(a, b);
  }
  return std::nan("");
}

bool apply(CompareOp op, double a, double b) {
  switch (op) {
    case CompareOp::Lt: return a < b;
    case CompareOp::Le: return a <= b;
    case CompareOp::Gt: return a > b;
    case CompareOp::Ge: return a >= b;
    case CompareOp::Eq: return a == b;
    case CompareOp::Ne: return a != b;
  }
  return false;
}

const char* op_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Ln: return "logarithm of a nonpositive value";
    case UnaryOp::Sqrt: return "square root of a negative value";
    default: return "non-finite result";
  }
}

double checked(double r, const Expr& e, const char* what) {
  if (!std::isfinite(r)) throw DomainError(std::string(what) + " in " + to_text(e), to_text(e));
  return r;
}

double eval_node(const Expr& e, const Env& env) {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Number>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Const>) {
          return n.which == Constant::Pi ? std::numbers::pi : std::numbers::e;
        } else if constexpr (std::is_same_v<T, Var>) {
          auto it = env.find(n.name);
          if (it == env.end()) throw UnboundVariable(n.name);
          return it->second;
        } else if constexpr (std::is_same_v<T, Unary>) {
          return checked(apply(n.op, eval_node(n.child, env)), e, op_name(n.op));
        } else if constexpr (std::is_same_v<T, Binary>) {
          const double a = eval_node(n.lhs, env);
          const double b = eval_node(n.rhs, env);
          const char* what = n.op == BinaryOp::Div && b == 0 ? "division by zero"
                                                               : "non-finite result";
          return checked(apply(n.op, a, b), e, what);
        } else if constexpr (std::is_same_v<T, Compare>) {
          return apply(n.op, eval_node(n.lhs, env), eval_node(n.rhs, env)) ? 1.0 : 0.0;
        } else {
          for (const auto& [c, v] : n.branches)
            if (eval_node(c, env) != 0.0) return eval_node(v, env);
          return eval_node(n.otherwise, env);
        }
      },
      e.node().v);
}

void collect(const Expr& e, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) {
          out.insert(n.name);
        } else if constexpr (std::is_same_v<T, Unary>) {
          collect(n.child, out);
        } else if constexpr (std::is_same_v<T, Binary> || std::is_same_v<T, Compare>) {
          collect(n.lhs, out);
          collect(n.rhs, out);
        } else if constexpr (std::is_same_v<T, Piecewise>) {
          for (const auto& [c, v] : n.branches) {
            collect(c, out);
            collect(v, out);
          }
          collect(n.otherwise, out);
        }
      },
      e.node().v);
}

}  // namespace

double eval(const Expr& e, const Env& env) { return eval_node(e, env); }

std::set<std::string> free_variables(const Expr& e) {
  std::set<std::string> out;
  collect(e, out);
  return out;
}

bool depends_on(const Expr& e, std::string_view var) {
  return free_variables(e).count(std::string(var)) > 0;
}

// ---------------------------------------------------------- differentiation

namespace {

Expr num(double v) { return Expr::number(v); }

Expr neg(const Expr& a) {
  double v;
  if (literal(a, v)) return num(-v);
  if (const auto* u = as<Unary>(a); u && u->op == UnaryOp::Neg) return u->child;
  return Expr::unary(UnaryOp::Neg, a);
}

Expr add(const Expr& a, const Expr& b) {
  double x, y;
  if (literal(a, x) && literal(b, y)) return num(x + y);
  if (is_number(a, 0)) return b;
  if (is_number(b, 0)) return a;
  return Expr::binary(BinaryOp::Add, a, b);
}

Expr sub(const Expr& a, const Expr& b) {
  double x, y;
  if (literal(a, x) && literal(b, y)) return num(x - y);
  if (is_number(b, 0)) return a;
  if (is_number(a, 0)) return neg(b);
  return Expr::binary(BinaryOp::Sub, a, b);
}

Expr mul(const Expr& a, const Expr& b) {
  double x, y;
  if (literal(a, x) && literal(b, y)) return num(x * y);
  if (is_number(a, 0) || is_number(b, 0)) return num(0);
  if (is_number(a, 1)) return b;
  if (is_number(b, 1)) return a;
  return Expr::binary(BinaryOp::Mul, a, b);
}

Expr div(const Expr& a, const Expr& b) {
  double x, y;
  if (literal(a, x) && literal(b, y) && y != 0) return num(x / y);
  if (is_number(a, 0)) return num(0);
  if (is_number(b, 1)) return a;
  return Expr::binary(BinaryOp::Div, a, b);
}

Expr pow(const Expr& a, const Expr& b) {
  if (is_number(b, 1)) return a;
  if (is_number(b, 0)) return num(1);
  return Expr::binary(BinaryOp::Pow, a, b);
}

Expr fn(UnaryOp op, const Expr& a) { return Expr::unary(op, a); }

Expr d(const Expr& e, const std::string& x) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Number> || std::is_same_v<T, Const>) {
          return num(0);
        } else if constexpr (std::is_same_v<T, Var>) {
          return num(n.name == x ? 1 : 0);
        } else if constexpr (std::is_same_v<T, Unary>) {
          const Expr& u = n.child;
          if (n.op == UnaryOp::Abs) {
            if (depends_on(u, x))
              throw NotDifferentiable("abs is not differentiable in " + x, to_text(e));
            return num(0);
          }
          const Expr du = d(u, x);
          switch (n.op) {
            case UnaryOp::Neg: return neg(du);
            case UnaryOp::Sin: return mul(fn(UnaryOp::Cos, u), du);
            case UnaryOp::Cos: return mul(neg(fn(UnaryOp::Sin, u)), du);
            case UnaryOp::Tan:
              return mul(div(num(1), pow(fn(UnaryOp::Cos, u), num(2))), du);
            case UnaryOp::Exp: return mul(e, du);
            case UnaryOp::Ln: return div(du, u);
            case UnaryOp::Sqrt: return div(du, mul(num(2), e));
            default: return num(0);
          }
        } else if constexpr (std::is_same_v<T, Binary>) {
          const Expr& u = n.lhs;
          const Expr& v = n.rhs;
          switch (n.op) {
            case BinaryOp::Add: return add(d(u, x), d(v, x));
            case BinaryOp::Sub: return sub(d(u, x), d(v, x));
            case BinaryOp::Mul: return add(mul(d(u, x), v), mul(u, d(v, x)));
            case BinaryOp::Div:
              return div(sub(mul(d(u, x), v), mul(u, d(v, x))), pow(v, num(2)));
            case BinaryOp::Pow: {
              const bool du_dep = depends_on(u, x);
              const bool dv_dep = depends_on(v, x);
              if (!dv_dep) {
                if (!du_dep) return num(0);
                double c;
                const Expr lowered = literal(v, c) ? num(c - 1) : sub(v, num(1));
                return mul(mul(v, pow(u, lowered)), d(u, x));
              }
              const Expr ln_u = fn(UnaryOp::Ln, u);
              if (!du_dep) return mul(mul(e, ln_u), d(v, x));
              return mul(e, add(mul(d(v, x), ln_u), div(mul(v, d(u, x)), u)));
            }
          }
          return num(0);
        } else if constexpr (std::is_same_v<T, Compare>) {
          if (depends_on(e, x))
            throw NotDifferentiable("comparison depends on " + x, to_text(e));
          return num(0);
        } else {
          std::vector<std::pair<Expr, Expr>> branches;
          for (const auto& [c, v] : n.branches) {
            if (depends_on(c, x))
              throw NotDifferentiable("piecewise condition depends on " + x, to_text(c));
            branches.emplace_back(c, d(v, x));
          }
          return Expr::piecewise(std::move(branches), d(n.otherwise, x));
        }
      },
      e.node().v);
}

}  // namespace

Expr differentiate(const Expr& e, std::string_view var) { return d(e, std::string(var)); }

// --------------------------------------------------------------- compiled

namespace {

enum Op : int {
  kPush, kLoad, kUnary, kBinary, kCompare, kJumpIfZero, kJump
};

struct Emitter {
  std::vector<Compiled::Instr>& code;
  const std::vector<std::string>& vars;
  int depth = 0;
  int max_depth = 0;

  void bump(int delta) {
    depth += delta;
    max_depth = std::max(max_depth, depth);
  }

  void emit(const Expr& e) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Number>) {
            code.push_back({kPush, n.value, 0});
            bump(1);
          } else if constexpr (std::is_same_v<T, Const>) {
            code.push_back({kPush, n.which == Constant::Pi ? std::numbers::pi : std::numbers::e, 0});
            bump(1);
          } else if constexpr (std::is_same_v<T, Var>) {
            auto it = std::find(vars.begin(), vars.end(), n.name);
            if (it == vars.end()) throw UnboundVariable(n.name);
            code.push_back({kLoad, 0.0, static_cast<int>(it - vars.begin())});
            bump(1);
          } else if constexpr (std::is_same_v<T, Unary>) {
            emit(n.child);
            code.push_back({kUnary, 0.0, static_cast<int>(n.op)});
          } else if constexpr (std::is_same_v<T, Binary>) {
            emit(n.lhs);
            emit(n.rhs);
            code.push_back({kBinary, 0.0, static_cast<int>(n.op)});
            bump(-1);
          } else if constexpr (std::is_same_v<T, Compare>) {
            emit(n.lhs);
            emit(n.rhs);
            code.push_back({kCompare, 0.0, static_cast<int>(n.op)});
            bump(-1);
          } else {
            std::vector<std::size_t> to_end;
            for (const auto& [c, v] : n.branches) {
              emit(c);
              const std::size_t skip = code.size();
              code.push_back({kJumpIfZero, 0.0, 0});
              bump(-1);
              emit(v);
              bump(-1);
              to_end.push_back(code.size());
              code.push_back({kJump, 0.0, 0});
              code[skip].arg = static_cast<int>(code.size());
            }
            emit(n.otherwise);
            for (std::size_t j : to_end) code[j].arg = static_cast<int>(code.size());
          }
        },
        e.node().v);
  }
};

}  // namespace

Compiled::Compiled(const Expr& e, std::vector<std::string> vars) : vars_(std::move(vars)) {
  Emitter em{code_, vars_};
  em.emit(e);
  max_stack_ = em.max_depth;
}

double Compiled::operator()(std::span<const double> values) const {
  constexpr int kInline = 64;
  double small[kInline];
  std::vector<double> big;
  double* stack = small;
  if (max_stack_ > kInline) {
    big.resize(static_cast<std::size_t>(max_stack_));
    stack = big.data();
  }
  int sp = 0;
  const std::size_t n = code_.size();
  for (std::size_t pc = 0; pc < n;) {
    const Instr& in = code_[pc++];
    switch (in.op) {
      case kPush: stack[sp++] = in.value; break;
      case kLoad: stack[sp++] = values[static_cast<std::size_t>(in.arg)]; break;
      case kUnary: {
        const double r = apply(static_cast<UnaryOp>(in.arg), stack[sp - 1]);
        if (!std::isfinite(r)) return std::nan("");
        stack[sp - 1] = r;
        break;
      }
      case kBinary: {
        --sp;
        const double r = apply(static_cast<BinaryOp>(in.arg), stack[sp - 1], stack[sp]);
        if (!std::isfinite(r)) return std::nan("");
        stack[sp - 1] = r;
        break;
      }
      case kCompare:
        --sp;
        stack[sp - 1] = apply(static_cast<CompareOp>(in.arg), stack[sp - 1], stack[sp]) ? 1 : 0;
        break;
      case kJumpIfZero:
        if (stack[--sp] == 0.0) pc = static_cast<std::size_t>(in.arg);
        break;
      case kJump: pc = static_cast<std::size_t>(in.arg); break;
    }
  }
  return stack[0];
}

}  // namespace gaugequad::expr
