#include "gaugequad/expr.hpp"

#include <cctype>
#include <charconv>

#include "gaugequad/format.hpp"

namespace gaugequad::expr {

namespace {

enum class Tok {
  End, Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, Arrow,
  Lt, Le, Gt, Ge, Eq, Ne, Bad
};

struct Token {
  Tok kind = Tok::End;
  std::size_t offset = 0;
  std::string_view text;
  double number = 0.0;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Arrow: return "'->'";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Eq: return "'=='";
    case Tok::Ne: return "'!='";
    case Tok::Bad: return "invalid character";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    Token t;
    t.offset = pos_;
    if (pos_ >= s_.size()) return t;
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(t);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_ + 1;
      while (end < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
        ++end;
      t.kind = Tok::Ident;
      t.text = s_.substr(pos_, end - pos_);
      pos_ = end;
      return t;
    }
    auto two = [&](char second) { return pos_ + 1 < s_.size() && s_[pos_ + 1] == second; };
    auto emit = [&](Tok k, std::size_t len) {
      t.kind = k;
      t.text = s_.substr(pos_, len);
      pos_ += len;
      return t;
    };
    switch (c) {
      case '+': return emit(Tok::Plus, 1);
      case '-': return two('>') ? emit(Tok::Arrow, 2) : emit(Tok::Minus, 1);
      case '*': return emit(Tok::Star, 1);
      case '/': return emit(Tok::Slash, 1);
      case '^': return emit(Tok::Caret, 1);
      case '(': return emit(Tok::LParen, 1);
      case ')': return emit(Tok::RParen, 1);
      case ',': return emit(Tok::Comma, 1);
      case '<': return two('=') ? emit(Tok::Le, 2) : emit(Tok::Lt, 1);
      case '>': return two('=') ? emit(Tok::Ge, 2) : emit(Tok::Gt, 1);
      case '=': return two('=') ? emit(Tok::Eq, 2) : emit(Tok::Bad, 1);
      case '!': return two('=') ? emit(Tok::Ne, 2) : emit(Tok::Bad, 1);
      default: return emit(Tok::Bad, 1);
    }
  }

 private:
  Token number(Token t) {
    std::size_t end = pos_;
    auto digits = [&] {
      while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
    };
    digits();
    if (end < s_.size() && s_[end] == '.') {
      ++end;
      digits();
    }
    if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
      std::size_t e = end + 1;
      if (e < s_.size() && (s_[e] == '+' || s_[e] == '-')) ++e;
      if (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) {
        end = e;
        digits();
      }
    }
    t.text = s_.substr(pos_, end - pos_);
    double v = 0.0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size()) {
      t.kind = Tok::Bad;
    } else {
      t.kind = Tok::Number;
      t.number = v;
    }
    pos_ = end;
    return t;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

struct FunctionName {
  std::string_view name;
  UnaryOp op;
};

constexpr FunctionName kFunctions[] = {
    {"sin", UnaryOp::Sin}, {"cos", UnaryOp::Cos},   {"tan", UnaryOp::Tan}, {"exp", UnaryOp::Exp},
    {"ln", UnaryOp::Ln},   {"sqrt", UnaryOp::Sqrt}, {"abs", UnaryOp::Abs},
};

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) { advance(); }

  Expr parse_all() {
    Expr e = comparison();
    if (cur_.kind != Tok::End) fail({"operator", describe(Tok::End)});
    return e;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string msg = "syntax error at offset " + std::to_string(cur_.offset) + ": found ";
    msg += cur_.kind == Tok::End ? std::string("end of input")
                                 : "'" + std::string(cur_.text) + "'";
    msg += ", expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    throw ParseError(msg, cur_.offset, std::move(expected));
  }

  void expect(Tok k) {
    if (cur_.kind != k) fail({describe(k)});
    advance();
  }

  Expr comparison() {
    Expr lhs = additive();
    CompareOp op;
    switch (cur_.kind) {
      case Tok::Lt: op = CompareOp::Lt; break;
      case Tok::Le: op = CompareOp::Le; break;
      case Tok::Gt: op = CompareOp::Gt; break;
      case Tok::Ge: op = CompareOp::Ge; break;
      case Tok::Eq: op = CompareOp::Eq; break;
      case Tok::Ne: op = CompareOp::Ne; break;
      default: return lhs;
    }
    advance();
    return Expr::compare(op, lhs, additive());
  }

  Expr additive() {
    Expr lhs = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const BinaryOp op = cur_.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      advance();
      lhs = Expr::binary(op, lhs, term());
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const BinaryOp op = cur_.kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
      advance();
      lhs = Expr::binary(op, lhs, unary());
    }
    return lhs;
  }

  Expr unary() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return Expr::unary(UnaryOp::Neg, unary());
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (cur_.kind == Tok::Caret) {
      advance();
      return Expr::binary(BinaryOp::Pow, base, unary());
    }
    return base;
  }

  Expr primary() {
    switch (cur_.kind) {
      case Tok::Number: {
        const double v = cur_.number;
        advance();
        return Expr::number(v);
      }
      case Tok::LParen: {
        advance();
        Expr e = comparison();
        expect(Tok::RParen);
        return e;
      }
      case Tok::Ident: return identifier();
      default: fail({"number", "identifier", "'('", "'-'"});
    }
  }

  Expr identifier() {
    const Token id = cur_;
    advance();
    if (id.text == "piecewise") return piecewise();
    if (cur_.kind == Tok::LParen) {
      for (const auto& f : kFunctions) {
        if (f.name == id.text) {
          advance();
          Expr arg = comparison();
          expect(Tok::RParen);
          return Expr::unary(f.op, arg);
        }
      }
      throw UnknownFunction(std::string(id.text), id.offset);
    }
    for (const auto& f : kFunctions)
      if (f.name == id.text) fail({describe(Tok::LParen)});
    if (id.text == "else") {
      cur_ = id;
      fail({"number", "identifier", "'('", "'-'"});
    }
    if (id.text == "pi") return Expr::constant(Constant::Pi);
    if (id.text == "e") return Expr::constant(Constant::E);
    return Expr::var(std::string(id.text));
  }

  Expr piecewise() {
    expect(Tok::LParen);
    std::vector<std::pair<Expr, Expr>> branches;
    for (;;) {
      if (cur_.kind == Tok::Ident && cur_.text == "else") {
        if (branches.empty()) fail({"condition"});
        advance();
        expect(Tok::Arrow);
        Expr otherwise = comparison();
        expect(Tok::RParen);
        return Expr::piecewise(std::move(branches), otherwise);
      }
      Expr cond = comparison();
      expect(Tok::Arrow);
      Expr value = comparison();
      branches.emplace_back(cond, value);
      expect(Tok::Comma);
    }
  }

  Lexer lex_;
  Token cur_;
};

const char* symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return " + ";
    case BinaryOp::Sub: return " - ";
    case BinaryOp::Mul: return " * ";
    case BinaryOp::Div: return " / ";
    case BinaryOp::Pow: return " ^ ";
  }
  return "?";
}

const char* symbol(CompareOp op) {
  switch (op) {
    case CompareOp::Lt: return " < ";
    case CompareOp::Le: return " <= ";
    case CompareOp::Gt: return " > ";
    case CompareOp::Ge: return " >= ";
    case CompareOp::Eq: return " == ";
    case CompareOp::Ne: return " != ";
  }
  return "?";
}

void write(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Number>) {
          out += format_double(n.value);
        } else if constexpr (std::is_same_v<T, Const>) {
          out += n.which == Constant::Pi ? "pi" : "e";
        } else if constexpr (std::is_same_v<T, Var>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, Unary>) {
          if (n.op == UnaryOp::Neg) {
            out += "(-";
            write(n.child, out);
            out += ')';
          } else {
            for (const auto& f : kFunctions)
              if (f.op == n.op) out += f.name;
            out += '(';
            write(n.child, out);
            out += ')';
          }
        } else if constexpr (std::is_same_v<T, Binary>) {
          out += '(';
          write(n.lhs, out);
          out += symbol(n.op);
          write(n.rhs, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, Compare>) {
          out += '(';
          write(n.lhs, out);
          out += symbol(n.op);
          write(n.rhs, out);
          out += ')';
        } else {
          out += "piecewise(";
          for (const auto& [c, v] : n.branches) {
            write(c, out);
            out += " -> ";
            write(v, out);
            out += ", ";
          }
          out += "else -> ";
          write(n.otherwise, out);
          out += ')';
        }
      },
      e.node().v);
}

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_text(const Expr& e) {
  std::string out;
  write(e, out);
  return out;
}

}  // namespace gaugequad::expr
