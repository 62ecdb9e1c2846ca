#include "symmwave/parse.hpp"

#include <cctype>

namespace symmwave {

namespace {

struct Token {
  enum Kind { kNum, kIdent, kOp, kEnd } kind;
  std::string text;
  size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& cur() const { return cur_; }
  void advance() {
    while (i_ < s_.size() && isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ >= s_.size()) {
      cur_ = {Token::kEnd, "", i_};
      return;
    }
    size_t start = i_;
    char c = s_[i_];
    if (isdigit(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() &&
             (isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.'))
        ++i_;
      cur_ = {Token::kNum, s_.substr(start, i_ - start), start};
      return;
    }
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < s_.size() &&
             (isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      cur_ = {Token::kIdent, s_.substr(start, i_ - start), start};
      return;
    }
    if (std::string("+-*/^()").find(c) != std::string::npos) {
      ++i_;
      cur_ = {Token::kOp, std::string(1, c), start};
      return;
    }
    fail("SyntaxError",
         "unexpected character '" + std::string(1, c) + "' at position " + std::to_string(start));
  }

 private:
  std::string s_;
  size_t i_ = 0;
  Token cur_;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : lx_(s) {}

  Expr parse() {
    Expr e = parse_sum();
    if (lx_.cur().kind != Token::kEnd)
      fail("SyntaxError", "trailing input at position " + std::to_string(lx_.cur().pos));
    return e;
  }

 private:
  bool is_op(const char* o) const {
    return lx_.cur().kind == Token::kOp && lx_.cur().text == o;
  }

  Expr parse_sum() {
    bool neg = false;
    if (is_op("-")) {
      neg = true;
      lx_.advance();
    } else if (is_op("+")) {
      lx_.advance();
    }
    Expr e = parse_product();
    if (neg) e = -e;
    while (is_op("+") || is_op("-")) {
      bool minus = lx_.cur().text == "-";
      lx_.advance();
      Expr rhs = parse_product();
      e = minus ? e - rhs : e + rhs;
    }
    return e;
  }

  Expr parse_product() {
    Expr e = parse_power();
    while (is_op("*") || is_op("/")) {
      bool div = lx_.cur().text == "/";
      lx_.advance();
      Expr rhs = parse_power();
      e = div ? e / rhs : e * rhs;
    }
    return e;
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (is_op("^")) {
      lx_.advance();
      bool neg = false;
      if (is_op("-")) {
        neg = true;
        lx_.advance();
      }
      Expr ex = parse_atom();
      ParamScalar s = expr_to_scalar(ex);
      if (neg) s = -s;
      return base.pow(s);
    }
    return base;
  }

  Expr parse_atom() {
    const Token t = lx_.cur();
    if (t.kind == Token::kNum) {
      lx_.advance();
      return Expr::constant(ParamScalar(parse_rat(t.text)));
    }
    if (t.kind == Token::kOp && t.text == "(") {
      lx_.advance();
      Expr e = parse_sum();
      if (!is_op(")"))
        fail("SyntaxError", "expected ')' at position " + std::to_string(lx_.cur().pos));
      lx_.advance();
      return e;
    }
    if (t.kind == Token::kIdent) {
      lx_.advance();
      if (t.text == "ln") {
        if (!is_op("("))
          fail("SyntaxError", "expected '(' after ln at position " + std::to_string(t.pos));
        lx_.advance();
        Expr inner = parse_sum();
        if (!is_op(")"))
          fail("SyntaxError", "expected ')' at position " + std::to_string(lx_.cur().pos));
        lx_.advance();
        return make_log(inner, t.pos);
      }
      return ident_expr(t.text, t.pos);
    }
    fail("SyntaxError", "unexpected token at position " + std::to_string(t.pos));
  }

  static Expr make_log(const Expr& inner, size_t pos) {
    if (inner.num_terms() != 1)
      fail("SyntaxError", "ln of a non-variable at position " + std::to_string(pos));
    const Term& tm = inner.terms()[0];
    if (!tm.coeff.is_one() || tm.factors.size() != 1 || !tm.factors[0].exp.is_one())
      fail("SyntaxError", "ln argument must be a bare variable at position " +
                              std::to_string(pos));
    return Expr::var(VarId::log_of(tm.factors[0].var));
  }

  static Expr ident_expr(const std::string& name, size_t pos) {
    if (name == "t") return Expr::var(VarId::t());
    if (name == "r") return Expr::var(VarId::r());
    if (name == "lam") return Expr::var(VarId::lam());
    if (auto pp = param_from_name(name)) return Expr::param(*pp);
    // derived parameter shorthands
    if (name == "k") return Expr::param(Param::A) + Expr::param(Param::B);
    if (name == "m") {
      ParamScalar b = ParamScalar::var(Param::B), n = ParamScalar::var(Param::N),
                  p = ParamScalar::var(Param::P), a = ParamScalar::var(Param::A);
      return Expr::constant(b * (n - ParamScalar(1)) * (p + ParamScalar(1)) /
                            (a + b));
    }
    if (name == "nu")
      return Expr::constant(ParamScalar(2) - ParamScalar::var(Param::N));
    if (name == "u") return Expr::var(VarId::u());
    if (name.size() >= 3 && name.rfind("u_", 0) == 0) {
      int to = 0, ro = 0;
      for (size_t i = 2; i < name.size(); ++i) {
        if (name[i] == 't' && ro == 0)
          ++to;
        else if (name[i] == 'r')
          ++ro;
        else
          fail("UnknownSymbol", "bad jet identifier '" + name + "' at position " +
                                    std::to_string(pos));
      }
      return Expr::var(VarId::jet(to, ro));
    }
    fail("UnknownSymbol", "unknown identifier '" + name + "' at position " +
                              std::to_string(pos));
  }

  Lexer lx_;
};

}  // namespace

Expr parse_expr(const std::string& text) { return Parser(text).parse(); }

std::string render(const Expr& e) { return e.str(); }

ParamScalar expr_to_scalar(const Expr& e) {
  if (e.is_zero()) return ParamScalar(0);
  ParamScalar acc(0);
  for (auto& t : e.terms()) {
    if (!t.factors.empty())
      fail("SyntaxError", "expected a parameter-only expression, found " + e.str());
    acc += t.coeff;
  }
  return acc;
}

ParamScalar parse_scalar(const std::string& text) {
  return expr_to_scalar(parse_expr(text));
}

}  // namespace symmwave
