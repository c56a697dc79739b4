#pragma once

#include "loopinv/ast.hpp"

#include <cctype>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopinv {

struct ParseError : std::runtime_error {
  SourcePos pos;
  ParseError(const std::string& msg, SourcePos p)
      : std::runtime_error("parse error at " + std::to_string(p.line) + ":" +
                           std::to_string(p.column) + ": " + msg),
        pos(p) {}
};

namespace detail {

enum class Tok {
  Ident, Number,
  KwPre, KwWhile, KwPost, KwIf, KwElse, KwUnknown, KwTrue, KwFalse, KwSort, KwInt, KwReal,
  Semi, Colon, LParen, RParen, LBrace, RBrace,
  Plus, Minus, Star, Slash, Caret,
  Assign, EqEq, Ne, Le, Ge, Lt, Gt,
  AndAnd, OrOr, Bang, PlusPlus, MinusMinus,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto pos = [&]() { return SourcePos{line, col}; };
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') { line++; col = 1; } else { col++; }
    }
    i += n;
  };
  auto push = [&](Tok t, size_t len) {
    out.push_back({t, src.substr(i, len), pos()});
    advance(len);
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { advance(1); continue; }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '\\') { push(Tok::AndAnd, 2); continue; }
    if (c == '\\' && i + 1 < src.size() && src[i + 1] == '/') { push(Tok::OrOr, 2); continue; }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) j++;
      if (j < src.size() && src[j] == '.' && j + 1 < src.size() &&
          std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        j++;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) j++;
      }
      push(Tok::Number, j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) j++;
      std::string word = src.substr(i, j - i);
      Tok t = Tok::Ident;
      if (word == "pre") t = Tok::KwPre;
      else if (word == "while") t = Tok::KwWhile;
      else if (word == "post") t = Tok::KwPost;
      else if (word == "if") t = Tok::KwIf;
      else if (word == "else") t = Tok::KwElse;
      else if (word == "unknown") t = Tok::KwUnknown;
      else if (word == "true") t = Tok::KwTrue;
      else if (word == "false") t = Tok::KwFalse;
      else if (word == "sort") t = Tok::KwSort;
      else if (word == "int") t = Tok::KwInt;
      else if (word == "real") t = Tok::KwReal;
      push(t, j - i);
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < src.size() && src[i + 1] == b;
    };
    if (two('=', '=')) { push(Tok::EqEq, 2); continue; }
    if (two('!', '=')) { push(Tok::Ne, 2); continue; }
    if (two('<', '=')) { push(Tok::Le, 2); continue; }
    if (two('>', '=')) { push(Tok::Ge, 2); continue; }
    if (two('&', '&')) { push(Tok::AndAnd, 2); continue; }
    if (two('|', '|')) { push(Tok::OrOr, 2); continue; }
    if (two('+', '+')) { push(Tok::PlusPlus, 2); continue; }
    if (two('-', '-')) { push(Tok::MinusMinus, 2); continue; }
    switch (c) {
      case ';': push(Tok::Semi, 1); break;
      case ':': push(Tok::Colon, 1); break;
      case '(': push(Tok::LParen, 1); break;
      case ')': push(Tok::RParen, 1); break;
      case '{': push(Tok::LBrace, 1); break;
      case '}': push(Tok::RBrace, 1); break;
      case '+': push(Tok::Plus, 1); break;
      case '-': push(Tok::Minus, 1); break;
      case '*': push(Tok::Star, 1); break;
      case '/': push(Tok::Slash, 1); break;
      case '^': push(Tok::Caret, 1); break;
      case '=': push(Tok::Assign, 1); break;
      case '<': push(Tok::Lt, 1); break;
      case '>': push(Tok::Gt, 1); break;
      case '!': push(Tok::Bang, 1); break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", pos());
    }
  }
  out.push_back({Tok::End, "", pos()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string source) : toks_(lex(source)) {}

  Program parse_program(const std::string& name) {
    Program p;
    p.name = name;
    if (at(Tok::KwSort)) {
      next();
      expect(Tok::Colon, "':' after 'sort'");
      if (at(Tok::KwInt)) p.sort = VarSort::Int;
      else if (at(Tok::KwReal)) p.sort = VarSort::Real;
      else fail("'int' or 'real'");
      next();
      expect(Tok::Semi, "';' after sort declaration");
    }
    expect(Tok::KwPre, "'pre'");
    expect(Tok::Colon, "':' after 'pre'");
    p.pre = parse_formula();
    expect(Tok::Semi, "';' after precondition");
    expect(Tok::KwWhile, "'while'");
    expect(Tok::LParen, "'(' after 'while'");
    p.loop_cond = parse_formula();
    expect(Tok::RParen, "')' after loop condition");
    p.body = parse_block();
    expect(Tok::KwPost, "'post'");
    expect(Tok::Colon, "':' after 'post'");
    p.post = parse_formula();
    expect(Tok::Semi, "';' after postcondition");
    if (!at(Tok::End)) fail("end of input");
    collect_vars(p);
    return p;
  }

  FormulaPtr parse_formula_only() {
    FormulaPtr f = parse_formula();
    if (!at(Tok::End)) fail("end of input");
    return f;
  }

 private:
  std::vector<Token> toks_;
  size_t idx_ = 0;

  const Token& cur() const { return toks_[idx_]; }
  bool at(Tok t) const { return cur().kind == t; }
  void next() { if (idx_ + 1 < toks_.size()) idx_++; }
  [[noreturn]] void fail(const std::string& expected) {
    throw ParseError("expected " + expected + ", got '" + cur().text + "'", cur().pos);
  }
  void expect(Tok t, const std::string& what) {
    if (!at(t)) fail(what);
    next();
  }

  std::vector<Stmt> parse_block() {
    expect(Tok::LBrace, "'{'");
    std::vector<Stmt> out;
    while (!at(Tok::RBrace)) {
      if (at(Tok::End)) fail("'}'");
      out.push_back(parse_stmt());
    }
    next();
    return out;
  }

  Stmt parse_stmt() {
    if (at(Tok::KwWhile)) {
      throw ParseError("nested loops are not supported", cur().pos);
    }
    if (at(Tok::KwIf)) {
      SourcePos pos = cur().pos;
      next();
      expect(Tok::LParen, "'(' after 'if'");
      std::variant<FormulaPtr, NondetChoice> cond;
      if (at(Tok::KwUnknown)) {
        next();
        expect(Tok::LParen, "'(' after 'unknown'");
        expect(Tok::RParen, "')' after 'unknown('");
        cond = NondetChoice{};
      } else {
        cond = parse_formula();
      }
      expect(Tok::RParen, "')' after branch condition");
      std::vector<Stmt> then_b = parse_block();
      std::vector<Stmt> else_b;
      if (at(Tok::KwElse)) {
        next();
        else_b = parse_block();
      }
      return Stmt{IfElse{std::move(cond), std::move(then_b), std::move(else_b), pos}};
    }
    if (at(Tok::Ident)) {
      Token name = cur();
      next();
      if (at(Tok::PlusPlus) || at(Tok::MinusMinus)) {
        bool inc = at(Tok::PlusPlus);
        next();
        expect(Tok::Semi, "';' after statement");
        ExprPtr one = mk_const(Rational(1), name.pos);
        ExprPtr v = mk_var(name.text, name.pos);
        return Stmt{Assign{name.text, mk_bin(inc ? BinOp::Add : BinOp::Sub, v, one, name.pos),
                           name.pos}};
      }
      expect(Tok::Assign, "'=' in assignment");
      ExprPtr rhs = parse_expr();
      expect(Tok::Semi, "';' after assignment");
      return Stmt{Assign{name.text, std::move(rhs), name.pos}};
    }
    fail("a statement");
  }

  // formula := and_f ( '||' and_f )*
  FormulaPtr parse_formula() {
    FormulaPtr f = parse_and();
    while (at(Tok::OrOr)) {
      SourcePos pos = cur().pos;
      next();
      f = mk_or(f, parse_and(), pos);
    }
    return f;
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_not();
    while (at(Tok::AndAnd)) {
      SourcePos pos = cur().pos;
      next();
      f = mk_and(f, parse_not(), pos);
    }
    return f;
  }

  FormulaPtr parse_not() {
    if (at(Tok::Bang)) {
      SourcePos pos = cur().pos;
      next();
      return mk_not(parse_not(), pos);
    }
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    SourcePos pos = cur().pos;
    if (at(Tok::KwTrue)) { next(); return mk_bool(true, pos); }
    if (at(Tok::KwFalse)) { next(); return mk_bool(false, pos); }
    if (at(Tok::KwUnknown)) {
      throw ParseError("unknown() is only allowed as an if-condition", pos);
    }
    if (at(Tok::LParen)) {
      // Either a parenthesized formula or a parenthesized arithmetic
      // expression starting a comparison; try the formula reading first.
      size_t mark = idx_;
      next();
      try {
        FormulaPtr f = parse_formula();
        expect(Tok::RParen, "')'");
        if (is_cmp(cur().kind) || is_arith(cur().kind)) {
          idx_ = mark;  // it was an expression after all
        } else {
          return f;
        }
      } catch (const ParseError&) {
        idx_ = mark;
      }
    }
    ExprPtr lhs = parse_expr();
    CmpOp op = parse_cmp_op();
    ExprPtr rhs = parse_expr();
    return mk_cmp(op, std::move(lhs), std::move(rhs), pos);
  }

  static bool is_cmp(Tok t) {
    return t == Tok::EqEq || t == Tok::Assign || t == Tok::Ne || t == Tok::Le ||
           t == Tok::Ge || t == Tok::Lt || t == Tok::Gt;
  }
  static bool is_arith(Tok t) {
    return t == Tok::Plus || t == Tok::Minus || t == Tok::Star || t == Tok::Slash ||
           t == Tok::Caret;
  }

  CmpOp parse_cmp_op() {
    CmpOp op;
    switch (cur().kind) {
      case Tok::EqEq:
      case Tok::Assign: op = CmpOp::Eq; break;
      case Tok::Ne: op = CmpOp::Ne; break;
      case Tok::Le: op = CmpOp::Le; break;
      case Tok::Ge: op = CmpOp::Ge; break;
      case Tok::Lt: op = CmpOp::Lt; break;
      case Tok::Gt: op = CmpOp::Gt; break;
      default: fail("a comparison operator");
    }
    next();
    return op;
  }

  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      BinOp op = at(Tok::Plus) ? BinOp::Add : BinOp::Sub;
      SourcePos pos = cur().pos;
      next();
      e = mk_bin(op, e, parse_term(), pos);
    }
    return e;
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_unary();
    while (at(Tok::Star) || at(Tok::Slash)) {
      BinOp op = at(Tok::Star) ? BinOp::Mul : BinOp::Div;
      SourcePos pos = cur().pos;
      next();
      e = mk_bin(op, e, parse_unary(), pos);
    }
    return e;
  }

  ExprPtr parse_unary() {
    if (at(Tok::Minus)) {
      SourcePos pos = cur().pos;
      next();
      ExprPtr inner = parse_unary();
      // fold a negated literal into a negative constant
      if (const auto* c = std::get_if<Const>(&inner->node)) {
        return mk_const(Rational(-c->value), pos);
      }
      return mk_bin(BinOp::Sub, mk_const(Rational(0), pos), inner, pos);
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (at(Tok::Caret)) {
      SourcePos pos = cur().pos;
      next();
      if (!at(Tok::Number)) fail("a nonnegative integer exponent");
      Rational ex = parse_rational(cur().text);
      if (!is_integer(ex) || ex < 0 || ex > 16) {
        throw ParseError("exponent must be a nonnegative integer (at most 16)", cur().pos);
      }
      next();
      return mk_pow(base, numer(ex).template convert_to<unsigned>(), pos);
    }
    return base;
  }

  ExprPtr parse_primary() {
    SourcePos pos = cur().pos;
    if (at(Tok::Number)) {
      Rational v = parse_rational(cur().text);
      next();
      return mk_const(std::move(v), pos);
    }
    if (at(Tok::Ident)) {
      std::string name = cur().text;
      next();
      return mk_var(std::move(name), pos);
    }
    if (at(Tok::LParen)) {
      next();
      ExprPtr e = parse_expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    fail("an expression");
  }

  static void add_var(std::vector<std::string>& vars, std::set<std::string>& seen,
                      const std::string& name) {
    if (seen.insert(name).second) vars.push_back(name);
  }

  void collect_vars(Program& p) {
    std::set<std::string> seen;
    auto from_expr = [&](const Expr& e) {
      if (const auto* v = std::get_if<Var>(&e.node)) add_var(p.vars, seen, v->name);
    };
    visit_formula_exprs(p.pre, from_expr);
    visit_formula_exprs(p.loop_cond, from_expr);
    visit_stmts(p.body, [&](const Stmt& s) {
      if (const auto* a = std::get_if<Assign>(&s.node)) {
        add_var(p.vars, seen, a->target);
        visit_exprs(a->expr, from_expr);
      } else if (const auto* ie = std::get_if<IfElse>(&s.node)) {
        if (const auto* f = std::get_if<FormulaPtr>(&ie->cond)) {
          visit_formula_exprs(*f, from_expr);
        }
      }
    });
    visit_formula_exprs(p.post, from_expr);
  }
};

}  // namespace detail

/// Parses mini-language source text into a Program.
inline Program parse(const std::string& source, const std::string& name = "program") {
  detail::Parser p(source);
  return p.parse_program(name);
}

/// Parses a bare formula (used for externally supplied invariants).
inline FormulaPtr parse_formula_text(const std::string& source) {
  detail::Parser p(source);
  return p.parse_formula_only();
}

}  // namespace loopinv
