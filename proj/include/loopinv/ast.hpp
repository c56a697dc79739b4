#pragma once

#include "loopinv/rational.hpp"

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace loopinv {

struct SourcePos {
  int line = 0;
  int column = 0;
};

// ---------------------------------------------------------------------------
// Arithmetic expressions: variable | constant | + - * / | pow with a
// nonnegative integer exponent. Trees are immutable and shared.
// ---------------------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BinOp { Add, Sub, Mul, Div };

struct Var {
  std::string name;
};
struct Const {
  Rational value;
};
struct Binary {
  BinOp op;
  ExprPtr lhs, rhs;
};
struct Pow {
  ExprPtr base;
  unsigned exponent;
};

struct Expr {
  std::variant<Var, Const, Binary, Pow> node;
  SourcePos pos;
};

inline ExprPtr mk_var(std::string name, SourcePos pos = {}) {
  return std::make_shared<Expr>(Expr{Var{std::move(name)}, pos});
}
inline ExprPtr mk_const(Rational value, SourcePos pos = {}) {
  return std::make_shared<Expr>(Expr{Const{std::move(value)}, pos});
}
inline ExprPtr mk_bin(BinOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {}) {
  return std::make_shared<Expr>(Expr{Binary{op, std::move(lhs), std::move(rhs)}, pos});
}
inline ExprPtr mk_pow(ExprPtr base, unsigned exponent, SourcePos pos = {}) {
  return std::make_shared<Expr>(Expr{Pow{std::move(base), exponent}, pos});
}
inline ExprPtr mk_add(ExprPtr a, ExprPtr b) { return mk_bin(BinOp::Add, std::move(a), std::move(b)); }
inline ExprPtr mk_sub(ExprPtr a, ExprPtr b) { return mk_bin(BinOp::Sub, std::move(a), std::move(b)); }
inline ExprPtr mk_mul(ExprPtr a, ExprPtr b) { return mk_bin(BinOp::Mul, std::move(a), std::move(b)); }

// ---------------------------------------------------------------------------
// Quantifier-free formulas over comparisons of expressions.
// ---------------------------------------------------------------------------

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class CmpOp { Eq, Ne, Lt, Gt, Le, Ge };

struct Cmp {
  CmpOp op;
  ExprPtr lhs, rhs;
};
struct Not {
  FormulaPtr f;
};
struct And {
  FormulaPtr lhs, rhs;
};
struct Or {
  FormulaPtr lhs, rhs;
};
struct BoolConst {
  bool value;
};

struct Formula {
  std::variant<Cmp, Not, And, Or, BoolConst> node;
  SourcePos pos;
};

inline FormulaPtr mk_cmp(CmpOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {}) {
  return std::make_shared<Formula>(Formula{Cmp{op, std::move(lhs), std::move(rhs)}, pos});
}
inline FormulaPtr mk_not(FormulaPtr f, SourcePos pos = {}) {
  return std::make_shared<Formula>(Formula{Not{std::move(f)}, pos});
}
inline FormulaPtr mk_and(FormulaPtr a, FormulaPtr b, SourcePos pos = {}) {
  return std::make_shared<Formula>(Formula{And{std::move(a), std::move(b)}, pos});
}
inline FormulaPtr mk_or(FormulaPtr a, FormulaPtr b, SourcePos pos = {}) {
  return std::make_shared<Formula>(Formula{Or{std::move(a), std::move(b)}, pos});
}
inline FormulaPtr mk_bool(bool value, SourcePos pos = {}) {
  return std::make_shared<Formula>(Formula{BoolConst{value}, pos});
}

/// Conjunction of a list; empty list means true.
inline FormulaPtr mk_and_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return mk_bool(true);
  FormulaPtr acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = mk_and(acc, fs[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// Statements and programs.
// ---------------------------------------------------------------------------

struct Stmt;

struct Assign {
  std::string target;
  ExprPtr expr;
  SourcePos pos;
};

/// The nondeterministic branch token unknown(); a distinguished nullary
/// condition, not a general uninterpreted function.
struct NondetChoice {};

struct IfElse {
  std::variant<FormulaPtr, NondetChoice> cond;
  std::vector<Stmt> then_branch;
  std::vector<Stmt> else_branch;
  SourcePos pos;
};

struct Stmt {
  std::variant<Assign, IfElse> node;
};

enum class VarSort { Real, Int };

struct Program {
  std::string name;
  std::vector<std::string> vars;  // order of first appearance in the source
  FormulaPtr pre;
  FormulaPtr loop_cond;
  std::vector<Stmt> body;
  FormulaPtr post;
  VarSort sort = VarSort::Real;
};

// ---------------------------------------------------------------------------
// Traversal helpers.
// ---------------------------------------------------------------------------

inline void visit_exprs(const ExprPtr& e, const std::function<void(const Expr&)>& fn) {
  if (!e) return;
  fn(*e);
  if (const auto* b = std::get_if<Binary>(&e->node)) {
    visit_exprs(b->lhs, fn);
    visit_exprs(b->rhs, fn);
  } else if (const auto* p = std::get_if<Pow>(&e->node)) {
    visit_exprs(p->base, fn);
  }
}

inline void visit_formulas(const FormulaPtr& f, const std::function<void(const Formula&)>& fn) {
  if (!f) return;
  fn(*f);
  if (const auto* n = std::get_if<Not>(&f->node)) {
    visit_formulas(n->f, fn);
  } else if (const auto* a = std::get_if<And>(&f->node)) {
    visit_formulas(a->lhs, fn);
    visit_formulas(a->rhs, fn);
  } else if (const auto* o = std::get_if<Or>(&f->node)) {
    visit_formulas(o->lhs, fn);
    visit_formulas(o->rhs, fn);
  }
}

inline void visit_formula_exprs(const FormulaPtr& f, const std::function<void(const Expr&)>& fn) {
  visit_formulas(f, [&](const Formula& node) {
    if (const auto* c = std::get_if<Cmp>(&node.node)) {
      visit_exprs(c->lhs, fn);
      visit_exprs(c->rhs, fn);
    }
  });
}

inline void visit_stmts(const std::vector<Stmt>& body, const std::function<void(const Stmt&)>& fn) {
  for (const auto& s : body) {
    fn(s);
    if (const auto* ie = std::get_if<IfElse>(&s.node)) {
      visit_stmts(ie->then_branch, fn);
      visit_stmts(ie->else_branch, fn);
    }
  }
}

/// Splits nested conjunctions into their top-level conjuncts.
inline void collect_conjuncts(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (!f) return;
  if (const auto* a = std::get_if<And>(&f->node)) {
    collect_conjuncts(a->lhs, out);
    collect_conjuncts(a->rhs, out);
  } else {
    out.push_back(f);
  }
}

inline std::vector<FormulaPtr> conjuncts(const FormulaPtr& f) {
  std::vector<FormulaPtr> out;
  collect_conjuncts(f, out);
  return out;
}

/// Substitutes variables in an expression according to `map`; variables
/// without an entry are kept.
inline ExprPtr subst_expr(const ExprPtr& e,
                          const std::function<ExprPtr(const std::string&)>& map) {
  if (const auto* v = std::get_if<Var>(&e->node)) {
    if (ExprPtr repl = map(v->name)) return repl;
    return e;
  }
  if (const auto* b = std::get_if<Binary>(&e->node)) {
    return mk_bin(b->op, subst_expr(b->lhs, map), subst_expr(b->rhs, map), e->pos);
  }
  if (const auto* p = std::get_if<Pow>(&e->node)) {
    return mk_pow(subst_expr(p->base, map), p->exponent, e->pos);
  }
  return e;  // Const
}

inline FormulaPtr subst_formula(const FormulaPtr& f,
                                const std::function<ExprPtr(const std::string&)>& map) {
  if (const auto* c = std::get_if<Cmp>(&f->node)) {
    return mk_cmp(c->op, subst_expr(c->lhs, map), subst_expr(c->rhs, map), f->pos);
  }
  if (const auto* n = std::get_if<Not>(&f->node)) return mk_not(subst_formula(n->f, map), f->pos);
  if (const auto* a = std::get_if<And>(&f->node)) {
    return mk_and(subst_formula(a->lhs, map), subst_formula(a->rhs, map), f->pos);
  }
  if (const auto* o = std::get_if<Or>(&f->node)) {
    return mk_or(subst_formula(o->lhs, map), subst_formula(o->rhs, map), f->pos);
  }
  return f;  // BoolConst
}

inline CmpOp negate_cmp(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return CmpOp::Ne;
    case CmpOp::Ne: return CmpOp::Eq;
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Gt: return CmpOp::Le;
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Ge: return CmpOp::Lt;
  }
  return CmpOp::Eq;
}

}  // namespace loopinv
