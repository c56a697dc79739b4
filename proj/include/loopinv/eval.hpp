#pragma once

#include "loopinv/ast.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace loopinv {

using Assignment = std::map<std::string, Rational>;

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact rational evaluation of an arithmetic expression.
inline Rational eval_expr(const ExprPtr& e, const Assignment& env) {
  if (const auto* v = std::get_if<Var>(&e->node)) {
    auto it = env.find(v->name);
    if (it == env.end()) throw EvalError("unbound variable '" + v->name + "'");
    return it->second;
  }
  if (const auto* c = std::get_if<Const>(&e->node)) return c->value;
  if (const auto* b = std::get_if<Binary>(&e->node)) {
    Rational l = eval_expr(b->lhs, env);
    Rational r = eval_expr(b->rhs, env);
    switch (b->op) {
      case BinOp::Add: return l + r;
      case BinOp::Sub: return l - r;
      case BinOp::Mul: return l * r;
      case BinOp::Div:
        if (r == 0) throw EvalError("division by zero");
        return l / r;
    }
  }
  const auto& p = std::get<Pow>(e->node);
  Rational base = eval_expr(p.base, env);
  Rational acc(1);
  for (unsigned i = 0; i < p.exponent; ++i) acc *= base;
  return acc;
}

inline bool eval_cmp(CmpOp op, const Rational& l, const Rational& r) {
  switch (op) {
    case CmpOp::Eq: return l == r;
    case CmpOp::Ne: return l != r;
    case CmpOp::Lt: return l < r;
    case CmpOp::Gt: return l > r;
    case CmpOp::Le: return l <= r;
    case CmpOp::Ge: return l >= r;
  }
  return false;
}

/// Exact boolean evaluation of a formula under a total assignment.
inline bool eval_formula(const FormulaPtr& f, const Assignment& env) {
  if (const auto* c = std::get_if<Cmp>(&f->node)) {
    return eval_cmp(c->op, eval_expr(c->lhs, env), eval_expr(c->rhs, env));
  }
  if (const auto* n = std::get_if<Not>(&f->node)) return !eval_formula(n->f, env);
  if (const auto* a = std::get_if<And>(&f->node)) {
    return eval_formula(a->lhs, env) && eval_formula(a->rhs, env);
  }
  if (const auto* o = std::get_if<Or>(&f->node)) {
    return eval_formula(o->lhs, env) || eval_formula(o->rhs, env);
  }
  return std::get<BoolConst>(f->node).value;
}

/// Syntactic degree of an expression: variables count 1, products add,
/// powers multiply. Division by a non-constant is treated as nonlinear.
inline unsigned expr_degree(const ExprPtr& e) {
  if (std::holds_alternative<Var>(e->node)) return 1;
  if (std::holds_alternative<Const>(e->node)) return 0;
  if (const auto* b = std::get_if<Binary>(&e->node)) {
    unsigned l = expr_degree(b->lhs);
    unsigned r = expr_degree(b->rhs);
    switch (b->op) {
      case BinOp::Add:
      case BinOp::Sub: return std::max(l, r);
      case BinOp::Mul: return l + r;
      case BinOp::Div: return r == 0 ? l : l + r + 1;
    }
  }
  const auto& p = std::get<Pow>(e->node);
  return expr_degree(p.base) * p.exponent;
}

inline unsigned formula_degree(const FormulaPtr& f) {
  unsigned deg = 0;
  visit_formulas(f, [&](const Formula& node) {
    if (const auto* c = std::get_if<Cmp>(&node.node)) {
      deg = std::max({deg, expr_degree(c->lhs), expr_degree(c->rhs)});
    }
  });
  return deg;
}

}  // namespace loopinv
