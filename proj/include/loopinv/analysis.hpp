#pragma once

#include "loopinv/ast.hpp"
#include "loopinv/eval.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>

namespace loopinv {

/// One-sided or two-sided interval implied by the precondition for a single
/// variable; missing bounds are open.
struct Interval {
  std::optional<Rational> lo, hi;
  bool lo_strict = false, hi_strict = false;

  bool contains(const Rational& v) const {
    if (lo && (lo_strict ? !(v > *lo) : !(v >= *lo))) return false;
    if (hi && (hi_strict ? !(v < *hi) : !(v <= *hi))) return false;
    return true;
  }
};

struct StaticFacts {
  std::set<Rational> constants;                     // always contains 0 and 1
  std::map<std::string, Rational> initialized_consts;
  FormulaPtr loop_cond;
  std::map<std::string, Interval> pre_bounds;
};

namespace detail {

inline void tighten_lo(Interval& iv, const Rational& v, bool strict) {
  if (!iv.lo || v > *iv.lo || (v == *iv.lo && strict)) {
    iv.lo = v;
    iv.lo_strict = strict;
  }
}
inline void tighten_hi(Interval& iv, const Rational& v, bool strict) {
  if (!iv.hi || v < *iv.hi || (v == *iv.hi && strict)) {
    iv.hi = v;
    iv.hi_strict = strict;
  }
}

/// Matches a conjunct of the shape var <op> literal (either orientation);
/// returns false for anything else.
inline bool as_var_const(const FormulaPtr& f, std::string& var, CmpOp& op, Rational& value) {
  const auto* c = std::get_if<Cmp>(&f->node);
  if (!c) return false;
  const auto* lv = std::get_if<Var>(&c->lhs->node);
  const auto* rc = std::get_if<Const>(&c->rhs->node);
  if (lv && rc) {
    var = lv->name;
    op = c->op;
    value = rc->value;
    return true;
  }
  const auto* lc = std::get_if<Const>(&c->lhs->node);
  const auto* rv = std::get_if<Var>(&c->rhs->node);
  if (lc && rv) {
    var = rv->name;
    value = lc->value;
    switch (c->op) {  // mirror the comparison
      case CmpOp::Lt: op = CmpOp::Gt; break;
      case CmpOp::Gt: op = CmpOp::Lt; break;
      case CmpOp::Le: op = CmpOp::Ge; break;
      case CmpOp::Ge: op = CmpOp::Le; break;
      default: op = c->op; break;
    }
    return true;
  }
  return false;
}

}  // namespace detail

/// Harvests constants, once-initialized variables, the loop condition, and
/// per-variable precondition intervals from a program.
inline StaticFacts analyze(const Program& p) {
  StaticFacts facts;
  facts.loop_cond = p.loop_cond;
  facts.constants.insert(Rational(0));
  facts.constants.insert(Rational(1));

  auto harvest = [&](const Expr& e) {
    if (const auto* c = std::get_if<Const>(&e.node)) facts.constants.insert(c->value);
  };
  visit_formula_exprs(p.pre, harvest);
  visit_formula_exprs(p.loop_cond, harvest);
  visit_formula_exprs(p.post, harvest);
  visit_stmts(p.body, [&](const Stmt& s) {
    if (const auto* a = std::get_if<Assign>(&s.node)) {
      visit_exprs(a->expr, harvest);
    } else if (const auto* ie = std::get_if<IfElse>(&s.node)) {
      if (const auto* f = std::get_if<FormulaPtr>(&ie->cond)) visit_formula_exprs(*f, harvest);
    }
  });

  std::set<std::string> assigned_in_body;
  visit_stmts(p.body, [&](const Stmt& s) {
    if (const auto* a = std::get_if<Assign>(&s.node)) assigned_in_body.insert(a->target);
  });

  // var = literal conjuncts of the precondition
  std::map<std::string, int> eq_count;
  std::map<std::string, Rational> eq_value;
  for (const auto& cj : conjuncts(p.pre)) {
    std::string var;
    CmpOp op;
    Rational value;
    if (!detail::as_var_const(cj, var, op, value)) continue;
    Interval& iv = facts.pre_bounds[var];
    switch (op) {
      case CmpOp::Eq:
        detail::tighten_lo(iv, value, false);
        detail::tighten_hi(iv, value, false);
        eq_count[var]++;
        eq_value[var] = value;
        break;
      case CmpOp::Ge: detail::tighten_lo(iv, value, false); break;
      case CmpOp::Gt: detail::tighten_lo(iv, value, true); break;
      case CmpOp::Le: detail::tighten_hi(iv, value, false); break;
      case CmpOp::Lt: detail::tighten_hi(iv, value, true); break;
      case CmpOp::Ne: break;
    }
  }
  for (const auto& [var, n] : eq_count) {
    if (n == 1 && !assigned_in_body.count(var)) {
      facts.initialized_consts.emplace(var, eq_value.at(var));
    }
  }
  return facts;
}

}  // namespace loopinv
