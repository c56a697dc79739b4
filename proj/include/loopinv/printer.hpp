#pragma once

#include "loopinv/ast.hpp"

#include <sstream>
#include <string>

namespace loopinv {

// Pretty-printer for the mini language. print(parse(s)) re-parses to an
// identical tree, which the round-trip tests rely on.

namespace detail {

// precedence levels: 0 add/sub, 1 mul/div, 2 unary/pow, 3 primary
inline int expr_prec(const Expr& e) {
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    return (b->op == BinOp::Add || b->op == BinOp::Sub) ? 0 : 1;
  }
  if (std::holds_alternative<Pow>(e.node)) return 2;
  if (const auto* c = std::get_if<Const>(&e.node)) {
    return (c->value < 0) ? 2 : 3;  // negative literals print with a leading '-'
  }
  return 3;
}

inline void print_expr(std::ostream& os, const ExprPtr& e, int parent_prec) {
  int prec = expr_prec(*e);
  bool paren = prec < parent_prec;
  if (paren) os << "(";
  if (const auto* v = std::get_if<Var>(&e->node)) {
    os << v->name;
  } else if (const auto* c = std::get_if<Const>(&e->node)) {
    os << to_string(c->value);
  } else if (const auto* b = std::get_if<Binary>(&e->node)) {
    const char* op = b->op == BinOp::Add ? " + "
                   : b->op == BinOp::Sub ? " - "
                   : b->op == BinOp::Mul ? "*" : "/";
    print_expr(os, b->lhs, prec);
    os << op;
    // right operand needs one more level so a - (b - c) keeps its parens
    print_expr(os, b->rhs, prec + 1);
  } else if (const auto* p = std::get_if<Pow>(&e->node)) {
    print_expr(os, p->base, 3);
    os << "^" << p->exponent;
  }
  if (paren) os << ")";
}

inline const char* cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return " == ";
    case CmpOp::Ne: return " != ";
    case CmpOp::Lt: return " < ";
    case CmpOp::Gt: return " > ";
    case CmpOp::Le: return " <= ";
    case CmpOp::Ge: return " >= ";
  }
  return " == ";
}

// precedence: 0 or, 1 and, 2 not, 3 atom
inline int formula_prec(const Formula& f) {
  if (std::holds_alternative<Or>(f.node)) return 0;
  if (std::holds_alternative<And>(f.node)) return 1;
  if (std::holds_alternative<Not>(f.node)) return 2;
  return 3;
}

inline void print_formula(std::ostream& os, const FormulaPtr& f, int parent_prec) {
  int prec = formula_prec(*f);
  bool paren = prec < parent_prec;
  if (paren) os << "(";
  if (const auto* c = std::get_if<Cmp>(&f->node)) {
    print_expr(os, c->lhs, 0);
    os << cmp_text(c->op);
    print_expr(os, c->rhs, 0);
  } else if (const auto* n = std::get_if<Not>(&f->node)) {
    os << "!";
    print_formula(os, n->f, 3);
  } else if (const auto* a = std::get_if<And>(&f->node)) {
    print_formula(os, a->lhs, 1);
    os << " && ";
    print_formula(os, a->rhs, 2);
  } else if (const auto* o = std::get_if<Or>(&f->node)) {
    print_formula(os, o->lhs, 0);
    os << " || ";
    print_formula(os, o->rhs, 1);
  } else if (const auto* b = std::get_if<BoolConst>(&f->node)) {
    os << (b->value ? "true" : "false");
  }
  if (paren) os << ")";
}

inline void print_stmts(std::ostream& os, const std::vector<Stmt>& body, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  for (const auto& s : body) {
    if (const auto* a = std::get_if<Assign>(&s.node)) {
      os << pad << a->target << " = ";
      print_expr(os, a->expr, 0);
      os << ";\n";
    } else if (const auto* ie = std::get_if<IfElse>(&s.node)) {
      os << pad << "if (";
      if (std::holds_alternative<NondetChoice>(ie->cond)) {
        os << "unknown()";
      } else {
        print_formula(os, std::get<FormulaPtr>(ie->cond), 0);
      }
      os << ") {\n";
      print_stmts(os, ie->then_branch, indent + 1);
      os << pad << "}";
      if (!ie->else_branch.empty()) {
        os << " else {\n";
        print_stmts(os, ie->else_branch, indent + 1);
        os << pad << "}";
      }
      os << "\n";
    }
  }
}

}  // namespace detail

inline std::string print(const ExprPtr& e) {
  std::ostringstream os;
  detail::print_expr(os, e, 0);
  return os.str();
}

inline std::string print(const FormulaPtr& f) {
  std::ostringstream os;
  detail::print_formula(os, f, 0);
  return os.str();
}

inline std::string print(const Program& p) {
  std::ostringstream os;
  if (p.sort == VarSort::Int) os << "sort: int;\n";
  os << "pre: " << print(p.pre) << ";\n";
  os << "while (" << print(p.loop_cond) << ") {\n";
  detail::print_stmts(os, p.body, 1);
  os << "}\n";
  os << "post: " << print(p.post) << ";\n";
  return os.str();
}

/// Structural equality of expression trees (positions ignored).
inline bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->node.index() != b->node.index()) return false;
  if (const auto* v = std::get_if<Var>(&a->node)) {
    return v->name == std::get<Var>(b->node).name;
  }
  if (const auto* c = std::get_if<Const>(&a->node)) {
    return c->value == std::get<Const>(b->node).value;
  }
  if (const auto* x = std::get_if<Binary>(&a->node)) {
    const auto& y = std::get<Binary>(b->node);
    return x->op == y.op && equal(x->lhs, y.lhs) && equal(x->rhs, y.rhs);
  }
  const auto& xp = std::get<Pow>(a->node);
  const auto& yp = std::get<Pow>(b->node);
  return xp.exponent == yp.exponent && equal(xp.base, yp.base);
}

inline bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->node.index() != b->node.index()) return false;
  if (const auto* c = std::get_if<Cmp>(&a->node)) {
    const auto& d = std::get<Cmp>(b->node);
    return c->op == d.op && equal(c->lhs, d.lhs) && equal(c->rhs, d.rhs);
  }
  if (const auto* n = std::get_if<Not>(&a->node)) {
    return equal(n->f, std::get<Not>(b->node).f);
  }
  if (const auto* x = std::get_if<And>(&a->node)) {
    const auto& y = std::get<And>(b->node);
    return equal(x->lhs, y.lhs) && equal(x->rhs, y.rhs);
  }
  if (const auto* o = std::get_if<Or>(&a->node)) {
    const auto& y = std::get<Or>(b->node);
    return equal(o->lhs, y.lhs) && equal(o->rhs, y.rhs);
  }
  return std::get<BoolConst>(a->node).value == std::get<BoolConst>(b->node).value;
}

inline bool equal(const Stmt& a, const Stmt& b);

inline bool equal(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!equal(a[i], b[i])) return false;
  }
  return true;
}

inline bool equal(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* x = std::get_if<Assign>(&a.node)) {
    const auto& y = std::get<Assign>(b.node);
    return x->target == y.target && equal(x->expr, y.expr);
  }
  const auto& x = std::get<IfElse>(a.node);
  const auto& y = std::get<IfElse>(b.node);
  if (x.cond.index() != y.cond.index()) return false;
  if (const auto* f = std::get_if<FormulaPtr>(&x.cond)) {
    if (!equal(*f, std::get<FormulaPtr>(y.cond))) return false;
  }
  return equal(x.then_branch, y.then_branch) && equal(x.else_branch, y.else_branch);
}

inline bool equal(const Program& a, const Program& b) {
  return a.name == b.name && a.vars == b.vars && a.sort == b.sort &&
         equal(a.pre, b.pre) && equal(a.loop_cond, b.loop_cond) &&
         equal(a.post, b.post) && equal(a.body, b.body);
}

}  // namespace loopinv
