#include "dcmon/dc/ast.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcmon::dc {

namespace {

State make_state(StateKind kind, State lhs = nullptr, State rhs = nullptr) {
  auto node = std::make_shared<StateNode>();
  node->kind = kind;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

Formula make_formula(FormulaKind kind, Formula lhs = nullptr, Formula rhs = nullptr) {
  auto node = std::make_shared<FormulaNode>();
  node->kind = kind;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

State const0() { return make_state(StateKind::Const0); }
State const1() { return make_state(StateKind::Const1); }

State obs(std::string name, int value) {
  auto node = std::make_shared<StateNode>();
  node->kind = StateKind::VarEq;
  node->var = std::move(name);
  node->value = value;
  return node;
}

State negate(State p) {
  require(p != nullptr, "null state assertion");
  return make_state(StateKind::Not, std::move(p));
}
State conj(State p, State q) {
  require(p && q, "null state assertion");
  return make_state(StateKind::And, std::move(p), std::move(q));
}
State disj(State p, State q) {
  require(p && q, "null state assertion");
  return make_state(StateKind::Or, std::move(p), std::move(q));
}
State implies(State p, State q) {
  require(p && q, "null state assertion");
  return make_state(StateKind::Implies, std::move(p), std::move(q));
}

Term global(std::string name) {
  auto node = std::make_shared<TermNode>();
  node->kind = TermKind::GlobalVar;
  node->name = std::move(name);
  return node;
}

Term length() {
  auto node = std::make_shared<TermNode>();
  node->kind = TermKind::Length;
  return node;
}

Term duration(State p) {
  require(p != nullptr, "null state assertion");
  auto node = std::make_shared<TermNode>();
  node->kind = TermKind::Duration;
  node->state = std::move(p);
  return node;
}

Term literal(Rational value) {
  auto node = std::make_shared<TermNode>();
  node->kind = TermKind::Apply;
  node->fn = Fn::Literal;
  node->literal = value;
  return node;
}

Term apply(Fn fn, std::vector<Term> args) {
  switch (fn) {
    case Fn::Literal: require(args.empty(), "literal takes no arguments"); break;
    case Fn::Sub: require(args.size() == 1 || args.size() == 2, "'-' takes one or two arguments"); break;
    case Fn::Add:
    case Fn::Mul:
    case Fn::Div: require(args.size() == 2, "binary operator needs two arguments"); break;
    case Fn::Min:
    case Fn::Max: require(!args.empty(), "min/max need at least one argument"); break;
  }
  for (const auto& a : args) require(a != nullptr, "null term");
  auto node = std::make_shared<TermNode>();
  node->kind = TermKind::Apply;
  node->fn = fn;
  node->args = std::move(args);
  return node;
}

Term add(Term a, Term b) { return apply(Fn::Add, {std::move(a), std::move(b)}); }
Term sub(Term a, Term b) { return apply(Fn::Sub, {std::move(a), std::move(b)}); }
Term mul(Term a, Term b) { return apply(Fn::Mul, {std::move(a), std::move(b)}); }
Term div(Term a, Term b) { return apply(Fn::Div, {std::move(a), std::move(b)}); }
Term neg(Term a) { return apply(Fn::Sub, {std::move(a)}); }
Term minimum(std::vector<Term> args) { return apply(Fn::Min, std::move(args)); }
Term maximum(std::vector<Term> args) { return apply(Fn::Max, std::move(args)); }

Formula truth() { return make_formula(FormulaKind::True); }
Formula falsity() { return make_formula(FormulaKind::False); }

Formula pred(Relation rel, Term lhs, Term rhs) {
  require(lhs && rhs, "null term");
  auto node = std::make_shared<FormulaNode>();
  node->kind = FormulaKind::Pred;
  node->rel = rel;
  node->lhs_term = std::move(lhs);
  node->rhs_term = std::move(rhs);
  return node;
}

Formula negate(Formula f) {
  require(f != nullptr, "null formula");
  return make_formula(FormulaKind::Not, std::move(f));
}
Formula conj(Formula f, Formula g) {
  require(f && g, "null formula");
  return make_formula(FormulaKind::And, std::move(f), std::move(g));
}
Formula disj(Formula f, Formula g) {
  require(f && g, "null formula");
  return make_formula(FormulaKind::Or, std::move(f), std::move(g));
}
Formula implies(Formula f, Formula g) {
  require(f && g, "null formula");
  return make_formula(FormulaKind::Implies, std::move(f), std::move(g));
}

namespace {
Formula quantifier(FormulaKind kind, std::string var, Domain domain, Formula body) {
  require(body != nullptr, "null formula");
  require(!var.empty(), "quantifier needs a variable");
  auto node = std::make_shared<FormulaNode>();
  node->kind = kind;
  node->var = std::move(var);
  node->domain = std::move(domain);
  node->lhs = std::move(body);
  return node;
}
}  // namespace

Formula forall(std::string var, Domain domain, Formula body) {
  return quantifier(FormulaKind::ForAll, std::move(var), std::move(domain), std::move(body));
}
Formula exists(std::string var, Domain domain, Formula body) {
  return quantifier(FormulaKind::Exists, std::move(var), std::move(domain), std::move(body));
}

Formula chop(Formula f, Formula g) {
  require(f && g, "null formula");
  return make_formula(FormulaKind::Chop, std::move(f), std::move(g));
}

Formula ae(State p) {
  require(p != nullptr, "null state assertion");
  auto node = std::make_shared<FormulaNode>();
  node->kind = FormulaKind::AlmostEverywhere;
  node->state = std::move(p);
  return node;
}

Formula box(Formula f) {
  require(f != nullptr, "null formula");
  return make_formula(FormulaKind::Box, std::move(f));
}
Formula diamond(Formula f) {
  require(f != nullptr, "null formula");
  return make_formula(FormulaKind::Diamond, std::move(f));
}
Formula point() { return make_formula(FormulaKind::Point); }

State expand(const State& p) {
  switch (p->kind) {
    case StateKind::Const0:
    case StateKind::Const1:
    case StateKind::VarEq: return p;
    case StateKind::Not: return negate(expand(p->lhs));
    case StateKind::And: return conj(expand(p->lhs), expand(p->rhs));
    case StateKind::Or: return negate(conj(negate(expand(p->lhs)), negate(expand(p->rhs))));
    case StateKind::Implies: return negate(conj(expand(p->lhs), negate(expand(p->rhs))));
  }
  return p;
}

namespace {
Term expand_term(const Term& t) {
  switch (t->kind) {
    case TermKind::GlobalVar:
    case TermKind::Length: return t;
    case TermKind::Duration: return duration(expand(t->state));
    case TermKind::Apply: {
      if (t->fn == Fn::Literal) return t;
      std::vector<Term> args;
      for (const auto& a : t->args) args.push_back(expand_term(a));
      return apply(t->fn, std::move(args));
    }
  }
  return t;
}

Formula core_true() { return pred(Relation::Eq, literal(0), literal(0)); }
}  // namespace

Formula expand(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::True: return core_true();
    case FormulaKind::False: return negate(core_true());
    case FormulaKind::Pred:
      return pred(f->rel, expand_term(f->lhs_term), expand_term(f->rhs_term));
    case FormulaKind::Not: return negate(expand(f->lhs));
    case FormulaKind::And: return conj(expand(f->lhs), expand(f->rhs));
    case FormulaKind::Or: return negate(conj(negate(expand(f->lhs)), negate(expand(f->rhs))));
    case FormulaKind::Implies: return negate(conj(expand(f->lhs), negate(expand(f->rhs))));
    case FormulaKind::ForAll: return forall(f->var, f->domain, expand(f->lhs));
    case FormulaKind::Exists:
      return negate(forall(f->var, f->domain, negate(expand(f->lhs))));
    case FormulaKind::Chop: return chop(expand(f->lhs), expand(f->rhs));
    case FormulaKind::AlmostEverywhere:
      return conj(pred(Relation::Eq, duration(expand(f->state)), length()),
                  pred(Relation::Gt, length(), literal(0)));
    case FormulaKind::Box:
      return negate(chop(core_true(), chop(negate(expand(f->lhs)), core_true())));
    case FormulaKind::Diamond: return chop(core_true(), chop(expand(f->lhs), core_true()));
    case FormulaKind::Point: return pred(Relation::Eq, length(), literal(0));
  }
  return f;
}

bool equal(const State& a, const State& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case StateKind::Const0:
    case StateKind::Const1: return true;
    case StateKind::VarEq: return a->var == b->var && a->value == b->value;
    case StateKind::Not: return equal(a->lhs, b->lhs);
    default: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
}

bool equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::GlobalVar: return a->name == b->name;
    case TermKind::Length: return true;
    case TermKind::Duration: return equal(a->state, b->state);
    case TermKind::Apply:
      if (a->fn != b->fn || a->args.size() != b->args.size()) return false;
      if (a->fn == Fn::Literal) return a->literal == b->literal;
      return std::equal(a->args.begin(), a->args.end(), b->args.begin(),
                        [](const Term& x, const Term& y) { return equal(x, y); });
  }
  return false;
}

bool equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Point: return true;
    case FormulaKind::Pred:
      return a->rel == b->rel && equal(a->lhs_term, b->lhs_term) &&
             equal(a->rhs_term, b->rhs_term);
    case FormulaKind::Not:
    case FormulaKind::Box:
    case FormulaKind::Diamond: return equal(a->lhs, b->lhs);
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
      return a->var == b->var && a->domain.name == b->domain.name &&
             a->domain.values == b->domain.values && equal(a->lhs, b->lhs);
    case FormulaKind::AlmostEverywhere: return equal(a->state, b->state);
    default: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
}

int depth(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Point:
    case FormulaKind::Pred:
    case FormulaKind::AlmostEverywhere: return 1;
    case FormulaKind::Not:
    case FormulaKind::Box:
    case FormulaKind::Diamond:
    case FormulaKind::ForAll:
    case FormulaKind::Exists: return 1 + depth(f->lhs);
    default: return 1 + std::max(depth(f->lhs), depth(f->rhs));
  }
}

}  // namespace dcmon::dc
