#include "dcmon/dc/parser.hpp"

#include <string>

namespace dcmon::dc {

namespace {

// Binding strength; a child is parenthesised when it binds looser than the
// slot it occupies.
enum FormulaPrec { kQuant = 0, kChop = 1, kImplies = 2, kOr = 3, kAnd = 4, kUnary = 5, kAtom = 6 };
enum StatePrec { kSImplies = 1, kSOr = 2, kSAnd = 3, kSNot = 4, kSAtom = 5 };
enum TermPrec { kAdd = 1, kMul = 2, kNeg = 3, kTAtom = 4 };

std::string literal_text(const Rational& r) {
  if (is_decimal(r)) return format_decimal(r);
  // No literal syntax for non-terminating rationals; print as a quotient.
  return "(" + std::to_string(r.numerator()) + " / " + std::to_string(r.denominator()) + ")";
}

int state_prec(const State& p) {
  switch (p->kind) {
    case StateKind::Implies: return kSImplies;
    case StateKind::Or: return kSOr;
    case StateKind::And: return kSAnd;
    case StateKind::Not: return kSNot;
    default: return kSAtom;
  }
}

std::string state_text(const State& p, int slot) {
  std::string out;
  switch (p->kind) {
    case StateKind::Const0: return "0";
    case StateKind::Const1: return "1";
    case StateKind::VarEq:
      if (p->value == 1) return p->var;
      out = p->var + " = " + std::to_string(p->value);
      // "X = d" under '!' reads ambiguously; bracket it.
      return slot >= kSNot ? "(" + out + ")" : out;
    case StateKind::Not: out = "!" + state_text(p->lhs, kSNot); break;
    case StateKind::And:
      out = state_text(p->lhs, kSAnd) + " & " + state_text(p->rhs, kSAnd + 1);
      break;
    case StateKind::Or: out = state_text(p->lhs, kSOr) + " | " + state_text(p->rhs, kSOr + 1); break;
    case StateKind::Implies:
      out = state_text(p->lhs, kSImplies + 1) + " => " + state_text(p->rhs, kSImplies);
      break;
  }
  return state_prec(p) < slot ? "(" + out + ")" : out;
}

int term_prec(const Term& t) {
  if (t->kind != TermKind::Apply) return kTAtom;
  switch (t->fn) {
    case Fn::Add: return kAdd;
    case Fn::Sub: return t->args.size() == 1 ? kNeg : kAdd;
    case Fn::Mul:
    case Fn::Div: return kMul;
    case Fn::Literal: return t->literal < 0 ? kNeg : kTAtom;
    default: return kTAtom;
  }
}

std::string term_text(const Term& t, int slot) {
  std::string out;
  switch (t->kind) {
    case TermKind::GlobalVar: return t->name;
    case TermKind::Length: return "len";
    case TermKind::Duration: return "int(" + state_text(t->state, 0) + ")";
    case TermKind::Apply: break;
  }
  switch (t->fn) {
    case Fn::Literal: out = literal_text(t->literal); break;
    case Fn::Add:
      out = term_text(t->args[0], kAdd) + " + " + term_text(t->args[1], kAdd + 1);
      break;
    case Fn::Sub:
      if (t->args.size() == 1) {
        out = "-(" + term_text(t->args[0], 0) + ")";
      } else {
        out = term_text(t->args[0], kAdd) + " - " + term_text(t->args[1], kAdd + 1);
      }
      break;
    case Fn::Mul:
      out = term_text(t->args[0], kMul) + " * " + term_text(t->args[1], kMul + 1);
      break;
    case Fn::Div:
      out = term_text(t->args[0], kMul) + " / " + term_text(t->args[1], kMul + 1);
      break;
    case Fn::Min:
    case Fn::Max: {
      out = t->fn == Fn::Min ? "min(" : "max(";
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) out += ", ";
        out += term_text(t->args[i], 0);
      }
      out += ")";
      break;
    }
  }
  return term_prec(t) < slot ? "(" + out + ")" : out;
}

const char* relation_text(Relation rel) {
  switch (rel) {
    case Relation::Eq: return "=";
    case Relation::Ne: return "!=";
    case Relation::Lt: return "<";
    case Relation::Le: return "<=";
    case Relation::Gt: return ">";
    case Relation::Ge: return ">=";
  }
  return "?";
}

int formula_prec(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::ForAll:
    case FormulaKind::Exists: return kQuant;
    case FormulaKind::Chop: return kChop;
    case FormulaKind::Implies: return kImplies;
    case FormulaKind::Or: return kOr;
    case FormulaKind::And: return kAnd;
    case FormulaKind::Not:
    case FormulaKind::Box:
    case FormulaKind::Diamond: return kUnary;
    default: return kAtom;
  }
}

std::string domain_text(const Domain& d) {
  if (!d.name.empty()) return d.name;
  std::string out = "{";
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    if (i) out += ", ";
    out += literal_text(d.values[i]);
  }
  return out + "}";
}

std::string formula_text(const Formula& f, int slot) {
  std::string out;
  switch (f->kind) {
    case FormulaKind::True: return "true";
    case FormulaKind::False: return "false";
    case FormulaKind::Point: return "pt";
    case FormulaKind::AlmostEverywhere: return "ae(" + state_text(f->state, 0) + ")";
    case FormulaKind::Pred:
      out = term_text(f->lhs_term, 0) + " " + relation_text(f->rel) + " " +
            term_text(f->rhs_term, 0);
      // Predicates bind like atoms but read badly under prefix operators.
      return slot >= kUnary ? "(" + out + ")" : out;
    case FormulaKind::Not: out = "!" + formula_text(f->lhs, kUnary); break;
    case FormulaKind::Box: out = "[]" + formula_text(f->lhs, kUnary); break;
    case FormulaKind::Diamond: out = "<>" + formula_text(f->lhs, kUnary); break;
    case FormulaKind::And:
      out = formula_text(f->lhs, kAnd) + " & " + formula_text(f->rhs, kAnd + 1);
      break;
    case FormulaKind::Or:
      out = formula_text(f->lhs, kOr) + " | " + formula_text(f->rhs, kOr + 1);
      break;
    case FormulaKind::Implies:
      out = formula_text(f->lhs, kImplies + 1) + " => " + formula_text(f->rhs, kImplies);
      break;
    case FormulaKind::Chop:
      out = formula_text(f->lhs, kChop + 1) + " ; " + formula_text(f->rhs, kChop);
      break;
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
      out = std::string(f->kind == FormulaKind::ForAll ? "forall " : "exists ") + f->var +
            " in " + domain_text(f->domain) + ": " + formula_text(f->lhs, kQuant);
      break;
  }
  return formula_prec(f) < slot ? "(" + out + ")" : out;
}

}  // namespace

std::string format(const Formula& f) { return formula_text(f, 0); }
std::string format(const State& p) { return state_text(p, 0); }
std::string format(const Term& t) { return term_text(t, 0); }

}  // namespace dcmon::dc
