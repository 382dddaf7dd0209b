#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dcmon/quantity.hpp"

namespace dcmon::dc {

struct StateNode;
struct TermNode;
struct FormulaNode;

/// Immutable, shareable AST handles. Structural comparison via equal().
using State = std::shared_ptr<const StateNode>;
using Term = std::shared_ptr<const TermNode>;
using Formula = std::shared_ptr<const FormulaNode>;

// ---------------------------------------------------------------------------
// State assertions: 0 | 1 | X = d | !P | P & Q, plus sugar for | and =>.

enum class StateKind { Const0, Const1, VarEq, Not, And, Or, Implies };

struct StateNode {
  StateKind kind;
  std::string var;  // VarEq
  int value = 1;    // VarEq
  State lhs;        // Not, And, Or, Implies
  State rhs;        // And, Or, Implies
};

State const0();
State const1();
/// X = d; a bare Boolean observable is obs("X").
State obs(std::string name, int value = 1);
State negate(State p);
State conj(State p, State q);
State disj(State p, State q);
State implies(State p, State q);

// ---------------------------------------------------------------------------
// Terms: x | len | int(P) | f(t1, ..., tn).

enum class TermKind { GlobalVar, Length, Duration, Apply };

/// Function symbols. Literal is the nullary constant; Sub with one argument
/// is negation; Min/Max take one or more arguments.
enum class Fn { Literal, Add, Sub, Mul, Div, Min, Max };

struct TermNode {
  TermKind kind;
  std::string name;         // GlobalVar
  State state;              // Duration
  Fn fn = Fn::Literal;      // Apply
  Rational literal{0};      // Apply(Literal)
  std::vector<Term> args;   // Apply
};

Term global(std::string name);
Term length();
Term duration(State p);
Term literal(Rational value);
Term apply(Fn fn, std::vector<Term> args);
Term add(Term a, Term b);
Term sub(Term a, Term b);
Term mul(Term a, Term b);
Term div(Term a, Term b);
Term neg(Term a);
Term minimum(std::vector<Term> args);
Term maximum(std::vector<Term> args);

// ---------------------------------------------------------------------------
// Formulas: p(t1, t2) | !F | F & G | forall x . F | F ; G, plus sugar.

/// Finite quantifier domain: either inline values or a name resolved against
/// the valuation's declared domains (when `name` is non-empty).
struct Domain {
  std::string name;
  std::vector<Rational> values;
};

enum class FormulaKind {
  True,
  False,
  Pred,
  Not,
  And,
  Or,
  Implies,
  ForAll,
  Exists,
  Chop,
  AlmostEverywhere,  // ae(P)  == int(P) = len & len > 0
  Box,               // [] F   == !(true ; !F ; true)
  Diamond,           // <> F   == true ; F ; true
  Point,             // pt     == len = 0
};

struct FormulaNode {
  FormulaKind kind;
  Relation rel = Relation::Eq;  // Pred
  Term lhs_term;                // Pred
  Term rhs_term;                // Pred
  Formula lhs;                  // unary/binary connectives, quantifier body
  Formula rhs;                  // binary connectives
  State state;                  // AlmostEverywhere
  std::string var;              // ForAll, Exists
  Domain domain;                // ForAll, Exists
};

Formula truth();
Formula falsity();
Formula pred(Relation rel, Term lhs, Term rhs);
Formula negate(Formula f);
Formula conj(Formula f, Formula g);
Formula disj(Formula f, Formula g);
Formula implies(Formula f, Formula g);
Formula forall(std::string var, Domain domain, Formula body);
Formula exists(std::string var, Domain domain, Formula body);
Formula chop(Formula f, Formula g);
Formula ae(State p);
Formula box(Formula f);
Formula diamond(Formula f);
Formula point();

/// Rewrites every derived construct (Or, Implies, Exists, True, False, ae,
/// box, diamond, pt) into the core constructors Pred/Not/And/ForAll/Chop and
/// core state assertions. The result is semantically equivalent.
Formula expand(const Formula& f);
State expand(const State& p);

bool equal(const State& a, const State& b);
bool equal(const Term& a, const Term& b);
bool equal(const Formula& a, const Formula& b);

/// Nesting depth (leaves have depth 1).
int depth(const Formula& f);

}  // namespace dcmon::dc
