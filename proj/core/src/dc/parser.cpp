#include "dcmon/dc/parser.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "dcmon/error.hpp"
#include "parser_impl.hpp"

namespace dcmon::dc {

namespace detail {

namespace {

bool is_reserved(const std::string& word) {
  static const char* const kReserved[] = {"true", "false", "pt",  "ae",     "len", "int",
                                          "min",  "max",   "forall", "exists", "in"};
  return std::any_of(std::begin(kReserved), std::end(kReserved),
                     [&](const char* r) { return word == r; });
}

std::optional<Relation> relation_of(Tok kind) {
  switch (kind) {
    case Tok::Eq: return Relation::Eq;
    case Tok::Ne: return Relation::Ne;
    case Tok::Lt: return Relation::Lt;
    case Tok::Le: return Relation::Le;
    case Tok::Gt: return Relation::Gt;
    case Tok::Ge: return Relation::Ge;
    default: return std::nullopt;
  }
}

}  // namespace

Parser::Parser(std::vector<Token> tokens, const Declarations* decls)
    : tokens_(std::move(tokens)), decls_(decls) {}

bool Parser::at_keyword(const char* word) const {
  return peek().kind == Tok::Ident && peek().text == word;
}

const Token& Parser::next() {
  const Token& tok = tokens_[pos_];
  if (tok.kind != Tok::End) ++pos_;
  return tok;
}

void Parser::fail(const std::string& message) const { fail_at(peek(), message); }

void Parser::fail_at(const Token& tok, const std::string& message) const {
  throw ParseError(message, tok.line, tok.column);
}

const Token& Parser::expect(Tok kind, const char* context) {
  if (!at(kind)) {
    std::string found = at(Tok::End) ? "end of input" : "'" + peek().text + "'";
    fail(std::string("expected ") + describe(kind) + " " + context + ", found " + found);
  }
  return next();
}

void Parser::expect_keyword(const char* word) {
  if (!at_keyword(word)) fail(std::string("expected '") + word + "'");
  next();
}

void Parser::expect_end() {
  if (!at(Tok::End)) fail("unexpected '" + peek().text + "' after end of expression");
}

std::string Parser::identifier(const char* context) {
  const Token& tok = expect(Tok::Ident, context);
  if (is_reserved(tok.text)) fail_at(tok, "reserved word '" + tok.text + "' used as a name");
  return tok.text;
}

Rational Parser::number(const char* context) {
  bool negative = false;
  if (at(Tok::Minus)) {
    next();
    negative = true;
  }
  const Token& tok = expect(Tok::Number, context);
  Rational value;
  try {
    value = parse_decimal(tok.text);
  } catch (const std::invalid_argument& e) {
    fail_at(tok, e.what());
  }
  return negative ? -value : value;
}

std::vector<Rational> Parser::value_list() {
  expect(Tok::LBrace, "to open a value list");
  std::vector<Rational> values;
  if (!at(Tok::RBrace)) {
    values.push_back(number("in value list"));
    while (at(Tok::Comma)) {
      next();
      values.push_back(number("in value list"));
    }
  }
  expect(Tok::RBrace, "to close a value list");
  return values;
}

// ---------------------------------------------------------------------------
// Formulas

Formula Parser::formula() {
  if (at_keyword("forall") || at_keyword("exists")) return quantified();
  return chop_level();
}

Formula Parser::quantified() {
  const bool universal = next().text == "forall";
  const Token& var_tok = peek();
  std::string var = identifier("after quantifier");
  if (decls_ && decls_->observables.count(var)) {
    fail_at(var_tok, "quantified variable '" + var + "' shadows an observable");
  }
  expect_keyword("in");
  Domain domain;
  if (at(Tok::LBrace)) {
    domain.values = value_list();
  } else {
    const Token& dom_tok = peek();
    domain.name = identifier("as quantifier domain");
    if (decls_ && !decls_->domains.count(domain.name)) {
      fail_at(dom_tok, "undeclared domain '" + domain.name + "'");
    }
  }
  expect(Tok::Colon, "after quantifier domain");
  bound_.push_back(var);
  Formula body = formula();
  bound_.pop_back();
  return universal ? forall(std::move(var), std::move(domain), std::move(body))
                   : exists(std::move(var), std::move(domain), std::move(body));
}

Formula Parser::chop_level() {
  Formula lhs = implies_level();
  if (at(Tok::Semi)) {
    next();
    return chop(std::move(lhs), chop_level());
  }
  return lhs;
}

Formula Parser::implies_level() {
  Formula lhs = or_level();
  if (at(Tok::Arrow)) {
    next();
    return implies(std::move(lhs), implies_level());
  }
  return lhs;
}

Formula Parser::or_level() {
  Formula lhs = and_level();
  while (at(Tok::Bar)) {
    next();
    lhs = disj(std::move(lhs), and_level());
  }
  return lhs;
}

Formula Parser::and_level() {
  Formula lhs = unary_level();
  while (at(Tok::Amp)) {
    next();
    lhs = conj(std::move(lhs), unary_level());
  }
  return lhs;
}

Formula Parser::unary_level() {
  if (at(Tok::Bang)) {
    next();
    return negate(unary_level());
  }
  if (at(Tok::Box)) {
    next();
    return box(unary_level());
  }
  if (at(Tok::Diamond)) {
    next();
    return diamond(unary_level());
  }
  if (at_keyword("forall") || at_keyword("exists")) return quantified();
  return primary();
}

Formula Parser::primary() {
  if (at_keyword("true")) {
    next();
    return truth();
  }
  if (at_keyword("false")) {
    next();
    return falsity();
  }
  if (at_keyword("pt")) {
    next();
    return point();
  }
  if (at_keyword("ae")) {
    next();
    expect(Tok::LParen, "after 'ae'");
    State p = state();
    expect(Tok::RParen, "to close 'ae('");
    return ae(std::move(p));
  }
  if (at(Tok::LParen)) {
    // Either a parenthesised term starting a predicate or a parenthesised
    // formula. Try the predicate reading first and keep the error that got
    // further into the input.
    const std::size_t start = pos_;
    std::size_t predicate_fail_pos = 0;
    std::optional<ParseError> predicate_error;
    try {
      return predicate();
    } catch (const ParseError& e) {
      predicate_fail_pos = pos_;
      predicate_error = e;
    }
    pos_ = start;
    try {
      next();
      Formula inner = formula();
      expect(Tok::RParen, "to close '('");
      return inner;
    } catch (const ParseError&) {
      if (pos_ < predicate_fail_pos) throw *predicate_error;
      throw;
    }
  }
  return predicate();
}

Formula Parser::predicate() {
  Term lhs = term();
  auto rel = relation_of(peek().kind);
  if (!rel) {
    std::string found = at(Tok::End) ? "end of input" : "'" + peek().text + "'";
    fail("expected a relation (=, !=, <, <=, >, >=), found " + found);
  }
  next();
  Term rhs = term();
  return pred(*rel, std::move(lhs), std::move(rhs));
}

// ---------------------------------------------------------------------------
// Terms

Term Parser::term() { return additive(); }

Term Parser::additive() {
  Term lhs = multiplicative();
  while (at(Tok::Plus) || at(Tok::Minus)) {
    const bool plus = next().kind == Tok::Plus;
    Term rhs = multiplicative();
    lhs = plus ? add(std::move(lhs), std::move(rhs)) : sub(std::move(lhs), std::move(rhs));
  }
  return lhs;
}

Term Parser::multiplicative() {
  Term lhs = unary_term();
  while (at(Tok::Star) || at(Tok::Slash)) {
    const bool times = next().kind == Tok::Star;
    Term rhs = unary_term();
    lhs = times ? mul(std::move(lhs), std::move(rhs)) : div(std::move(lhs), std::move(rhs));
  }
  return lhs;
}

Term Parser::unary_term() {
  if (at(Tok::Minus)) {
    if (tokens_[pos_ + 1].kind == Tok::Number) return literal(number("after '-'"));
    next();
    return neg(unary_term());
  }
  return atom();
}

void Parser::check_global(const Token& tok) const {
  if (!decls_) return;
  if (std::find(bound_.begin(), bound_.end(), tok.text) != bound_.end()) return;
  if (decls_->globals.count(tok.text)) return;
  if (decls_->observables.count(tok.text)) {
    fail_at(tok, "observable '" + tok.text + "' used as a term; use int(" + tok.text + ")");
  }
  fail_at(tok, "undeclared identifier '" + tok.text + "'");
}

Term Parser::atom() {
  if (at(Tok::Number)) return literal(number("as literal"));
  if (at(Tok::LParen)) {
    next();
    Term inner = term();
    expect(Tok::RParen, "to close '('");
    return inner;
  }
  if (at_keyword("len")) {
    next();
    return length();
  }
  if (at_keyword("int")) {
    next();
    expect(Tok::LParen, "after 'int'");
    State p = state();
    expect(Tok::RParen, "to close 'int('");
    return duration(std::move(p));
  }
  if (at_keyword("min") || at_keyword("max")) {
    const bool is_min = next().text == "min";
    expect(Tok::LParen, is_min ? "after 'min'" : "after 'max'");
    std::vector<Term> args{term()};
    while (at(Tok::Comma)) {
      next();
      args.push_back(term());
    }
    expect(Tok::RParen, "to close argument list");
    return is_min ? minimum(std::move(args)) : maximum(std::move(args));
  }
  if (at(Tok::Ident)) {
    const Token& tok = peek();
    std::string name = identifier("as term");
    check_global(tok);
    return global(std::move(name));
  }
  std::string found = at(Tok::End) ? "end of input" : "'" + peek().text + "'";
  fail("expected a term, found " + found);
}

// ---------------------------------------------------------------------------
// State assertions

State Parser::state() {
  State lhs = state_or();
  if (at(Tok::Arrow)) {
    next();
    return implies(std::move(lhs), state());
  }
  return lhs;
}

State Parser::state_or() {
  State lhs = state_and();
  while (at(Tok::Bar)) {
    next();
    lhs = disj(std::move(lhs), state_and());
  }
  return lhs;
}

State Parser::state_and() {
  State lhs = state_not();
  while (at(Tok::Amp)) {
    next();
    lhs = conj(std::move(lhs), state_not());
  }
  return lhs;
}

State Parser::state_not() {
  if (at(Tok::Bang)) {
    next();
    return negate(state_not());
  }
  if (at(Tok::LParen)) {
    next();
    State inner = state();
    expect(Tok::RParen, "to close '('");
    return inner;
  }
  if (at(Tok::Number)) {
    const Token& tok = next();
    if (tok.text == "0") return const0();
    if (tok.text == "1") return const1();
    fail_at(tok, "state constant must be 0 or 1");
  }
  const Token& tok = peek();
  std::string name = identifier("in state assertion");
  int value = 1;
  if (at(Tok::Eq)) {
    next();
    Rational r = number("after '='");
    if (r.denominator() != 1) fail("observable values must be integers");
    value = static_cast<int>(r.numerator());
  }
  if (decls_) {
    auto it = decls_->observables.find(name);
    if (it == decls_->observables.end()) {
      fail_at(tok, "undeclared observable '" + name + "'");
    }
    if (!it->second.admits(value)) {
      fail_at(tok, "value " + std::to_string(value) + " outside the domain of '" + name + "'");
    }
  }
  return obs(std::move(name), value);
}

}  // namespace detail

Formula parse_formula(std::string_view text, const Declarations* decls) {
  detail::Parser parser(detail::tokenize(text), decls);
  Formula f = parser.formula();
  parser.expect_end();
  return f;
}

State parse_state(std::string_view text, const Declarations* decls) {
  detail::Parser parser(detail::tokenize(text), decls);
  State p = parser.state();
  parser.expect_end();
  return p;
}

Term parse_term(std::string_view text, const Declarations* decls) {
  detail::Parser parser(detail::tokenize(text), decls);
  Term t = parser.term();
  parser.expect_end();
  return t;
}

}  // namespace dcmon::dc
