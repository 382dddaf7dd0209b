#pragma once

#include <string>
#include <vector>

#include "dcmon/dc/ast.hpp"
#include "dcmon/dc/parser.hpp"
#include "lexer.hpp"

namespace dcmon::dc::detail {

/// Recursive-descent parser over a token vector. Used both for standalone
/// formula text and for `.dcspec` statements.
class Parser {
 public:
  Parser(std::vector<Token> tokens, const Declarations* decls);

  Formula formula();
  State state();
  Term term();

  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_keyword(const char* word) const;
  const Token& next();
  const Token& expect(Tok kind, const char* context);
  void expect_keyword(const char* word);
  void expect_end();
  std::string identifier(const char* context);
  Rational number(const char* context);  // accepts an optional leading '-'
  std::vector<Rational> value_list();    // "{" [number {"," number}] "}"

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(const Token& tok, const std::string& message) const;

 private:
  Formula quantified();
  Formula chop_level();
  Formula implies_level();
  Formula or_level();
  Formula and_level();
  Formula unary_level();
  Formula primary();
  Formula predicate();

  Term additive();
  Term multiplicative();
  Term unary_term();
  Term atom();

  State state_or();
  State state_and();
  State state_not();

  void check_global(const Token& tok) const;

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Declarations* decls_;
  std::vector<std::string> bound_;
};

}  // namespace dcmon::dc::detail
