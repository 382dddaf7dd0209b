#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "dcmon/dc/ast.hpp"
#include "dcmon/dc/trace.hpp"

namespace dcmon::dc {

/// Identifiers a formula may mention. When supplied to the parser, every
/// observable, global variable and named domain must be declared here.
struct Declarations {
  std::map<std::string, Observable> observables;
  std::set<std::string> globals;
  std::set<std::string> domains;
};

/// Surface syntax (chop binds loosest and associates to the right):
///
///   formula  ::= quant | chop
///   quant    ::= ("forall" | "exists") IDENT "in" domain ":" formula
///   domain   ::= IDENT | "{" [number {"," number}] "}"
///   chop     ::= implies [";" chop]
///   implies  ::= or ["=>" implies]
///   or       ::= and {"|" and}
///   and      ::= unary {"&" unary}
///   unary    ::= ("!" | "[]" | "<>") unary | quant | primary
///   primary  ::= "true" | "false" | "pt" | "ae" "(" state ")"
///              | term relop term | "(" formula ")"
///   relop    ::= "=" | "!=" | "<" | "<=" | ">" | ">="
///   term     ::= mul {("+" | "-") mul}
///   mul      ::= unary_t {("*" | "/") unary_t}
///   unary_t  ::= "-" number | "-" unary_t | atom
///   atom     ::= number | "len" | "int" "(" state ")" | IDENT
///              | ("min" | "max") "(" term {"," term} ")" | "(" term ")"
///   state    ::= s_or ["=>" state]
///   s_or     ::= s_and {"|" s_and}
///   s_and    ::= s_not {"&" s_not}
///   s_not    ::= "!" s_not | "0" | "1" | IDENT ["=" ["-"] integer] | "(" state ")"
///
/// `--` starts a comment that runs to the end of the line.
Formula parse_formula(std::string_view text, const Declarations* decls = nullptr);
State parse_state(std::string_view text, const Declarations* decls = nullptr);
Term parse_term(std::string_view text, const Declarations* decls = nullptr);

/// Canonical text. parse_formula(format(f)) is structurally equal to f for
/// every formula whose literals have finite decimal expansions.
std::string format(const Formula& f);
std::string format(const State& p);
std::string format(const Term& t);

}  // namespace dcmon::dc
