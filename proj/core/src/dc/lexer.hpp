#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace dcmon::dc::detail {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Colon,
  Assign,  // :=
  Dot,
  Semi,
  Bang,
  Amp,
  Bar,
  Arrow,  // =>
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Box,      // []
  Diamond,  // <>
  Plus,
  Minus,
  Star,
  Slash,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

/// Splits `text` into tokens; throws ParseError on stray characters.
std::vector<Token> tokenize(std::string_view text);

const char* describe(Tok kind);

}  // namespace dcmon::dc::detail
