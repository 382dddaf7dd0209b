#include "lexer.hpp"

#include <cctype>

#include "dcmon/error.hpp"

namespace dcmon::dc::detail {

const char* describe(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "':='";
    case Tok::Dot: return "'.'";
    case Tok::Semi: return "';'";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Arrow: return "'=>'";
    case Tok::Eq: return "'='";
    case Tok::Ne: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Box: return "'[]'";
    case Tok::Diamond: return "'<>'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::End: return "end of input";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t line = 1;
  std::size_t col = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto peek = [&](std::size_t off) -> char { return i + off < text.size() ? text[i + off] : '\0'; };
  auto emit = [&](Tok kind, std::size_t n) {
    out.push_back(Token{kind, std::string(text.substr(i, n)), line, col});
    advance(n);
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && peek(1) == '-') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t n = 0;
      while (i + n < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i + n])) || text[i + n] == '_')) {
        ++n;
      }
      emit(Tok::Ident, n);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 0;
      auto digit_at = [&](std::size_t k) {
        return i + k < text.size() && std::isdigit(static_cast<unsigned char>(text[i + k]));
      };
      while (digit_at(n)) ++n;
      if (i + n < text.size() && text[i + n] == '.' && digit_at(n + 1)) {
        ++n;
        while (digit_at(n)) ++n;
      }
      if (i + n < text.size() && (text[i + n] == 'e' || text[i + n] == 'E')) {
        std::size_t k = n + 1;
        if (i + k < text.size() && (text[i + k] == '+' || text[i + k] == '-')) ++k;
        if (digit_at(k)) {
          n = k;
          while (digit_at(n)) ++n;
        }
      }
      emit(Tok::Number, n);
      continue;
    }
    switch (c) {
      case '(': emit(Tok::LParen, 1); continue;
      case ')': emit(Tok::RParen, 1); continue;
      case '{': emit(Tok::LBrace, 1); continue;
      case '}': emit(Tok::RBrace, 1); continue;
      case ',': emit(Tok::Comma, 1); continue;
      case '.': emit(Tok::Dot, 1); continue;
      case ';': emit(Tok::Semi, 1); continue;
      case '&': emit(Tok::Amp, 1); continue;
      case '|': emit(Tok::Bar, 1); continue;
      case '+': emit(Tok::Plus, 1); continue;
      case '-': emit(Tok::Minus, 1); continue;
      case '*': emit(Tok::Star, 1); continue;
      case '/': emit(Tok::Slash, 1); continue;
      case ':':
        if (peek(1) == '=') {
          emit(Tok::Assign, 2);
        } else {
          emit(Tok::Colon, 1);
        }
        continue;
      case '!':
        if (peek(1) == '=') {
          emit(Tok::Ne, 2);
        } else {
          emit(Tok::Bang, 1);
        }
        continue;
      case '=':
        if (peek(1) == '>') {
          emit(Tok::Arrow, 2);
        } else {
          emit(Tok::Eq, 1);
        }
        continue;
      case '<':
        if (peek(1) == '=') {
          emit(Tok::Le, 2);
        } else if (peek(1) == '>') {
          emit(Tok::Diamond, 2);
        } else {
          emit(Tok::Lt, 1);
        }
        continue;
      case '>':
        if (peek(1) == '=') {
          emit(Tok::Ge, 2);
        } else {
          emit(Tok::Gt, 1);
        }
        continue;
      case '[':
        if (peek(1) == ']') {
          emit(Tok::Box, 2);
          continue;
        }
        break;
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

}  // namespace dcmon::dc::detail
