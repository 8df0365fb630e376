#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wirecomp/dsl.hpp"

namespace wirecomp::dsl {

enum class TokenKind {
  Ident,
  Number,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Colon,
  Semi,
  Comma,
  Dot,
  Caret,
  Equals,
  Arrow,    // ->
  LArrow,   // <-
  Tensor,   // (*)
  End,
  Invalid,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  double number = 0.0;
  SourceSpan span;
};

/// Tokenizes the whole input; lexical errors become Invalid tokens and a
/// diagnostic. `#` starts a comment running to end of line.
std::vector<Token> lex(std::string_view text, std::vector<Diagnostic>& diags);

}  // namespace wirecomp::dsl
