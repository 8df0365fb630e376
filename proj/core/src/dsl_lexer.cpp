#include <cctype>
#include <charconv>

#include "dsl_internal.hpp"

namespace wirecomp::dsl {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<Token> lex(std::string_view text, std::vector<Diagnostic>& diags) {
  std::vector<Token> tokens;
  int line = 1, col = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();

  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };

  auto push = [&](TokenKind kind, std::size_t len, std::string_view tok_text) {
    tokens.push_back({kind, std::string(tok_text), 0.0, {line, col, (int)len}});
    advance(len);
  };

  while (i < n) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < n && text[i] != '\n') advance(1);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < n && ident_char(text[j])) ++j;
      push(TokenKind::Ident, j - i, text.substr(i, j - i));
      continue;
    }
    const bool neg_number =
        c == '-' && i + 1 < n && (digit(text[i + 1]) || text[i + 1] == '.');
    const bool dot_number = c == '.' && i + 1 < n && digit(text[i + 1]);
    if (digit(c) || dot_number || neg_number) {
      std::size_t j = i;
      if (text[j] == '-') ++j;
      while (j < n && digit(text[j])) ++j;
      if (j < n && text[j] == '.') {
        ++j;
        while (j < n && digit(text[j])) ++j;
      }
      if (j < n && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < n && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < n && digit(text[k])) {
          j = k;
          while (j < n && digit(text[j])) ++j;
        }
      }
      const std::string_view lit = text.substr(i, j - i);
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(lit.data(), lit.data() + lit.size(), value);
      if (ec != std::errc{} || ptr != lit.data() + lit.size()) {
        diags.push_back({Diagnostic::Severity::Error,
                         "malformed number literal '" + std::string(lit) + "'",
                         {line, col, (int)lit.size()}});
        push(TokenKind::Invalid, j - i, lit);
        continue;
      }
      Token t{TokenKind::Number, std::string(lit), value, {line, col, (int)lit.size()}};
      tokens.push_back(t);
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < n && text[i + 1] == '>') {
      push(TokenKind::Arrow, 2, "->");
      continue;
    }
    if (c == '<' && i + 1 < n && text[i + 1] == '-') {
      push(TokenKind::LArrow, 2, "<-");
      continue;
    }
    if (c == '(' && i + 2 < n && text[i + 1] == '*' && text[i + 2] == ')') {
      push(TokenKind::Tensor, 3, "(*)");
      continue;
    }
    switch (c) {
      case '{': push(TokenKind::LBrace, 1, "{"); continue;
      case '}': push(TokenKind::RBrace, 1, "}"); continue;
      case '[': push(TokenKind::LBracket, 1, "["); continue;
      case ']': push(TokenKind::RBracket, 1, "]"); continue;
      case ':': push(TokenKind::Colon, 1, ":"); continue;
      case ';': push(TokenKind::Semi, 1, ";"); continue;
      case ',': push(TokenKind::Comma, 1, ","); continue;
      case '.': push(TokenKind::Dot, 1, "."); continue;
      case '^': push(TokenKind::Caret, 1, "^"); continue;
      case '=': push(TokenKind::Equals, 1, "="); continue;
      default:
        diags.push_back({Diagnostic::Severity::Error,
                         std::string("unexpected character '") + c + "'",
                         {line, col, 1}});
        push(TokenKind::Invalid, 1, std::string_view(&text[i], 1));
        continue;
    }
  }
  tokens.push_back({TokenKind::End, "", 0.0, {line, col, 0}});
  return tokens;
}

}  // namespace wirecomp::dsl
