#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "common/error.hpp"

namespace agilekb {

// Token stream shared by the Turtle, rule, and query parsers. All three use
// the same lexical atoms: <iri>, prefix:local, ?var, "string", bare words,
// integers, and a handful of punctuators. `#` starts a line comment.
enum class TokenKind {
  IriRef,        // text = IRI without brackets
  PrefixedName,  // prefix + local
  Variable,      // text = name without ?/$
  String,        // text = unescaped value
  Word,          // bare identifier (keywords, rule names, `a`)
  AtWord,        // @prefix -> text = "prefix"
  Integer,
  Punct,         // text = one of . ; , ( ) { } = * != ^^ :
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::string prefix;  // PrefixedName only
  SourcePosition pos;

  bool is_punct(std::string_view p) const { return kind == TokenKind::Punct && text == p; }
  bool is_word(std::string_view w) const;  // case-insensitive
};

// Throws Error(Syntax) with the position of the offending character.
std::vector<Token> tokenize(std::string_view source);

std::string describe(const Token& token);

// Cursor over a token vector with the usual expect/accept helpers.
class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& advance();
  bool at_end() const { return peek().kind == TokenKind::End; }

  bool accept_punct(std::string_view p);
  bool accept_word(std::string_view w);
  const Token& expect_punct(std::string_view p);
  const Token& expect_word(std::string_view w);

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] static void fail_at(const Token& at, const std::string& message);

 private:
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

}  // namespace agilekb
