#include "common/lexer.hpp"

#include <cctype>

namespace agilekb {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

bool is_local_char(char c) { return is_name_char(c) || c == '.'; }

class Scanner {
 public:
  explicit Scanner(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token tok;
      tok.pos = here();
      if (pos_ >= src_.size()) {
        out.push_back(std::move(tok));
        return out;
      }
      scan_one(tok);
      out.push_back(std::move(tok));
    }
  }

 private:
  SourcePosition here() const { return {line_, col_}; }
  char cur() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  char at(std::size_t ahead) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
      ++col_;  // count code points, not UTF-8 continuation bytes
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Syntax, msg, here());
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = cur();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else if (c == '#') {
        while (pos_ < src_.size() && cur() != '\n') bump();
      } else {
        break;
      }
    }
  }

  void scan_one(Token& tok) {
    char c = cur();
    if (c == '<') return scan_iri(tok);
    if (c == '"') return scan_string(tok);
    if (c == '?' || c == '$') return scan_variable(tok);
    if (c == '@') return scan_at_word(tok);
    if (c == '_' && at(1) == ':') fail("blank nodes are not supported");
    if (c == '[') fail("blank nodes are not supported");
    if (std::isdigit(static_cast<unsigned char>(c))) return scan_integer(tok);
    if (is_name_start(c)) return scan_name(tok);
    if (c == ':') return scan_prefixed(tok, {});
    if (c == '!' && at(1) == '=') {
      tok.kind = TokenKind::Punct;
      tok.text = "!=";
      bump();
      bump();
      return;
    }
    if (c == '^' && at(1) == '^') {
      tok.kind = TokenKind::Punct;
      tok.text = "^^";
      bump();
      bump();
      return;
    }
    switch (c) {
      case '.': case ';': case ',': case '(': case ')': case '{': case '}': case '=': case '*':
        tok.kind = TokenKind::Punct;
        tok.text = std::string(1, c);
        bump();
        return;
      default:
        break;
    }
    if (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f) {
      fail("unexpected character");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void scan_iri(Token& tok) {
    bump();  // <
    std::string text;
    while (pos_ < src_.size() && cur() != '>') {
      unsigned char c = static_cast<unsigned char>(cur());
      if (c <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}') fail("invalid character in IRI");
      text += cur();
      bump();
    }
    if (pos_ >= src_.size()) fail("unterminated IRI");
    bump();  // >
    if (text.empty()) fail("empty IRI");
    tok.kind = TokenKind::IriRef;
    tok.text = std::move(text);
  }

  void scan_string(Token& tok) {
    bump();  // "
    std::string value;
    for (;;) {
      if (pos_ >= src_.size() || cur() == '\n') fail("unterminated string literal");
      char c = cur();
      if (c == '"') {
        bump();
        break;
      }
      if (c == '\\') {
        bump();
        switch (cur()) {
          case '"': value += '"'; break;
          case '\\': value += '\\'; break;
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case 'r': value += '\r'; break;
          default: fail("unsupported escape sequence");
        }
        bump();
        continue;
      }
      value += c;
      bump();
    }
    tok.kind = TokenKind::String;
    tok.text = std::move(value);
  }

  void scan_variable(Token& tok) {
    bump();
    std::string name;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_')) {
      name += cur();
      bump();
    }
    if (name.empty()) fail("empty variable name");
    tok.kind = TokenKind::Variable;
    tok.text = std::move(name);
  }

  void scan_at_word(Token& tok) {
    bump();
    std::string word;
    while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(cur()))) {
      word += cur();
      bump();
    }
    if (word.empty()) fail("expected directive name after '@'");
    tok.kind = TokenKind::AtWord;
    tok.text = std::move(word);
  }

  void scan_integer(Token& tok) {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(cur()))) {
      digits += cur();
      bump();
    }
    if (is_name_start(cur()) || cur() == ':') fail("unexpected character after number");
    tok.kind = TokenKind::Integer;
    tok.text = std::move(digits);
  }

  void scan_name(Token& tok) {
    std::string name;
    while (is_name_char(cur())) {
      name += cur();
      bump();
    }
    if (cur() == ':') return scan_prefixed(tok, std::move(name));
    tok.kind = TokenKind::Word;
    tok.text = std::move(name);
  }

  // At ':'; `prefix` already consumed.
  void scan_prefixed(Token& tok, std::string prefix) {
    bump();  // :
    std::string local;
    std::size_t start = pos_;
    while (is_local_char(cur())) {
      local += cur();
      bump();
    }
    // A trailing '.' terminates the statement rather than the name.
    std::size_t trailing = 0;
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      ++trailing;
    }
    if (trailing) {
      pos_ = start + local.size();
      col_ -= trailing;
    }
    if (!local.empty() && local.front() == '-') fail("prefixed name local part cannot start with '-'");
    tok.kind = TokenKind::PrefixedName;
    tok.prefix = std::move(prefix);
    tok.text = std::move(local);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

bool Token::is_word(std::string_view w) const {
  if (kind != TokenKind::Word || text.size() != w.size()) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[i])) != std::tolower(static_cast<unsigned char>(w[i]))) {
      return false;
    }
  }
  return true;
}

std::vector<Token> tokenize(std::string_view source) { return Scanner(source).run(); }

std::string describe(const Token& token) {
  switch (token.kind) {
    case TokenKind::IriRef: return "<" + token.text + ">";
    case TokenKind::PrefixedName: return "'" + token.prefix + ":" + token.text + "'";
    case TokenKind::Variable: return "?" + token.text;
    case TokenKind::String: return "string literal";
    case TokenKind::Word: return "'" + token.text + "'";
    case TokenKind::AtWord: return "'@" + token.text + "'";
    case TokenKind::Integer: return token.text;
    case TokenKind::Punct: return "'" + token.text + "'";
    case TokenKind::End: return "end of input";
  }
  return "token";
}

const Token& TokenCursor::peek(std::size_t ahead) const {
  std::size_t i = index_ + ahead;
  return i < tokens_.size() ? tokens_[i] : tokens_.back();
}

const Token& TokenCursor::advance() {
  const Token& t = peek();
  if (index_ + 1 < tokens_.size()) ++index_;
  return t;
}

bool TokenCursor::accept_punct(std::string_view p) {
  if (!peek().is_punct(p)) return false;
  advance();
  return true;
}

bool TokenCursor::accept_word(std::string_view w) {
  if (!peek().is_word(w)) return false;
  advance();
  return true;
}

const Token& TokenCursor::expect_punct(std::string_view p) {
  if (!peek().is_punct(p)) fail("expected '" + std::string(p) + "' but found " + describe(peek()));
  return advance();
}

const Token& TokenCursor::expect_word(std::string_view w) {
  if (!peek().is_word(w)) fail("expected '" + std::string(w) + "' but found " + describe(peek()));
  return advance();
}

void TokenCursor::fail(const std::string& message) const { fail_at(peek(), message); }

void TokenCursor::fail_at(const Token& at, const std::string& message) {
  throw Error(ErrorCode::Syntax, message, at.pos);
}

}  // namespace agilekb
