#include <regex>
#include <set>

#include "common/error.hpp"
#include "common/lexer.hpp"
#include "sparql/query.hpp"

namespace agilekb::sparql {

using rdf::Term;

std::vector<std::string> Query::columns() const {
  if (!select_all) return projection;
  std::vector<std::string> out;
  for (const auto& p : patterns) {
    for (const Term* t : {&p.subject, &p.predicate, &p.object}) {
      if (t->is_variable() && std::find(out.begin(), out.end(), t->text()) == out.end()) {
        out.push_back(t->text());
      }
    }
  }
  return out;
}

void validate_regex(std::string_view pattern) {
  int depth = 0;
  bool atom = false;  // something a quantifier can apply to
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    char c = pattern[i];
    switch (c) {
      case '\\': {
        if (i + 1 >= pattern.size()) throw Error(ErrorCode::Syntax, "regex ends with a lone backslash");
        char e = pattern[++i];
        bool ok = std::string_view("dDwWsS.*+?()[]{}|^$\\/-").find(e) != std::string_view::npos;
        if (!ok) throw Error(ErrorCode::Syntax, std::string("unsupported regex escape '\\") + e + "'");
        atom = true;
        break;
      }
      case '[': {
        std::size_t j = i + 1;
        if (j < pattern.size() && pattern[j] == '^') ++j;
        while (j < pattern.size() && pattern[j] != ']') j += pattern[j] == '\\' ? 2 : 1;
        if (j >= pattern.size()) throw Error(ErrorCode::Syntax, "unterminated regex character class");
        i = j;
        atom = true;
        break;
      }
      case '(':
        if (i + 1 < pattern.size() && pattern[i + 1] == '?') {
          throw Error(ErrorCode::Syntax, "regex lookaround and non-capturing groups are not supported");
        }
        ++depth;
        atom = false;
        break;
      case ')':
        if (--depth < 0) throw Error(ErrorCode::Syntax, "unbalanced ')' in regex");
        atom = true;
        break;
      case '{':
      case '}':
        throw Error(ErrorCode::Syntax, "counted repetition {n,m} is not supported in regex");
      case '*':
      case '+':
      case '?':
        if (!atom) throw Error(ErrorCode::Syntax, std::string("regex quantifier '") + c + "' has nothing to repeat");
        atom = false;
        break;
      case '|':
      case '^':
        atom = false;
        break;
      default:
        atom = true;
    }
  }
  if (depth != 0) throw Error(ErrorCode::Syntax, "unbalanced '(' in regex");
  try {
    std::regex check(pattern.begin(), pattern.end(), std::regex::ECMAScript);
  } catch (const std::regex_error&) {
    throw Error(ErrorCode::Syntax, "invalid regex");
  }
}

namespace {

class QueryParser {
 public:
  QueryParser(std::string_view text, const turtle::PrefixMap& predefined)
      : cur_(tokenize(text)) {
    q_.prefixes = turtle::PrefixMap::standard();
    q_.prefixes.merge(predefined);
  }

  Query run() {
    while (cur_.peek().is_word("PREFIX")) prefix_decl();
    cur_.expect_word("SELECT");
    if (cur_.accept_word("DISTINCT")) q_.distinct = true;
    if (cur_.accept_punct("*")) {
      q_.select_all = true;
    } else {
      while (cur_.peek().kind == TokenKind::Variable) {
        projection_tokens_.push_back(cur_.peek());
        q_.projection.push_back(cur_.advance().text);
      }
      if (q_.projection.empty()) cur_.fail("expected projection variables or '*'");
    }
    cur_.accept_word("WHERE");
    group();
    modifiers();
    if (!cur_.at_end()) cur_.fail("unexpected " + describe(cur_.peek()) + " after query");
    check_bound();
    return std::move(q_);
  }

 private:
  void prefix_decl() {
    cur_.advance();
    const Token& label = cur_.peek();
    if (label.kind != TokenKind::PrefixedName || !label.text.empty()) cur_.fail("expected prefix label");
    cur_.advance();
    const Token& iri = cur_.peek();
    if (iri.kind != TokenKind::IriRef) cur_.fail("expected namespace IRI");
    cur_.advance();
    q_.prefixes.set(label.prefix, iri.text);
  }

  void group() {
    cur_.expect_punct("{");
    for (;;) {
      if (cur_.accept_punct("}")) break;
      if (cur_.peek().is_word("FILTER")) {
        cur_.advance();
        filter();
        cur_.accept_punct(".");
        continue;
      }
      if (cur_.at_end()) cur_.fail("expected '}'");
      pattern();
      if (!cur_.accept_punct(".") && !cur_.peek().is_punct("}") && !cur_.peek().is_word("FILTER")) {
        cur_.fail("expected '.' or '}' but found " + describe(cur_.peek()));
      }
    }
    if (q_.patterns.empty()) cur_.fail("query has no triple patterns");
  }

  void pattern() {
    Term s = term(0);
    Term p = term(1);
    Term o = term(2);
    q_.patterns.push_back({s, p, o});
  }

  Term term(int position) {
    const Token& t = cur_.peek();
    switch (t.kind) {
      case TokenKind::Variable:
        cur_.advance();
        return Term::variable(t.text);
      case TokenKind::IriRef:
        cur_.advance();
        return Term::iri(t.text);
      case TokenKind::PrefixedName:
        return prefixed(cur_.advance());
      case TokenKind::Word:
        if (position == 1 && t.text == "a") {
          cur_.advance();
          return Term::iri(turtle::ns::rdf_type);
        }
        break;
      case TokenKind::String:
        if (position == 2) return literal();
        TokenCursor::fail_at(t, "literal allowed only in object position");
      default:
        break;
    }
    cur_.fail("expected term but found " + describe(t));
  }

  Term prefixed(const Token& t) {
    if (!q_.prefixes.find(t.prefix)) {
      throw Error(ErrorCode::UnknownPrefix, "unknown prefix '" + t.prefix + ":'", t.pos, {t.prefix});
    }
    return Term::iri(q_.prefixes.expand(t.prefix, t.text));
  }

  Term literal() {
    const Token& t = cur_.advance();
    if (t.text.empty()) TokenCursor::fail_at(t, "empty literal");
    std::string datatype;
    if (cur_.accept_punct("^^")) {
      const Token& dt = cur_.peek();
      if (dt.kind == TokenKind::IriRef) {
        datatype = cur_.advance().text;
      } else if (dt.kind == TokenKind::PrefixedName) {
        datatype = prefixed(cur_.advance()).text();
      } else {
        cur_.fail("expected datatype IRI");
      }
    }
    return Term::literal(t.text, datatype);
  }

  void filter() {
    bool wrapped = cur_.accept_punct("(");
    FilterExpr f;
    if (cur_.peek().is_word("regex")) {
      cur_.advance();
      cur_.expect_punct("(");
      f.kind = FilterExpr::Kind::Regex;
      f.variable = variable_ref();
      cur_.expect_punct(",");
      const Token& pat = cur_.peek();
      if (pat.kind != TokenKind::String) cur_.fail("expected regex pattern string");
      try {
        validate_regex(pat.text);
      } catch (const Error& e) {
        TokenCursor::fail_at(pat, e.message());
      }
      f.pattern = cur_.advance().text;
      cur_.expect_punct(")");
    } else {
      if (!wrapped) cur_.fail("expected '(' or regex after FILTER");
      f.variable = variable_ref();
      if (cur_.accept_punct("=")) {
        f.kind = FilterExpr::Kind::Equals;
      } else if (cur_.accept_punct("!=")) {
        f.kind = FilterExpr::Kind::NotEquals;
      } else {
        cur_.fail("expected '=' or '!=' but found " + describe(cur_.peek()));
      }
      const Token& t = cur_.peek();
      if (t.kind == TokenKind::Variable) cur_.fail("filter right-hand side must be a constant");
      f.value = term(2);
    }
    if (wrapped) cur_.expect_punct(")");
    q_.filters.push_back(std::move(f));
  }

  std::string variable_ref() {
    const Token& t = cur_.peek();
    if (t.kind != TokenKind::Variable) cur_.fail("expected variable but found " + describe(t));
    variable_tokens_.push_back(t);
    return cur_.advance().text;
  }

  void modifiers() {
    if (cur_.accept_word("ORDER")) {
      cur_.expect_word("BY");
      OrderBy order;
      if (cur_.peek().is_word("ASC") || cur_.peek().is_word("DESC")) {
        order.ascending = cur_.advance().is_word("ASC");
        cur_.expect_punct("(");
        order.variable = variable_ref();
        cur_.expect_punct(")");
      } else {
        order.variable = variable_ref();
      }
      q_.order_by = order;
    }
    if (cur_.accept_word("LIMIT")) {
      const Token& n = cur_.peek();
      if (n.kind != TokenKind::Integer) cur_.fail("expected positive integer after LIMIT");
      std::size_t value = 0;
      try {
        value = std::stoull(n.text);
      } catch (const std::exception&) {
        TokenCursor::fail_at(n, "LIMIT out of range");
      }
      if (value == 0) TokenCursor::fail_at(n, "LIMIT must be positive");
      cur_.advance();
      q_.limit = value;
    }
  }

  void check_bound() const {
    std::set<std::string> bound;
    for (const auto& p : q_.patterns) {
      for (const Term* t : {&p.subject, &p.predicate, &p.object}) {
        if (t->is_variable()) bound.insert(t->text());
      }
    }
    auto check = [&](const Token& t) {
      if (!bound.count(t.text)) {
        throw Error(ErrorCode::UnboundVariable, "variable ?" + t.text + " does not occur in the WHERE patterns",
                    t.pos, {t.text});
      }
    };
    for (const Token& t : projection_tokens_) check(t);
    for (const Token& t : variable_tokens_) check(t);
  }

  TokenCursor cur_;
  Query q_;
  std::vector<Token> projection_tokens_;
  std::vector<Token> variable_tokens_;  // filter and ORDER BY references
};

}  // namespace

Query parse_query(std::string_view text, const turtle::PrefixMap& predefined) {
  return QueryParser(text, predefined).run();
}

}  // namespace agilekb::sparql
