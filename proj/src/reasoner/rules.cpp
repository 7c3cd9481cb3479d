#include "reasoner/rules.hpp"

#include <algorithm>
#include <set>

#include "common/error.hpp"
#include "common/lexer.hpp"

namespace agilekb::reasoner {

using rdf::Term;
using rdf::TriplePattern;

const Rule* RuleSet::find(std::string_view name) const {
  for (const Rule& r : rules) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

namespace {

class RuleParser {
 public:
  RuleParser(std::string_view text, const turtle::PrefixMap& predefined)
      : cur_(tokenize(text)), prefixes_(turtle::PrefixMap::standard()) {
    prefixes_.merge(predefined);
  }

  RuleSet run() {
    RuleSet out;
    while (!cur_.at_end()) {
      if (cur_.peek().kind == TokenKind::AtWord) {
        directive();
        continue;
      }
      const Token& start = cur_.peek();
      Rule rule = parse_rule();
      if (out.find(rule.name)) {
        throw Error(ErrorCode::DuplicateRule, "duplicate rule name '" + rule.name + "'", start.pos, {rule.name});
      }
      out.rules.push_back(std::move(rule));
    }
    return out;
  }

 private:
  void directive() {
    const Token& at = cur_.advance();
    if (at.text != "prefix") TokenCursor::fail_at(at, "unsupported directive '@" + at.text + "'");
    const Token& label = cur_.peek();
    if (label.kind != TokenKind::PrefixedName || !label.text.empty()) cur_.fail("expected prefix label");
    cur_.advance();
    const Token& iri = cur_.peek();
    if (iri.kind != TokenKind::IriRef) cur_.fail("expected namespace IRI");
    cur_.advance();
    prefixes_.set(label.prefix, iri.text);
    cur_.expect_punct(".");
  }

  Rule parse_rule() {
    const Token& keyword = cur_.peek();
    if (!keyword.is_word("RULE")) cur_.fail("expected RULE but found " + describe(keyword));
    cur_.advance();
    Rule rule;
    const Token& name = cur_.peek();
    if (name.kind == TokenKind::PrefixedName && name.text.empty() && !name.prefix.empty()) {
      rule.name = name.prefix;  // "name:" lexes as a prefixed name with empty local part
      cur_.advance();
    } else if (name.kind == TokenKind::Word) {
      rule.name = name.text;
      cur_.advance();
      const Token& colon = cur_.peek();
      if (colon.kind != TokenKind::PrefixedName || !colon.prefix.empty() || !colon.text.empty()) {
        cur_.fail("expected ':' after rule name");
      }
      cur_.advance();
    } else {
      cur_.fail("expected rule name");
    }
    cur_.expect_word("IF");
    rule.body = atoms();
    cur_.expect_word("THEN");
    std::vector<const Token*> head_starts;
    rule.head = atoms(&head_starts);
    cur_.accept_punct(".");
    check_safety(rule, head_starts);
    return rule;
  }

  std::vector<TriplePattern> atoms(std::vector<const Token*>* starts = nullptr) {
    std::vector<TriplePattern> out;
    do {
      if (starts) starts->push_back(&cur_.peek());
      out.push_back(atom());
    } while (cur_.accept_word("AND"));
    return out;
  }

  TriplePattern atom() {
    cur_.expect_punct("(");
    Term s = position(0);
    Term p = position(1);
    Term o = position(2);
    cur_.expect_punct(")");
    return {s, p, o};
  }

  Term position(int index) {
    const Token& t = cur_.peek();
    switch (t.kind) {
      case TokenKind::Variable:
        cur_.advance();
        return Term::variable(t.text);
      case TokenKind::IriRef:
        cur_.advance();
        return Term::iri(t.text);
      case TokenKind::PrefixedName: {
        if (!prefixes_.find(t.prefix)) {
          throw Error(ErrorCode::UnknownPrefix, "unknown prefix '" + t.prefix + ":'", t.pos, {t.prefix});
        }
        cur_.advance();
        return Term::iri(prefixes_.expand(t.prefix, t.text));
      }
      case TokenKind::Word:
        if (index == 1 && t.text == "a") {
          cur_.advance();
          return Term::iri(turtle::ns::rdf_type);
        }
        break;
      case TokenKind::String:
        if (index == 2) {
          if (t.text.empty()) TokenCursor::fail_at(t, "empty literal");
          cur_.advance();
          return Term::literal(t.text);
        }
        TokenCursor::fail_at(t, "literal allowed only in object position");
      default:
        break;
    }
    cur_.fail("expected term but found " + describe(t));
  }

  static void check_safety(const Rule& rule, const std::vector<const Token*>& head_starts) {
    std::set<std::string> bound;
    for (const TriplePattern& p : rule.body) {
      for (const Term* t : {&p.subject, &p.predicate, &p.object}) {
        if (t->is_variable()) bound.insert(t->text());
      }
    }
    for (std::size_t i = 0; i < rule.head.size(); ++i) {
      const TriplePattern& p = rule.head[i];
      for (const Term* t : {&p.subject, &p.predicate, &p.object}) {
        if (t->is_variable() && !bound.count(t->text())) {
          throw Error(ErrorCode::UnsafeRule,
                      "rule '" + rule.name + "': head variable ?" + t->text() + " does not occur in the body",
                      head_starts[i]->pos, {t->text()});
        }
      }
    }
  }

  TokenCursor cur_;
  turtle::PrefixMap prefixes_;
};

}  // namespace

RuleSet parse_rules(std::string_view text, const turtle::PrefixMap& predefined) {
  return RuleParser(text, predefined).run();
}

std::uint32_t Provenance::rank(const rdf::Triple& t) const {
  for (const Provenance* p = this; p; p = p->parent_) {
    auto it = p->ranks_.find(t);
    if (it != p->ranks_.end()) return it->second;
  }
  return 0;
}

void Provenance::record(const rdf::Triple& t, std::uint32_t rank) {
  ranks_.emplace(t, rank);
  max_rank_ = std::max(max_rank_, rank);
}

}  // namespace agilekb::reasoner
