#include "kb/concerns.hpp"

#include <cctype>
#include <set>

#include "common/error.hpp"
#include "rdf/term.hpp"
#include "sparql/query.hpp"

namespace agilekb::kb {

namespace {

constexpr std::string_view kPractice = "{practice}";
constexpr std::string_view kTeam = "{team}";
constexpr std::string_view kProbeIri = "urn:agilekb:placeholder";

bool contains(std::string_view text, std::string_view needle) { return text.find(needle) != std::string_view::npos; }

std::string replace_all(std::string text, std::string_view from, std::string_view to) {
  for (std::size_t pos = 0; (pos = text.find(from, pos)) != std::string::npos; pos += to.size()) {
    text.replace(pos, from.size(), to);
  }
  return text;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_slug(std::string_view id) {
  if (id.empty() || id.front() == '-' || id.back() == '-') return false;
  for (char c : id) {
    if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '-')) {
      return false;
    }
  }
  return true;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw Error(ErrorCode::Syntax, message, SourcePosition{line, 1});
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::string parse_quoted(std::string_view value, std::size_t line) {
  if (value.size() < 2 || value.front() != '"' || value.back() != '"') fail(line, "expected a quoted string");
  std::string out;
  for (std::size_t i = 1; i + 1 < value.size(); ++i) {
    char c = value[i];
    if (c == '"') fail(line, "unescaped quote inside string");
    if (c != '\\') {
      out += c;
      continue;
    }
    if (i + 2 >= value.size()) fail(line, "dangling escape");
    switch (value[++i]) {
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      default: fail(line, std::string("unknown escape \\") + value[i]);
    }
  }
  return out;
}

struct Entry {
  std::size_t line = 0;
  std::map<std::string, std::string> fields;
  std::map<std::string, std::size_t> field_lines;
};

void check_template(const std::string& tmpl, std::size_t line, const std::string& id,
                    const turtle::PrefixMap& predefined) {
  const std::string probe = "<" + std::string(kProbeIri) + ">";
  std::string text = replace_all(replace_all(tmpl, kPractice, probe), kTeam, probe);
  try {
    sparql::parse_query(text, predefined);
  } catch (const Error& e) {
    throw Error(e.code(), "concern '" + id + "' (line " + std::to_string(line) + "): " + e.what(),
                SourcePosition{line, 1}, e.details());
  }
}

}  // namespace

const Concern* ConcernRegistry::find(std::string_view id) const {
  for (const auto* list : {&listed, &variants}) {
    for (const Concern& c : *list) {
      if (c.id == id) return &c;
    }
  }
  return nullptr;
}

ConcernRegistry parse_concerns(std::string_view text, const turtle::PrefixMap& predefined) {
  static const std::set<std::string> kKeys = {"id", "title", "description", "team_scoped", "query", "team_query"};

  std::vector<Entry> entries;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string_view line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    if (line == "[[concern]]") {
      entries.push_back(Entry{lineno, {}, {}});
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(lineno, "expected 'key = value' or [[concern]]");
    if (entries.empty()) fail(lineno, "field outside a [[concern]] entry");
    const std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (!kKeys.count(key)) fail(lineno, "unknown key '" + key + "'");
    Entry& entry = entries.back();
    if (entry.fields.count(key)) fail(lineno, "duplicate key '" + key + "'");

    std::string parsed;
    if (value.substr(0, 3) == "\"\"\"") {
      std::string_view rest = value.substr(3);
      std::size_t close = rest.find("\"\"\"");
      if (close != std::string_view::npos) {
        if (!trim(rest.substr(close + 3)).empty()) fail(lineno, "text after closing \"\"\"");
        parsed = std::string(rest.substr(0, close));
      } else {
        if (!trim(rest).empty()) parsed = std::string(rest) + "\n";
        bool closed = false;
        while (++i < lines.size()) {
          std::string_view body = lines[i];
          close = body.find("\"\"\"");
          if (close != std::string_view::npos) {
            if (!trim(body.substr(close + 3)).empty()) fail(i + 1, "text after closing \"\"\"");
            parsed += std::string(body.substr(0, close));
            closed = true;
            break;
          }
          parsed += std::string(body) + "\n";
        }
        if (!closed) fail(lineno, "unterminated \"\"\" block");
      }
    } else if (value == "true" || value == "false") {
      if (key != "team_scoped") fail(lineno, "'" + key + "' expects a string");
      parsed = std::string(value);
    } else {
      if (key == "team_scoped") fail(lineno, "team_scoped expects true or false");
      parsed = parse_quoted(value, lineno);
    }
    entry.fields[key] = std::move(parsed);
    entry.field_lines[key] = lineno;
  }

  ConcernRegistry reg;
  std::set<std::string> seen;
  for (const Entry& e : entries) {
    for (const char* required : {"id", "title", "query"}) {
      if (!e.fields.count(required)) fail(e.line, std::string("concern entry is missing '") + required + "'");
    }
    Concern c;
    c.id = e.fields.at("id");
    c.line = e.line;
    if (!is_slug(c.id)) fail(e.field_lines.at("id"), "concern id '" + c.id + "' must be lowercase letters, digits and '-'");
    if (!seen.insert(c.id).second) {
      throw Error(ErrorCode::DuplicateConcern, "duplicate concern id '" + c.id + "'", SourcePosition{e.line, 1}, {c.id});
    }
    c.title = e.fields.at("title");
    if (auto it = e.fields.find("description"); it != e.fields.end()) c.description = it->second;
    c.query_template = e.fields.at("query");
    c.requires_practice = contains(c.query_template, kPractice);
    c.team_scoped = contains(c.query_template, kTeam);
    if (auto it = e.fields.find("team_scoped"); it != e.fields.end() && (it->second == "true") != c.team_scoped) {
      fail(e.field_lines.at("team_scoped"), "team_scoped = " + it->second + " disagrees with the query's use of {team}");
    }
    check_template(c.query_template, e.field_lines.at("query"), c.id, predefined);

    if (auto it = e.fields.find("team_query"); it != e.fields.end()) {
      Concern v;
      v.id = c.id + ".team";
      v.title = c.title + " (team)";
      v.description = c.description;
      v.query_template = it->second;
      v.team_scoped = true;
      v.requires_practice = contains(v.query_template, kPractice);
      v.line = e.field_lines.at("team_query");
      if (!contains(v.query_template, kTeam)) fail(v.line, "team_query must reference {team}");
      if (v.requires_practice) fail(v.line, "team_query cannot use {practice}");
      check_template(v.query_template, v.line, v.id, predefined);
      reg.variants.push_back(std::move(v));
    }
    reg.listed.push_back(std::move(c));
  }
  return reg;
}

std::string instantiate(const Concern& concern, const std::optional<std::string>& practice_iri,
                        const std::optional<std::string>& team_iri) {
  auto fill = [&](std::string text, std::string_view placeholder, const std::optional<std::string>& iri,
                  const char* param) {
    const bool needed = contains(concern.query_template, placeholder);
    if (needed && !iri) {
      throw Error(ErrorCode::MissingParameter, "concern '" + concern.id + "' requires the " + param + " parameter",
                  {param});
    }
    if (!needed && iri) {
      throw Error(ErrorCode::InvalidParameter, "concern '" + concern.id + "' takes no " + param + " parameter",
                  {param});
    }
    if (!iri) return text;
    if (!rdf::is_valid_iri(*iri)) {
      throw Error(ErrorCode::InvalidParameter, std::string(param) + " is not a valid IRI: " + *iri, {param});
    }
    return replace_all(std::move(text), placeholder, "<" + *iri + ">");
  };
  std::string text = fill(concern.query_template, kPractice, practice_iri, "practice");
  return fill(std::move(text), kTeam, team_iri, "team");
}

}  // namespace agilekb::kb
