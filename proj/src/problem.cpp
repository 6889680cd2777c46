// SPDX-FileCopyrightText: Copyright (c) 2026, The gajd-chase Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gajd/problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <variant>

namespace gajd {

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

std::vector<Token> tokenize(std::string_view line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++i;
    } else if (c == '{' || c == '}' || c == '=') {
      out.push_back({std::string(1, c), i + 1});
      ++i;
    } else if (is_ident_char(c)) {
      const std::size_t start = i;
      while (i < line.size() && is_ident_char(line[i])) ++i;
      out.push_back({std::string(line.substr(start, i - start)), start + 1});
    } else {
      throw ParseError(lineno, i + 1, std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

bool is_identifier(const std::string& s) {
  return !s.empty() && (std::isalpha(static_cast<unsigned char>(s.front())) != 0 || s.front() == '_');
}

class Parser {
 public:
  ProblemFile run(std::string_view text) {
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t end = std::min(text.find('\n', start), text.size());
      ++lineno;
      line_ = lineno;
      toks_ = tokenize(text.substr(start, end - start), lineno);
      pos_ = 0;
      if (!toks_.empty()) statement();
      start = end + 1;
    }
    if (!has_attrs_) throw ParseError(1, 1, "no attrs declaration");
    for (const auto& [query, where] : pending_given_) {
      for (std::size_t k = 0; k < file_.queries[query].given.size(); ++k) {
        const auto& name = file_.queries[query].given[k];
        const bool known = std::any_of(file_.constraints.begin(), file_.constraints.end(),
                                       [&](const NamedConstraint& c) { return c.name == name; });
        if (!known) throw ParseError(where[k].first, where[k].second, "unknown constraint '" + name + "'");
      }
    }
    return std::move(file_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    const std::size_t col = pos_ < toks_.size() ? toks_[pos_].column : (toks_.empty() ? 1 : toks_.back().column + toks_.back().text.size());
    throw ParseError(line_, col, msg);
  }

  bool at_end() const { return pos_ >= toks_.size(); }
  const Token& peek() const { return toks_[pos_]; }

  Token expect_identifier(const char* what) {
    if (at_end() || !is_identifier(peek().text)) {
      fail(std::string("expected ") + what);
    }
    return toks_[pos_++];
  }

  void expect(const char* text) {
    if (at_end() || peek().text != text) fail(std::string("expected '") + text + "'");
    ++pos_;
  }

  void statement() {
    const Token kw = toks_[pos_++];
    if (kw.text == "attrs") {
      attrs();
      return;
    }
    if (!has_attrs_) {
      --pos_;
      fail("attrs must be declared before '" + kw.text + "'");
    }
    if (kw.text == "domain") {
      domain();
    } else if (kw.text == "gajd") {
      constraint();
    } else if (kw.text == "query") {
      query();
    } else {
      --pos_;
      fail("unknown statement '" + kw.text + "'");
    }
  }

  void attrs() {
    if (has_attrs_) {
      --pos_;
      fail("attrs declared twice");
    }
    if (at_end()) fail("attrs needs at least one attribute");
    while (!at_end()) {
      const Token t = expect_identifier("an attribute name");
      if (index_.contains(t.text)) {
        --pos_;
        fail("duplicate attribute '" + t.text + "'");
      }
      if (file_.attrs.size() == kMaxAttributes) {
        --pos_;
        fail("too many attributes");
      }
      index_.emplace(t.text, file_.attrs.size());
      file_.attrs.push_back(t.text);
    }
    has_attrs_ = true;
  }

  void domain() {
    const Token name = expect_identifier("an attribute name");
    if (!index_.contains(name.text)) {
      --pos_;
      fail("unknown attribute '" + name.text + "'");
    }
    for (const auto& d : file_.domains) {
      if (d.first == name.text) {
        --pos_;
        fail("domain of '" + name.text + "' declared twice");
      }
    }
    if (at_end()) fail("expected a domain size");
    const Token size = toks_[pos_];
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(size.text.data(), size.text.data() + size.text.size(), n);
    if (ec != std::errc() || ptr != size.text.data() + size.text.size() || n == 0) {
      fail("domain size must be a positive integer");
    }
    ++pos_;
    if (!at_end()) fail("unexpected token after domain size");
    file_.domains.emplace_back(name.text, n);
  }

  std::vector<AttrSet> edges(std::vector<std::size_t>& columns) {
    std::vector<AttrSet> out;
    while (!at_end() && peek().text == "{") {
      columns.push_back(peek().column);
      ++pos_;
      AttrSet e;
      while (!at_end() && peek().text != "}") {
        const Token t = expect_identifier("an attribute name");
        const auto it = index_.find(t.text);
        if (it == index_.end()) {
          --pos_;
          fail("unknown attribute '" + t.text + "'");
        }
        if (e.contains(it->second)) {
          --pos_;
          fail("attribute '" + t.text + "' repeated in an edge");
        }
        e |= AttrSet::single(it->second);
      }
      expect("}");
      if (e.empty()) fail_at(columns.back(), "empty edge");
      for (std::size_t k = 0; k < out.size(); ++k) {
        if (out[k] == e) fail_at(columns.back(), "duplicate edge");
      }
      out.push_back(e);
    }
    return out;
  }

  [[noreturn]] void fail_at(std::size_t column, const std::string& msg) const {
    throw ParseError(line_, column, msg);
  }

  std::string format(AttrSet e) const {
    std::string out = "{";
    for (std::size_t a : e.members()) out += (out.size() > 1 ? " " : "") + file_.attrs[a];
    return out + "}";
  }

  // Hypertree over exactly the declared attributes.
  void check_shape(const std::vector<AttrSet>& es, std::size_t column, const std::string& what) const {
    AttrSet nodes;
    for (AttrSet e : es) nodes |= e;
    const AttrSet all = AttrSet::first_n(file_.attrs.size());
    if (nodes != all) {
      fail_at(column, what + " does not cover the declared attributes; missing " + format(all - nodes));
    }
    auto cert = find_certificate(Hypergraph(es));
    if (const auto* nt = std::get_if<NotHypertree>(&cert)) {
      std::string msg = what + " is not a hypertree; no twig among";
      for (std::size_t e : nt->witness) msg += " " + format(es[e]);
      fail_at(column, msg);
    }
  }

  void constraint() {
    const Token name = expect_identifier("a constraint name");
    for (const auto& c : file_.constraints) {
      if (c.name == name.text) fail_at(name.column, "duplicate constraint '" + name.text + "'");
    }
    expect("=");
    std::vector<std::size_t> columns;
    auto es = edges(columns);
    if (es.empty()) fail("constraint needs at least one edge");
    if (!at_end()) fail("unexpected token in constraint");
    check_shape(es, name.column, "constraint " + name.text);
    file_.constraints.push_back({name.text, std::move(es)});
  }

  void query() {
    const std::size_t column = toks_[pos_ - 1].column;
    std::vector<std::size_t> columns;
    auto es = edges(columns);
    if (es.empty()) fail_at(column, "empty query");
    Query q{std::move(es), {}};
    std::vector<std::pair<std::size_t, std::size_t>> where;
    if (!at_end()) {
      if (peek().text != "given") fail("expected 'given' or end of line");
      ++pos_;
      if (at_end()) fail("expected a constraint name after 'given'");
      while (!at_end()) {
        const Token t = expect_identifier("a constraint name");
        if (std::find(q.given.begin(), q.given.end(), t.text) != q.given.end()) {
          --pos_;
          fail("constraint '" + t.text + "' given twice");
        }
        q.given.push_back(t.text);
        where.emplace_back(line_, t.column);
      }
    }
    check_shape(q.edges, column, "query");
    pending_given_.emplace_back(file_.queries.size(), std::move(where));
    file_.queries.push_back(std::move(q));
  }

  ProblemFile file_;
  bool has_attrs_ = false;
  std::map<std::string, std::size_t> index_;
  std::vector<std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>> pending_given_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

}  // namespace

ProblemFile parse_problem(std::string_view text) { return Parser().run(text); }

UniversePtr ProblemFile::universe() const {
  std::vector<std::size_t> sizes(attrs.size(), 2);
  for (const auto& [name, n] : domains) {
    const auto it = std::find(attrs.begin(), attrs.end(), name);
    if (it == attrs.end()) throw UsageError("domain for unknown attribute '" + name + "'");
    sizes[static_cast<std::size_t>(it - attrs.begin())] = n;
  }
  return Universe::make(attrs, sizes);
}

Gajd ProblemFile::target(const UniversePtr& u, std::size_t query) const {
  return Gajd::from_edges(u, queries.at(query).edges);
}

std::vector<JRule> ProblemFile::rules(const UniversePtr& u, std::size_t query) const {
  std::vector<JRule> out;
  for (const auto& name : queries.at(query).given) {
    const auto it = std::find_if(constraints.begin(), constraints.end(),
                                 [&](const NamedConstraint& c) { return c.name == name; });
    if (it == constraints.end()) throw UsageError("unknown constraint '" + name + "'");
    out.push_back({it->name, Gajd::from_edges(u, it->edges)});
  }
  return out;
}

namespace {

std::string format_edges(const ProblemFile& f, const std::vector<AttrSet>& es) {
  std::string out;
  for (AttrSet e : es) {
    if (!out.empty()) out += ' ';
    out += '{';
    bool first = true;
    for (std::size_t a : e.members()) {
      if (!first) out += ' ';
      out += f.attrs[a];
      first = false;
    }
    out += '}';
  }
  return out;
}

}  // namespace

std::string ProblemFile::format_query(std::size_t query) const {
  const Query& q = queries.at(query);
  std::string out = format_edges(*this, q.edges);
  if (!q.given.empty()) {
    out += " given";
    for (const auto& g : q.given) out += " " + g;
  }
  return out;
}

std::string print_problem(const ProblemFile& f) {
  std::string out = "attrs";
  for (const auto& a : f.attrs) out += " " + a;
  out += "\n";
  for (const auto& [name, n] : f.domains) out += "domain " + name + " " + std::to_string(n) + "\n";
  for (const auto& c : f.constraints) out += "gajd " + c.name + " = " + format_edges(f, c.edges) + "\n";
  for (std::size_t q = 0; q < f.queries.size(); ++q) out += "query " + f.format_query(q) + "\n";
  return out;
}

}  // namespace gajd
