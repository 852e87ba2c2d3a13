// Copyright 2026 The posform Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "posform/dsl.hpp"

namespace posform::dsl {

std::string_view to_string(DeclKind kind) noexcept {
  switch (kind) {
    case DeclKind::Space: return "space";
    case DeclKind::Atom: return "atom";
    case DeclKind::Region: return "region";
    case DeclKind::Probe: return "probe";
    case DeclKind::Bc: return "bc";
    case DeclKind::Glue: return "glue";
    case DeclKind::Query: return "query";
  }
  return "unknown";
}

const Field* Declaration::find(std::string_view key) const {
  for (const auto& f : fields)
    if (f.key == key) return &f;
  return nullptr;
}

bool ParseResult::ok() const noexcept {
  return std::none_of(diagnostics.begin(), diagnostics.end(),
                      [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

std::string format_diagnostic(const Diagnostic& d, std::string_view file) {
  std::ostringstream os;
  if (!file.empty()) os << file << ":";
  os << d.line << ":" << d.column << ": "
     << (d.severity == Diagnostic::Severity::Error ? "error" : "warning") << ": " << d.message;
  return os.str();
}

namespace {

enum class Tok { Ident, Number, Colon, Comma, LBrace, RBrace, LBracket, RBracket, LParen, RParen, Bad, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) return t;

    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_' || src_[pos_] == '\'')) {
        advance();
      }
      t.kind = Tok::Ident;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      return number(t);
    }
    advance();
    t.text = std::string(1, c);
    switch (c) {
      case ':': t.kind = Tok::Colon; break;
      case ',': t.kind = Tok::Comma; break;
      case '{': t.kind = Tok::LBrace; break;
      case '}': t.kind = Tok::RBrace; break;
      case '[': t.kind = Tok::LBracket; break;
      case ']': t.kind = Tok::RBracket; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      default: t.kind = Tok::Bad; break;
    }
    return t;
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token number(Token t) {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        advance();
        ++n;
      }
      return n;
    };
    if (src_[pos_] == '-' || src_[pos_] == '+') advance();
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      mantissa += digits();
    }
    bool valid = mantissa > 0;
    if (valid && pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) advance();
      valid = digits() > 0;
    }
    t.text = std::string(src_.substr(start, pos_ - start));
    if (!valid) {
      if (pos_ == start) advance();
      t.kind = Tok::Bad;
      return t;
    }
    // from_chars rejects a leading '+'.
    std::string_view body = t.text;
    if (body.front() == '+') body.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), t.number);
    if (ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(t.number)) {
      t.kind = Tok::Bad;
      t.text = "number out of range: " + t.text;
      return t;
    }
    t.kind = Tok::Number;
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Bad: return "invalid token '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

const std::map<std::string, DeclKind, std::less<>>& keywords() {
  static const std::map<std::string, DeclKind, std::less<>> kw = {
      {"space", DeclKind::Space}, {"atom", DeclKind::Atom}, {"region", DeclKind::Region},
      {"probe", DeclKind::Probe}, {"bc", DeclKind::Bc},     {"glue", DeclKind::Glue},
      {"query", DeclKind::Query},
  };
  return kw;
}

struct SyntaxError {
  Token at;
  std::string message;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { tok_ = lex_.next(); }

  void run(SpecAst& ast, std::vector<Diagnostic>& diags) {
    while (tok_.kind != Tok::End) {
      try {
        ast.declarations.push_back(declaration());
      } catch (const SyntaxError& e) {
        diags.push_back({Diagnostic::Severity::Error, e.at.line, e.at.column, e.message});
        recover();
      }
    }
  }

 private:
  void bump() { tok_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& what) { throw SyntaxError{tok_, what}; }

  Token expect(Tok kind, const char* what) {
    if (tok_.kind != kind) fail(std::string("expected ") + what + ", found " + describe(tok_));
    Token t = tok_;
    bump();
    return t;
  }

  // Skip to just past the closing brace of the current declaration, or to the
  // next token that can start a declaration.
  void recover() {
    int depth = 0;
    while (tok_.kind != Tok::End) {
      if (tok_.kind == Tok::LBrace) ++depth;
      if (tok_.kind == Tok::RBrace) {
        bump();
        if (--depth <= 0) return;
        continue;
      }
      if (depth == 0 && tok_.kind == Tok::Ident && keywords().contains(tok_.text)) return;
      bump();
    }
  }

  Declaration declaration() {
    if (tok_.kind != Tok::Ident || !keywords().contains(tok_.text)) {
      Token bad = tok_;
      bump();
      throw SyntaxError{bad, "expected a declaration keyword (space, atom, region, probe, bc, "
                             "glue, query), found " + describe(bad)};
    }
    Declaration d;
    d.kind = keywords().find(tok_.text)->second;
    d.line = tok_.line;
    d.column = tok_.column;
    bump();
    d.name = expect(Tok::Ident, "a declaration name").text;
    expect(Tok::LBrace, "'{'");
    while (tok_.kind != Tok::RBrace) {
      if (tok_.kind == Tok::End) fail("unterminated declaration '" + d.name + "': expected '}'");
      Token key = expect(Tok::Ident, "a field name");
      expect(Tok::Colon, "':'");
      Field f{key.text, value(0), key.line, key.column};
      d.fields.push_back(std::move(f));
      if (tok_.kind == Tok::Comma) bump();
    }
    bump();
    return d;
  }

  Value value(std::size_t depth) {
    if (depth > kMaxNesting) fail("values nested deeper than " + std::to_string(kMaxNesting) + " levels");
    Value v;
    v.line = tok_.line;
    v.column = tok_.column;
    switch (tok_.kind) {
      case Tok::Number:
        v.kind = Value::Kind::Number;
        v.number = tok_.number;
        bump();
        return v;
      case Tok::Ident:
        v.kind = Value::Kind::Ident;
        v.ident = tok_.text;
        bump();
        return v;
      case Tok::LParen: {
        bump();
        const double re = expect(Tok::Number, "the real part of a complex number").number;
        expect(Tok::Comma, "','");
        const double im = expect(Tok::Number, "the imaginary part of a complex number").number;
        expect(Tok::RParen, "')'");
        v.kind = Value::Kind::Complex;
        v.complex = {re, im};
        return v;
      }
      case Tok::LBracket: {
        bump();
        v.kind = Value::Kind::List;
        while (tok_.kind != Tok::RBracket) {
          v.items.push_back(value(depth + 1));
          if (tok_.kind == Tok::Comma) {
            bump();
          } else if (tok_.kind != Tok::RBracket) {
            fail("expected ',' or ']' in list, found " + describe(tok_));
          }
        }
        bump();
        return v;
      }
      default:
        fail("expected a value, found " + describe(tok_));
    }
  }

  Lexer lex_;
  Token tok_;
};

// ---- validation -----------------------------------------------------------

enum class Sym { Space, Atom, Region, Probe, Bc, Query };

std::string_view sym_name(Sym s) {
  switch (s) {
    case Sym::Space: return "space";
    case Sym::Atom: return "atom";
    case Sym::Region: return "region";
    case Sym::Probe: return "probe";
    case Sym::Bc: return "bc";
    case Sym::Query: return "query";
  }
  return "?";
}

Sym sym_of(DeclKind k) {
  switch (k) {
    case DeclKind::Space: return Sym::Space;
    case DeclKind::Atom: return Sym::Atom;
    case DeclKind::Region:
    case DeclKind::Glue: return Sym::Region;
    case DeclKind::Probe: return Sym::Probe;
    case DeclKind::Bc: return Sym::Bc;
    case DeclKind::Query: return Sym::Query;
  }
  return Sym::Query;
}

struct FieldRule {
  std::set<std::string, std::less<>> required;
  std::set<std::string, std::less<>> optional;
  /// Exactly one of these must be present (empty: no payload).
  std::set<std::string, std::less<>> payload;
};

const FieldRule& rule_for(DeclKind k) {
  static const std::map<DeclKind, FieldRule> rules = {
      {DeclKind::Space, {{"backend"}, {"n", "states", "gram", "cone", "generators", "label"}, {}}},
      {DeclKind::Atom, {{"space"}, {}, {}}},
      {DeclKind::Region, {{}, {"mirror"}, {"atoms", "slice"}}},
      {DeclKind::Probe,
       {{"region"},
        {"primitive"},
        {"kraus", "unitary", "null", "effect", "observable", "kernel", "tensor", "compose"}}},
      {DeclKind::Bc, {{"atom"}, {}, {"matrix", "ket", "weights", "coords", "state"}}},
      {DeclKind::Glue, {{"left", "right"}, {}, {}}},
      {DeclKind::Query, {{"kind", "probe", "bc"}, {"given"}, {}}},
  };
  return rules.at(k);
}

class Validator {
 public:
  Validator(const SpecAst& ast, std::vector<Diagnostic>& diags) : ast_(ast), diags_(diags) {
    for (const auto& d : ast_.declarations) {
      later_.emplace(d.name, d.line);
      if (const Field* m = d.find("mirror"); m && m->value.kind == Value::Kind::Ident) {
        later_.emplace(m->value.ident, m->line);
      }
    }
  }

  void run() {
    for (const auto& d : ast_.declarations) declaration(d);
  }

 private:
  void error(int line, int col, std::string msg) {
    diags_.push_back({Diagnostic::Severity::Error, line, col, std::move(msg)});
  }
  void error(const Value& v, std::string msg) { error(v.line, v.column, std::move(msg)); }

  void define(const std::string& name, Sym s, int line, int col) {
    auto [it, inserted] = symbols_.emplace(name, s);
    if (!inserted) {
      error(line, col, "duplicate name '" + name + "' (already declared as " +
                           std::string(sym_name(it->second)) + ")");
    }
  }

  bool ref(const Value& v, Sym want) {
    if (v.kind != Value::Kind::Ident) {
      error(v, "expected the name of a " + std::string(sym_name(want)));
      return false;
    }
    auto it = symbols_.find(v.ident);
    if (it == symbols_.end()) {
      auto later = later_.find(v.ident);
      if (later != later_.end()) {
        error(v, "'" + v.ident + "' is used before its declaration on line " +
                     std::to_string(later->second));
      } else {
        error(v, "undeclared identifier '" + v.ident + "'");
      }
      return false;
    }
    if (it->second != want) {
      error(v, "'" + v.ident + "' is a " + std::string(sym_name(it->second)) + ", expected a " +
                   std::string(sym_name(want)));
      return false;
    }
    return true;
  }

  const std::vector<Value>* list(const Value& v, const char* what) {
    if (v.kind != Value::Kind::List) {
      error(v, std::string("expected a list of ") + what);
      return nullptr;
    }
    return &v.items;
  }

  void ref_list(const Value& v, Sym want) {
    if (const auto* items = list(v, "names"))
      for (const auto& item : *items) ref(item, want);
  }

  std::optional<std::string> word(const Value& v) {
    if (v.kind != Value::Kind::Ident) {
      error(v, "expected a word");
      return std::nullopt;
    }
    return v.ident;
  }

  void numeric_tree(const Value& v, bool allow_complex) {
    switch (v.kind) {
      case Value::Kind::Number: return;
      case Value::Kind::Complex:
        if (!allow_complex) error(v, "complex entries are not allowed here");
        return;
      case Value::Kind::List:
        for (const auto& item : v.items) numeric_tree(item, allow_complex);
        return;
      case Value::Kind::Ident: error(v, "expected a number, found '" + v.ident + "'"); return;
    }
  }

  void boolean(const Value& v) {
    if (v.kind != Value::Kind::Ident || (v.ident != "true" && v.ident != "false")) {
      error(v, "expected true or false");
    }
  }

  void check_fields(const Declaration& d) {
    const FieldRule& rule = rule_for(d.kind);
    std::set<std::string, std::less<>> seen;
    std::size_t payloads = 0;
    for (const auto& f : d.fields) {
      if (!seen.insert(f.key).second) error(f.line, f.column, "field '" + f.key + "' given twice");
      const bool known = rule.required.contains(f.key) || rule.optional.contains(f.key) ||
                         rule.payload.contains(f.key);
      if (!known) {
        error(f.line, f.column, "unknown field '" + f.key + "' in " + std::string(to_string(d.kind)) +
                                    " '" + d.name + "'");
      }
      if (rule.payload.contains(f.key)) ++payloads;
    }
    for (const auto& r : rule.required) {
      if (!seen.contains(r)) {
        error(d.line, d.column, std::string(to_string(d.kind)) + " '" + d.name + "' is missing field '" + r + "'");
      }
    }
    if (!rule.payload.empty() && payloads != 1) {
      std::string opts;
      for (const auto& p : rule.payload) opts += (opts.empty() ? "" : ", ") + p;
      error(d.line, d.column, std::string(to_string(d.kind)) + " '" + d.name +
                                  "' needs exactly one of: " + opts);
    }
  }

  void declaration(const Declaration& d) {
    check_fields(d);
    switch (d.kind) {
      case DeclKind::Space: space(d); break;
      case DeclKind::Atom:
        if (const Field* f = d.find("space")) ref(f->value, Sym::Space);
        break;
      case DeclKind::Region: region(d); break;
      case DeclKind::Probe: probe(d); break;
      case DeclKind::Bc: bc(d); break;
      case DeclKind::Glue:
        for (const char* k : {"left", "right"})
          if (const Field* f = d.find(k)) ref(f->value, Sym::Region);
        break;
      case DeclKind::Query: query(d); break;
    }
    define(d.name, sym_of(d.kind), d.line, d.column);
  }

  void space(const Declaration& d) {
    const Field* b = d.find("backend");
    if (!b) return;
    auto backend = word(b->value);
    if (!backend) return;
    if (*backend == "quantum") {
      const Field* n = d.find("n");
      if (!n) {
        error(d.line, d.column, "quantum space '" + d.name + "' needs field 'n'");
      } else if (n->value.kind != Value::Kind::Number || n->value.number < 1 ||
                 n->value.number != std::floor(n->value.number) ||
                 n->value.number > static_cast<double>(kMaxQuantumDim)) {
        error(n->value, "n must be an integer between 1 and " + std::to_string(kMaxQuantumDim));
      }
    } else if (*backend == "classical") {
      const Field* s = d.find("states");
      if (!s) {
        error(d.line, d.column, "classical space '" + d.name + "' needs field 'states'");
        return;
      }
      const auto* items = list(s->value, "state names");
      if (!items) return;
      if (items->empty() || items->size() > kMaxStates) {
        error(s->value, "a state list needs between 1 and " + std::to_string(kMaxStates) + " states");
      }
      std::set<std::string> seen;
      for (const auto& st : *items) {
        if (st.kind != Value::Kind::Ident) {
          error(st, "state names must be identifiers");
        } else if (!seen.insert(st.ident).second) {
          error(st, "repeated state '" + st.ident + "'");
        }
      }
    } else if (*backend == "generic") {
      const Field* g = d.find("gram");
      if (!g) {
        error(d.line, d.column, "generic space '" + d.name + "' needs field 'gram'");
        return;
      }
      numeric_tree(g->value, false);
      if (g->value.kind == Value::Kind::List && g->value.items.size() > kMaxStates) {
        error(g->value, "Gram matrix is too large");
      }
      if (const Field* c = d.find("cone")) {
        auto cone = word(c->value);
        if (cone && *cone != "orthant" && *cone != "generators") {
          error(c->value, "cone must be orthant or generators");
        }
        if (cone && *cone == "generators" && !d.find("generators")) {
          error(c->line, c->column, "cone 'generators' needs field 'generators'");
        }
      }
      if (const Field* gens = d.find("generators")) numeric_tree(gens->value, false);
    } else {
      error(b->value, "unknown backend '" + *backend + "' (expected quantum, classical or generic)");
    }
  }

  void region(const Declaration& d) {
    if (const Field* a = d.find("atoms")) {
      if (d.find("mirror")) error(d.line, d.column, "'mirror' only applies to slice regions");
      const auto* items = list(a->value, "atom names");
      if (!items) return;
      std::set<std::string> seen;
      for (const auto& item : *items) {
        if (!ref(item, Sym::Atom)) continue;
        if (!seen.insert(item.ident).second) {
          error(item, "repeated atom '" + item.ident + "' on the boundary of region '" + d.name + "'");
        }
      }
    } else if (const Field* s = d.find("slice")) {
      ref(s->value, Sym::Atom);
      const Field* m = d.find("mirror");
      if (!m) {
        error(d.line, d.column, "slice region '" + d.name + "' needs field 'mirror' naming the copy");
      } else if (m->value.kind != Value::Kind::Ident) {
        error(m->value, "mirror must be a name");
      } else {
        define(m->value.ident, Sym::Atom, m->value.line, m->value.column);
      }
    }
  }

  void probe(const Declaration& d) {
    if (const Field* r = d.find("region")) ref(r->value, Sym::Region);
    if (const Field* p = d.find("primitive")) boolean(p->value);
    if (const Field* n = d.find("null")) boolean(n->value);
    for (const char* k : {"kraus", "unitary", "effect", "observable"})
      if (const Field* f = d.find(k)) numeric_tree(f->value, true);
    for (const char* k : {"kernel", "tensor"})
      if (const Field* f = d.find(k)) numeric_tree(f->value, false);
    if (const Field* c = d.find("compose")) {
      const auto* items = list(c->value, "probe names");
      if (items && items->size() != 2) error(c->value, "compose takes exactly two probes");
      if (items)
        for (const auto& item : *items) ref(item, Sym::Probe);
    }
  }

  void bc(const Declaration& d) {
    if (const Field* a = d.find("atom")) ref(a->value, Sym::Atom);
    for (const char* k : {"matrix", "ket"})
      if (const Field* f = d.find(k)) numeric_tree(f->value, true);
    for (const char* k : {"weights", "coords"})
      if (const Field* f = d.find(k)) numeric_tree(f->value, false);
    if (const Field* s = d.find("state")) word(s->value);
  }

  void query(const Declaration& d) {
    std::optional<std::string> kind;
    if (const Field* k = d.find("kind")) {
      kind = word(k->value);
      if (kind && *kind != "value" && *kind != "cond_prob" && *kind != "bc_prob" &&
          *kind != "expectation") {
        error(k->value, "unknown query kind '" + *kind +
                            "' (expected value, cond_prob, bc_prob or expectation)");
        kind.reset();
      }
    }
    if (const Field* p = d.find("probe")) ref(p->value, Sym::Probe);
    if (const Field* b = d.find("bc")) ref_list(b->value, Sym::Bc);
    const Field* g = d.find("given");
    if (!kind) return;
    if (*kind == "value") {
      if (g) error(g->line, g->column, "value queries take no 'given'");
    } else if (!g) {
      error(d.line, d.column, *kind + " query '" + d.name + "' needs field 'given'");
    } else if (*kind == "bc_prob") {
      ref_list(g->value, Sym::Bc);
    } else {
      ref(g->value, Sym::Probe);
    }
  }

  const SpecAst& ast_;
  std::vector<Diagnostic>& diags_;
  std::map<std::string, Sym, std::less<>> symbols_;
  std::multimap<std::string, int, std::less<>> later_;
};

}  // namespace

ParseResult parse(std::string_view source) {
  ParseResult r;
  Parser(source).run(r.ast, r.diagnostics);
  Validator(r.ast, r.diagnostics).run();
  std::stable_sort(r.diagnostics.begin(), r.diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.line, a.column) < std::tie(b.line, b.column);
  });
  return r;
}

}  // namespace posform::dsl
