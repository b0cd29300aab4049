#include "pconf/factlang.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace pconf {

std::string to_string(const Diagnostic& d) {
  std::string out;
  if (d.line > 0) out += std::to_string(d.line) + ":" + std::to_string(d.column) + ": ";
  out += d.severity == Severity::error ? "error" : "warning";
  out += " [" + d.code + "] " + d.message;
  if (!d.fact.empty()) out += " (in " + d.fact + ")";
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string Fact::to_string() const {
  std::string out = predicate;
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += args[i].to_string();
  }
  out += ").";
  return out;
}

std::string_view to_string(PartKind k) { return k == PartKind::mandatory ? "mandatory" : "optional"; }

Fact assign_fact(const Triple& t) { return Fact{"assign", {t.component, t.property, t.value}}; }

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { ident, integer, lparen, rparen, comma, dot, end, bad };

struct Token {
  Tok kind = Tok::end;
  std::string_view text;
  int line = 1;
  int column = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of input";
    case Tok::bad: return "unexpected '" + std::string(t.text) + "'";
    default: return "'" + std::string(t.text) + "'";
  }
}

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blank();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= src_.size()) return t;
    const std::size_t start = pos_;
    const char ch = src_[pos_];
    auto single = [&](Tok k) {
      advance();
      t.kind = k;
      t.text = src_.substr(start, 1);
      return t;
    };
    switch (ch) {
      case '(': return single(Tok::lparen);
      case ')': return single(Tok::rparen);
      case ',': return single(Tok::comma);
      case '.': return single(Tok::dot);
      default: break;
    }
    if (is_digit(ch) || (ch == '-' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
      advance();
      while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
      t.kind = Tok::integer;
      t.text = src_.substr(start, pos_ - start);
      return t;
    }
    if (is_word(ch)) {
      while (pos_ < src_.size() && is_word(src_[pos_])) advance();
      t.text = src_.substr(start, pos_ - start);
      t.kind = is_identifier(t.text) ? Tok::ident : Tok::bad;
      return t;
    }
    return single(Tok::bad);
  }

private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_word(char c) {
    return is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// ---------------------------------------------------------------------------
// Parser: fact := ident "(" term ("," term)* ")" "."
//         term := ident | integer | "(" term ("," term)* ")"

struct SyntaxError {
  Token at;
  std::string message;
};

struct PositionedFact {
  Fact fact;
  int line;
  int column;
};

constexpr int kMaxNesting = 64;

class Parser {
public:
  explicit Parser(std::string_view src) : lexer_(src) { bump(); }

  void run(std::vector<PositionedFact>& out, std::vector<Diagnostic>& diags) {
    while (cur_.kind != Tok::end) {
      const Token start = cur_;
      try {
        Fact f = fact();
        out.push_back({std::move(f), start.line, start.column});
      } catch (const SyntaxError& e) {
        diags.push_back({Severity::error, "SYNTAX", e.message, e.at.line, e.at.column, {}});
        recover();
      }
    }
  }

private:
  void bump() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(std::string_view expected) {
    throw SyntaxError{cur_, "expected " + std::string(expected) + ", found " + describe(cur_)};
  }

  void expect(Tok k, std::string_view what) {
    if (cur_.kind != k) fail(what);
    bump();
  }

  Fact fact() {
    Fact f;
    if (cur_.kind != Tok::ident) fail("predicate name");
    f.predicate = std::string(cur_.text);
    bump();
    expect(Tok::lparen, "'('");
    f.args.push_back(term(1));
    while (cur_.kind == Tok::comma) {
      bump();
      f.args.push_back(term(1));
    }
    expect(Tok::rparen, "',' or ')'");
    expect(Tok::dot, "'.'");
    return f;
  }

  Term term(int depth) {
    if (depth > kMaxNesting) throw SyntaxError{cur_, "terms nested too deeply"};
    switch (cur_.kind) {
      case Tok::ident: {
        Term t = Term::constant(std::string(cur_.text));
        bump();
        return t;
      }
      case Tok::integer: {
        std::int64_t v = 0;
        const auto* first = cur_.text.data();
        const auto* last = first + cur_.text.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last) throw SyntaxError{cur_, "integer out of range"};
        bump();
        return Term::integer(v);
      }
      case Tok::lparen: {
        const Token open = cur_;
        bump();
        Term::Tuple items;
        items.push_back(term(depth + 1));
        while (cur_.kind == Tok::comma) {
          bump();
          items.push_back(term(depth + 1));
        }
        expect(Tok::rparen, "',' or ')'");
        if (items.size() < 2) throw SyntaxError{open, "tuples need at least two elements"};
        return Term::tuple(std::move(items));
      }
      default:
        if (cur_.kind == Tok::bad && !cur_.text.empty() &&
            ((cur_.text[0] >= 'A' && cur_.text[0] <= 'Z') || cur_.text[0] == '_')) {
          throw SyntaxError{cur_, "variables are not supported, found '" + std::string(cur_.text) + "'"};
        }
        fail("constant, integer or '('");
    }
  }

  // Skip past the next '.' so one bad fact does not hide later ones.
  void recover() {
    while (cur_.kind != Tok::end && cur_.kind != Tok::dot) bump();
    if (cur_.kind == Tok::dot) bump();
  }

  Lexer lexer_;
  Token cur_;
};

// ---------------------------------------------------------------------------
// Interpretation of known predicates

const std::map<std::string, std::size_t, std::less<>>& schema() {
  static const std::map<std::string, std::size_t, std::less<>> kSchema = {
      {"domain", 3},
      {"property_val", 3},
      {"mandatory_property", 2},
      {"partof", 3},
      {"incompatible_com_com", 2},
      {"incompatible_com_pv", 2},
      {"incompatible_pv_pv", 2},
      {"require_com_com", 2},
      {"require_com_pv", 2},
      {"require_pv_pv", 2},
      {"user_com", 2},
  };
  return kSchema;
}

bool is_pv(const Term& t) {
  if (!t.is_tuple() || t.items().size() != 3) return false;
  return t.items()[0].is_atomic() && t.items()[1].is_atomic();
}

Triple to_triple(const Term& t) { return Triple{t.items()[0], t.items()[1], t.items()[2]}; }

class Classifier {
public:
  Classifier(FactBase& fb, std::vector<Diagnostic>& diags, const ParseOptions& opts)
      : fb_(fb), diags_(diags), opts_(opts) {}

  void add(const PositionedFact& pf) {
    const Fact& f = pf.fact;
    pos_ = &pf;
    const auto it = schema().find(f.predicate);
    if (it == schema().end()) {
      report(opts_.strict ? Severity::error : Severity::warning, "UNKNOWN_PREDICATE",
             "unknown predicate " + f.predicate + "/" + std::to_string(f.args.size()));
      return;
    }
    if (f.args.size() != it->second) {
      report(Severity::error, "ARITY",
             f.predicate + " expects " + std::to_string(it->second) + " arguments, got " +
                 std::to_string(f.args.size()));
      return;
    }
    const auto& a = f.args;
    const std::string& p = f.predicate;
    if (p == "domain" || p == "property_val") {
      if (!atomic(a[0], "first") || !atomic(a[1], "second")) return;
      (p == "domain" ? fb_.domains : fb_.property_values).insert(Triple{a[0], a[1], a[2]});
    } else if (p == "mandatory_property") {
      if (!atomic(a[0], "first") || !atomic(a[1], "second")) return;
      fb_.mandatory_properties.emplace(a[0], a[1]);
    } else if (p == "partof") {
      if (!atomic(a[0], "first") || !atomic(a[1], "second")) return;
      const Term& kind = a[2];
      if (!kind.is_constant() || (kind.name() != "mandatory" && kind.name() != "optional")) {
        report(Severity::error, "PART_KIND",
               "part kind must be 'mandatory' or 'optional', got " + kind.to_string());
        return;
      }
      fb_.partonomy.insert(
          PartOf{a[0], a[1], kind.name() == "mandatory" ? PartKind::mandatory : PartKind::optional});
    } else if (p == "incompatible_com_com" || p == "require_com_com") {
      if (!atomic(a[0], "first") || !atomic(a[1], "second")) return;
      (p == "require_com_com" ? fb_.require_cc : fb_.incompatible_cc).emplace(a[0], a[1]);
    } else if (p == "incompatible_com_pv") {
      if (!atomic(a[0], "first") || !pv(a[1], "second")) return;
      fb_.incompatible_cp.emplace(a[0], to_triple(a[1]));
    } else if (p == "incompatible_pv_pv" || p == "require_pv_pv") {
      if (!pv(a[0], "first") || !pv(a[1], "second")) return;
      (p == "require_pv_pv" ? fb_.require_pp : fb_.incompatible_pp)
          .emplace(to_triple(a[0]), to_triple(a[1]));
    } else if (p == "require_com_pv") {
      if (a[0].is_atomic() && is_pv(a[1])) {
        fb_.require_cp.emplace(a[0], to_triple(a[1]));
      } else if (is_pv(a[0]) && a[1].is_atomic()) {
        fb_.require_pc.emplace(to_triple(a[0]), a[1]);
      } else {
        report(Severity::error, "SHAPE",
               "require_com_pv takes (component,(C,P,V)) or ((C,P,V),component)");
      }
    } else if (p == "user_com") {
      const Term& pol = a[0];
      if (!pol.is_constant() || (pol.name() != "req" && pol.name() != "nreq")) {
        report(Severity::error, "POLARITY",
               "user_com polarity must be 'req' or 'nreq', got " + pol.to_string());
        return;
      }
      const Polarity polarity = pol.name() == "req" ? Polarity::req : Polarity::nreq;
      if (a[1].is_atomic()) {
        fb_.user_requirements.insert({polarity, a[1]});
      } else if (is_pv(a[1])) {
        fb_.user_requirements.insert({polarity, to_triple(a[1])});
      } else {
        report(Severity::error, "SHAPE", "user_com target must be a component or (C,P,V)");
      }
    }
  }

private:
  bool atomic(const Term& t, std::string_view which) {
    if (t.is_atomic()) return true;
    report(Severity::error, "SHAPE",
           std::string(which) + " argument of " + pos_->fact.predicate + " must be a constant or integer");
    return false;
  }

  bool pv(const Term& t, std::string_view which) {
    if (is_pv(t)) return true;
    report(Severity::error, "SHAPE",
           std::string(which) + " argument of " + pos_->fact.predicate + " must be a (C,P,V) triple");
    return false;
  }

  void report(Severity sev, std::string code, std::string message) {
    diags_.push_back({sev, std::move(code), std::move(message), pos_->line, pos_->column,
                      pos_->fact.to_string()});
  }

  FactBase& fb_;
  std::vector<Diagnostic>& diags_;
  const ParseOptions& opts_;
  const PositionedFact* pos_ = nullptr;
};

std::vector<PositionedFact> parse_positioned(std::string_view source, std::vector<Diagnostic>& diags) {
  std::vector<PositionedFact> facts;
  Parser(source).run(facts, diags);
  return facts;
}

Term target_term(const Target& t) {
  if (const auto* c = std::get_if<Term>(&t)) return *c;
  return std::get<Triple>(t).as_term();
}

}  // namespace

ParseResult<std::vector<Fact>> parse_facts(std::string_view source) {
  ParseResult<std::vector<Fact>> result;
  auto positioned = parse_positioned(source, result.diagnostics);
  if (has_errors(result.diagnostics)) return result;
  std::vector<Fact> facts;
  facts.reserve(positioned.size());
  for (auto& pf : positioned) facts.push_back(std::move(pf.fact));
  result.value = std::move(facts);
  return result;
}

ParseResult<FactBase> parse_program(std::string_view source, const ParseOptions& options) {
  ParseResult<FactBase> result;
  const auto positioned = parse_positioned(source, result.diagnostics);
  FactBase fb;
  Classifier classifier(fb, result.diagnostics, options);
  for (const auto& pf : positioned) classifier.add(pf);
  if (!has_errors(result.diagnostics)) result.value = std::move(fb);
  return result;
}

ParseResult<std::set<Triple>> parse_solution(std::string_view source) {
  ParseResult<std::set<Triple>> result;
  const auto positioned = parse_positioned(source, result.diagnostics);
  std::set<Triple> out;
  for (const auto& pf : positioned) {
    const Fact& f = pf.fact;
    auto report = [&](std::string code, std::string msg) {
      result.diagnostics.push_back(
          {Severity::error, std::move(code), std::move(msg), pf.line, pf.column, f.to_string()});
    };
    if (f.predicate != "assign") {
      report("UNKNOWN_PREDICATE", "solution files may only contain assign/3, got " + f.predicate + "/" +
                                      std::to_string(f.args.size()));
    } else if (f.args.size() != 3) {
      report("ARITY", "assign expects 3 arguments, got " + std::to_string(f.args.size()));
    } else if (!f.args[0].is_atomic() || !f.args[1].is_atomic()) {
      report("SHAPE", "component and property of assign must be constants or integers");
    } else {
      out.insert(Triple{f.args[0], f.args[1], f.args[2]});
    }
  }
  if (!has_errors(result.diagnostics)) result.value = std::move(out);
  return result;
}

bool FactBase::empty() const { return size() == 0; }

std::size_t FactBase::size() const {
  return domains.size() + property_values.size() + mandatory_properties.size() + partonomy.size() +
         incompatible_cc.size() + incompatible_cp.size() + incompatible_pp.size() + require_cc.size() +
         require_cp.size() + require_pc.size() + require_pp.size() + user_requirements.size();
}

std::vector<Fact> FactBase::facts() const {
  std::vector<Fact> out;
  out.reserve(size());
  for (const auto& t : domains) out.push_back({"domain", {t.component, t.property, t.value}});
  for (const auto& t : property_values) out.push_back({"property_val", {t.component, t.property, t.value}});
  for (const auto& [c, p] : mandatory_properties) out.push_back({"mandatory_property", {c, p}});
  for (const auto& po : partonomy)
    out.push_back({"partof", {po.whole, po.part, sym(std::string(to_string(po.kind)))}});
  for (const auto& [a, b] : incompatible_cc) out.push_back({"incompatible_com_com", {a, b}});
  for (const auto& [a, b] : incompatible_cp) out.push_back({"incompatible_com_pv", {a, b.as_term()}});
  for (const auto& [a, b] : incompatible_pp)
    out.push_back({"incompatible_pv_pv", {a.as_term(), b.as_term()}});
  for (const auto& [a, b] : require_cc) out.push_back({"require_com_com", {a, b}});
  for (const auto& [a, b] : require_cp) out.push_back({"require_com_pv", {a, b.as_term()}});
  for (const auto& [a, b] : require_pc) out.push_back({"require_com_pv", {a.as_term(), b}});
  for (const auto& [a, b] : require_pp) out.push_back({"require_pv_pv", {a.as_term(), b.as_term()}});
  for (const auto& u : user_requirements)
    out.push_back({"user_com", {sym(std::string(to_string(u.polarity))), target_term(u.target)}});
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::string join_lines(const std::vector<Fact>& facts) {
  std::string out;
  for (const auto& f : facts) {
    out += f.to_string();
    out += '\n';
  }
  return out;
}

}  // namespace

std::string serialize(const FactBase& facts) { return join_lines(facts.facts()); }

std::string serialize(const std::set<Triple>& assignments) {
  std::vector<Fact> facts;
  facts.reserve(assignments.size());
  for (const auto& t : assignments) facts.push_back(assign_fact(t));
  std::sort(facts.begin(), facts.end());
  return join_lines(facts);
}

}  // namespace pconf
