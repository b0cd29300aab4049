#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pconf/term.hpp"

namespace pconf {

enum class Severity { error, warning };

/// A parser or validator finding. `line`/`column` are 1-based; 0 means the
/// finding is not tied to a source position.
struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  int line = 0;
  int column = 0;
  /// Offending fact in canonical text, when there is one.
  std::string fact;
};

std::string to_string(const Diagnostic& d);

bool has_errors(const std::vector<Diagnostic>& diags);

/// One ground fact `predicate(arg,...)`.
struct Fact {
  std::string predicate;
  std::vector<Term> args;

  std::string to_string() const;

  friend auto operator<=>(const Fact&, const Fact&) = default;
  friend bool operator==(const Fact&, const Fact&) = default;
};

enum class PartKind { mandatory, optional };

std::string_view to_string(PartKind k);

struct PartOf {
  Term whole;
  Term part;
  PartKind kind = PartKind::mandatory;

  friend auto operator<=>(const PartOf&, const PartOf&) = default;
  friend bool operator==(const PartOf&, const PartOf&) = default;
};

/// The product knowledge of one instance file, grouped by predicate.
struct FactBase {
  std::set<Triple> domains;          // domain(C,P,V)
  std::set<Triple> property_values;  // property_val(T,P,V)
  std::set<std::pair<Term, Term>> mandatory_properties;
  std::set<PartOf> partonomy;
  std::set<std::pair<Term, Term>> incompatible_cc;
  std::set<std::pair<Term, Triple>> incompatible_cp;
  std::set<std::pair<Triple, Triple>> incompatible_pp;
  std::set<std::pair<Term, Term>> require_cc;
  std::set<std::pair<Term, Triple>> require_cp;  // require_com_pv(C1,(C2,P2,V2))
  std::set<std::pair<Triple, Term>> require_pc;  // require_com_pv((C1,P1,V1),C2)
  std::set<std::pair<Triple, Triple>> require_pp;
  std::set<UserRequirement> user_requirements;

  bool empty() const;
  std::size_t size() const;

  /// Every fact, in canonical order.
  std::vector<Fact> facts() const;

  friend bool operator==(const FactBase&, const FactBase&) = default;
};

struct ParseOptions {
  /// Unknown predicates are errors when set, dropped with a warning otherwise.
  bool strict = true;
};

template <typename T>
struct ParseResult {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
};

/// Parses an instance file. Never throws on malformed input; every problem
/// becomes a positioned diagnostic and `value` is empty if any is an error.
ParseResult<FactBase> parse_program(std::string_view source, const ParseOptions& options = {});

/// Parses a file of `assign(C,P,V).` facts.
ParseResult<std::set<Triple>> parse_solution(std::string_view source);

/// Parses the facts of `source` without interpreting predicates.
ParseResult<std::vector<Fact>> parse_facts(std::string_view source);

/// Canonical text: one fact per line, sorted by predicate then arguments.
std::string serialize(const FactBase& facts);
std::string serialize(const std::set<Triple>& assignments);

Fact assign_fact(const Triple& t);

}  // namespace pconf
