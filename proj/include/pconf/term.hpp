#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pconf {

/// A ground term of the fact language: a constant symbol, an integer, or a
/// tuple of at least two terms.
///
/// Ordering is structural: integers sort before constants, constants before
/// tuples; integers compare numerically, constants by text, tuples
/// lexicographically element by element.
class Term {
public:
  struct Constant {
    std::string name;
  };
  using Tuple = std::vector<Term>;

  Term() : value_(Constant{}) {}

  static Term constant(std::string name) { return Term(Constant{std::move(name)}); }
  static Term integer(std::int64_t v) { return Term(v); }
  static Term tuple(Tuple items) { return Term(std::move(items)); }

  bool is_constant() const { return std::holds_alternative<Constant>(value_); }
  bool is_integer() const { return std::holds_alternative<std::int64_t>(value_); }
  bool is_tuple() const { return std::holds_alternative<Tuple>(value_); }
  /// Constants and integers; anything usable as a component, type or property name.
  bool is_atomic() const { return !is_tuple(); }

  const std::string& name() const { return std::get<Constant>(value_).name; }
  std::int64_t as_integer() const { return std::get<std::int64_t>(value_); }
  const Tuple& items() const { return std::get<Tuple>(value_); }

  /// Canonical fact-language text: `abc`, `-3`, `(a,1,(b,c))`.
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b) { return (a <=> b) == 0; }

private:
  explicit Term(Constant c) : value_(std::move(c)) {}
  explicit Term(std::int64_t v) : value_(v) {}
  explicit Term(Tuple t) : value_(std::move(t)) {}

  std::variant<std::int64_t, Constant, Tuple> value_;
};

/// Shorthand used heavily by tests and the reference instance.
inline Term sym(std::string name) { return Term::constant(std::move(name)); }
inline Term num(std::int64_t v) { return Term::integer(v); }

/// True if `text` matches `[a-z][a-zA-Z0-9_]*`.
bool is_identifier(std::string_view text);

/// One (component, property, value) atom; the unit of every solution.
struct Triple {
  Term component;
  Term property;
  Term value;

  Term as_term() const { return Term::tuple({component, property, value}); }
  /// `(c,p,v)`
  std::string to_string() const { return as_term().to_string(); }

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

enum class Polarity { req, nreq };

std::string_view to_string(Polarity p);

/// Target of a requirement: either a bare component or a property value.
using Target = std::variant<Term, Triple>;

std::string target_to_string(const Target& t);

struct UserRequirement {
  Polarity polarity = Polarity::req;
  Target target;

  friend bool operator==(const UserRequirement&, const UserRequirement&) = default;
  friend bool operator<(const UserRequirement& a, const UserRequirement& b) {
    if (a.polarity != b.polarity) return a.polarity < b.polarity;
    return a.target < b.target;
  }
};

inline const std::string kTypeProperty = "type";

inline bool is_type_property(const Term& t) {
  return t.is_constant() && t.name() == kTypeProperty;
}

}  // namespace pconf
