#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pconf/factlang.hpp"
#include "pconf/term.hpp"

namespace pconf {

namespace detail {
struct Index;
}

/// Where a component-requires-component record comes from. Partonomy facts
/// are compiled into the same record kind: a part requires its whole, and a
/// whole requires each of its mandatory parts.
enum class Origin { explicit_fact, part_to_whole, whole_to_part };

std::string_view to_string(Origin o);

struct ComponentRequirement {
  Term from;
  Term to;
  Origin origin = Origin::explicit_fact;

  friend auto operator<=>(const ComponentRequirement&, const ComponentRequirement&) = default;
  friend bool operator==(const ComponentRequirement&, const ComponentRequirement&) = default;
};

struct GroundOptions {
  /// A mandatory property that no candidate type defines is an error when
  /// set and a warning otherwise.
  bool strict_mandatory = true;
  ParseOptions parse;
};

/// A grounded configuration problem: components, derived property domains
/// and the normalized constraint records. Immutable once built.
class ConfigurationProblem {
public:
  ConfigurationProblem();

  const std::set<Term>& components() const { return components_; }
  /// Every (component, property, value) that may be assigned, including the
  /// (C, type, T) seeds.
  const std::set<Triple>& domain() const { return domain_; }
  /// (component, property) pairs; (C, type) is present for every component.
  const std::set<std::pair<Term, Term>>& mandatory() const { return mandatory_; }
  /// property_val facts grouped by type.
  const std::map<Term, std::set<std::pair<Term, Term>>>& type_values() const { return type_values_; }

  const std::set<ComponentRequirement>& require_cc() const { return require_cc_; }
  const std::set<std::pair<Term, Triple>>& require_cp() const { return require_cp_; }
  const std::set<std::pair<Triple, Term>>& require_pc() const { return require_pc_; }
  const std::set<std::pair<Triple, Triple>>& require_pp() const { return require_pp_; }
  const std::set<std::pair<Term, Term>>& incompatible_cc() const { return incompatible_cc_; }
  const std::set<std::pair<Term, Triple>>& incompatible_cp() const { return incompatible_cp_; }
  const std::set<std::pair<Triple, Triple>>& incompatible_pp() const { return incompatible_pp_; }
  const std::set<UserRequirement>& user_requirements() const { return user_requirements_; }

  /// Candidate types of `component`, in order.
  std::vector<Term> types_of(const Term& component) const;
  /// Domain values of (component, property), in order.
  std::vector<Term> values_of(const Term& component, const Term& property) const;
  bool has_component(const Term& c) const { return components_.count(c) != 0; }

  /// Number of combinations the brute-force oracle visits: the product over
  /// all (component, property) cells of (domain size + 1). Saturates.
  std::uint64_t oracle_space() const;

  const detail::Index& index() const { return *index_; }

  friend ConfigurationProblem build_problem(const FactBase& facts);

private:
  std::set<Term> components_;
  std::set<Triple> domain_;
  std::set<std::pair<Term, Term>> mandatory_;
  std::map<Term, std::set<std::pair<Term, Term>>> type_values_;
  std::set<ComponentRequirement> require_cc_;
  std::set<std::pair<Term, Triple>> require_cp_;
  std::set<std::pair<Triple, Term>> require_pc_;
  std::set<std::pair<Triple, Triple>> require_pp_;
  std::set<std::pair<Term, Term>> incompatible_cc_;
  std::set<std::pair<Term, Triple>> incompatible_cp_;
  std::set<std::pair<Triple, Triple>> incompatible_pp_;
  std::set<UserRequirement> user_requirements_;
  std::shared_ptr<const detail::Index> index_;
};

/// Grounds without validating; `facts` must be free of validation errors.
ConfigurationProblem build_problem(const FactBase& facts);

/// Grounding result. `problem` is set iff there are no error diagnostics.
struct GroundResult {
  std::optional<ConfigurationProblem> problem;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return problem.has_value(); }
};

/// Full well-formedness sweep. A fact base with no error diagnostics here
/// always grounds.
std::vector<Diagnostic> validate(const FactBase& facts, const GroundOptions& options = {});

/// Derives property domains from type seeds and property_val facts, marks
/// `type` mandatory for every component and compiles partonomy into
/// component requirements.
GroundResult ground(const FactBase& facts, const GroundOptions& options = {});

/// Parse + ground in one step.
GroundResult load_instance(std::string_view source, const GroundOptions& options = {});

/// Canonical grounded report: one `kind|arg|...` record per line, sorted.
std::string ground_report(const ConfigurationProblem& problem);

}  // namespace pconf
