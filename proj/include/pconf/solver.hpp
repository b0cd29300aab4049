#pragma once

#include <chrono>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "pconf/model.hpp"

namespace pconf {

/// Constraint families a candidate can violate. `U_conflict` is only
/// produced by solve(), when one target is both required and forbidden.
enum class Rule {
  A1, A2, A3_extra, A3_missing, A4,
  R1, R2a, R2b, R3,
  I1, I2, I3,
  U1, U2, U3, U4,
  U_conflict,
};

std::string_view to_string(Rule r);

struct ConstraintViolation {
  Rule rule = Rule::A1;
  /// For R1: whether the record is explicit or compiled from partonomy.
  Origin origin = Origin::explicit_fact;
  /// Offending atoms (`assign(..)`, `component(..)`) and the constraint fact.
  std::vector<std::string> atoms;
  std::string message;

  friend bool operator==(const ConstraintViolation&, const ConstraintViolation&) = default;
};

/// A set of assign/3 atoms plus the components they make present.
struct Solution {
  std::set<Triple> assignments;
  std::set<Term> present;

  static Solution from_assignments(std::set<Triple> assignments);
  /// Canonical assign/3 text.
  std::string to_string() const;

  friend bool operator==(const Solution& a, const Solution& b) { return a.assignments == b.assignments; }
  friend bool operator<(const Solution& a, const Solution& b) { return a.assignments < b.assignments; }
};

/// Every rule the candidate violates against the problem's constraints and
/// user requirements plus `extra`. Empty iff the candidate is a solution.
std::vector<ConstraintViolation> check(const ConfigurationProblem& problem, const std::set<Triple>& candidate,
                                       const std::vector<UserRequirement>& extra = {});

enum class SolveStatus { sat, unsat, capped, budget_exceeded };

std::string_view to_string(SolveStatus s);

struct SolveOptions {
  /// 0 enumerates every solution.
  std::uint64_t max_models = 0;
  bool minimal_only = false;
  std::vector<UserRequirement> extra_requirements;
  /// Search decisions before giving up with budget_exceeded.
  std::uint64_t node_budget = 1'000'000;
  /// Wall-clock limit; zero disables it.
  std::chrono::milliseconds time_budget{0};
  /// Re-check every emitted solution and throw std::logic_error on a violation.
  bool verify = false;
};

struct SolveResult {
  SolveStatus status = SolveStatus::unsat;
  /// Ordered by canonical text.
  std::vector<Solution> solutions;
  /// U_conflict findings; empty otherwise.
  std::vector<ConstraintViolation> diagnostics;
  std::uint64_t nodes = 0;
};

/// Enumerates solutions by backtracking over component type choices.
/// Throws std::invalid_argument if an extra requirement names an unknown
/// component.
SolveResult solve(const ConfigurationProblem& problem, const SolveOptions& options = {});

/// Keeps the solutions whose assignment set is subset-minimal within `solutions`.
std::vector<Solution> minimal_filter(const std::vector<Solution>& solutions);

struct WhatIfResult {
  /// sat when the problem itself has a solution under the requirements.
  SolveStatus status = SolveStatus::unsat;
  std::vector<Term> values;
  bool may_be_absent = false;
  /// No solution omits the component (and at least one solution exists).
  bool must_be_present = false;
};

/// Domain values V of (component, property) for which requiring
/// (component, property, V) keeps the problem satisfiable. One independent
/// probe per value, run in parallel. Throws std::invalid_argument if the
/// cell has an empty domain.
WhatIfResult consistent_values(const ConfigurationProblem& problem, const SolveOptions& options,
                               const Term& component, const Term& property);

/// Same probes, one after another.
WhatIfResult consistent_values_serial(const ConfigurationProblem& problem, const SolveOptions& options,
                                      const Term& component, const Term& property);

/// Targets required and forbidden at the same time.
std::vector<ConstraintViolation> requirement_conflicts(const ConfigurationProblem& problem,
                                                       const std::vector<UserRequirement>& extra);

}  // namespace pconf
