#pragma once

// Random fact bases and instances for property tests. Test-only.

#include <cstdint>
#include <random>
#include <string>

#include "pconf/factlang.hpp"
#include "pconf/model.hpp"

namespace pconf::testing {

using Rng = std::mt19937_64;

/// Arbitrary well-shaped fact base: every predicate, integers (including
/// negative), nested tuple values. Not necessarily a valid instance.
FactBase random_fact_base(Rng& rng);

struct InstanceShape {
  int max_components = 6;
  int max_types = 3;
  int max_properties = 3;
  /// Reject instances whose oracle space exceeds this.
  std::uint64_t max_space = 200'000;
  bool user_requirements = true;
};

/// A valid instance (grounds without errors) whose oracle space is within
/// shape.max_space.
FactBase random_instance(Rng& rng, const InstanceShape& shape = {});

/// Adds one random constraint or user-requirement fact over the instance's
/// existing components and domain. Returns a description of what was added.
std::string add_random_constraint(Rng& rng, FactBase& facts);

/// The bike instance shipped in data/.
std::string reference_source();
FactBase reference_facts();
ConfigurationProblem reference_problem();

}  // namespace pconf::testing
