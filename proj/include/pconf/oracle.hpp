#pragma once

#include <cstdint>
#include <vector>

#include "pconf/solver.hpp"

namespace pconf {

/// Largest search space the brute-force oracle accepts.
inline constexpr std::uint64_t kOracleCap = 10'000'000;

enum class OracleStatus { ok, cap_exceeded };

struct OracleResult {
  OracleStatus status = OracleStatus::ok;
  /// Every solution, ordered by canonical text.
  std::vector<Solution> solutions;
  std::uint64_t space = 0;
};

/// Exhaustive reference enumeration: every (component, property) cell is
/// either unassigned or takes one domain value, and each combination is kept
/// iff check() finds no violation. Independent of the search in solve().
/// Combinations are split across OpenMP threads.
OracleResult brute_force_solve(const ConfigurationProblem& problem, const std::vector<UserRequirement>& extra = {});

/// Single-threaded reference of the same enumeration.
OracleResult brute_force_solve_serial(const ConfigurationProblem& problem,
                                      const std::vector<UserRequirement>& extra = {});

}  // namespace pconf
