#pragma once

// JSON encodings shared by the CLI's --format json output and the HTTP
// service. Terms map to JSON as: constant -> string, integer -> number,
// tuple -> array.

#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "pconf/factlang.hpp"
#include "pconf/model.hpp"
#include "pconf/solver.hpp"

namespace pconf::json_io {

using nlohmann::json;

/// Malformed request payloads.
class JsonError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

json to_json(const Term& t);
Term term_from_json(const json& j);

json to_json(const Triple& t);
Triple triple_from_json(const json& j);

json to_json(const UserRequirement& r);
UserRequirement requirement_from_json(const json& j);
std::vector<UserRequirement> requirements_from_json(const json& j);

json to_json(const ConstraintViolation& v);
json to_json(const std::vector<ConstraintViolation>& vs);
json to_json(const Solution& s);
json to_json(const SolveResult& r);
json to_json(const WhatIfResult& r);
json to_json(const Diagnostic& d);
json to_json(const std::vector<Diagnostic>& ds);

/// Components, per-cell domains, partonomy and constraint counts.
json problem_summary(const ConfigurationProblem& p);

}  // namespace pconf::json_io
