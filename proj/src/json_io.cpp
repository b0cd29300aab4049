#include "pconf/json_io.hpp"

#include <map>

namespace pconf::json_io {

json to_json(const Term& t) {
  if (t.is_integer()) return t.as_integer();
  if (t.is_constant()) return t.name();
  json arr = json::array();
  for (const auto& item : t.items()) arr.push_back(to_json(item));
  return arr;
}

Term term_from_json(const json& j) {
  if (j.is_number_integer()) return Term::integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (!is_identifier(s)) throw JsonError("'" + s + "' is not a valid constant");
    return Term::constant(s);
  }
  if (j.is_array()) {
    if (j.size() < 2) throw JsonError("tuples need at least two elements");
    Term::Tuple items;
    for (const auto& item : j) items.push_back(term_from_json(item));
    return Term::tuple(std::move(items));
  }
  throw JsonError("expected a string, integer or array term");
}

json to_json(const Triple& t) {
  return {{"component", to_json(t.component)}, {"property", to_json(t.property)}, {"value", to_json(t.value)}};
}

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw JsonError(std::string("missing field '") + name + "'");
  return j.at(name);
}

Term atomic_field(const json& j, const char* name) {
  Term t = term_from_json(field(j, name));
  if (!t.is_atomic()) throw JsonError(std::string("field '") + name + "' must be a constant or integer");
  return t;
}

}  // namespace

Triple triple_from_json(const json& j) {
  return Triple{atomic_field(j, "component"), atomic_field(j, "property"), term_from_json(field(j, "value"))};
}

json to_json(const UserRequirement& r) {
  json j{{"polarity", std::string(to_string(r.polarity))}};
  if (const auto* c = std::get_if<Term>(&r.target)) {
    j["component"] = to_json(*c);
  } else {
    const auto& t = std::get<Triple>(r.target);
    j["component"] = to_json(t.component);
    j["property"] = to_json(t.property);
    j["value"] = to_json(t.value);
  }
  return j;
}

UserRequirement requirement_from_json(const json& j) {
  const json& pol = field(j, "polarity");
  if (!pol.is_string() || (pol != "req" && pol != "nreq")) throw JsonError("polarity must be \"req\" or \"nreq\"");
  const Polarity polarity = pol == "req" ? Polarity::req : Polarity::nreq;
  const bool has_p = j.contains("property") && !j.at("property").is_null();
  const bool has_v = j.contains("value") && !j.at("value").is_null();
  if (has_p != has_v) throw JsonError("property and value must be given together");
  if (!has_p) return {polarity, atomic_field(j, "component")};
  return {polarity, triple_from_json(j)};
}

std::vector<UserRequirement> requirements_from_json(const json& j) {
  if (j.is_null()) return {};
  if (!j.is_array()) throw JsonError("requirements must be an array");
  std::vector<UserRequirement> out;
  for (const auto& item : j) out.push_back(requirement_from_json(item));
  return out;
}

json to_json(const ConstraintViolation& v) {
  json j{{"rule", std::string(to_string(v.rule))}, {"atoms", v.atoms}, {"message", v.message}};
  if (v.rule == Rule::R1) j["origin"] = std::string(to_string(v.origin));
  return j;
}

json to_json(const std::vector<ConstraintViolation>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back(to_json(v));
  return arr;
}

json to_json(const Solution& s) {
  json assignments = json::array();
  for (const auto& t : s.assignments) assignments.push_back(to_json(t));
  json present = json::array();
  for (const auto& c : s.present) present.push_back(to_json(c));
  return {{"assignments", assignments}, {"present", present}};
}

json to_json(const SolveResult& r) {
  json solutions = json::array();
  for (const auto& s : r.solutions) solutions.push_back(to_json(s));
  return {{"status", std::string(to_string(r.status))}, {"solutions", solutions}, {"violations", to_json(r.diagnostics)}};
}

json to_json(const WhatIfResult& r) {
  json values = json::array();
  for (const auto& v : r.values) values.push_back(to_json(v));
  return {{"status", std::string(to_string(r.status))},
          {"values", values},
          {"mayBeAbsent", r.may_be_absent},
          {"mustBePresent", r.must_be_present}};
}

json to_json(const Diagnostic& d) {
  json j{{"code", d.code},
         {"message", d.message},
         {"severity", d.severity == Severity::error ? "error" : "warning"}};
  if (d.line > 0) j["position"] = {{"line", d.line}, {"column", d.column}};
  if (!d.fact.empty()) j["fact"] = d.fact;
  return j;
}

json to_json(const std::vector<Diagnostic>& ds) {
  json arr = json::array();
  for (const auto& d : ds) arr.push_back(to_json(d));
  return arr;
}

json problem_summary(const ConfigurationProblem& p) {
  json components = json::array();
  for (const auto& c : p.components()) components.push_back(to_json(c));

  std::map<std::pair<Term, Term>, std::vector<Term>> cells;
  for (const auto& t : p.domain()) cells[{t.component, t.property}].push_back(t.value);
  json domains = json::array();
  for (const auto& [key, values] : cells) {
    json vs = json::array();
    for (const auto& v : values) vs.push_back(to_json(v));
    domains.push_back({{"component", to_json(key.first)}, {"property", to_json(key.second)}, {"values", vs}});
  }

  json partonomy = json::array();
  std::size_t explicit_r1 = 0;
  for (const auto& r : p.require_cc()) {
    if (r.origin == Origin::explicit_fact) ++explicit_r1;
    if (r.origin != Origin::part_to_whole) continue;
    const bool mandatory = p.require_cc().count({r.to, r.from, Origin::whole_to_part}) != 0;
    partonomy.push_back(
        {{"whole", to_json(r.to)}, {"part", to_json(r.from)}, {"kind", mandatory ? "mandatory" : "optional"}});
  }

  json requirements = json::array();
  for (const auto& u : p.user_requirements()) requirements.push_back(to_json(u));

  const json constraints{
      {"R1", explicit_r1},
      {"R2a", p.require_cp().size()},
      {"R2b", p.require_pc().size()},
      {"R3", p.require_pp().size()},
      {"I1", p.incompatible_cc().size()},
      {"I2", p.incompatible_cp().size()},
      {"I3", p.incompatible_pp().size()},
      {"partonomy", partonomy.size()},
      {"mandatory", p.mandatory().size()},
  };
  return {{"components", components},
          {"domains", domains},
          {"partonomy", partonomy},
          {"requirements", requirements},
          {"constraints", constraints}};
}

}  // namespace pconf::json_io
