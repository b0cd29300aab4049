#include <algorithm>
#include <map>

#include "evaluate.hpp"
#include "pconf/solver.hpp"

namespace pconf {

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::A1: return "A1";
    case Rule::A2: return "A2";
    case Rule::A3_extra: return "A3_extra";
    case Rule::A3_missing: return "A3_missing";
    case Rule::A4: return "A4";
    case Rule::R1: return "R1";
    case Rule::R2a: return "R2a";
    case Rule::R2b: return "R2b";
    case Rule::R3: return "R3";
    case Rule::I1: return "I1";
    case Rule::I2: return "I2";
    case Rule::I3: return "I3";
    case Rule::U1: return "U1";
    case Rule::U2: return "U2";
    case Rule::U3: return "U3";
    case Rule::U4: return "U4";
    case Rule::U_conflict: return "U_conflict";
  }
  return "?";
}

Solution Solution::from_assignments(std::set<Triple> assignments) {
  Solution s;
  for (const auto& t : assignments) s.present.insert(t.component);
  s.assignments = std::move(assignments);
  return s;
}

std::string Solution::to_string() const { return serialize(assignments); }

namespace detail {

std::vector<IdRequirement> merged_requirements(const Index& idx, SymbolScope& scope,
                                               const std::vector<UserRequirement>& extra) {
  std::vector<IdRequirement> out = idx.user;
  for (const auto& u : extra) {
    const IdRequirement r = scope.requirement(u);
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const IdRequirement& o) {
      return o.polarity == r.polarity && o.on_component == r.on_component && o.component == r.component &&
             (r.on_component || o.pv == r.pv);
    });
    if (!duplicate) out.push_back(r);
  }
  return out;
}

namespace {

class Formatter {
public:
  Formatter(const Index& idx, const SymbolScope& scope, std::span<const IdRequirement> user)
      : idx_(idx), scope_(scope), user_(user) {}

  std::string comp(Sym c) const { return scope_.component_term(c).to_string(); }
  std::string term(Sym s) const { return scope_.symbol_term(s).to_string(); }
  std::string pv(const IdTriple& t) const { return "(" + comp(t.c) + "," + term(t.p) + "," + term(t.v) + ")"; }
  std::string assign(const IdTriple& t) const { return "assign" + pv(t) + "."; }

  std::string atom(const AtomRef& a) const {
    return a.is_component ? "component(" + comp(a.triple.c) + ")." : assign(a.triple);
  }

  ConstraintViolation format(Rule rule, Origin origin, const Cause& cause, std::span<const AtomRef> atoms) const {
    ConstraintViolation v;
    v.rule = rule;
    v.origin = origin;
    for (const auto& a : atoms) v.atoms.push_back(atom(a));
    const IdTriple& t = cause.triple;
    switch (cause.kind) {
      case Cause::domain:
        v.message = pv(t) + " is not in the domain of " + comp(t.c);
        break;
      case Cause::mandatory:
        if (rule == Rule::A2) {
          v.message = comp(t.c) + "." + term(t.p) + " has " + std::to_string(atoms.size()) + " values";
        } else if (rule == Rule::A1) {
          v.message = comp(t.c) + " is present but has no type";
        } else {
          v.atoms.push_back("mandatory_property(" + comp(t.c) + "," + term(t.p) + ").");
          v.message = "mandatory property " + term(t.p) + " of " + comp(t.c) + " is unassigned";
        }
        break;
      case Cause::type_values: {
        const Sym type = atoms.front().triple.v;
        if (rule == Rule::A3_missing) {
          v.atoms.push_back("property_val(" + term(type) + "," + term(t.p) + "," + term(t.v) + ").");
          v.message = comp(t.c) + " has type " + term(type) + " but lacks " + assign(t);
        } else {
          v.message = "type " + term(type) + " does not define " + term(t.p) + "=" + term(t.v);
        }
        break;
      }
      case Cause::require_cc: {
        const auto& r = idx_.require_cc[cause.index];
        switch (r.origin) {
          case Origin::explicit_fact:
            v.atoms.push_back("require_com_com(" + comp(r.from) + "," + comp(r.to) + ").");
            v.message = comp(r.from) + " requires " + comp(r.to);
            break;
          case Origin::part_to_whole: {
            const bool mandatory = std::any_of(idx_.require_cc.begin(), idx_.require_cc.end(), [&](const auto& o) {
              return o.origin == Origin::whole_to_part && o.from == r.to && o.to == r.from;
            });
            v.atoms.push_back("partof(" + comp(r.to) + "," + comp(r.from) + "," +
                              (mandatory ? "mandatory" : "optional") + ").");
            v.message = comp(r.from) + " is a part of " + comp(r.to) + ", which is absent";
            break;
          }
          case Origin::whole_to_part:
            v.atoms.push_back("partof(" + comp(r.from) + "," + comp(r.to) + ",mandatory).");
            v.message = comp(r.to) + " is a mandatory part of " + comp(r.from) + " but is absent";
            break;
        }
        break;
      }
      case Cause::require_cp: {
        const auto& [c, target] = idx_.require_cp[cause.index];
        v.atoms.push_back("require_com_pv(" + comp(c) + "," + pv(target) + ").");
        v.message = comp(c) + " requires " + pv(target);
        break;
      }
      case Cause::require_pc: {
        const auto& [source, c] = idx_.require_pc[cause.index];
        v.atoms.push_back("require_com_pv(" + pv(source) + "," + comp(c) + ").");
        v.message = pv(source) + " requires " + comp(c);
        break;
      }
      case Cause::require_pp: {
        const auto& [a, b] = idx_.require_pp[cause.index];
        v.atoms.push_back("require_pv_pv(" + pv(a) + "," + pv(b) + ").");
        v.message = pv(a) + " requires " + pv(b);
        break;
      }
      case Cause::incompatible_cc: {
        const auto& [a, b] = idx_.incompatible_cc[cause.index];
        v.atoms.push_back("incompatible_com_com(" + comp(a) + "," + comp(b) + ").");
        v.message = comp(a) + " and " + comp(b) + " are incompatible";
        break;
      }
      case Cause::incompatible_cp: {
        const auto& [c, target] = idx_.incompatible_cp[cause.index];
        v.atoms.push_back("incompatible_com_pv(" + comp(c) + "," + pv(target) + ").");
        v.message = comp(c) + " is incompatible with " + pv(target);
        break;
      }
      case Cause::incompatible_pp: {
        const auto& [a, b] = idx_.incompatible_pp[cause.index];
        v.atoms.push_back("incompatible_pv_pv(" + pv(a) + "," + pv(b) + ").");
        v.message = pv(a) + " and " + pv(b) + " are incompatible";
        break;
      }
      case Cause::user: {
        const auto& u = user_[cause.index];
        const std::string target = u.on_component ? comp(u.component) : pv(u.pv);
        v.atoms.push_back("user_com(" + std::string(to_string(u.polarity)) + "," + target + ").");
        v.message = u.polarity == Polarity::req ? "user requires " + target : "user forbids " + target;
        break;
      }
    }
    return v;
  }

private:
  const Index& idx_;
  const SymbolScope& scope_;
  std::span<const IdRequirement> user_;
};

}  // namespace

}  // namespace detail

std::vector<ConstraintViolation> check(const ConfigurationProblem& problem, const std::set<Triple>& candidate,
                                       const std::vector<UserRequirement>& extra) {
  const auto& idx = problem.index();
  detail::SymbolScope scope(idx);
  std::vector<detail::IdTriple> atoms;
  atoms.reserve(candidate.size());
  for (const auto& t : candidate) atoms.push_back(scope.triple(t));
  std::sort(atoms.begin(), atoms.end());
  const auto user = detail::merged_requirements(idx, scope, extra);

  const detail::Formatter fmt(idx, scope, user);
  std::vector<ConstraintViolation> out;
  detail::evaluate(idx, atoms, user,
                   [&](Rule rule, Origin origin, const detail::Cause& cause, std::span<const detail::AtomRef> refs) {
                     out.push_back(fmt.format(rule, origin, cause, refs));
                     return true;
                   });
  return out;
}

std::vector<ConstraintViolation> requirement_conflicts(const ConfigurationProblem& problem,
                                                       const std::vector<UserRequirement>& extra) {
  std::map<Target, std::pair<bool, bool>> seen;  // (req, nreq)
  auto note = [&](const UserRequirement& u) {
    auto& flags = seen[u.target];
    (u.polarity == Polarity::req ? flags.first : flags.second) = true;
  };
  for (const auto& u : problem.user_requirements()) note(u);
  for (const auto& u : extra) note(u);
  std::vector<ConstraintViolation> out;
  for (const auto& [target, flags] : seen) {
    if (!flags.first || !flags.second) continue;
    const std::string text = target_to_string(target);
    ConstraintViolation v;
    v.rule = Rule::U_conflict;
    v.atoms = {"user_com(req," + text + ").", "user_com(nreq," + text + ")."};
    v.message = text + " is both required and forbidden";
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace pconf
