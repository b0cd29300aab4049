#include "pconf/model.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "index.hpp"

namespace pconf {

std::string_view to_string(Origin o) {
  switch (o) {
    case Origin::explicit_fact: return "explicit";
    case Origin::part_to_whole: return "part_to_whole";
    case Origin::whole_to_part: return "whole_to_part";
  }
  return "explicit";
}

namespace {

Fact fact_of(std::string predicate, std::vector<Term> args) { return Fact{std::move(predicate), std::move(args)}; }

class Validator {
public:
  Validator(const FactBase& fb, const GroundOptions& opts) : fb_(fb), opts_(opts) {
    for (const auto& d : fb_.domains) {
      if (is_type_property(d.property)) {
        components_.insert(d.component);
        types_of_[d.component].insert(d.value);
        candidate_types_.insert(d.value);
      }
    }
    for (const auto& [c, types] : types_of_) {
      for (const auto& t : types) {
        for (const auto& pv : fb_.property_values) {
          if (pv.component == t) domain_.insert(Triple{c, pv.property, pv.value});
        }
        domain_.insert(Triple{c, sym(kTypeProperty), t});
      }
    }
  }

  std::vector<Diagnostic> run() {
    for (const auto& d : fb_.domains) {
      if (!is_type_property(d.property)) {
        error("DOMAIN_NOT_TYPE",
              "domain/3 may only seed the type property; other domains derive from property_val",
              fact_of("domain", {d.component, d.property, d.value}));
      }
    }
    for (const auto& pv : fb_.property_values) {
      const Fact f = fact_of("property_val", {pv.component, pv.property, pv.value});
      if (is_type_property(pv.property)) {
        error("RESERVED_PROPERTY", "'type' is reserved and cannot be a predefined property value", f);
      }
      if (!candidate_types_.count(pv.component)) {
        warning("DEAD_TYPE", "type " + pv.component.to_string() + " is no component's candidate type", f);
      }
    }
    for (const auto& [c, p] : fb_.mandatory_properties) {
      const Fact f = fact_of("mandatory_property", {c, p});
      if (!component(c, f) || is_type_property(p)) continue;
      bool defined = false;
      for (const auto& t : types_of_[c]) {
        for (const auto& pv : fb_.property_values) {
          if (pv.component == t && pv.property == p) defined = true;
        }
      }
      if (!defined) {
        report(opts_.strict_mandatory ? Severity::error : Severity::warning, "IMPOSSIBLE_MANDATORY",
               "no candidate type of " + c.to_string() + " defines property " + p.to_string(), f);
      }
    }
    for (const auto& po : fb_.partonomy) {
      const Fact f = fact_of("partof", {po.whole, po.part, sym(std::string(to_string(po.kind)))});
      component(po.whole, f);
      component(po.part, f);
    }
    check_cycles();
    for (const auto& [a, b] : fb_.incompatible_cc) {
      const Fact f = fact_of("incompatible_com_com", {a, b});
      component(a, f);
      component(b, f);
    }
    for (const auto& [a, b] : fb_.incompatible_cp) {
      const Fact f = fact_of("incompatible_com_pv", {a, b.as_term()});
      component(a, f);
      pv(b, f);
    }
    for (const auto& [a, b] : fb_.incompatible_pp) {
      const Fact f = fact_of("incompatible_pv_pv", {a.as_term(), b.as_term()});
      pv(a, f);
      pv(b, f);
    }
    for (const auto& [a, b] : fb_.require_cc) {
      const Fact f = fact_of("require_com_com", {a, b});
      component(a, f);
      component(b, f);
    }
    for (const auto& [a, b] : fb_.require_cp) {
      const Fact f = fact_of("require_com_pv", {a, b.as_term()});
      component(a, f);
      pv(b, f);
    }
    for (const auto& [a, b] : fb_.require_pc) {
      const Fact f = fact_of("require_com_pv", {a.as_term(), b});
      pv(a, f);
      component(b, f);
    }
    for (const auto& [a, b] : fb_.require_pp) {
      const Fact f = fact_of("require_pv_pv", {a.as_term(), b.as_term()});
      pv(a, f);
      pv(b, f);
    }
    for (const auto& u : fb_.user_requirements) {
      const Term target = std::holds_alternative<Term>(u.target) ? std::get<Term>(u.target)
                                                                  : std::get<Triple>(u.target).as_term();
      const Fact f = fact_of("user_com", {sym(std::string(to_string(u.polarity))), target});
      if (const auto* c = std::get_if<Term>(&u.target)) {
        component(*c, f);
      } else {
        pv(std::get<Triple>(u.target), f);
      }
    }
    return std::move(diags_);
  }

private:
  void report(Severity sev, std::string code, std::string message, const Fact& f) {
    diags_.push_back({sev, std::move(code), std::move(message), 0, 0, f.to_string()});
  }
  void error(std::string code, std::string message, const Fact& f) {
    report(Severity::error, std::move(code), std::move(message), f);
  }
  void warning(std::string code, std::string message, const Fact& f) {
    report(Severity::warning, std::move(code), std::move(message), f);
  }

  bool component(const Term& c, const Fact& f) {
    if (components_.count(c)) return true;
    error("UNKNOWN_COMPONENT", "component " + c.to_string() + " has no domain(" + c.to_string() + ",type,_) seed", f);
    return false;
  }

  void pv(const Triple& t, const Fact& f) {
    if (!component(t.component, f)) return;
    if (!domain_.count(t)) {
      warning("UNKNOWN_VALUE", t.to_string() + " is not in the derived domain and can never be assigned", f);
    }
  }

  void check_cycles() {
    std::map<Term, std::vector<Term>> parts;
    for (const auto& po : fb_.partonomy) parts[po.whole].push_back(po.part);
    enum class Mark { none, active, done };
    std::map<Term, Mark> mark;
    std::set<Term> reported;
    std::vector<Term> stack;
    std::function<void(const Term&)> visit = [&](const Term& node) {
      mark[node] = Mark::active;
      stack.push_back(node);
      for (const auto& next : parts[node]) {
        const Mark m = mark[next];
        if (m == Mark::active) {
          auto start = std::find(stack.begin(), stack.end(), next);
          std::string path;
          for (auto it = start; it != stack.end(); ++it) path += it->to_string() + " -> ";
          path += next.to_string();
          if (reported.insert(next).second) {
            const auto kind = std::find_if(fb_.partonomy.begin(), fb_.partonomy.end(), [&](const PartOf& po) {
              return po.whole == node && po.part == next;
            });
            error("PARTOF_CYCLE", "partonomy cycle " + path,
                  fact_of("partof", {node, next, sym(std::string(to_string(kind->kind)))}));
          }
        } else if (m == Mark::none) {
          visit(next);
        }
      }
      stack.pop_back();
      mark[node] = Mark::done;
    };
    for (const auto& [whole, _] : parts) {
      if (mark[whole] == Mark::none) visit(whole);
    }
  }

  const FactBase& fb_;
  const GroundOptions& opts_;
  std::set<Term> components_;
  std::set<Term> candidate_types_;
  std::map<Term, std::set<Term>> types_of_;
  std::set<Triple> domain_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

ConfigurationProblem::ConfigurationProblem() : index_(detail::build_index(*this)) {}

ConfigurationProblem build_problem(const FactBase& fb) {
  ConfigurationProblem p;
  const Term type = sym(kTypeProperty);
  for (const auto& d : fb.domains) {
    if (!is_type_property(d.property)) continue;
    p.components_.insert(d.component);
    p.domain_.insert(d);
    p.mandatory_.emplace(d.component, type);
  }
  for (const auto& pv : fb.property_values) p.type_values_[pv.component].emplace(pv.property, pv.value);
  for (const auto& d : fb.domains) {
    if (!is_type_property(d.property)) continue;
    auto it = p.type_values_.find(d.value);
    if (it == p.type_values_.end()) continue;
    for (const auto& [prop, val] : it->second) p.domain_.insert(Triple{d.component, prop, val});
  }
  for (const auto& mp : fb.mandatory_properties) p.mandatory_.insert(mp);

  for (const auto& [a, b] : fb.require_cc) p.require_cc_.insert({a, b, Origin::explicit_fact});
  for (const auto& po : fb.partonomy) {
    p.require_cc_.insert({po.part, po.whole, Origin::part_to_whole});
    if (po.kind == PartKind::mandatory) p.require_cc_.insert({po.whole, po.part, Origin::whole_to_part});
  }
  p.require_cp_ = fb.require_cp;
  p.require_pc_ = fb.require_pc;
  p.require_pp_ = fb.require_pp;
  p.incompatible_cc_ = fb.incompatible_cc;
  p.incompatible_cp_ = fb.incompatible_cp;
  p.incompatible_pp_ = fb.incompatible_pp;
  p.user_requirements_ = fb.user_requirements;
  p.index_ = detail::build_index(p);
  return p;
}

std::vector<Term> ConfigurationProblem::types_of(const Term& component) const {
  return values_of(component, sym(kTypeProperty));
}

std::vector<Term> ConfigurationProblem::values_of(const Term& component, const Term& property) const {
  std::vector<Term> out;
  auto it = domain_.lower_bound(Triple{component, property, Term::integer(std::numeric_limits<std::int64_t>::min())});
  for (; it != domain_.end() && it->component == component && it->property == property; ++it) {
    out.push_back(it->value);
  }
  return out;
}

std::uint64_t ConfigurationProblem::oracle_space() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (const auto& info : index_->info) {
    for (const auto& cell : info.cells) {
      const std::uint64_t radix = cell.values.size() + 1;
      if (total > kMax / radix) return kMax;
      total *= radix;
    }
  }
  return total;
}

std::vector<Diagnostic> validate(const FactBase& facts, const GroundOptions& options) {
  return Validator(facts, options).run();
}

GroundResult ground(const FactBase& facts, const GroundOptions& options) {
  GroundResult result;
  result.diagnostics = validate(facts, options);
  if (!has_errors(result.diagnostics)) result.problem = build_problem(facts);
  return result;
}

GroundResult load_instance(std::string_view source, const GroundOptions& options) {
  auto parsed = parse_program(source, options.parse);
  if (!parsed.ok()) {
    GroundResult result;
    result.diagnostics = std::move(parsed.diagnostics);
    return result;
  }
  auto result = ground(*parsed.value, options);
  result.diagnostics.insert(result.diagnostics.begin(), parsed.diagnostics.begin(), parsed.diagnostics.end());
  return result;
}

namespace {

std::string record(std::initializer_list<std::string> fields) {
  std::string out;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out += '|';
    first = false;
    out += f;
  }
  return out;
}

std::string pv_fields(const Triple& t) {
  return t.component.to_string() + "|" + t.property.to_string() + "|" + t.value.to_string();
}

}  // namespace

std::string ground_report(const ConfigurationProblem& p) {
  std::vector<std::string> lines;
  for (const auto& c : p.components()) lines.push_back(record({"component", c.to_string()}));
  for (const auto& d : p.domain()) lines.push_back("domain|" + pv_fields(d));
  for (const auto& [c, prop] : p.mandatory()) lines.push_back(record({"mandatory", c.to_string(), prop.to_string()}));
  for (const auto& [type, pairs] : p.type_values()) {
    for (const auto& [prop, val] : pairs) {
      lines.push_back(record({"property_val", type.to_string(), prop.to_string(), val.to_string()}));
    }
  }
  for (const auto& r : p.require_cc()) {
    lines.push_back(record({"R1", r.from.to_string(), r.to.to_string(), std::string(to_string(r.origin))}));
  }
  for (const auto& [c, t] : p.require_cp()) lines.push_back("R2a|" + c.to_string() + "|" + pv_fields(t));
  for (const auto& [t, c] : p.require_pc()) lines.push_back("R2b|" + pv_fields(t) + "|" + c.to_string());
  for (const auto& [a, b] : p.require_pp()) lines.push_back("R3|" + pv_fields(a) + "|" + pv_fields(b));
  for (const auto& [a, b] : p.incompatible_cc()) lines.push_back(record({"I1", a.to_string(), b.to_string()}));
  for (const auto& [c, t] : p.incompatible_cp()) lines.push_back("I2|" + c.to_string() + "|" + pv_fields(t));
  for (const auto& [a, b] : p.incompatible_pp()) lines.push_back("I3|" + pv_fields(a) + "|" + pv_fields(b));
  for (const auto& u : p.user_requirements()) {
    const bool req = u.polarity == Polarity::req;
    if (const auto* c = std::get_if<Term>(&u.target)) {
      lines.push_back(record({req ? "U1" : "U3", c->to_string()}));
    } else {
      lines.push_back(std::string(req ? "U2|" : "U4|") + pv_fields(std::get<Triple>(u.target)));
    }
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace detail {

std::shared_ptr<const Index> build_index(const ConfigurationProblem& p) {
  auto idx = std::make_shared<Index>();
  std::set<Term> terms;
  auto add_triple = [&](const Triple& t) {
    terms.insert(t.property);
    terms.insert(t.value);
  };
  terms.insert(sym(kTypeProperty));
  for (const auto& d : p.domain()) add_triple(d);
  for (const auto& [type, pairs] : p.type_values()) {
    terms.insert(type);
    for (const auto& [prop, val] : pairs) {
      terms.insert(prop);
      terms.insert(val);
    }
  }
  for (const auto& [c, prop] : p.mandatory()) terms.insert(prop);
  for (const auto& [c, t] : p.require_cp()) add_triple(t);
  for (const auto& [t, c] : p.require_pc()) add_triple(t);
  for (const auto& [a, b] : p.require_pp()) {
    add_triple(a);
    add_triple(b);
  }
  for (const auto& [c, t] : p.incompatible_cp()) add_triple(t);
  for (const auto& [a, b] : p.incompatible_pp()) {
    add_triple(a);
    add_triple(b);
  }
  for (const auto& u : p.user_requirements()) {
    if (const auto* t = std::get_if<Triple>(&u.target)) add_triple(*t);
  }
  for (const auto& t : terms) {
    idx->symbol_ids.emplace(t, static_cast<Sym>(idx->symbols.size()));
    idx->symbols.push_back(t);
  }
  idx->type_sym = idx->symbol_ids.at(sym(kTypeProperty));

  // Components referenced by constraints are always known after validation;
  // anything else still gets an index slot so lookups stay total.
  std::set<Term> comps(p.components().begin(), p.components().end());
  for (const auto& r : p.require_cc()) {
    comps.insert(r.from);
    comps.insert(r.to);
  }
  for (const auto& c : comps) {
    idx->component_ids.emplace(c, static_cast<Sym>(idx->components.size()));
    idx->components.push_back(c);
  }
  idx->info.resize(idx->components.size());

  auto id = [&](const Term& t) { return idx->symbol_ids.at(t); };
  auto comp = [&](const Term& t) {
    auto it = idx->component_ids.find(t);
    if (it != idx->component_ids.end()) return it->second;
    const auto fresh = static_cast<Sym>(idx->components.size());
    idx->component_ids.emplace(t, fresh);
    idx->components.push_back(t);
    idx->info.emplace_back();
    return fresh;
  };
  auto triple = [&](const Triple& t) { return IdTriple{comp(t.component), id(t.property), id(t.value)}; };

  for (const auto& d : p.domain()) {
    auto& info = idx->info[comp(d.component)];
    const Sym prop = id(d.property);
    if (info.cells.empty() || info.cells.back().property != prop) info.cells.push_back(Cell{prop, {}});
    info.cells.back().values.push_back(id(d.value));
    if (prop == idx->type_sym) info.types.push_back(id(d.value));
  }
  for (const auto& [c, prop] : p.mandatory()) idx->info[comp(c)].mandatory.push_back(id(prop));
  for (const auto& [type, pairs] : p.type_values()) {
    auto& out = idx->type_values[id(type)];
    for (const auto& [prop, val] : pairs) out.emplace_back(id(prop), id(val));
  }
  for (const auto& r : p.require_cc()) idx->require_cc.push_back({comp(r.from), comp(r.to), r.origin});
  for (const auto& [c, t] : p.require_cp()) idx->require_cp.emplace_back(comp(c), triple(t));
  for (const auto& [t, c] : p.require_pc()) idx->require_pc.emplace_back(triple(t), comp(c));
  for (const auto& [a, b] : p.require_pp()) idx->require_pp.emplace_back(triple(a), triple(b));
  for (const auto& [a, b] : p.incompatible_cc()) idx->incompatible_cc.emplace_back(comp(a), comp(b));
  for (const auto& [c, t] : p.incompatible_cp()) idx->incompatible_cp.emplace_back(comp(c), triple(t));
  for (const auto& [a, b] : p.incompatible_pp()) idx->incompatible_pp.emplace_back(triple(a), triple(b));
  for (const auto& u : p.user_requirements()) {
    IdRequirement r;
    r.polarity = u.polarity;
    if (const auto* c = std::get_if<Term>(&u.target)) {
      r.component = comp(*c);
    } else {
      r.on_component = false;
      r.pv = triple(std::get<Triple>(u.target));
      r.component = r.pv.c;
    }
    idx->user.push_back(r);
  }
  return idx;
}

Sym SymbolScope::symbol(const Term& t) {
  if (auto s = index_.symbol(t)) return *s;
  auto [it, inserted] =
      extra_symbols_.emplace(t, static_cast<Sym>(index_.symbols.size() + extra_symbol_terms_.size()));
  if (inserted) extra_symbol_terms_.push_back(t);
  return it->second;
}

Sym SymbolScope::component(const Term& t) {
  if (auto c = index_.component(t)) return *c;
  auto [it, inserted] =
      extra_components_.emplace(t, static_cast<Sym>(index_.components.size() + extra_component_terms_.size()));
  if (inserted) extra_component_terms_.push_back(t);
  return it->second;
}

IdRequirement SymbolScope::requirement(const UserRequirement& u) {
  IdRequirement r;
  r.polarity = u.polarity;
  if (const auto* c = std::get_if<Term>(&u.target)) {
    r.component = component(*c);
  } else {
    r.on_component = false;
    r.pv = triple(std::get<Triple>(u.target));
    r.component = r.pv.c;
  }
  return r;
}

const Term& SymbolScope::symbol_term(Sym s) const {
  return s < index_.symbols.size() ? index_.symbols[s] : extra_symbol_terms_.at(s - index_.symbols.size());
}

const Term& SymbolScope::component_term(Sym c) const {
  return c < index_.components.size() ? index_.components[c]
                                      : extra_component_terms_.at(c - index_.components.size());
}

}  // namespace detail

}  // namespace pconf
