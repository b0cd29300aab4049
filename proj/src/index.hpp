#pragma once

// Integer-interned view of a ConfigurationProblem shared by the checker, the
// search and the brute-force oracle.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pconf/model.hpp"

namespace pconf::detail {

using Sym = std::uint32_t;

inline constexpr Sym kNoSym = static_cast<Sym>(-1);

/// (component index, property symbol, value symbol). Symbol ids are assigned
/// in Term order, so sorting IdTriples matches sorting Triples.
struct IdTriple {
  Sym c = 0;
  Sym p = 0;
  Sym v = 0;

  friend auto operator<=>(const IdTriple&, const IdTriple&) = default;
  friend bool operator==(const IdTriple&, const IdTriple&) = default;
};

struct Cell {
  Sym property = 0;
  std::vector<Sym> values;  // sorted
};

struct ComponentInfo {
  std::vector<Sym> types;      // sorted type symbols
  std::vector<Cell> cells;     // sorted by property, includes the type cell
  std::vector<Sym> mandatory;  // sorted property symbols
};

struct IdRequirement {
  Polarity polarity = Polarity::req;
  bool on_component = true;
  Sym component = 0;
  IdTriple pv;
};

struct IdComponentRequirement {
  Sym from = 0;
  Sym to = 0;
  Origin origin = Origin::explicit_fact;
};

struct Index {
  std::vector<Term> symbols;
  std::map<Term, Sym> symbol_ids;
  std::vector<Term> components;
  std::map<Term, Sym> component_ids;
  Sym type_sym = kNoSym;

  std::vector<ComponentInfo> info;
  /// property_val facts per type symbol, sorted (property, value) pairs.
  std::map<Sym, std::vector<std::pair<Sym, Sym>>> type_values;

  std::vector<IdComponentRequirement> require_cc;
  std::vector<std::pair<Sym, IdTriple>> require_cp;
  std::vector<std::pair<IdTriple, Sym>> require_pc;
  std::vector<std::pair<IdTriple, IdTriple>> require_pp;
  std::vector<std::pair<Sym, Sym>> incompatible_cc;
  std::vector<std::pair<Sym, IdTriple>> incompatible_cp;
  std::vector<std::pair<IdTriple, IdTriple>> incompatible_pp;
  std::vector<IdRequirement> user;

  std::optional<Sym> symbol(const Term& t) const {
    auto it = symbol_ids.find(t);
    if (it == symbol_ids.end()) return std::nullopt;
    return it->second;
  }

  std::optional<Sym> component(const Term& t) const {
    auto it = component_ids.find(t);
    if (it == component_ids.end()) return std::nullopt;
    return it->second;
  }

  const Cell* cell(Sym c, Sym p) const {
    if (c >= info.size()) return nullptr;
    const auto& cells = info[c].cells;
    auto it = std::lower_bound(cells.begin(), cells.end(), p,
                               [](const Cell& cell, Sym prop) { return cell.property < prop; });
    return (it != cells.end() && it->property == p) ? &*it : nullptr;
  }

  bool in_domain(const IdTriple& t) const {
    const Cell* cl = cell(t.c, t.p);
    return cl && std::binary_search(cl->values.begin(), cl->values.end(), t.v);
  }

  const std::vector<std::pair<Sym, Sym>>& values_of_type(Sym type) const {
    static const std::vector<std::pair<Sym, Sym>> kEmpty;
    auto it = type_values.find(type);
    return it == type_values.end() ? kEmpty : it->second;
  }
};

/// Builds the interned view. Every term referenced by the problem is interned.
std::shared_ptr<const Index> build_index(const ConfigurationProblem& problem);

/// Symbol lookup that hands out fresh ids for terms the problem has never
/// seen, so arbitrary candidates and requirements can be evaluated.
class SymbolScope {
public:
  explicit SymbolScope(const Index& index) : index_(index) {}

  Sym symbol(const Term& t);
  Sym component(const Term& t);
  IdTriple triple(const Triple& t) { return {component(t.component), symbol(t.property), symbol(t.value)}; }
  IdRequirement requirement(const UserRequirement& r);

  const Term& symbol_term(Sym s) const;
  const Term& component_term(Sym c) const;

private:
  const Index& index_;
  std::map<Term, Sym> extra_symbols_;
  std::vector<Term> extra_symbol_terms_;
  std::map<Term, Sym> extra_components_;
  std::vector<Term> extra_component_terms_;
};

}  // namespace pconf::detail
