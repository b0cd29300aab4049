#pragma once

// Constraint evaluation over an interned candidate. Shared by check() and the
// brute-force oracle; the search in solver.cpp does not use it except to
// verify emitted solutions.

#include <array>
#include <span>
#include <vector>

#include "index.hpp"
#include "pconf/solver.hpp"

namespace pconf::detail {

/// What a violation cites besides the candidate atoms.
struct Cause {
  enum Kind {
    domain,
    mandatory,
    type_values,
    require_cc,
    require_cp,
    require_pc,
    require_pp,
    incompatible_cc,
    incompatible_cp,
    incompatible_pp,
    user,
  };
  Kind kind = domain;
  std::size_t index = 0;  // into the matching Index list or the user list
  IdTriple triple;        // mandatory: (c,p,-); type_values: the missing/extra pair
};

struct AtomRef {
  bool is_component = false;
  IdTriple triple;  // component: triple.c only
};

inline AtomRef component_atom(Sym c) { return {true, {c, 0, 0}}; }
inline AtomRef assign_atom(const IdTriple& t) { return {false, t}; }

/// Read-only queries over a sorted, duplicate-free candidate.
class CandidateView {
public:
  explicit CandidateView(std::span<const IdTriple> atoms) : atoms_(atoms) {}

  bool present(Sym c) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), IdTriple{c, 0, 0});
    return it != atoms_.end() && it->c == c;
  }
  bool has_cell(Sym c, Sym p) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), IdTriple{c, p, 0});
    return it != atoms_.end() && it->c == c && it->p == p;
  }
  bool holds(const IdTriple& t) const { return std::binary_search(atoms_.begin(), atoms_.end(), t); }
  std::span<const IdTriple> atoms() const { return atoms_; }

private:
  std::span<const IdTriple> atoms_;
};

/// Calls `sink(Rule, Origin, const Cause&, std::span<const AtomRef>)` for each
/// violation, in a fixed order. The sink returns false to stop early.
template <typename Sink>
void evaluate(const Index& idx, std::span<const IdTriple> candidate, std::span<const IdRequirement> user,
              Sink&& sink) {
  const CandidateView s(candidate);
  auto emit = [&](Rule rule, Origin origin, const Cause& cause, std::span<const AtomRef> atoms) {
    return sink(rule, origin, cause, atoms);
  };
  auto emit1 = [&](Rule rule, const Cause& cause, AtomRef a) {
    const std::array<AtomRef, 1> atoms{a};
    return emit(rule, Origin::explicit_fact, cause, atoms);
  };
  auto emit2 = [&](Rule rule, Origin origin, const Cause& cause, AtomRef a, AtomRef b) {
    const std::array<AtomRef, 2> atoms{a, b};
    return emit(rule, origin, cause, atoms);
  };

  for (const auto& t : candidate) {
    if (!idx.in_domain(t) && !emit1(Rule::A3_extra, Cause{Cause::domain, 0, t}, assign_atom(t))) return;
  }

  // Per present component: A1/A4, A2, A3.
  for (std::size_t b = 0; b < candidate.size();) {
    const Sym c = candidate[b].c;
    std::size_t e = b;
    while (e < candidate.size() && candidate[e].c == c) ++e;
    const auto group = candidate.subspan(b, e - b);

    if (c < idx.info.size()) {
      for (Sym p : idx.info[c].mandatory) {
        if (s.has_cell(c, p)) continue;
        const Rule rule = p == idx.type_sym ? Rule::A1 : Rule::A4;
        if (!emit1(rule, Cause{Cause::mandatory, 0, {c, p, 0}}, component_atom(c))) return;
      }
    }

    for (std::size_t i = 0; i < group.size();) {
      std::size_t j = i;
      while (j < group.size() && group[j].p == group[i].p) ++j;
      if (j - i > 1) {
        std::vector<AtomRef> atoms;
        for (std::size_t k = i; k < j; ++k) atoms.push_back(assign_atom(group[k]));
        if (!emit(Rule::A2, Origin::explicit_fact, Cause{Cause::mandatory, 0, {c, group[i].p, 0}}, atoms)) return;
      }
      i = j;
    }

    for (const auto& typed : group) {
      if (typed.p != idx.type_sym) continue;
      const auto& expected = idx.values_of_type(typed.v);
      std::size_t k = 0;
      for (const auto& t : group) {
        if (t.p == idx.type_sym) continue;
        const std::pair<Sym, Sym> actual{t.p, t.v};
        while (k < expected.size() && expected[k] < actual) {
          const IdTriple missing{c, expected[k].first, expected[k].second};
          if (!emit1(Rule::A3_missing, Cause{Cause::type_values, 0, missing}, assign_atom(typed))) return;
          ++k;
        }
        if (k < expected.size() && expected[k] == actual) {
          ++k;
        } else if (idx.in_domain(t) &&
                   !emit2(Rule::A3_extra, Origin::explicit_fact, Cause{Cause::type_values, 0, t},
                          assign_atom(typed), assign_atom(t))) {
          return;
        }
      }
      for (; k < expected.size(); ++k) {
        const IdTriple missing{c, expected[k].first, expected[k].second};
        if (!emit1(Rule::A3_missing, Cause{Cause::type_values, 0, missing}, assign_atom(typed))) return;
      }
    }
    b = e;
  }

  for (std::size_t i = 0; i < idx.require_cc.size(); ++i) {
    const auto& r = idx.require_cc[i];
    if (s.present(r.from) && !s.present(r.to)) {
      const std::array<AtomRef, 1> atoms{component_atom(r.from)};
      if (!emit(Rule::R1, r.origin, Cause{Cause::require_cc, i, {}}, atoms)) return;
    }
  }
  for (std::size_t i = 0; i < idx.require_cp.size(); ++i) {
    const auto& [c, pv] = idx.require_cp[i];
    if (s.present(c) && !s.holds(pv) && !emit1(Rule::R2a, Cause{Cause::require_cp, i, {}}, component_atom(c)))
      return;
  }
  for (std::size_t i = 0; i < idx.require_pc.size(); ++i) {
    const auto& [pv, c] = idx.require_pc[i];
    if (s.holds(pv) && !s.present(c) && !emit1(Rule::R2b, Cause{Cause::require_pc, i, {}}, assign_atom(pv)))
      return;
  }
  for (std::size_t i = 0; i < idx.require_pp.size(); ++i) {
    const auto& [a, b] = idx.require_pp[i];
    if (s.holds(a) && !s.holds(b) && !emit1(Rule::R3, Cause{Cause::require_pp, i, {}}, assign_atom(a))) return;
  }
  for (std::size_t i = 0; i < idx.incompatible_cc.size(); ++i) {
    const auto& [a, b] = idx.incompatible_cc[i];
    if (s.present(a) && s.present(b) &&
        !emit2(Rule::I1, Origin::explicit_fact, Cause{Cause::incompatible_cc, i, {}}, component_atom(a),
               component_atom(b)))
      return;
  }
  for (std::size_t i = 0; i < idx.incompatible_cp.size(); ++i) {
    const auto& [c, pv] = idx.incompatible_cp[i];
    if (s.present(c) && s.holds(pv) &&
        !emit2(Rule::I2, Origin::explicit_fact, Cause{Cause::incompatible_cp, i, {}}, component_atom(c),
               assign_atom(pv)))
      return;
  }
  for (std::size_t i = 0; i < idx.incompatible_pp.size(); ++i) {
    const auto& [a, b] = idx.incompatible_pp[i];
    if (s.holds(a) && s.holds(b) &&
        !emit2(Rule::I3, Origin::explicit_fact, Cause{Cause::incompatible_pp, i, {}}, assign_atom(a),
               assign_atom(b)))
      return;
  }

  for (std::size_t i = 0; i < user.size(); ++i) {
    const auto& u = user[i];
    const Cause cause{Cause::user, i, {}};
    if (u.on_component) {
      const bool present = s.present(u.component);
      if (u.polarity == Polarity::req && !present && !emit1(Rule::U1, cause, component_atom(u.component))) return;
      if (u.polarity == Polarity::nreq && present && !emit1(Rule::U3, cause, component_atom(u.component))) return;
    } else {
      const bool holds = s.holds(u.pv);
      if (u.polarity == Polarity::req && !holds && !emit1(Rule::U2, cause, assign_atom(u.pv))) return;
      if (u.polarity == Polarity::nreq && holds && !emit1(Rule::U4, cause, assign_atom(u.pv))) return;
    }
  }
}

/// True iff `candidate` violates nothing.
inline bool satisfies(const Index& idx, std::span<const IdTriple> candidate, std::span<const IdRequirement> user) {
  bool ok = true;
  evaluate(idx, candidate, user, [&](Rule, Origin, const Cause&, std::span<const AtomRef>) {
    ok = false;
    return false;
  });
  return ok;
}

/// The problem's own user requirements followed by `extra`.
std::vector<IdRequirement> merged_requirements(const Index& idx, SymbolScope& scope,
                                               const std::vector<UserRequirement>& extra);

}  // namespace pconf::detail
