#include "pconf/solver.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "evaluate.hpp"
#include "index.hpp"

namespace pconf {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::sat: return "SAT";
    case SolveStatus::unsat: return "UNSAT";
    case SolveStatus::capped: return "CAPPED";
    case SolveStatus::budget_exceeded: return "BUDGET_EXCEEDED";
  }
  return "?";
}

namespace {

using detail::IdTriple;
using detail::Index;
using detail::Sym;

/// Fixed-width bit set over the states of one component.
class StateSet {
public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  StateSet() = default;
  StateSet(std::size_t size, bool full) : size_(size), words_((size + 63) / 64, full ? ~0ULL : 0ULL) {
    trim();
  }

  void set(std::size_t i) { words_[i / 64] |= 1ULL << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1ULL; }

  void remove(const StateSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
  }
  void keep(const StateSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
  }
  void assign_single(std::size_t i) {
    std::fill(words_.begin(), words_.end(), 0ULL);
    set(i);
  }

  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool intersects(const StateSet& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & o.words_[w]) return true;
    }
    return false;
  }
  std::size_t next(std::size_t from) const {
    for (std::size_t w = from / 64; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      if (w == from / 64) bits &= ~0ULL << (from % 64);
      if (bits) return w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
    }
    return npos;
  }
  StateSet complement() const {
    StateSet out = *this;
    for (auto& w : out.words_) w = ~w;
    out.trim();
    return out;
  }

private:
  void trim() {
    if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (1ULL << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// The component-level model: each component is absent (state 0) or has
/// exactly one type (state i = types[i-1]); A3 makes the type fix every other
/// property. Binary constraints are nogoods ¬(x ∈ mx ∧ y ∈ my).
struct Nogood {
  Sym x;
  StateSet mx;
  Sym y;
  StateSet my;
};

struct Watch {
  std::size_t nogood;
  bool first;
};

class CompiledProblem {
public:
  CompiledProblem(const Index& idx, std::span<const detail::IdRequirement> user) : idx_(idx) {
    const std::size_t n = idx.info.size();
    domains_.resize(n);
    for (std::size_t c = 0; c < n; ++c) {
      StateSet d(state_count(c), true);
      const auto& types = idx.info[c].types;
      for (std::size_t s = 1; s <= types.size(); ++s) {
        if (!type_feasible(static_cast<Sym>(c), types[s - 1])) {
          StateSet one(state_count(c), false);
          one.set(s);
          d.remove(one);
        }
      }
      domains_[c] = std::move(d);
    }
    watches_.resize(n);

    for (const auto& r : idx.require_cc) add(r.from, present(r.from), r.to, absent(r.to));
    for (const auto& [c, pv] : idx.require_cp) add(c, present(c), pv.c, holds(pv).complement());
    for (const auto& [pv, c] : idx.require_pc) add(pv.c, holds(pv), c, absent(c));
    for (const auto& [a, b] : idx.require_pp) add(a.c, holds(a), b.c, holds(b).complement());
    for (const auto& [a, b] : idx.incompatible_cc) add(a, present(a), b, present(b));
    for (const auto& [c, pv] : idx.incompatible_cp) add(c, present(c), pv.c, holds(pv));
    for (const auto& [a, b] : idx.incompatible_pp) add(a.c, holds(a), b.c, holds(b));

    for (const auto& u : user) {
      const Sym c = u.component;
      if (c >= n) {
        // Unknown component: never present, so only a requirement fails.
        if (u.polarity == Polarity::req) root_conflict_ = true;
        continue;
      }
      const StateSet m = u.on_component ? present(c) : holds(u.pv);
      if (u.polarity == Polarity::req) {
        domains_[c].keep(m);
      } else {
        domains_[c].remove(m);
      }
    }
    for (const auto& d : domains_) {
      if (d.empty()) root_conflict_ = true;
    }
  }

  std::size_t size() const { return domains_.size(); }
  std::size_t state_count(std::size_t c) const { return idx_.info[c].types.size() + 1; }
  const std::vector<StateSet>& initial_domains() const { return domains_; }
  bool root_conflict() const { return root_conflict_; }
  const std::vector<Nogood>& nogoods() const { return nogoods_; }
  const std::vector<Watch>& watches(std::size_t c) const { return watches_[c]; }

  /// Atoms of component `c` in state `s`.
  void materialize(Sym c, std::size_t s, std::vector<IdTriple>& out) const {
    if (s == 0) return;
    const Sym type = idx_.info[c].types[s - 1];
    out.push_back({c, idx_.type_sym, type});
    for (const auto& [p, v] : idx_.values_of_type(type)) out.push_back({c, p, v});
  }

private:
  // A type is usable only if its predefined values give each property at
  // most one value and cover every mandatory property.
  bool type_feasible(Sym c, Sym type) const {
    const auto& pairs = idx_.values_of_type(type);
    for (std::size_t i = 1; i < pairs.size(); ++i) {
      if (pairs[i].first == pairs[i - 1].first) return false;
    }
    for (Sym p : idx_.info[c].mandatory) {
      if (p == idx_.type_sym) continue;
      const bool defined = std::any_of(pairs.begin(), pairs.end(), [&](const auto& pv) { return pv.first == p; });
      if (!defined) return false;
    }
    return true;
  }

  StateSet present(Sym c) const {
    StateSet m(state_count(c), true);
    StateSet zero(state_count(c), false);
    zero.set(0);
    m.remove(zero);
    return m;
  }
  StateSet absent(Sym c) const {
    StateSet m(state_count(c), false);
    m.set(0);
    return m;
  }
  StateSet holds(const IdTriple& pv) const {
    StateSet m(state_count(pv.c), false);
    const auto& types = idx_.info[pv.c].types;
    for (std::size_t s = 1; s <= types.size(); ++s) {
      const Sym type = types[s - 1];
      bool h = false;
      if (pv.p == idx_.type_sym) {
        h = type == pv.v;
      } else {
        const auto& pairs = idx_.values_of_type(type);
        h = std::binary_search(pairs.begin(), pairs.end(), std::pair<Sym, Sym>{pv.p, pv.v});
      }
      if (h) m.set(s);
    }
    return m;
  }

  void add(Sym x, StateSet mx, Sym y, StateSet my) {
    if (x == y) {
      // Same component on both sides: a state in both masks is forbidden.
      StateSet both = mx;
      both.keep(my);
      domains_[x].remove(both);
      return;
    }
    if (mx.empty() || my.empty()) return;
    const std::size_t id = nogoods_.size();
    nogoods_.push_back({x, std::move(mx), y, std::move(my)});
    watches_[x].push_back({id, true});
    watches_[y].push_back({id, false});
  }

  const Index& idx_;
  std::vector<StateSet> domains_;
  std::vector<Nogood> nogoods_;
  std::vector<std::vector<Watch>> watches_;
  bool root_conflict_ = false;
};

class Search {
public:
  Search(const CompiledProblem& model, const SolveOptions& options, std::uint64_t stop_after)
      : model_(model), options_(options), stop_after_(stop_after), state_(model.size(), StateSet::npos) {
    if (options.time_budget.count() > 0) deadline_ = std::chrono::steady_clock::now() + options.time_budget;
  }

  void run() {
    if (model_.root_conflict()) return;
    auto domains = model_.initial_domains();
    descend(domains);
  }

  const std::vector<std::vector<std::size_t>>& found() const { return found_; }
  bool out_of_budget() const { return out_of_budget_; }
  bool stopped_early() const { return stopped_; }
  std::uint64_t nodes() const { return nodes_; }

private:
  // Returns false when the search must stop.
  bool descend(std::vector<StateSet>& domains) {
    std::size_t var = StateSet::npos;
    std::size_t best = StateSet::npos;
    for (std::size_t c = 0; c < state_.size(); ++c) {
      if (state_[c] != StateSet::npos) continue;
      const std::size_t n = domains[c].count();
      if (n < best) {
        best = n;
        var = c;
      }
    }
    if (var == StateSet::npos) {
      found_.push_back(state_);
      if (stop_after_ != 0 && found_.size() >= stop_after_) {
        stopped_ = true;
        return false;
      }
      return true;
    }
    for (std::size_t s = domains[var].next(0); s != StateSet::npos; s = domains[var].next(s + 1)) {
      if (++nodes_ > options_.node_budget || timed_out()) {
        out_of_budget_ = true;
        return false;
      }
      std::vector<StateSet> next = domains;
      next[var].assign_single(s);
      state_[var] = s;
      if (propagate(next, var, s) && !descend(next)) {
        state_[var] = StateSet::npos;
        return false;
      }
      state_[var] = StateSet::npos;
    }
    return true;
  }

  bool propagate(std::vector<StateSet>& domains, std::size_t var, std::size_t s) const {
    for (const auto& w : model_.watches(var)) {
      const Nogood& ng = model_.nogoods()[w.nogood];
      if (w.first) {
        if (!ng.mx.test(s)) continue;
        domains[ng.y].remove(ng.my);
        if (domains[ng.y].empty()) return false;
      } else {
        if (!ng.my.test(s)) continue;
        domains[ng.x].remove(ng.mx);
        if (domains[ng.x].empty()) return false;
      }
    }
    return true;
  }

  bool timed_out() {
    if (!deadline_ || (nodes_ & 1023) != 0) return false;
    return std::chrono::steady_clock::now() > *deadline_;
  }

  const CompiledProblem& model_;
  const SolveOptions& options_;
  std::uint64_t stop_after_;
  std::vector<std::size_t> state_;
  std::vector<std::vector<std::size_t>> found_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
  bool stopped_ = false;
};

void require_known_components(const ConfigurationProblem& problem, const std::vector<UserRequirement>& extra) {
  for (const auto& u : extra) {
    const Term& c = std::holds_alternative<Term>(u.target) ? std::get<Term>(u.target)
                                                           : std::get<Triple>(u.target).component;
    if (!problem.has_component(c)) {
      throw std::invalid_argument("requirement names unknown component " + c.to_string());
    }
  }
}

void sort_canonical(std::vector<Solution>& solutions) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(solutions.size());
  for (std::size_t i = 0; i < solutions.size(); ++i) keys.emplace_back(solutions[i].to_string(), i);
  std::sort(keys.begin(), keys.end());
  std::vector<Solution> sorted;
  sorted.reserve(solutions.size());
  for (const auto& [_, i] : keys) sorted.push_back(std::move(solutions[i]));
  solutions = std::move(sorted);
}

}  // namespace

SolveResult solve(const ConfigurationProblem& problem, const SolveOptions& options) {
  require_known_components(problem, options.extra_requirements);
  SolveResult result;
  result.diagnostics = requirement_conflicts(problem, options.extra_requirements);
  if (!result.diagnostics.empty()) {
    result.status = SolveStatus::unsat;
    return result;
  }

  const auto& idx = problem.index();
  detail::SymbolScope scope(idx);
  const auto user = detail::merged_requirements(idx, scope, options.extra_requirements);
  const CompiledProblem model(idx, user);

  // One extra model tells a complete enumeration apart from a capped one.
  const std::uint64_t stop_after = (options.max_models == 0 || options.minimal_only) ? 0 : options.max_models + 1;
  Search search(model, options, stop_after);
  search.run();
  result.nodes = search.nodes();

  for (const auto& states : search.found()) {
    std::vector<IdTriple> atoms;
    for (std::size_t c = 0; c < states.size(); ++c) model.materialize(static_cast<Sym>(c), states[c], atoms);
    std::set<Triple> assignments;
    for (const auto& a : atoms) {
      assignments.insert(Triple{idx.components[a.c], idx.symbols[a.p], idx.symbols[a.v]});
    }
    if (options.verify) {
      std::sort(atoms.begin(), atoms.end());
      if (!detail::satisfies(idx, atoms, user)) {
        throw std::logic_error("solver emitted an invalid solution:\n" + serialize(assignments));
      }
    }
    result.solutions.push_back(Solution::from_assignments(std::move(assignments)));
  }
  sort_canonical(result.solutions);

  if (search.out_of_budget()) {
    result.status = SolveStatus::budget_exceeded;
    // A partial set cannot be filtered for minimality.
    if (options.minimal_only) result.solutions.clear();
    return result;
  }
  if (options.minimal_only) result.solutions = minimal_filter(result.solutions);
  if (result.solutions.empty()) {
    result.status = SolveStatus::unsat;
  } else if (options.max_models != 0 && result.solutions.size() > options.max_models) {
    result.solutions.resize(options.max_models);
    result.status = SolveStatus::capped;
  } else {
    result.status = SolveStatus::sat;
  }
  return result;
}

std::vector<Solution> minimal_filter(const std::vector<Solution>& solutions) {
  std::vector<Solution> out;
  for (const auto& s : solutions) {
    const bool dominated = std::any_of(solutions.begin(), solutions.end(), [&](const Solution& o) {
      return o.assignments.size() < s.assignments.size() &&
             std::includes(s.assignments.begin(), s.assignments.end(), o.assignments.begin(), o.assignments.end());
    });
    if (!dominated) out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// What-if probes

namespace {

struct Probe {
  std::vector<UserRequirement> extra;
  SolveStatus status = SolveStatus::unsat;
};

std::vector<Probe> make_probes(const ConfigurationProblem& problem, const SolveOptions& options,
                               const Term& component, const Term& property, std::vector<Term>& values) {
  if (!problem.has_component(component)) {
    throw std::invalid_argument("unknown component " + component.to_string());
  }
  values = problem.values_of(component, property);
  if (values.empty()) {
    throw std::invalid_argument(component.to_string() + "." + property.to_string() + " has an empty domain");
  }
  require_known_components(problem, options.extra_requirements);
  // probe 0: as is; probe 1: component absent; then one per value
  std::vector<Probe> probes(values.size() + 2);
  for (auto& p : probes) p.extra = options.extra_requirements;
  probes[1].extra.push_back({Polarity::nreq, component});
  for (std::size_t i = 0; i < values.size(); ++i) {
    probes[i + 2].extra.push_back({Polarity::req, Triple{component, property, values[i]}});
  }
  return probes;
}

SolveStatus run_probe(const ConfigurationProblem& problem, const SolveOptions& options, const Probe& probe) {
  SolveOptions o = options;
  o.max_models = 1;
  o.minimal_only = false;
  o.extra_requirements = probe.extra;
  return solve(problem, o).status;
}

WhatIfResult collect(const std::vector<Probe>& probes, const std::vector<Term>& values) {
  auto found = [](SolveStatus s) { return s == SolveStatus::sat || s == SolveStatus::capped; };
  WhatIfResult r;
  const bool budget = std::any_of(probes.begin(), probes.end(),
                                  [](const Probe& p) { return p.status == SolveStatus::budget_exceeded; });
  r.status = budget ? SolveStatus::budget_exceeded : (found(probes[0].status) ? SolveStatus::sat : SolveStatus::unsat);
  if (budget) return r;
  r.may_be_absent = found(probes[1].status);
  r.must_be_present = found(probes[0].status) && !r.may_be_absent;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (found(probes[i + 2].status)) r.values.push_back(values[i]);
  }
  return r;
}

}  // namespace

WhatIfResult consistent_values_serial(const ConfigurationProblem& problem, const SolveOptions& options,
                                      const Term& component, const Term& property) {
  std::vector<Term> values;
  auto probes = make_probes(problem, options, component, property, values);
  for (auto& p : probes) p.status = run_probe(problem, options, p);
  return collect(probes, values);
}

WhatIfResult consistent_values(const ConfigurationProblem& problem, const SolveOptions& options,
                               const Term& component, const Term& property) {
  std::vector<Term> values;
  auto probes = make_probes(problem, options, component, property, values);
  const auto n = static_cast<std::ptrdiff_t>(probes.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) probes[i].status = run_probe(problem, options, probes[i]);
  return collect(probes, values);
}

}  // namespace pconf
