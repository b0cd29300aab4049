// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "pconf/factlang.hpp"
#include "pconf/model.hpp"
#include "pconf/oracle.hpp"
#include "pconf/solver.hpp"
#include "support/generators.hpp"
#include "support/rule_cases.hpp"

using namespace pconf;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

SolveOptions all_models() {
  SolveOptions o;
  o.max_models = 0;
  o.verify = true;
  return o;
}

std::set<Triple> triples(const std::string& src) {
  auto r = parse_solution(src);
  return r.ok() ? *r.value : std::set<Triple>{};
}

Outcome bike_golden() {
  const auto start = Clock::now();
  const auto problem = testing::reference_problem();
  const auto r = solve(problem, all_models());
  const double elapsed = seconds_since(start);
  if (r.status != SolveStatus::sat || r.solutions.empty()) return {false, "status " + std::string(to_string(r.status))};

  std::set<Triple> common = r.solutions.front().assignments;
  std::set<Term> present = r.solutions.front().present;
  for (const auto& s : r.solutions) {
    std::set<Triple> next;
    std::set_intersection(common.begin(), common.end(), s.assignments.begin(), s.assignments.end(),
                          std::inserter(next, next.end()));
    common = std::move(next);
    std::set<Term> still;
    std::set_intersection(present.begin(), present.end(), s.present.begin(), s.present.end(),
                          std::inserter(still, still.end()));
    present = std::move(still);
  }
  // The listed core, the wheel materials its wheel types force, and the
  // single type of each of the two optional parts required present.
  const std::set<Triple> core = triples(
      "assign(bike,type,city). assign(frame,type,f1). assign(frame,material,aluminum)."
      "assign(frame,basket_support,yes). assign(front_wheel,type,w2). assign(front_wheel,size,26)."
      "assign(rear_wheel,type,w2). assign(rear_wheel,size,26).");
  const std::set<Triple> closure = triples(
      "assign(front_wheel,material,aluminum). assign(rear_wheel,material,aluminum)."
      "assign(stand,type,s1). assign(basket,type,b1).");
  std::set<Triple> expected = core;
  expected.insert(closure.begin(), closure.end());

  const bool stand_basket = present.count(sym("stand")) && present.count(sym("basket"));
  const bool pass = common == expected && stand_basket && elapsed < 1.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu solution(s), common core %zu atoms, %.3f s", r.solutions.size(), common.size(),
                elapsed);
  return {pass, buf};
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  testing::Rng rng(2024);
  testing::InstanceShape shape;
  shape.max_space = 2'000'000;
  int agree = 0;
  int max_components = 0;
  std::uint64_t solutions = 0;
  for (int i = 0; i < 200; ++i) {
    const auto problem = *ground(testing::random_instance(rng, shape)).problem;
    max_components = std::max<int>(max_components, static_cast<int>(problem.components().size()));
    const auto s = solve(problem, all_models());
    const auto o = brute_force_solve(problem);
    if (o.status == OracleStatus::ok && s.status != SolveStatus::budget_exceeded && s.solutions == o.solutions) ++agree;
    solutions += o.solutions.size();
  }
  const double elapsed = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/200 equal, up to %d components, %llu solutions, %.1f s", agree, max_components,
                static_cast<unsigned long long>(solutions), elapsed);
  return {agree == 200 && elapsed < 60.0, buf};
}

Outcome per_constraint() {
  int pass = 0;
  std::string failed;
  GroundOptions lax;
  lax.strict_mandatory = false;
  for (const auto& rc : testing::rule_cases()) {
    auto with = load_instance(rc.instance, lax);
    bool ok = with.ok();
    if (ok) {
      const auto vs = check(*with.problem, triples(rc.candidate));
      ok = vs.size() == 1 && vs[0].rule == rc.rule && (!rc.origin || vs[0].origin == *rc.origin);
    }
    if (ok) {
      if (rc.trigger_in_candidate) {
        ok = check(*with.problem, triples(testing::without(rc.candidate, rc.trigger))).empty();
      } else {
        auto without = load_instance(testing::without(rc.instance, rc.trigger), lax);
        ok = without.ok() && check(*without.problem, triples(rc.candidate)).empty();
      }
    }
    if (ok) {
      ++pass;
    } else {
      failed += " " + rc.name;
    }
  }
  const int total = static_cast<int>(testing::rule_cases().size());
  return {pass == 18 && total == 18, std::to_string(pass) + "/" + std::to_string(total) + (failed.empty() ? "" : " failed:" + failed)};
}

Outcome monotonicity() {
  testing::Rng rng(77);
  int pass = 0;
  std::size_t shrunk = 0;
  for (int i = 0; i < 50; ++i) {
    FactBase fb = testing::random_instance(rng);
    const auto before = brute_force_solve(*ground(fb).problem);
    testing::add_random_constraint(rng, fb);
    auto g = ground(fb);
    if (!g.ok()) continue;
    const auto after = brute_force_solve(*g.problem);
    const std::set<Solution> b(before.solutions.begin(), before.solutions.end());
    const bool subset = std::all_of(after.solutions.begin(), after.solutions.end(),
                                    [&](const Solution& s) { return b.count(s) != 0; });
    if (subset && before.status == OracleStatus::ok && after.status == OracleStatus::ok) ++pass;
    if (after.solutions.size() < before.solutions.size()) ++shrunk;
  }
  return {pass == 50, std::to_string(pass) + "/50 subsets (" + std::to_string(shrunk) + " strictly smaller)"};
}

Outcome round_trip() {
  testing::Rng rng(5);
  int pass = 0;
  std::size_t facts = 0;
  for (int i = 0; i < 500; ++i) {
    const FactBase fb = testing::random_fact_base(rng);
    facts += fb.size();
    const std::string text = serialize(fb);
    const auto parsed = parse_program(text);
    if (parsed.ok() && *parsed.value == fb && serialize(*parsed.value) == text) ++pass;
  }
  return {pass == 500, std::to_string(pass) + "/500 (" + std::to_string(facts) + " facts)"};
}

Outcome vacuity() {
  testing::Rng rng(6);
  testing::InstanceShape shape;
  shape.user_requirements = false;
  int pass = 0;
  int total = 0;
  auto probe = [&](const FactBase& fb) {
    ++total;
    auto g = ground(fb);
    if (!g.ok()) return;
    const auto r = solve(*g.problem, all_models());
    const bool emitted = std::any_of(r.solutions.begin(), r.solutions.end(),
                                     [](const Solution& s) { return s.assignments.empty(); });
    if (r.status == SolveStatus::sat && emitted && check(*g.problem, {}).empty()) ++pass;
  };
  for (int i = 0; i < 200; ++i) {
    FactBase fb = testing::random_instance(rng, shape);
    // nreq facts are allowed
    if (i % 2 && !fb.domains.empty()) fb.user_requirements.insert({Polarity::nreq, fb.domains.begin()->component});
    probe(fb);
  }
  FactBase bike = testing::reference_facts();
  std::erase_if(bike.user_requirements, [](const UserRequirement& u) { return u.polarity == Polarity::req; });
  probe(bike);
  probe(FactBase{});
  return {pass == total, std::to_string(pass) + "/" + std::to_string(total)};
}

Outcome unsat_probe() {
  const auto problem = testing::reference_problem();
  const std::vector<UserRequirement> extra{{Polarity::req, Triple{sym("rear_wheel"), sym("size"), num(28)}}};
  auto o = all_models();
  o.extra_requirements = extra;
  const auto s = solve(problem, o);
  const auto b = brute_force_solve(problem, extra);
  const bool pass = s.status == SolveStatus::unsat && s.solutions.empty() && b.status == OracleStatus::ok &&
                    b.solutions.empty();
  return {pass, "solve " + std::string(to_string(s.status)) + ", oracle " + std::to_string(b.solutions.size()) +
                    " solution(s) over " + std::to_string(b.space) + " candidates"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 bike golden core", bike_golden},
      {"2 oracle equivalence", oracle_equivalence},
      {"3 per-constraint suite", per_constraint},
      {"4 monotonicity", monotonicity},
      {"5 parser round trip", round_trip},
      {"6 vacuity", vacuity},
      {"7 unsat probe", unsat_probe},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s  criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
