#include "pconf/oracle.hpp"

#include <algorithm>

#include "evaluate.hpp"
#include "index.hpp"

namespace pconf {

namespace {

using detail::IdTriple;

struct FlatCell {
  detail::Sym component;
  detail::Sym property;
  const std::vector<detail::Sym>* values;
};

class Enumeration {
public:
  Enumeration(const ConfigurationProblem& problem, const std::vector<UserRequirement>& extra)
      : idx_(problem.index()), scope_(idx_) {
    user_ = detail::merged_requirements(idx_, scope_, extra);
    for (detail::Sym c = 0; c < idx_.info.size(); ++c) {
      for (const auto& cell : idx_.info[c].cells) cells_.push_back({c, cell.property, &cell.values});
    }
    space_ = problem.oracle_space();
  }

  std::uint64_t space() const { return space_; }

  /// Candidate number `code` in mixed radix, one digit per cell; digit 0
  /// leaves the cell unassigned. Cells are ordered, so the result is sorted.
  void decode(std::uint64_t code, std::vector<IdTriple>& out) const {
    out.clear();
    std::vector<std::uint64_t> digits(cells_.size());
    for (std::size_t i = cells_.size(); i-- > 0;) {
      const std::uint64_t radix = cells_[i].values->size() + 1;
      digits[i] = code % radix;
      code /= radix;
    }
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (digits[i] == 0) continue;
      out.push_back({cells_[i].component, cells_[i].property, (*cells_[i].values)[digits[i] - 1]});
    }
  }

  bool accepts(const std::vector<IdTriple>& candidate) const { return detail::satisfies(idx_, candidate, user_); }

  Solution to_solution(const std::vector<IdTriple>& candidate) const {
    std::set<Triple> assignments;
    for (const auto& t : candidate) {
      assignments.insert(Triple{idx_.components[t.c], idx_.symbols[t.p], idx_.symbols[t.v]});
    }
    return Solution::from_assignments(std::move(assignments));
  }

private:
  const detail::Index& idx_;
  detail::SymbolScope scope_;
  std::vector<detail::IdRequirement> user_;
  std::vector<FlatCell> cells_;
  std::uint64_t space_ = 0;
};

OracleResult finish(const Enumeration& e, std::vector<std::uint64_t> codes) {
  OracleResult result;
  result.space = e.space();
  std::sort(codes.begin(), codes.end());
  std::vector<IdTriple> candidate;
  std::vector<std::pair<std::string, Solution>> keyed;
  for (auto code : codes) {
    e.decode(code, candidate);
    Solution s = e.to_solution(candidate);
    keyed.emplace_back(s.to_string(), std::move(s));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [_, s] : keyed) result.solutions.push_back(std::move(s));
  return result;
}

OracleResult refuse(std::uint64_t space) {
  OracleResult r;
  r.status = OracleStatus::cap_exceeded;
  r.space = space;
  return r;
}

constexpr std::uint64_t kBlock = 4096;

}  // namespace

OracleResult brute_force_solve_serial(const ConfigurationProblem& problem, const std::vector<UserRequirement>& extra) {
  const Enumeration e(problem, extra);
  if (e.space() > kOracleCap) return refuse(e.space());
  std::vector<std::uint64_t> codes;
  std::vector<IdTriple> candidate;
  for (std::uint64_t code = 0; code < e.space(); ++code) {
    e.decode(code, candidate);
    if (e.accepts(candidate)) codes.push_back(code);
  }
  return finish(e, std::move(codes));
}

OracleResult brute_force_solve(const ConfigurationProblem& problem, const std::vector<UserRequirement>& extra) {
  const Enumeration e(problem, extra);
  if (e.space() > kOracleCap) return refuse(e.space());
  const auto blocks = static_cast<std::int64_t>((e.space() + kBlock - 1) / kBlock);
  std::vector<std::uint64_t> codes;
#pragma omp parallel
  {
    std::vector<std::uint64_t> local;
    std::vector<IdTriple> candidate;
#pragma omp for schedule(dynamic) nowait
    for (std::int64_t b = 0; b < blocks; ++b) {
      const std::uint64_t begin = static_cast<std::uint64_t>(b) * kBlock;
      const std::uint64_t end = std::min(begin + kBlock, e.space());
      for (std::uint64_t code = begin; code < end; ++code) {
        e.decode(code, candidate);
        if (e.accepts(candidate)) local.push_back(code);
      }
    }
#pragma omp critical
    codes.insert(codes.end(), local.begin(), local.end());
  }
  return finish(e, std::move(codes));
}

}  // namespace pconf
