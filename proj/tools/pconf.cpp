// pconf: command-line front end for the configuration engine.
//
// Exit codes: 0 SAT/ok, 1 UNSAT or violations found, 2 usage error,
// 3 parse/validation error, 4 budget or oracle cap exceeded.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pconf/factlang.hpp"
#include "pconf/json_io.hpp"
#include "pconf/literal.hpp"
#include "pconf/model.hpp"
#include "pconf/oracle.hpp"
#include "pconf/service.hpp"
#include "pconf/solver.hpp"

namespace {

enum Exit : int { kOk = 0, kUnsat = 1, kUsage = 2, kInvalid = 3, kBudget = 4 };

struct UsageError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || std::filesystem::is_directory(path)) throw UsageError{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_diagnostics(const std::string& path, const std::vector<pconf::Diagnostic>& diags) {
  for (const auto& d : diags) std::cerr << path << ":" << pconf::to_string(d) << "\n";
}

std::optional<pconf::ConfigurationProblem> load(const std::string& path, const pconf::GroundOptions& options) {
  const std::string source = read_file(path);
  auto result = pconf::load_instance(source, options);
  print_diagnostics(path, result.diagnostics);
  return std::move(result.problem);
}

std::vector<pconf::UserRequirement> literals(const std::vector<std::string>& require,
                                             const std::vector<std::string>& forbid) {
  std::vector<pconf::UserRequirement> out;
  auto add = [&](const std::string& text, pconf::Polarity pol) {
    auto r = pconf::parse_requirement_literal(text, pol);
    if (!r) throw UsageError{"bad requirement literal '" + text + "' (use component or component.property=value)"};
    out.push_back(*r);
  };
  for (const auto& t : require) add(t, pconf::Polarity::req);
  for (const auto& t : forbid) add(t, pconf::Polarity::nreq);
  return out;
}

void print_solutions(const std::vector<pconf::Solution>& solutions) {
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    if (i) std::cout << "----\n";
    std::cout << solutions[i].to_string();
  }
}

int solve_exit(pconf::SolveStatus s) {
  switch (s) {
    case pconf::SolveStatus::sat:
    case pconf::SolveStatus::capped: return kOk;
    case pconf::SolveStatus::unsat: return kUnsat;
    case pconf::SolveStatus::budget_exceeded: return kBudget;
  }
  return kUsage;
}

volatile std::sig_atomic_t g_stop_requested = 0;
pconf::service::HttpServer* g_server = nullptr;

void on_signal(int) {
  g_stop_requested = 1;
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Product configuration engine"};
  app.require_subcommand(1);

  bool lenient = false;
  bool no_strict_mandatory = false;
  app.add_flag("--lenient", lenient, "Drop unknown predicates with a warning instead of failing");
  app.add_flag("--no-strict-mandatory", no_strict_mandatory,
               "Report mandatory properties no candidate type defines as warnings");

  std::string instance_path;
  std::string format = "text";
  std::vector<std::string> require;
  std::vector<std::string> forbid;
  std::uint64_t max_models = 1;
  bool all = false;
  bool minimal = false;
  std::uint64_t node_budget = 1'000'000;

  auto* solve_cmd = app.add_subcommand("solve", "Enumerate solutions");
  solve_cmd->add_option("instance", instance_path, "Instance file")->required();
  solve_cmd->add_option("--max-models", max_models, "Number of solutions to print (0 = all)");
  solve_cmd->add_flag("--all", all, "Print every solution");
  solve_cmd->add_flag("--minimal", minimal, "Keep only subset-minimal solutions");
  solve_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  solve_cmd->add_option("--require", require, "Requirement literal: component or component.property=value");
  solve_cmd->add_option("--forbid", forbid, "Forbidden component or component.property=value");
  solve_cmd->add_option("--node-budget", node_budget, "Search decisions before giving up");

  std::string solution_path;
  auto* check_cmd = app.add_subcommand("check", "Check a solution file against an instance");
  check_cmd->add_option("instance", instance_path, "Instance file")->required();
  check_cmd->add_option("solution", solution_path, "Solution file of assign/3 facts")->required();
  check_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* ground_cmd = app.add_subcommand("ground", "Print the grounded problem report");
  ground_cmd->add_option("instance", instance_path, "Instance file")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Enumerate all solutions by brute force");
  oracle_cmd->add_option("instance", instance_path, "Instance file")->required();
  oracle_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  oracle_cmd->add_option("--require", require, "Requirement literal");
  oracle_cmd->add_option("--forbid", forbid, "Forbidden literal");

  std::string component;
  std::string property;
  auto* whatif_cmd = app.add_subcommand("whatif", "List the values of one property that keep the problem satisfiable");
  whatif_cmd->add_option("instance", instance_path, "Instance file")->required();
  whatif_cmd->add_option("--component", component, "Component")->required();
  whatif_cmd->add_option("--property", property, "Property")->required();
  whatif_cmd->add_option("--require", require, "Requirement literal");
  whatif_cmd->add_option("--forbid", forbid, "Forbidden literal");
  whatif_cmd->add_option("--node-budget", node_budget, "Search decisions per probe");

  int port = 8080;
  std::string host = "127.0.0.1";
  std::string static_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--port", port, "Port to listen on");
  serve_cmd->add_option("--host", host, "Address to bind");
  serve_cmd->add_option("--static", static_dir, "Directory served under /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  pconf::GroundOptions gopts;
  gopts.parse.strict = !lenient;
  gopts.strict_mandatory = !no_strict_mandatory;

  try {
    if (*solve_cmd || *oracle_cmd || *whatif_cmd || *ground_cmd || *check_cmd) {
      auto problem = load(instance_path, gopts);
      if (!problem) return kInvalid;

      if (*ground_cmd) {
        std::cout << pconf::ground_report(*problem);
        return kOk;
      }

      if (*check_cmd) {
        const std::string text = read_file(solution_path);
        auto parsed = pconf::parse_solution(text);
        print_diagnostics(solution_path, parsed.diagnostics);
        if (!parsed.ok()) return kInvalid;
        const auto violations = pconf::check(*problem, *parsed.value);
        if (format == "json") {
          std::cout << nlohmann::json{{"violations", pconf::json_io::to_json(violations)}}.dump(2) << "\n";
        } else if (violations.empty()) {
          std::cout << "OK\n";
        } else {
          for (const auto& v : violations) {
            std::cout << pconf::to_string(v.rule) << ": " << v.message;
            for (const auto& a : v.atoms) std::cout << " " << a;
            std::cout << "\n";
          }
        }
        return violations.empty() ? kOk : kUnsat;
      }

      const auto extra = literals(require, forbid);

      if (*oracle_cmd) {
        const auto result = pconf::brute_force_solve(*problem, extra);
        if (result.status == pconf::OracleStatus::cap_exceeded) {
          std::cerr << "oracle: search space " << result.space << " exceeds cap " << pconf::kOracleCap << "\n";
          return kBudget;
        }
        if (format == "json") {
          pconf::SolveResult as_solve;
          as_solve.status = result.solutions.empty() ? pconf::SolveStatus::unsat : pconf::SolveStatus::sat;
          as_solve.solutions = result.solutions;
          std::cout << pconf::json_io::to_json(as_solve).dump(2) << "\n";
        } else {
          print_solutions(result.solutions);
        }
        std::cerr << "% " << result.solutions.size() << " solution(s), " << result.space << " candidates\n";
        return result.solutions.empty() ? kUnsat : kOk;
      }

      pconf::SolveOptions options;
      options.extra_requirements = extra;
      options.node_budget = node_budget;

      if (*whatif_cmd) {
        const auto c = pconf::parse_requirement_literal(component, pconf::Polarity::req);
        const auto p = pconf::parse_requirement_literal(property, pconf::Polarity::req);
        if (!c || !p || !std::holds_alternative<pconf::Term>(c->target) ||
            !std::holds_alternative<pconf::Term>(p->target)) {
          throw UsageError{"--component and --property take plain names"};
        }
        const auto r = pconf::consistent_values(*problem, options, std::get<pconf::Term>(c->target),
                                                std::get<pconf::Term>(p->target));
        std::cout << pconf::json_io::to_json(r).dump(2) << "\n";
        return solve_exit(r.status);
      }

      options.max_models = all ? 0 : max_models;
      options.minimal_only = minimal;
      const auto result = pconf::solve(*problem, options);
      if (format == "json") {
        std::cout << pconf::json_io::to_json(result).dump(2) << "\n";
      } else {
        print_solutions(result.solutions);
      }
      for (const auto& v : result.diagnostics) std::cerr << pconf::to_string(v.rule) << ": " << v.message << "\n";
      std::cerr << "% " << pconf::to_string(result.status) << ", " << result.solutions.size() << " solution(s)\n";
      return solve_exit(result.status);
    }

    if (*serve_cmd) {
      if (!static_dir.empty() && !std::filesystem::is_directory(static_dir)) {
        throw UsageError{"static directory " + static_dir + " does not exist"};
      }
      pconf::service::ConfigService service;
      pconf::service::HttpServer server(service, static_dir.empty() ? std::nullopt
                                                                      : std::optional<std::string>(static_dir));
      const auto bound = server.bind(host, port);
      if (!bound) throw UsageError{"cannot bind " + host + ":" + std::to_string(port)};
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on http://" << host << ":" << *bound << "\n";
      server.listen();
      g_server = nullptr;
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
