#pragma once

// Command-line front end: verify, enumerate, scenario, count.
// Exit codes: 0 all checks pass, 1 some verdict or assertion failed,
// 2 usage, input or tractability-guard error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "augsp/axioms.hpp"
#include "augsp/domain.hpp"
#include "augsp/report.hpp"
#include "augsp/rules.hpp"
#include "augsp/scenarios.hpp"
#include "augsp/search.hpp"

namespace augsp {

namespace cli_detail {

struct Globals {
  std::string grid;
  std::optional<std::size_t> grid_uniform;
  std::size_t agents = 3;
  std::string out;
  std::size_t workers = 1;
  bool force = false;
};

inline Grid make_grid(const Globals& g) {
  if (!g.grid.empty() && g.grid_uniform) throw std::invalid_argument("use either --grid or --grid-uniform");
  if (!g.grid.empty()) return Grid::parse(g.grid);
  return Grid::uniform(g.grid_uniform.value_or(3));
}

inline AltIndex alternative(const Grid& grid, const std::string& text, const char* flag) {
  auto idx = grid.index_of(Rational::parse(text));
  if (!idx) throw std::invalid_argument(std::string(flag) + " value '" + text + "' is not a grid point");
  return *idx;
}

inline std::vector<Axiom> axioms(const std::vector<std::string>& names) {
  std::vector<Axiom> out;
  for (const auto& raw : names) {
    std::stringstream ss(raw);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty()) continue;
      auto a = parse_axiom(name);
      if (!a) throw std::invalid_argument("unknown axiom '" + name + "'");
      out.push_back(*a);
    }
  }
  return out;
}

// One grid value per line, in profile-id order. Blank lines and lines
// starting with '#' are skipped.
inline Rule read_table(const ProfileSpace& space, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open table file '" + path + "'");
  std::vector<AltIndex> outcomes;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    outcomes.push_back(alternative(space.grid(), line, "table"));
  }
  if (outcomes.size() != space.count())
    throw std::invalid_argument("table file has " + std::to_string(outcomes.size()) + " outcomes, expected " +
                                std::to_string(space.count()));
  return Rule::table(space, std::move(outcomes));
}

inline void emit(const Globals& g, const report::json& j, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (g.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write '" + g.out + "'");
  f << text;
}

inline report::json rule_json(const Rule& rule) {
  const Grid& grid = rule.space().grid();
  return std::visit(
      [&](const auto& k) -> report::json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, TargetDefault>)
          return {{"kind", "target"},
                  {"x", report::alternative_json(grid, k.target)},
                  {"y", report::alternative_json(grid, k.fallback)}};
        else if constexpr (std::is_same_v<K, DefaultDictator>)
          return {{"kind", "fd"}};
        else if constexpr (std::is_same_v<K, WgspExample>)
          return {{"kind", "fstar"}};
        else
          return {{"kind", "table"}, {"outcomes", report::table_json(rule)}};
      },
      rule.kind());
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"Axiom checker and rule search for social choice on single-peaked domains with indifference",
               "augsp"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--grid", g.grid, "Comma-separated grid values, e.g. 0,1/2,1");
  app.add_option("--grid-uniform", g.grid_uniform, "Evenly spaced grid with m points")->check(CLI::Range(2, 24));
  app.add_option("--agents", g.agents, "Number of agents")->check(CLI::Range(1, 16));
  app.add_option("--out", g.out, "Write JSON here instead of standard output");
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::Range(1, 256));
  app.add_flag("--force", g.force, "Bypass the search tractability guard");

  // verify
  auto* verify = app.add_subcommand("verify", "Check axioms for one rule");
  std::string rule_name = "target", x_text = "0", y_text = "0", file;
  std::vector<std::string> axiom_names;
  bool all = false;
  std::optional<std::size_t> max_coalition;
  verify->add_option("--rule", rule_name, "target | fd | fstar | table");
  verify->add_option("--x", x_text, "Target level of a target rule");
  verify->add_option("--y", y_text, "Default of a target rule");
  verify->add_option("--file", file, "Outcome table, one grid value per line in profile-id order");
  verify->add_option("--axiom", axiom_names, "Axiom(s) to check; repeatable or comma-separated");
  verify->add_flag("--all", all, "Check every axiom");
  verify->add_option("--max-coalition", max_coalition, "Coalition bound for gsp / wgsp (default: all agents)");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "List every outcome table with the required axioms");
  std::vector<std::string> require_names, forbid_names;
  std::optional<std::size_t> limit;
  bool first = false;
  std::vector<std::string> seed_files;
  enumerate->add_option("--require", require_names, "Required axioms");
  enumerate->add_option("--forbid", forbid_names, "Axioms that must fail");
  enumerate->add_option("--limit", limit, "Stop after this many tables");
  enumerate->add_flag("--first", first, "Return only the first qualifying table (seed tables tried first)");
  enumerate->add_option("--seed-file", seed_files, "Table file tried before the search (with --first)");

  // scenario
  auto* scenario = app.add_subcommand("scenario", "Run built-in reproduction scenarios");
  std::string scenario_name;
  bool scenario_all = false, timings = false;
  auto* name_opt = scenario->add_option("--name", scenario_name, "Scenario name");
  auto* all_opt = scenario->add_flag("--all", scenario_all, "Run every scenario");
  name_opt->excludes(all_opt);
  scenario->add_flag("--timings", timings, "Include elapsed times (reports are then not byte-stable)");

  // count
  auto* count = app.add_subcommand("count", "Domain and profile-space sizes");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const Grid grid = make_grid(g);
    const CheckOptions options{g.workers};

    if (*verify) {
      if (!all && axiom_names.empty()) throw std::invalid_argument("verify needs --axiom or --all");
      const ProfileSpace space(grid, g.agents);
      std::optional<Rule> rule;
      if (rule_name == "target")
        rule = Rule::target_default(space, alternative(grid, x_text, "--x"), alternative(grid, y_text, "--y"));
      else if (rule_name == "fd")
        rule = Rule::default_dictator(space);
      else if (rule_name == "fstar")
        rule = Rule::wgsp_example(space);
      else if (rule_name == "table") {
        if (file.empty()) throw std::invalid_argument("--rule table needs --file");
        rule = read_table(space, file);
      } else
        throw std::invalid_argument("unknown rule '" + rule_name + "'");

      const Rule table = materialize_table(*rule);
      std::vector<Axiom> which = all ? std::vector<Axiom>(all_axioms.begin(), all_axioms.end()) : axioms(axiom_names);
      std::vector<AxiomVerdict> verdicts;
      report::json jv = report::json::array();
      for (Axiom a : which) {
        const auto t0 = std::chrono::steady_clock::now();
        auto v = check(table, a, max_coalition, options);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        jv.push_back(report::verdict_json(space, v, ms));
        verdicts.push_back(std::move(v));
      }
      const bool pass = std::all_of(verdicts.begin(), verdicts.end(), [](const AxiomVerdict& v) { return v.pass; });
      report::json j{{"grid", report::grid_json(grid)},
                     {"agents", g.agents},
                     {"rule", rule_json(*rule)},
                     {"verdicts", jv},
                     {"implication_violations", implication_violations(verdicts)},
                     {"pass", pass}};
      emit(g, j, out);
      for (const auto& v : verdicts) err << axiom_name(v.axiom) << ": " << (v.pass ? "pass" : "FAIL") << "\n";
      return pass ? 0 : 1;
    }

    if (*enumerate) {
      SearchSpec spec{ProfileSpace(grid, g.agents), axioms(require_names), axioms(forbid_names), limit, g.force, {},
                      g.workers};
      for (const auto& f : seed_files) spec.seeds.push_back(read_table(spec.space, f));
      std::vector<Rule> tables;
      if (first) {
        if (auto r = find_counterexample_rule(spec)) tables.push_back(std::move(*r));
      } else {
        tables = enumerate_rules(spec);
      }
      report::json jt = report::json::array();
      for (const auto& t : tables) jt.push_back(report::table_json(t));
      std::vector<std::string> req, forb;
      for (Axiom a : spec.required) req.emplace_back(axiom_name(a));
      for (Axiom a : spec.forbidden) forb.emplace_back(axiom_name(a));
      report::json j{{"grid", report::grid_json(grid)},
                     {"agents", g.agents},
                     {"required", req},
                     {"forbidden", forb},
                     {"count", tables.size()},
                     {"tables", jt},
                     {"classification", report::classification_json(grid, classify_rules(tables, options))}};
      emit(g, j, out);
      err << tables.size() << " table(s)\n";
      return 0;
    }

    if (*scenario) {
      if (!scenario_all && scenario_name.empty()) throw std::invalid_argument("scenario needs --name or --all");
      std::vector<std::string> names = scenario_all ? scenario_names() : std::vector<std::string>{scenario_name};
      report::json reports = report::json::array();
      bool pass = true;
      for (const auto& n : names) {
        const auto r = run_scenario(n, options);
        pass = pass && r.pass();
        reports.push_back(scenario_json(r, timings));
        err << n << ": " << (r.pass() ? "pass" : "FAIL") << "\n";
      }
      emit(g, scenario_all ? reports : reports.front(), out);
      return pass ? 0 : 1;
    }

    if (*count) {
      const Domain domain(grid);
      report::json j{{"grid", report::grid_json(grid)}, {"preferences", domain.size()}};
      if (app.count("--agents") > 0) {
        const ProfileSpace space(grid, g.agents);
        j["agents"] = g.agents;
        j["profiles"] = space.count();
      }
      emit(g, j, out);
      err << domain.size() << " preferences\n";
      return 0;
    }
  } catch (const IntractableInstance& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(std::move(args), out, err);
}

}  // namespace augsp
