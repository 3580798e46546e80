#pragma once

// Desk-scale reproductions of the characterization, the two-agent
// counterexample, the weakly group strategy-proof example, the
// efficiency + strategy-proofness implications, and the target-rule
// lemmas. Each scenario returns a report of expected/observed assertions.

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "augsp/axioms.hpp"
#include "augsp/domain.hpp"
#include "augsp/report.hpp"
#include "augsp/rules.hpp"
#include "augsp/search.hpp"

namespace augsp {

struct Assertion {
  std::string description;
  report::json expected;
  report::json observed;
  bool pass = false;
};

struct ScenarioInstance {
  Grid grid;
  std::size_t agents = 0;
};

struct ScenarioReport {
  std::string name;
  std::vector<ScenarioInstance> instances;
  std::vector<Assertion> assertions;
  double elapsed_ms = 0;

  bool pass() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
  }

  void expect(std::string description, report::json expected, report::json observed) {
    const bool ok = expected == observed;
    assertions.push_back({std::move(description), std::move(expected), std::move(observed), ok});
  }
};

inline report::json scenario_json(const ScenarioReport& r, bool with_timing) {
  report::json j;
  j["name"] = r.name;
  report::json instances = report::json::array();
  for (const auto& inst : r.instances)
    instances.push_back({{"grid", report::grid_json(inst.grid)}, {"agents", inst.agents}});
  j["instances"] = instances;
  report::json assertions = report::json::array();
  for (const auto& a : r.assertions)
    assertions.push_back(
        {{"description", a.description}, {"expected", a.expected}, {"observed", a.observed}, {"pass", a.pass}});
  j["assertions"] = assertions;
  j["pass"] = r.pass();
  if (with_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

namespace detail {

// {0, 1/2, 1}
inline Grid half_grid() { return Grid({Rational(0), Rational(1, 2), Rational(1)}); }

inline report::json pairs_json(const Grid& grid, std::vector<std::pair<AltIndex, AltIndex>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  report::json out = report::json::array();
  for (auto [x, y] : pairs)
    out.push_back({report::alternative_json(grid, x), report::alternative_json(grid, y)});
  return out;
}

inline std::vector<Rule> all_target_rules(const ProfileSpace& space) {
  std::vector<Rule> out;
  const auto m = static_cast<AltIndex>(space.grid().size());
  for (AltIndex x = 0; x < m; ++x)
    for (AltIndex y = 0; y < m; ++y) out.push_back(Rule::target_default(space, x, y));
  return out;
}

// Every outcome table of a space, in lexicographic order. Only for tiny spaces.
inline void for_each_table(const ProfileSpace& space, const std::function<void(const Rule&)>& fn) {
  const auto m = static_cast<AltIndex>(space.grid().size());
  std::vector<AltIndex> outcomes(space.count(), 0);
  while (true) {
    fn(Rule::table(space, outcomes));
    std::size_t j = outcomes.size();
    while (j > 0 && ++outcomes[j - 1] == m) outcomes[--j] = 0;
    if (j == 0) break;
  }
}

inline bool contains_table(const std::vector<Rule>& tables, const Rule& rule) {
  const Rule t = materialize_table(rule);
  return std::any_of(tables.begin(), tables.end(), [&](const Rule& r) { return r.outcomes() == t.outcomes(); });
}

// Peak read off the preference relation itself: the alternative weakly
// preferred to every other one.
inline std::optional<AltIndex> relation_peak(const Preference& pref, std::size_t m) {
  if (pref.is_indifferent()) return std::nullopt;
  for (AltIndex a = 0; a < m; ++a) {
    bool top = true;
    for (AltIndex b = 0; b < m && top; ++b) top = pref.weakly_prefers(a, b);
    if (top) return a;
  }
  return std::nullopt;
}

template <typename Fn>
ScenarioReport timed(std::string name, Fn&& body) {
  ScenarioReport r;
  r.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  body(r);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

// Characterization: target rules pass onto + pairwise SP (and GSP), and the
// exhaustive search over onto + pairwise SP tables finds nothing else.
inline ScenarioReport scenario_theorem1(const CheckOptions& options = {}) {
  return detail::timed("theorem1", [&](ScenarioReport& r) {
    for (std::size_t m : {2u, 3u}) {
      const ProfileSpace space(Grid::uniform(m), 3);
      r.instances.push_back({space.grid(), 3});
      const auto rules = detail::all_target_rules(space);
      std::size_t passing = 0;
      std::size_t all_pass = 0;
      for (const auto& rule : rules) {
        const bool ok = check_onto(rule, options).pass && check_pairwise_sp(rule, options).pass &&
                        check_group_sp(rule, 3, options).pass;
        passing += ok;
        const auto verdicts = check_all(rule, options);
        all_pass += std::all_of(verdicts.begin(), verdicts.end(), [](const AxiomVerdict& v) { return v.pass; });
      }
      const std::string tag = "m=" + std::to_string(m) + ", n=3: ";
      r.expect(tag + "target rules passing onto, pairwise SP and GSP(3)", rules.size(), passing);
      r.expect(tag + "target rules passing every axiom", rules.size(), all_pass);
    }

    const ProfileSpace space(Grid::uniform(2), 3);
    SearchSpec spec{space, {Axiom::onto, Axiom::pairwise_sp}, {}, {}, false, {}, options.workers};
    const auto found = enumerate_rules(spec);
    r.expect("m=2, n=3: tables that are onto and pairwise SP", 4, found.size());
    const auto c = classify_rules(found, options);
    r.expect("m=2, n=3: enumerated tables recognized as target rules", found.size(), c.targets.size());
    r.expect("m=2, n=3: enumerated tables not recognized", 0, c.others.size());
    std::vector<std::pair<AltIndex, AltIndex>> params;
    for (const auto& t : c.targets) params.insert(params.end(), t.params.begin(), t.params.end());
    r.expect("m=2, n=3: recognized (x, y) cover the whole grid squared",
             detail::pairs_json(space.grid(), {{0, 0}, {0, 1}, {1, 0}, {1, 1}}),
             detail::pairs_json(space.grid(), params));
  });
}

// Two agents: the default dictatorship is onto and pairwise SP but is not a
// target rule with a default.
inline ScenarioReport scenario_remark3(const CheckOptions& options = {}) {
  return detail::timed("remark3", [&](ScenarioReport& r) {
    const ProfileSpace space(Grid::uniform(2), 2);
    r.instances.push_back({space.grid(), 2});
    const Rule fd = Rule::default_dictator(space);
    const auto& domain = space.domain();
    const PrefIndex peak0 = domain.first_with_peak(0);
    const PrefIndex peak1 = domain.first_with_peak(1);
    const auto& grid = space.grid();

    r.expect("f^d at (peak 0, peak 1)", report::alternative_json(grid, 0),
             report::alternative_json(grid, eval(fd, space.make({peak0, peak1}))));
    r.expect("f^d at (peak 1, peak 0)", report::alternative_json(grid, 1),
             report::alternative_json(grid, eval(fd, space.make({peak1, peak0}))));
    r.expect("f^d is onto", true, check_onto(fd, options).pass);
    r.expect("f^d is pairwise SP", true, check_pairwise_sp(fd, options).pass);
    r.expect("f^d is anonymous", false, check_anonymity(fd, options).pass);
    r.expect("target parameters matching f^d", report::json::array(),
             detail::pairs_json(grid, recognize_target_default(fd)));

    SearchSpec spec{space, {Axiom::onto, Axiom::pairwise_sp}, {}, {}, false, {}, options.workers};
    const auto found = enumerate_rules(spec);
    std::size_t brute = 0;
    detail::for_each_table(space, [&](const Rule& t) {
      brute += check_onto(t).pass && check_pairwise_sp(t).pass;
    });
    r.expect("onto + pairwise SP tables: search count equals brute-force count", brute, found.size());
    std::size_t targets_found = 0;
    for (const auto& t : detail::all_target_rules(space)) targets_found += detail::contains_table(found, t);
    r.expect("all 4 target tables are onto + pairwise SP", 4, targets_found);
    r.expect("onto + pairwise SP set is strictly larger than the target tables", true, found.size() > 4);
    r.expect("onto + pairwise SP set contains f^d", true, detail::contains_table(found, fd));
  });
}

// The rule that follows agent 0's peak, else reads agent 1's comparison of
// the endpoints: onto and weakly group SP but neither efficient nor tops-only.
inline ScenarioReport scenario_example1(const CheckOptions& options = {}) {
  return detail::timed("example1", [&](ScenarioReport& r) {
    const ProfileSpace space(detail::half_grid(), 3);
    r.instances.push_back({space.grid(), 3});
    const auto& grid = space.grid();
    const auto& domain = space.domain();
    const Rule f = materialize_table(Rule::wgsp_example(space));

    const std::vector<std::pair<Axiom, bool>> expected = {
        {Axiom::onto, true},         {Axiom::sp, true},         {Axiom::wgsp, true},
        {Axiom::weak_pairwise_sp, true}, {Axiom::efficiency, false}, {Axiom::tops_only, false},
        {Axiom::pairwise_sp, false}, {Axiom::gsp, false},
    };
    for (auto [axiom, pass] : expected)
      r.expect("f* " + std::string(axiom_name(axiom)) + (axiom == Axiom::gsp || axiom == Axiom::wgsp ? "(3)" : ""),
               pass, check(f, axiom, std::nullopt, options).pass);

    // Agent 1 has peak 1/2 and prefers 1 to 0 (resp. 0 to 1); everyone else
    // is indifferent.
    const PrefIndex half_then_one = domain.index_of(Preference::single_peaked({1, 2, 0}));
    const PrefIndex half_then_zero = domain.index_of(Preference::single_peaked({1, 0, 2}));
    const Profile r_profile = space.make({0, half_then_one, 0});
    const Profile r_swapped = space.make({0, half_then_zero, 0});

    const auto inefficient = inefficient_profiles(f);
    const auto hit = std::find_if(inefficient.begin(), inefficient.end(),
                                  [&](const Inefficiency& w) { return w.profile == r_profile.id(); });
    report::json observed = nullptr;
    if (hit != inefficient.end()) {
      AxiomVerdict v{Axiom::efficiency, 0, false, *hit};
      observed = report::witness_json(space, *hit);
      observed["reverified"] = verify_witness(f, v);
    }
    report::json expected_eff = {
        {"profile", report::profile_json(space, r_profile.id())},
        {"coalition", report::json::array()},
        {"misreport", report::json::array()},
        {"outcome_truthful", report::alternative_json(grid, 2)},
        {"outcome_deviant", nullptr},
        {"efficient_set", {report::alternative_json(grid, 1)}},
        {"dominating_alternative", report::alternative_json(grid, 1)},
        {"reverified", true},
    };
    r.expect("efficiency violation at R: outcome 1, efficient set {1/2}", expected_eff, observed);

    const auto tops = check_tops_only(f, options);
    report::json tops_observed = nullptr;
    if (tops.witness) {
      const auto& w = std::get<ProfilePair>(*tops.witness);
      tops_observed = {{"profile", report::profile_json(space, w.profile)},
                       {"other_profile", report::profile_json(space, w.other)},
                       {"outcomes", {report::alternative_json(grid, w.outcome), report::alternative_json(grid, w.other_outcome)}}};
    }
    r.expect("tops-only witness is (R, R') with outcomes (1, 0)",
             report::json{{"profile", report::profile_json(space, r_profile.id())},
                          {"other_profile", report::profile_json(space, r_swapped.id())},
                          {"outcomes", {report::alternative_json(grid, 2), report::alternative_json(grid, 0)}}},
             tops_observed);

    // Agent 0 (indifferent) reports agent 1's peak; agent 1 gains strictly.
    const Profile dev = space.make({half_then_one, half_then_one, 0});
    Deviation pair_dev{r_profile.id(), {0, 1}, {half_then_one, half_then_one}, dev.id(), f(r_profile.id()), f(dev.id())};
    AxiomVerdict synthetic{Axiom::pairwise_sp, 2, false, pair_dev};
    r.expect("coalition {0, 1} at R moves the outcome from 1 to 1/2 profitably",
             report::json{{"outcome_deviant", report::alternative_json(grid, 1)}, {"profitable", true}},
             report::json{{"outcome_deviant", report::alternative_json(grid, pair_dev.outcome_deviant)},
                          {"profitable", verify_witness(f, synthetic)}});
    const auto pairwise = check_pairwise_sp(f, options);
    r.expect("first pairwise SP witness re-verifies", true, !pairwise.pass && verify_witness(f, pairwise));
  });
}

// Efficient + strategy-proof tables are tops-only and weakly group SP.
inline ScenarioReport scenario_prop1(const CheckOptions& options = {}) {
  return detail::timed("prop1", [&](ScenarioReport& r) {
    {
      const ProfileSpace space(Grid::uniform(2), 2);
      r.instances.push_back({space.grid(), 2});
      std::vector<Rule> filtered;
      detail::for_each_table(space, [&](const Rule& t) {
        if (check_efficiency(t).pass && check_sp(t).pass) filtered.push_back(t);
      });
      std::size_t violations = 0;
      for (const auto& t : filtered)
        violations += !(check_tops_only(t, options).pass && check_wgsp(t, 2, options).pass);
      r.expect("m=2, n=2: efficient + SP tables among all 512 (nonempty)", true, !filtered.empty());
      r.expect("m=2, n=2: efficient + SP tables failing tops-only or WGSP(2)", 0, violations);
      std::size_t targets = 0;
      for (const auto& t : detail::all_target_rules(space)) targets += detail::contains_table(filtered, t);
      r.expect("m=2, n=2: target tables inside the efficient + SP set", 4, targets);
    }
    {
      const ProfileSpace space(Grid::uniform(2), 3);
      r.instances.push_back({space.grid(), 3});
      std::size_t free_profiles = 0;
      for (ProfileId id = 0; id < space.count(); ++id) free_profiles += efficient_set(space, id).size() > 1;
      r.expect("m=2, n=3: profiles with more than one efficient outcome", 13, free_profiles);

      SearchSpec spec{space, {Axiom::efficiency, Axiom::sp}, {}, {}, false, {}, options.workers};
      const auto found = enumerate_rules(spec);
      std::size_t violations = 0;
      for (const auto& t : found) violations += !(check_tops_only(t, options).pass && check_wgsp(t, 3, options).pass);
      r.expect("m=2, n=3: efficient + SP tables found (nonempty)", true, !found.empty());
      r.expect("m=2, n=3: efficient + SP tables failing tops-only or WGSP(3)", 0, violations);
      std::size_t targets = 0;
      for (const auto& t : detail::all_target_rules(space)) targets += detail::contains_table(found, t);
      r.expect("m=2, n=3: target tables inside the efficient + SP set", 4, targets);
    }
  });
}

// The properties every onto + pairwise SP rule is shown to have, checked on
// all target rules over {0, 1/2, 1} with three agents.
inline ScenarioReport scenario_appendix_claims(const CheckOptions& options = {}) {
  return detail::timed("appendix_claims", [&](ScenarioReport& r) {
    const ProfileSpace space(detail::half_grid(), 3);
    r.instances.push_back({space.grid(), 3});
    const auto& domain = space.domain();
    const std::size_t n = space.agents();
    const std::size_t m = space.grid().size();
    const auto right = static_cast<AltIndex>(m - 1);
    const auto rules = detail::all_target_rules(space);

    std::size_t efficient = 0, tops_only = 0, group_sp = 0;
    std::size_t third_agent_bad = 0, one_high_bad = 0, inside_bad = 0, below_bad = 0, above_bad = 0;
    std::size_t pinned_bad = 0, default_bad = 0;

    for (const auto& rule : rules) {
      const auto& params = std::get<TargetDefault>(rule.kind());
      const Rule f = materialize_table(rule);
      efficient += check_efficiency(f, options).pass;
      tops_only += check_tops_only(f, options).pass;
      group_sp += check_group_sp(f, n, options).pass;

      // x is read off the profile where agents 0..n-2 peak at 0 and the last
      // agent peaks at 1; y off the all-indifferent profile.
      std::vector<PrefIndex> bar(n, domain.first_with_peak(0));
      bar.back() = domain.first_with_peak(right);
      const AltIndex x = f(space.encode(bar));
      const AltIndex y = f(0);
      pinned_bad += x != params.target;
      default_bad += y != params.fallback;

      for (ProfileId id = 0; id < space.count(); ++id) {
        std::vector<std::optional<AltIndex>> peaks(n);
        for (std::size_t i = 0; i < n; ++i) peaks[i] = detail::relation_peak(space.preference(id, i), m);

        // With a 0-peak agent and a 1-peak agent present, no third
        // agent can move the outcome.
        for (std::size_t k = 0; k < n; ++k) {
          bool spread = false;
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              spread |= i != k && j != k && peaks[i] == AltIndex{0} && peaks[j] == right;
          if (!spread) continue;
          for (PrefIndex p = 0; p < domain.size(); ++p) third_agent_bad += f(space.with_pref(id, k, p)) != f(id);
        }

        // One agent peaks at 1, all others at 0, nobody indifferent.
        std::size_t ones = 0, zeros = 0;
        for (const auto& pk : peaks) {
          ones += pk == right;
          zeros += pk == AltIndex{0};
        }
        if (ones == 1 && zeros == n - 1) one_high_bad += f(id) != x;

        // Piecewise outcome away from the all-indifferent profile.
        std::optional<AltIndex> lo, hi;
        for (const auto& pk : peaks) {
          if (!pk) continue;
          lo = lo ? std::min(*lo, *pk) : *pk;
          hi = hi ? std::max(*hi, *pk) : *pk;
        }
        if (!lo) continue;
        if (*lo <= x && x <= *hi) inside_bad += f(id) != x;
        if (x < *lo) below_bad += f(id) != *lo;
        if (*hi < x) above_bad += f(id) != *hi;
      }
    }

    const std::size_t total = rules.size();
    r.expect("target rules that are efficient", total, efficient);
    r.expect("target rules that are tops-only", total, tops_only);
    r.expect("outcome changes caused by a third agent at 0/1-spread profiles", 0, third_agent_bad);
    r.expect("target level equals the outcome at the (0,...,0,1) profile", 0, pinned_bad);
    r.expect("default level equals the outcome at the all-indifferent profile", 0, default_bad);
    r.expect("one-peak-at-1 profiles not mapped to the target", 0, one_high_bad);
    r.expect("profiles with target inside [min peak, max peak] not mapped to it", 0, inside_bad);
    r.expect("profiles with target below all peaks not mapped to the smallest peak", 0, below_bad);
    r.expect("profiles with target above all peaks not mapped to the largest peak", 0, above_bad);
    r.expect("target rules that are group SP for all coalition sizes", total, group_sp);
  });
}

inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"theorem1", "remark3", "example1", "prop1", "appendix_claims"};
  return names;
}

inline ScenarioReport run_scenario(std::string_view name, const CheckOptions& options = {}) {
  if (name == "theorem1") return scenario_theorem1(options);
  if (name == "remark3") return scenario_remark3(options);
  if (name == "example1") return scenario_example1(options);
  if (name == "prop1") return scenario_prop1(options);
  if (name == "appendix_claims") return scenario_appendix_claims(options);
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

}  // namespace augsp
