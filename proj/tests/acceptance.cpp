// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

#include "augsp/scenarios.hpp"
#include "oracles.hpp"

using namespace augsp;

namespace {

struct Criterion {
  int id;
  std::string title;
  double limit_s;  // pinned runtime budget
  std::function<std::string()> body;  // empty string on success, else reason
};

std::string fail(const std::string& why) { return why.empty() ? "unspecified failure" : why; }

std::string criterion1() {
  const std::vector<Axiom> axioms{Axiom::onto,       Axiom::pairwise_sp, Axiom::gsp,
                                  Axiom::efficiency, Axiom::tops_only,   Axiom::anonymity};
  for (std::size_t m : {2u, 3u, 4u}) {
    const ProfileSpace space(Grid::uniform(m), 3);
    std::size_t rules = 0;
    for (AltIndex x = 0; x < m; ++x)
      for (AltIndex y = 0; y < m; ++y) {
        const Rule t = materialize_table(Rule::target_default(space, x, y));
        ++rules;
        for (Axiom a : axioms) {
          const auto v = check(t, a, 3, {4});
          if (!v.pass || v.witness)
            return fail("m=" + std::to_string(m) + " target(" + std::to_string(x) + "," + std::to_string(y) +
                        ") fails " + std::string(axiom_name(a)));
        }
        // independent oracle on the cheap axioms
        if (!oracle::onto(t) || !oracle::efficient(t) || !oracle::anonymous(t))
          return fail("oracle disagrees at m=" + std::to_string(m));
      }
    if (rules != m * m) return fail("rule count");
  }
  return {};
}

std::string criterion2() {
  // m=2, n=3 enumeration
  const ProfileSpace space3(Grid::uniform(2), 3);
  const auto found = enumerate_rules({space3, {Axiom::onto, Axiom::pairwise_sp}, {}, {}, false, {}, 4});
  if (found.size() != 4) return fail("expected 4 tables, got " + std::to_string(found.size()));
  std::set<std::pair<AltIndex, AltIndex>> params;
  for (const auto& t : found) {
    const auto p = recognize_target_default(t);
    if (p.size() != 1) return fail("table not recognized as a single target rule");
    params.insert(p[0]);
  }
  if (params.size() != 4) return fail("recognized parameters do not cover {0,1}^2");

  // pruner spot check on m=2, n=2 against naive filtering of all 512 tables
  const ProfileSpace space2(Grid::uniform(2), 2);
  std::set<std::vector<AltIndex>> brute;
  const auto tables = oracle::all_tables(space2);
  if (tables.size() != 512) return fail("universe size");
  for (const auto& o : tables) {
    const Rule t = Rule::table(space2, o);
    if (oracle::onto(t) && !oracle::manipulable(t, 2, false)) brute.insert(o);
  }
  std::set<std::vector<AltIndex>> searched;
  for (const auto& t : enumerate_rules({space2, {Axiom::onto, Axiom::pairwise_sp}, {}, {}, false, {}, 1}))
    searched.insert(t.outcomes());
  if (searched != brute) return fail("search and brute force disagree on m=2, n=2");
  return {};
}

std::string criterion3() {
  const ProfileSpace space(Grid::uniform(2), 2);
  const Rule fd = materialize_table(Rule::default_dictator(space));
  if (!check_onto(fd).pass || !check_pairwise_sp(fd).pass) return fail("f^d not onto + pairwise SP");
  if (check_anonymity(fd).pass) return fail("f^d anonymous");
  if (!recognize_target_default(fd).empty()) return fail("f^d recognized as target rule");
  const auto& d = space.domain();
  if (eval(fd, space.make({d.first_with_peak(0), d.first_with_peak(1)})) != 0 ||
      eval(fd, space.make({d.first_with_peak(1), d.first_with_peak(0)})) != 1)
    return fail("f^d outcomes");
  const auto found = enumerate_rules({space, {Axiom::onto, Axiom::pairwise_sp}, {}, {}, false, {}, 1});
  std::set<std::vector<AltIndex>> set;
  for (const auto& t : found) set.insert(t.outcomes());
  for (AltIndex x = 0; x < 2; ++x)
    for (AltIndex y = 0; y < 2; ++y)
      if (!set.count(materialize_table(Rule::target_default(space, x, y)).outcomes()))
        return fail("target table missing");
  if (set.size() <= 4) return fail("no strict containment");
  if (!set.count(fd.outcomes())) return fail("f^d not enumerated");
  return {};
}

std::string criterion4() {
  const ProfileSpace space(Grid::parse("0,1/2,1"), 3);
  const auto& d = space.domain();
  const Rule f = materialize_table(Rule::wgsp_example(space));
  for (Axiom a : {Axiom::onto, Axiom::sp, Axiom::wgsp, Axiom::weak_pairwise_sp})
    if (!check(f, a, 3).pass) return fail(std::string(axiom_name(a)) + " should pass");
  for (Axiom a : {Axiom::efficiency, Axiom::tops_only, Axiom::pairwise_sp, Axiom::gsp})
    if (check(f, a, 3).pass) return fail(std::string(axiom_name(a)) + " should fail");

  // R: agents 0 and 2 indifferent, agent 1 ranks 1/2 > 1 > 0; R' swaps 1 and 0.
  const PrefIndex r1 = d.index_of(Preference::single_peaked({1, 2, 0}));
  const PrefIndex r1p = d.index_of(Preference::single_peaked({1, 0, 2}));
  const ProfileId R = space.encode(std::vector<PrefIndex>{0, r1, 0});
  const ProfileId Rp = space.encode(std::vector<PrefIndex>{0, r1p, 0});

  const auto ineff = inefficient_profiles(f);
  auto it = std::find_if(ineff.begin(), ineff.end(), [&](const Inefficiency& w) { return w.profile == R; });
  if (it == ineff.end()) return fail("R not reported inefficient");
  if (space.grid()[it->outcome] != Rational(1)) return fail("efficiency witness outcome is not 1");
  const auto eff = efficient_set(space, R);
  if (eff.size() != 1 || space.grid()[eff[0]] != Rational(1, 2)) return fail("efficient set at R is not {1/2}");
  if (oracle::pareto_set(space, {0, r1, 0}) != eff) return fail("Pareto oracle disagrees at R");

  const auto tops = check_tops_only(f);
  if (!tops.witness) return fail("no tops-only witness");
  const auto& w = std::get<ProfilePair>(*tops.witness);
  if (w.profile != R || w.other != Rp) return fail("tops-only witness is not (R, R')");
  if (space.grid()[w.outcome] != Rational(1) || space.grid()[w.other_outcome] != Rational(0))
    return fail("tops-only outcomes are not (1, 0)");
  return {};
}

std::string criterion5() {
  {
    const ProfileSpace space(Grid::uniform(2), 2);
    std::size_t kept = 0;
    for (const auto& o : oracle::all_tables(space)) {
      const Rule t = Rule::table(space, o);
      if (!oracle::efficient(t) || oracle::manipulable(t, 1, false)) continue;
      ++kept;
      if (!oracle::tops_only(t) || oracle::manipulable(t, 2, true)) return fail("n=2 implication violated");
    }
    if (kept == 0) return fail("n=2 filter empty");
  }
  {
    const ProfileSpace space(Grid::uniform(2), 3);
    const auto found = enumerate_rules({space, {Axiom::efficiency, Axiom::sp}, {}, {}, false, {}, 4});
    std::set<std::vector<AltIndex>> searched;
    for (const auto& t : found) {
      searched.insert(t.outcomes());
      if (!oracle::tops_only(t) || oracle::manipulable(t, 3, true)) return fail("n=3 implication violated");
    }
    // independent exhaustion: unanimous-peak profiles are forced, the rest free
    std::vector<ProfileId> free;
    std::vector<AltIndex> base(space.count(), 0);
    for (const auto& prefs : oracle::all_profiles(space)) {
      const auto set = oracle::pareto_set(space, prefs);
      const ProfileId id = space.encode(prefs);
      if (set.size() == 1)
        base[id] = set[0];
      else
        free.push_back(id);
    }
    if (free.size() != 13) return fail("expected 13 free profiles, got " + std::to_string(free.size()));
    std::set<std::vector<AltIndex>> brute;
    for (std::uint32_t bits = 0; bits < (1u << free.size()); ++bits) {
      auto o = base;
      for (std::size_t k = 0; k < free.size(); ++k) o[free[k]] = static_cast<AltIndex>(bits >> k & 1);
      const Rule t = Rule::table(space, o);
      if (!oracle::manipulable(t, 1, false)) brute.insert(o);
    }
    if (brute != searched) return fail("n=3 search and exhaustion disagree");
  }
  return {};
}

std::string criterion6() {
  const auto r = scenario_appendix_claims({4});
  for (const auto& a : r.assertions)
    if (!a.pass) return fail(a.description);
  const ProfileSpace space(Grid::uniform(3), 3);
  if (space.count() != 125) return fail("profile count");
  for (AltIndex x = 0; x < 3; ++x)
    for (AltIndex y = 0; y < 3; ++y) {
      const Rule t = materialize_table(Rule::target_default(space, x, y));
      if (oracle::manipulable(t, 3, false)) return fail("oracle finds a group deviation");
    }
  return {};
}

std::string criterion7() {
  for (std::size_t m = 2; m <= 6; ++m) {
    const auto prefs = enumerate_preferences(Grid::uniform(m));
    if (prefs.size() != 1 + (std::size_t{1} << (m - 1))) return fail("count formula at m=" + std::to_string(m));
    if (prefs.size() != 1 + oracle::count_single_peaked_permutations(m))
      return fail("brute-force count at m=" + std::to_string(m));
  }
  for (std::size_t m = 2; m <= 5; ++m)
    for (const auto& p : enumerate_preferences(Grid::uniform(m)))
      for (AltIndex a = 0; a < m; ++a)
        for (AltIndex b = 0; b < m; ++b) {
          if (!p.weakly_prefers(a, b) && !p.weakly_prefers(b, a)) return fail("incomplete");
          for (AltIndex c = 0; c < m; ++c)
            if (p.weakly_prefers(a, b) && p.weakly_prefers(b, c) && !p.weakly_prefers(a, c))
              return fail("intransitive");
        }
  return {};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::string criterion8() {
  const auto dir = std::filesystem::temp_directory_path() / ("augsp_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::vector<std::string> reports;
  for (const char* workers : {"1", "8", "1", "8"}) {
    const auto out = dir / ("report_" + std::to_string(reports.size()) + ".json");
    const std::string cmd = std::string("\"") + AUGSP_CLI + "\" scenario --all --workers " + workers + " --out \"" +
                            out.string() + "\" 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    if (rc != 0) return fail("cli exited with status " + std::to_string(rc));
    reports.push_back(read_file(out));
  }
  std::filesystem::remove_all(dir);
  if (reports[0].empty()) return fail("empty report");
  for (const auto& r : reports)
    if (r != reports[0]) return fail("reports differ");
  return {};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "target rules pass onto, pairwise SP, GSP(3), efficiency, tops-only, anonymity (m=2,3,4; n=3)", 10,
       criterion1},
      {2, "onto + pairwise SP search on m=2, n=3 gives exactly the 4 target tables; m=2, n=2 matches brute force",
       60, criterion2},
      {3, "two-agent default dictatorship: onto, pairwise SP, not anonymous, not a target rule", 1, criterion3},
      {4, "f* pass/fail pattern and its efficiency and tops-only witnesses", 5, criterion4},
      {5, "efficiency + SP implies tops-only and WGSP(n) on m=2, n=2,3", 30, criterion5},
      {6, "target-rule structure properties and group SP for all 9 target rules on m=3, n=3", 10, criterion6},
      {7, "preference counts and completeness/transitivity of weak preference", 5, criterion7},
      {8, "scenario --all reports byte-identical across runs and worker counts", 120, criterion8},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string why;
    try {
      why = c.body();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (why.empty() && s > c.limit_s) {
      std::ostringstream os;
      os << "runtime " << s << " s over budget " << c.limit_s << " s";
      why = os.str();
    }
    std::printf("%s [%d] %s (%.3f s)%s%s\n", why.empty() ? "PASS" : "FAIL", c.id, c.title.c_str(), s,
                why.empty() ? "" : ": ", why.c_str());
    failed += !why.empty();
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
