#include <gtest/gtest.h>

#include "augsp/axioms.hpp"
#include "oracles.hpp"

using namespace augsp;

namespace {

bool passes(const std::vector<AxiomVerdict>& v, Axiom a) { return find_verdict(v, a)->pass; }

}  // namespace

TEST(AxiomNames, RoundTrip) {
  for (Axiom a : all_axioms) EXPECT_EQ(parse_axiom(axiom_name(a)), a);
  EXPECT_FALSE(parse_axiom("strategyproof").has_value());
}

TEST(Coalitions, Lexicographic) {
  const auto c = detail::coalitions_up_to(3, 2);
  const std::vector<std::vector<std::size_t>> expect{{0}, {0, 1}, {0, 2}, {1}, {1, 2}, {2}};
  EXPECT_EQ(c, expect);
}

TEST(Checkers, TargetRulesPassEverything) {
  for (std::size_t m : {2u, 3u}) {
    const ProfileSpace space(Grid::uniform(m), 3);
    for (AltIndex x = 0; x < m; ++x)
      for (AltIndex y = 0; y < m; ++y)
        for (const auto& v : check_all(Rule::target_default(space, x, y)))
          EXPECT_TRUE(v.pass) << axiom_name(v.axiom) << " x=" << x << " y=" << y;
  }
}

TEST(Checkers, WgspExamplePattern) {
  const ProfileSpace space(Grid::uniform(3), 3);
  const auto v = check_all(Rule::wgsp_example(space));
  EXPECT_TRUE(passes(v, Axiom::onto));
  EXPECT_TRUE(passes(v, Axiom::sp));
  EXPECT_TRUE(passes(v, Axiom::wgsp));
  EXPECT_TRUE(passes(v, Axiom::weak_pairwise_sp));
  EXPECT_FALSE(passes(v, Axiom::efficiency));
  EXPECT_FALSE(passes(v, Axiom::tops_only));
  EXPECT_FALSE(passes(v, Axiom::pairwise_sp));
  EXPECT_FALSE(passes(v, Axiom::gsp));
  const Rule f = materialize_table(Rule::wgsp_example(space));
  for (const auto& verdict : v) EXPECT_TRUE(verify_witness(f, verdict)) << axiom_name(verdict.axiom);
}

TEST(Checkers, WgspExampleTopsWitness) {
  const ProfileSpace space(Grid::uniform(3), 3);
  const auto& d = space.domain();
  const auto v = check_tops_only(Rule::wgsp_example(space));
  ASSERT_TRUE(v.witness);
  const auto& w = std::get<ProfilePair>(*v.witness);
  const PrefIndex half_one = d.index_of(Preference::single_peaked({1, 2, 0}));
  const PrefIndex half_zero = d.index_of(Preference::single_peaked({1, 0, 2}));
  EXPECT_EQ(w.profile, space.encode(std::vector<PrefIndex>{0, half_one, 0}));
  EXPECT_EQ(w.other, space.encode(std::vector<PrefIndex>{0, half_zero, 0}));
  EXPECT_EQ(w.outcome, 2);
  EXPECT_EQ(w.other_outcome, 0);
}

TEST(Checkers, DefaultDictatorPattern) {
  const ProfileSpace space(Grid::uniform(2), 2);
  const Rule fd = Rule::default_dictator(space);
  EXPECT_TRUE(check_onto(fd).pass);
  EXPECT_TRUE(check_pairwise_sp(fd).pass);
  const auto anon = check_anonymity(fd);
  ASSERT_FALSE(anon.pass);
  EXPECT_TRUE(verify_witness(materialize_table(fd), anon));
}

TEST(Checkers, OntoWitness) {
  const ProfileSpace space(Grid::uniform(3), 2);
  const Rule constant = Rule::table(space, std::vector<AltIndex>(space.count(), 1));
  const auto v = check_onto(constant);
  ASSERT_FALSE(v.pass);
  EXPECT_EQ(std::get<MissingAlternative>(*v.witness).alternative, 0);
  EXPECT_TRUE(verify_witness(constant, v));
}

// Every checker against the naive oracles on all 512 tables of m=2, n=2.
TEST(Checkers, MatchOraclesOnAllSmallTables) {
  const ProfileSpace space(Grid::uniform(2), 2);
  for (const auto& outcomes : oracle::all_tables(space)) {
    const Rule t = Rule::table(space, outcomes);
    const auto v = check_all(t);
    ASSERT_EQ(passes(v, Axiom::sp), !oracle::manipulable(t, 1, false));
    ASSERT_EQ(passes(v, Axiom::pairwise_sp), !oracle::manipulable(t, 2, false));
    ASSERT_EQ(passes(v, Axiom::gsp), !oracle::manipulable(t, 2, false));
    ASSERT_EQ(passes(v, Axiom::wgsp), !oracle::manipulable(t, 2, true));
    ASSERT_EQ(passes(v, Axiom::weak_pairwise_sp), !oracle::manipulable(t, 2, true));
    ASSERT_EQ(passes(v, Axiom::efficiency), oracle::efficient(t));
    ASSERT_EQ(passes(v, Axiom::onto), oracle::onto(t));
    ASSERT_EQ(passes(v, Axiom::tops_only), oracle::tops_only(t));
    ASSERT_EQ(passes(v, Axiom::anonymity), oracle::anonymous(t));
    EXPECT_TRUE(implication_violations(v).empty());
    for (const auto& verdict : v) ASSERT_TRUE(verify_witness(t, verdict)) << axiom_name(verdict.axiom);
  }
}

// Three agents: coalition bounds 1, 2, 3 genuinely differ.
TEST(Checkers, MatchOraclesThreeAgents) {
  const ProfileSpace space(Grid::uniform(3), 3);
  std::vector<Rule> rules{Rule::wgsp_example(space), Rule::target_default(space, 1, 2)};
  // a few perturbed target tables
  for (ProfileId id : {7u, 31u, 64u, 100u}) {
    auto out = materialize_table(Rule::target_default(space, 1, 0)).outcomes();
    out[id] = static_cast<AltIndex>((out[id] + 1) % 3);
    rules.push_back(Rule::table(space, out));
  }
  for (const auto& r : rules) {
    const Rule t = materialize_table(r);
    for (std::size_t k = 1; k <= 3; ++k) {
      EXPECT_EQ(check_group_sp(t, k).pass, !oracle::manipulable(t, k, false)) << k;
      EXPECT_EQ(check_wgsp(t, k).pass, !oracle::manipulable(t, k, true)) << k;
    }
    EXPECT_EQ(check_efficiency(t).pass, oracle::efficient(t));
    EXPECT_EQ(check_tops_only(t).pass, oracle::tops_only(t));
    EXPECT_EQ(check_anonymity(t).pass, oracle::anonymous(t));
    const auto v = check_all(t);
    EXPECT_TRUE(implication_violations(v).empty());
    for (const auto& verdict : v) EXPECT_TRUE(verify_witness(t, verdict));
  }
}

TEST(Checkers, ParallelMatchesSequential) {
  const ProfileSpace space(Grid::uniform(3), 3);
  for (const Rule& r : {Rule::wgsp_example(space), Rule::target_default(space, 0, 2)}) {
    const Rule t = materialize_table(r);
    const auto a = check_all(t, {1});
    const auto b = check_all(t, {8});
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].pass, b[i].pass);
      EXPECT_EQ(a[i].witness.has_value(), b[i].witness.has_value());
      if (a[i].witness && b[i].witness) EXPECT_EQ(a[i].witness->index(), b[i].witness->index());
    }
  }
}

TEST(Checkers, InefficientProfilesContainsExampleProfile) {
  const ProfileSpace space(Grid::uniform(3), 3);
  const auto& d = space.domain();
  const PrefIndex half_one = d.index_of(Preference::single_peaked({1, 2, 0}));
  const ProfileId r = space.encode(std::vector<PrefIndex>{0, half_one, 0});
  const auto all = inefficient_profiles(Rule::wgsp_example(space));
  auto it = std::find_if(all.begin(), all.end(), [&](const Inefficiency& w) { return w.profile == r; });
  ASSERT_NE(it, all.end());
  EXPECT_EQ(it->outcome, 2);
  EXPECT_EQ(efficient_set(space, r), std::vector<AltIndex>{1});
}

TEST(VerifyWitness, RejectsTamperedWitness) {
  const ProfileSpace space(Grid::uniform(3), 3);
  const Rule f = materialize_table(Rule::wgsp_example(space));
  auto v = check_pairwise_sp(f);
  ASSERT_FALSE(v.pass);
  auto& w = std::get<Deviation>(*v.witness);
  w.outcome_deviant = static_cast<AltIndex>((w.outcome_deviant + 1) % 3);
  EXPECT_FALSE(verify_witness(f, v));
}
