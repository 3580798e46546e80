#pragma once

// Backtracking enumeration of outcome tables that satisfy a conjunction of
// axioms, with incremental pruning for the incentive, efficiency, tops-only
// and anonymity constraints.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "augsp/axioms.hpp"
#include "augsp/domain.hpp"
#include "augsp/parallel.hpp"
#include "augsp/rules.hpp"

namespace augsp {

struct SearchSpec {
  ProfileSpace space;
  std::vector<Axiom> required;
  std::vector<Axiom> forbidden;
  std::optional<std::size_t> limit;
  bool force = false;
  // Candidate tables tried before any search; used by find_counterexample_rule.
  std::vector<Rule> seeds;
  std::size_t workers = 1;
};

class IntractableInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr ProfileId max_tractable_profiles = 200;
inline constexpr std::size_t max_tractable_grid = 3;

inline void validate_spec(const SearchSpec& spec) {
  for (Axiom a : spec.required)
    if (std::find(spec.forbidden.begin(), spec.forbidden.end(), a) != spec.forbidden.end())
      throw std::invalid_argument("axiom '" + std::string(axiom_name(a)) + "' is both required and forbidden");
  if (spec.force) return;
  if (spec.space.count() > max_tractable_profiles || spec.space.grid().size() > max_tractable_grid)
    throw IntractableInstance("search over " + std::to_string(spec.space.count()) + " profiles on a grid of " +
                              std::to_string(spec.space.grid().size()) +
                              " points exceeds the tractability guard; pass --force to override");
}

// Incremental consistency of a partial assignment. Profiles are assigned in
// order of ascending number of indifferent agents, then ascending id; each
// new assignment is checked against every earlier profile it could be
// reached from by a coalition deviation.
class ConstraintPropagator {
 public:
  ConstraintPropagator(const ProfileSpace& space, std::span<const Axiom> required) : space_(space) {
    const std::size_t n = space.agents();
    auto has = [&](Axiom a) { return std::find(required.begin(), required.end(), a) != required.end(); };

    if (has(Axiom::sp)) incentives_.push_back({detail::GainMode::weak_with_one_strict, 1});
    if (has(Axiom::pairwise_sp)) incentives_.push_back({detail::GainMode::weak_with_one_strict, 2});
    if (has(Axiom::gsp)) incentives_.push_back({detail::GainMode::weak_with_one_strict, n});
    if (has(Axiom::weak_pairwise_sp)) incentives_.push_back({detail::GainMode::all_strict, 2});
    if (has(Axiom::wgsp)) incentives_.push_back({detail::GainMode::all_strict, n});
    efficiency_ = has(Axiom::efficiency);
    tops_only_ = has(Axiom::tops_only);
    anonymity_ = has(Axiom::anonymity);
    onto_ = has(Axiom::onto);

    std::vector<std::pair<std::size_t, ProfileId>> keyed;
    keyed.reserve(space.count());
    for (ProfileId id = 0; id < space.count(); ++id) {
      std::size_t indifferent = 0;
      for (std::size_t i = 0; i < n; ++i) indifferent += space.pref_at(id, i) == 0;
      keyed.emplace_back(indifferent, id);
    }
    std::sort(keyed.begin(), keyed.end());
    order_.reserve(keyed.size());
    position_.assign(space.count(), 0);
    for (auto [_, id] : keyed) {
      position_[id] = order_.size();
      order_.push_back(id);
    }

    const auto m = static_cast<AltIndex>(space.grid().size());
    candidates_.resize(order_.size());
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      if (efficiency_) {
        candidates_[pos] = efficient_set(space, order_[pos]);
      } else {
        candidates_[pos].resize(m);
        for (AltIndex a = 0; a < m; ++a) candidates_[pos][a] = a;
      }
    }

    std::size_t reach = 0;
    for (const auto& c : incentives_) reach = std::max(reach, c.max_coalition);
    links_.resize(order_.size());
    if (reach > 0) {
      for (std::size_t pos = 0; pos < order_.size(); ++pos) {
        for (std::size_t q = 0; q < pos; ++q) {
          std::uint32_t mask = 0;
          for (std::size_t i = 0; i < n; ++i)
            if (space.pref_at(order_[pos], i) != space.pref_at(order_[q], i)) mask |= 1u << i;
          if (static_cast<std::size_t>(std::popcount(mask)) <= reach) links_[pos].push_back({q, mask});
        }
      }
    }

    tops_rep_.resize(order_.size());
    anon_rep_.resize(order_.size());
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      tops_rep_[pos] = position_[detail::tops_representative(space, order_[pos])];
      anon_rep_[pos] = position_[detail::anonymity_representative(space, order_[pos])];
    }
  }

  const ProfileSpace& space() const { return space_; }
  std::span<const ProfileId> order() const { return order_; }
  std::size_t size() const { return order_.size(); }
  std::span<const AltIndex> candidates(std::size_t pos) const { return candidates_[pos]; }
  bool requires_onto() const { return onto_; }

  // by_position[q] holds the outcome of profile order()[q] for every q < pos.
  bool admits(std::span<const AltIndex> by_position, std::size_t pos, AltIndex value) const {
    if (efficiency_ && !std::binary_search(candidates_[pos].begin(), candidates_[pos].end(), value)) return false;
    if (tops_only_ && tops_rep_[pos] < pos && by_position[tops_rep_[pos]] != value) return false;
    if (anonymity_ && anon_rep_[pos] < pos && by_position[anon_rep_[pos]] != value) return false;
    if (incentives_.empty()) return true;

    const ProfileId here = order_[pos];
    for (const auto& link : links_[pos]) {
      const AltIndex there_value = by_position[link.earlier];
      if (there_value == value) continue;
      const ProfileId there = order_[link.earlier];
      for (const auto& c : incentives_) {
        if (violates(c, link.mask, here, value, there_value)) return false;
        if (violates(c, link.mask, there, there_value, value)) return false;
      }
    }
    return true;
  }

 private:
  struct Incentive {
    detail::GainMode mode;
    std::size_t max_coalition;
  };
  struct Link {
    std::size_t earlier;
    std::uint32_t mask;  // agents whose reports differ
  };

  // Whether some coalition containing exactly the differing agents (plus
  // truthful extras, within the size bound) profits by moving from the
  // truthful profile, where `a` is chosen, to the other profile, where `b`
  // is chosen.
  bool violates(const Incentive& c, std::uint32_t mask, ProfileId truthful, AltIndex a, AltIndex b) const {
    const auto differing = static_cast<std::size_t>(std::popcount(mask));
    if (differing > c.max_coalition) return false;
    bool all_weak = true;
    bool all_strict = true;
    bool member_strict = false;
    bool outsider_strict = false;
    for (std::size_t i = 0; i < space_.agents(); ++i) {
      const auto& pref = space_.preference(truthful, i);
      const bool strict = pref.strictly_prefers(b, a);
      if (mask & (1u << i)) {
        all_weak &= pref.weakly_prefers(b, a);
        all_strict &= strict;
        member_strict |= strict;
      } else {
        outsider_strict |= strict;
      }
    }
    if (c.mode == detail::GainMode::all_strict) return all_strict;
    return all_weak && (member_strict || (differing < c.max_coalition && outsider_strict));
  }

  ProfileSpace space_;
  std::vector<Incentive> incentives_;
  bool efficiency_ = false;
  bool tops_only_ = false;
  bool anonymity_ = false;
  bool onto_ = false;
  std::vector<ProfileId> order_;
  std::vector<std::size_t> position_;
  std::vector<std::vector<AltIndex>> candidates_;
  std::vector<std::vector<Link>> links_;
  std::vector<std::size_t> tops_rep_;
  std::vector<std::size_t> anon_rep_;
};

inline bool satisfies(const Rule& rule, std::span<const Axiom> required, std::span<const Axiom> forbidden) {
  for (Axiom a : required)
    if (!check(rule, a).pass) return false;
  for (Axiom a : forbidden)
    if (check(rule, a).pass) return false;
  return true;
}

namespace detail {

class Backtracker {
 public:
  Backtracker(const ConstraintPropagator& prop, const SearchSpec& spec) : prop_(prop), spec_(spec) {
    const auto m = prop.space().grid().size();
    covered_.assign(m, 0);
  }

  // Depth-first over all admissible completions of `prefix`, in ascending
  // outcome order at each position. Stops after `limit` results.
  std::vector<Rule> run(std::span<const AltIndex> prefix, std::size_t limit) {
    values_.assign(prefix.begin(), prefix.end());
    values_.resize(prop_.size());
    std::fill(covered_.begin(), covered_.end(), 0);
    missing_ = covered_.size();
    for (std::size_t pos = 0; pos < prefix.size(); ++pos) cover(values_[pos], +1);
    limit_ = limit;
    results_.clear();
    descend(prefix.size());
    return std::move(results_);
  }

  // All admissible assignments of the first `depth` positions.
  std::vector<std::vector<AltIndex>> prefixes(std::size_t depth) {
    values_.assign(prop_.size(), 0);
    std::fill(covered_.begin(), covered_.end(), 0);
    missing_ = covered_.size();
    std::vector<std::vector<AltIndex>> out;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
      if (pos == depth) {
        out.emplace_back(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(depth));
        return;
      }
      for (AltIndex v : prop_.candidates(pos)) {
        if (!prop_.admits(values_, pos, v)) continue;
        values_[pos] = v;
        cover(v, +1);
        if (!onto_hopeless(pos + 1)) self(self, pos + 1);
        cover(v, -1);
      }
    };
    rec(rec, 0);
    return out;
  }

 private:
  void cover(AltIndex v, int delta) {
    if (delta > 0 && covered_[v]++ == 0) --missing_;
    if (delta < 0 && --covered_[v] == 0) ++missing_;
  }

  bool onto_hopeless(std::size_t assigned) const {
    return prop_.requires_onto() && missing_ > prop_.size() - assigned;
  }

  void descend(std::size_t pos) {
    if (results_.size() >= limit_) return;
    if (pos == prop_.size()) {
      emit();
      return;
    }
    for (AltIndex v : prop_.candidates(pos)) {
      if (!prop_.admits(values_, pos, v)) continue;
      values_[pos] = v;
      cover(v, +1);
      if (!onto_hopeless(pos + 1)) descend(pos + 1);
      cover(v, -1);
      if (results_.size() >= limit_) return;
    }
  }

  void emit() {
    const auto& space = prop_.space();
    std::vector<AltIndex> outcomes(space.count());
    const auto order = prop_.order();
    for (std::size_t pos = 0; pos < order.size(); ++pos) outcomes[order[pos]] = values_[pos];
    Rule table = Rule::table(space, std::move(outcomes));
    for (Axiom a : spec_.forbidden)
      if (check(table, a).pass) return;
    results_.push_back(std::move(table));
  }

  const ConstraintPropagator& prop_;
  const SearchSpec& spec_;
  std::vector<AltIndex> values_;
  std::vector<std::size_t> covered_;
  std::size_t missing_ = 0;
  std::size_t limit_ = 0;
  std::vector<Rule> results_;
};

}  // namespace detail

// Every outcome table satisfying all required axioms and violating all
// forbidden ones. Results come in search order: lexicographic on outcomes
// listed in the propagator's profile order. The order does not depend on the
// worker count.
inline std::vector<Rule> enumerate_rules(const SearchSpec& spec) {
  validate_spec(spec);
  const ConstraintPropagator prop(spec.space, spec.required);
  const std::size_t limit = spec.limit.value_or(SIZE_MAX);
  if (limit == 0) return {};

  if (spec.workers <= 1) {
    detail::Backtracker bt(prop, spec);
    return bt.run({}, limit);
  }

  // Split the tree at the shallowest depth that yields enough subtrees.
  std::vector<std::vector<AltIndex>> roots;
  {
    detail::Backtracker bt(prop, spec);
    std::size_t depth = 1;
    roots = bt.prefixes(depth);
    while (roots.size() < spec.workers * 4 && depth < prop.size() && depth < 8) roots = bt.prefixes(++depth);
  }

  std::vector<std::vector<Rule>> found(roots.size());
  std::atomic<std::size_t> first_full{roots.size()};
  parallel::for_each_task(roots.size(), spec.workers, [&](std::size_t i) {
    if (spec.limit && i > first_full.load()) return;
    detail::Backtracker bt(prop, spec);
    found[i] = bt.run(roots[i], limit);
    if (spec.limit && found[i].size() >= limit) {
      std::size_t cur = first_full.load();
      while (i < cur && !first_full.compare_exchange_weak(cur, i)) {
      }
    }
  });

  std::vector<Rule> out;
  for (auto& part : found) {
    for (auto& r : part) {
      if (out.size() >= limit) break;
      out.push_back(std::move(r));
    }
    if (out.size() >= limit) break;
  }
  return out;
}

// A seed table that qualifies, else the first qualifying table in search
// order, else nothing.
inline std::optional<Rule> find_counterexample_rule(const SearchSpec& spec) {
  for (const auto& seed : spec.seeds) {
    if (!(seed.space() == spec.space)) continue;
    const Rule t = materialize_table(seed);
    if (satisfies(t, spec.required, spec.forbidden)) return t;
  }
  SearchSpec one = spec;
  one.limit = 1;
  auto found = enumerate_rules(one);
  if (found.empty()) return std::nullopt;
  return std::move(found.front());
}

struct TargetMatch {
  std::size_t index = 0;
  std::vector<std::pair<AltIndex, AltIndex>> params;
};

struct Classification {
  std::size_t total = 0;
  std::vector<TargetMatch> targets;
  std::vector<std::size_t> others;
  std::vector<std::pair<Axiom, std::size_t>> pass_counts;  // all_axioms order
};

inline Classification classify_rules(std::span<const Rule> tables, const CheckOptions& options = {}) {
  Classification c;
  c.total = tables.size();
  for (Axiom a : all_axioms) c.pass_counts.emplace_back(a, 0);
  for (std::size_t i = 0; i < tables.size(); ++i) {
    auto params = recognize_target_default(tables[i]);
    if (params.empty()) {
      c.others.push_back(i);
    } else {
      c.targets.push_back({i, std::move(params)});
    }
    const auto verdicts = check_all(tables[i], options);
    for (std::size_t k = 0; k < verdicts.size(); ++k) c.pass_counts[k].second += verdicts[k].pass;
  }
  return c;
}

}  // namespace augsp
