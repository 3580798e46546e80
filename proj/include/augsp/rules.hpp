#pragma once

// Social choice functions on a ProfileSpace: target rules with a default,
// the two-agent default dictatorship, the weakly group strategy-proof
// example rule, and explicit outcome tables.

#include <stdexcept>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "augsp/domain.hpp"

namespace augsp {

struct TargetDefault {
  AltIndex target = 0;
  AltIndex fallback = 0;  // outcome at the all-indifferent profile

  friend bool operator==(const TargetDefault&, const TargetDefault&) = default;
};

struct DefaultDictator {
  friend bool operator==(const DefaultDictator&, const DefaultDictator&) = default;
};

struct WgspExample {
  friend bool operator==(const WgspExample&, const WgspExample&) = default;
};

struct Table {
  std::vector<AltIndex> outcomes;  // indexed by profile id

  friend bool operator==(const Table&, const Table&) = default;
};

using RuleKind = std::variant<TargetDefault, DefaultDictator, WgspExample, Table>;

inline AltIndex eval_target_default(const ProfileSpace& space, AltIndex x, AltIndex y, ProfileId id) {
  const auto s = peak_summary(space, id);
  if (s.all_indifferent) return y;
  if (x < s.tau_min) return s.tau_min;
  if (s.tau_max < x) return s.tau_max;
  return x;
}

inline AltIndex eval_target_default(const ProfileSpace& space, AltIndex x, AltIndex y, const Profile& profile) {
  return eval_target_default(space, x, y, profile.id());
}

// Peak of agent 0, else peak of agent 1, else the left endpoint.
inline AltIndex eval_default_dictator(const ProfileSpace& space, ProfileId id) {
  if (space.agents() != 2) throw std::invalid_argument("default dictatorship is defined for two agents only");
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& pref = space.preference(id, i);
    if (!pref.is_indifferent()) return pref.peak();
  }
  return 0;
}

inline AltIndex eval_default_dictator(const ProfileSpace& space, const Profile& profile) {
  return eval_default_dictator(space, profile.id());
}

// Peak of agent 0 if it has one; otherwise 0 when agent 1 strictly prefers 0
// to 1, and 1 in every other case.
inline AltIndex eval_wgsp_example(const ProfileSpace& space, ProfileId id) {
  const auto& first = space.preference(id, 0);
  if (!first.is_indifferent()) return first.peak();
  const auto right = static_cast<AltIndex>(space.grid().size() - 1);
  return space.preference(id, 1).strictly_prefers(0, right) ? AltIndex{0} : right;
}

inline AltIndex eval_wgsp_example(const ProfileSpace& space, const Profile& profile) {
  return eval_wgsp_example(space, profile.id());
}

class Rule {
 public:
  static Rule target_default(ProfileSpace space, AltIndex x, AltIndex y) {
    const auto m = space.grid().size();
    if (x >= m || y >= m) throw std::invalid_argument("target or default outside the grid");
    return Rule(std::move(space), TargetDefault{x, y});
  }

  static Rule default_dictator(ProfileSpace space) {
    if (space.agents() != 2) throw std::invalid_argument("default dictatorship is defined for two agents only");
    return Rule(std::move(space), DefaultDictator{});
  }

  static Rule wgsp_example(ProfileSpace space) { return Rule(std::move(space), WgspExample{}); }

  static Rule table(ProfileSpace space, std::vector<AltIndex> outcomes) {
    if (outcomes.size() != space.count()) throw std::invalid_argument("table length differs from profile count");
    for (AltIndex a : outcomes)
      if (a >= space.grid().size()) throw std::invalid_argument("table outcome outside the grid");
    return Rule(std::move(space), Table{std::move(outcomes)});
  }

  const ProfileSpace& space() const { return space_; }
  const RuleKind& kind() const { return kind_; }
  bool is_table() const { return std::holds_alternative<Table>(kind_); }

  // Outcomes by profile id; only valid for table rules.
  const std::vector<AltIndex>& outcomes() const { return std::get<Table>(kind_).outcomes; }

  AltIndex operator()(ProfileId id) const {
    return std::visit(
        [&](const auto& k) -> AltIndex {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, TargetDefault>) {
            return eval_target_default(space_, k.target, k.fallback, id);
          } else if constexpr (std::is_same_v<K, DefaultDictator>) {
            return eval_default_dictator(space_, id);
          } else if constexpr (std::is_same_v<K, WgspExample>) {
            return eval_wgsp_example(space_, id);
          } else {
            return k.outcomes[id];
          }
        },
        kind_);
  }

 private:
  Rule(ProfileSpace space, RuleKind kind) : space_(std::move(space)), kind_(std::move(kind)) {}

  ProfileSpace space_;
  RuleKind kind_;
};

inline AltIndex eval(const Rule& rule, const Profile& profile) {
  if (!rule.space().contains(profile)) throw std::invalid_argument("profile does not belong to the rule's space");
  return rule(profile.id());
}

inline Rule materialize_table(const Rule& rule) {
  if (rule.is_table()) return rule;
  std::vector<AltIndex> outcomes(rule.space().count());
  for (ProfileId id = 0; id < outcomes.size(); ++id) outcomes[id] = rule(id);
  return Rule::table(rule.space(), std::move(outcomes));
}

// Every (target, default) pair whose rule reproduces the table exactly.
inline std::vector<std::pair<AltIndex, AltIndex>> recognize_target_default(const Rule& rule) {
  const Rule table = materialize_table(rule);
  const auto& space = table.space();
  const auto m = static_cast<AltIndex>(space.grid().size());
  const auto& out = table.outcomes();
  std::vector<std::pair<AltIndex, AltIndex>> matches;
  for (AltIndex x = 0; x < m; ++x) {
    for (AltIndex y = 0; y < m; ++y) {
      bool same = true;
      for (ProfileId id = 0; id < out.size() && same; ++id) same = out[id] == eval_target_default(space, x, y, id);
      if (same) matches.emplace_back(x, y);
    }
  }
  return matches;
}

}  // namespace augsp
