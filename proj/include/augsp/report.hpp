#pragma once

// JSON rendering of grid values, profiles, witnesses and verdicts.
//
// Grid values with a terminating decimal expansion are written as JSON
// numbers (0, 0.5, 1); anything else is written as a "p/q" string. Profiles
// are arrays with one entry per agent: "indiff" or the ranking as grid
// values, best first. Agents are numbered from 0.

#include <optional>
#include <string>
#include <variant>

#include "json.hpp"

#include "augsp/axioms.hpp"
#include "augsp/domain.hpp"
#include "augsp/search.hpp"

namespace augsp::report {

using json = nlohmann::json;

inline json value_json(const Rational& v) {
  if (v.den() == 1) return json(v.num());
  if (v.has_finite_decimal()) return json(std::stod(v.to_decimal_string()));
  return json(v.to_string());
}

inline json alternative_json(const Grid& grid, AltIndex a) { return value_json(grid[a]); }

inline json grid_json(const Grid& grid) {
  json out = json::array();
  for (const auto& v : grid.values()) out.push_back(value_json(v));
  return out;
}

inline json preference_json(const Domain& domain, PrefIndex p) {
  const auto& pref = domain[p];
  if (pref.is_indifferent()) return "indiff";
  json out = json::array();
  for (AltIndex a : pref.ranking()) out.push_back(alternative_json(domain.grid(), a));
  return out;
}

inline json profile_json(const ProfileSpace& space, ProfileId id) {
  json out = json::array();
  for (std::size_t i = 0; i < space.agents(); ++i) out.push_back(preference_json(space.domain(), space.pref_at(id, i)));
  return out;
}

inline json witness_json(const ProfileSpace& space, const Witness& witness) {
  const Grid& grid = space.grid();
  return std::visit(
      [&](const auto& w) -> json {
        using W = std::decay_t<decltype(w)>;
        json j;
        if constexpr (std::is_same_v<W, Deviation>) {
          j["profile"] = profile_json(space, w.profile);
          j["coalition"] = w.coalition;
          json mis = json::array();
          for (PrefIndex p : w.misreport) mis.push_back(preference_json(space.domain(), p));
          j["misreport"] = mis;
          j["outcome_truthful"] = alternative_json(grid, w.outcome_truthful);
          j["outcome_deviant"] = alternative_json(grid, w.outcome_deviant);
        } else if constexpr (std::is_same_v<W, ProfilePair>) {
          // Expressed as the agents whose reports differ and their reports
          // in the other profile.
          j["profile"] = profile_json(space, w.profile);
          json coalition = json::array();
          json mis = json::array();
          for (std::size_t i = 0; i < space.agents(); ++i) {
            const PrefIndex other = space.pref_at(w.other, i);
            if (space.pref_at(w.profile, i) != other) {
              coalition.push_back(i);
              mis.push_back(preference_json(space.domain(), other));
            }
          }
          j["coalition"] = coalition;
          j["misreport"] = mis;
          j["other_profile"] = profile_json(space, w.other);
          j["outcome_truthful"] = alternative_json(grid, w.outcome);
          j["outcome_deviant"] = alternative_json(grid, w.other_outcome);
        } else if constexpr (std::is_same_v<W, Inefficiency>) {
          j["profile"] = profile_json(space, w.profile);
          j["coalition"] = json::array();
          j["misreport"] = json::array();
          j["outcome_truthful"] = alternative_json(grid, w.outcome);
          j["outcome_deviant"] = nullptr;
          json eff = json::array();
          for (AltIndex a : efficient_set(space, w.profile)) eff.push_back(alternative_json(grid, a));
          j["efficient_set"] = eff;
          j["dominating_alternative"] = alternative_json(grid, w.dominating);
        } else {
          j["profile"] = nullptr;
          j["coalition"] = json::array();
          j["misreport"] = json::array();
          j["outcome_truthful"] = nullptr;
          j["outcome_deviant"] = nullptr;
          j["missing_alternative"] = alternative_json(grid, w.alternative);
        }
        return j;
      },
      witness);
}

inline json verdict_json(const ProfileSpace& space, const AxiomVerdict& v, std::optional<double> elapsed_ms = {}) {
  json j;
  j["axiom"] = std::string(axiom_name(v.axiom));
  if (v.max_coalition > 0) j["max_coalition"] = v.max_coalition;
  j["pass"] = v.pass;
  j["witness"] = v.witness ? witness_json(space, *v.witness) : json(nullptr);
  if (v.axiom == Axiom::onto) j["note"] = "onto checked on the grid: image must equal the grid";
  if (elapsed_ms) j["elapsed_ms"] = *elapsed_ms;
  return j;
}

inline json table_json(const Rule& table) {
  json out = json::array();
  const Rule t = materialize_table(table);
  for (AltIndex a : t.outcomes()) out.push_back(alternative_json(t.space().grid(), a));
  return out;
}

inline json classification_json(const Grid& grid, const Classification& c) {
  json j;
  j["total"] = c.total;
  json targets = json::array();
  for (const auto& t : c.targets) {
    json params = json::array();
    for (auto [x, y] : t.params) params.push_back({{"x", alternative_json(grid, x)}, {"y", alternative_json(grid, y)}});
    targets.push_back({{"index", t.index}, {"params", params}});
  }
  j["target_with_default"] = targets;
  j["other"] = c.others;
  json counts = json::object();
  for (auto [a, n] : c.pass_counts) counts[std::string(axiom_name(a))] = n;
  j["pass_counts"] = counts;
  return j;
}

}  // namespace augsp::report
