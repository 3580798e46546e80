#pragma once

// Exhaustive axiom checkers. Each returns a verdict carrying the first
// violation in canonical scan order: profiles by id, coalitions as sorted
// index tuples in lexicographic order, joint misreports by domain index with
// the lowest-numbered coalition member most significant.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "augsp/domain.hpp"
#include "augsp/parallel.hpp"
#include "augsp/rules.hpp"

namespace augsp {

enum class Axiom {
  onto,
  sp,
  pairwise_sp,
  gsp,
  wgsp,
  weak_pairwise_sp,
  efficiency,
  tops_only,
  anonymity,
};

inline constexpr std::array<Axiom, 9> all_axioms = {
    Axiom::onto,       Axiom::sp,        Axiom::pairwise_sp, Axiom::gsp,       Axiom::wgsp,
    Axiom::weak_pairwise_sp, Axiom::efficiency, Axiom::tops_only, Axiom::anonymity,
};

inline std::string_view axiom_name(Axiom a) {
  switch (a) {
    case Axiom::onto: return "onto";
    case Axiom::sp: return "sp";
    case Axiom::pairwise_sp: return "pairwise_sp";
    case Axiom::gsp: return "gsp";
    case Axiom::wgsp: return "wgsp";
    case Axiom::weak_pairwise_sp: return "weak_pairwise_sp";
    case Axiom::efficiency: return "efficiency";
    case Axiom::tops_only: return "tops_only";
    case Axiom::anonymity: return "anonymity";
  }
  return "?";
}

inline std::optional<Axiom> parse_axiom(std::string_view name) {
  for (Axiom a : all_axioms)
    if (axiom_name(a) == name) return a;
  return std::nullopt;
}

// A coalition replaces its members' reports by `misreport`.
struct Deviation {
  ProfileId profile = 0;
  std::vector<std::size_t> coalition;
  std::vector<PrefIndex> misreport;
  ProfileId deviant = 0;
  AltIndex outcome_truthful = 0;
  AltIndex outcome_deviant = 0;
};

// Two profiles that the axiom says must share an outcome but do not.
struct ProfilePair {
  ProfileId profile = 0;
  ProfileId other = 0;
  AltIndex outcome = 0;
  AltIndex other_outcome = 0;
};

// `dominating` Pareto-improves on the chosen outcome.
struct Inefficiency {
  ProfileId profile = 0;
  AltIndex outcome = 0;
  AltIndex dominating = 0;
};

struct MissingAlternative {
  AltIndex alternative = 0;
};

using Witness = std::variant<Deviation, ProfilePair, Inefficiency, MissingAlternative>;

struct AxiomVerdict {
  Axiom axiom = Axiom::onto;
  std::size_t max_coalition = 0;  // coalition bound for incentive axioms, else 0
  bool pass = true;
  std::optional<Witness> witness;
};

struct CheckOptions {
  std::size_t workers = 1;
};

namespace detail {

enum class GainMode {
  weak_with_one_strict,  // group strategy-proofness family
  all_strict,            // weak group strategy-proofness family
};

// Nonempty subsets of {0..n-1} with at most k members, lexicographic order.
inline std::vector<std::vector<std::size_t>> coalitions_up_to(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      out.push_back(cur);
      if (cur.size() < k) self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline std::optional<Deviation> first_profitable_deviation(const Rule& table, std::size_t max_coalition,
                                                           GainMode mode, const CheckOptions& options) {
  const auto& space = table.space();
  const auto& out = table.outcomes();
  const auto radix = static_cast<PrefIndex>(space.radix());
  const auto coalitions = coalitions_up_to(space.agents(), std::min(max_coalition, space.agents()));

  auto scan = [&](ProfileId begin, ProfileId end) -> std::optional<Deviation> {
    std::vector<PrefIndex> mis;
    for (ProfileId id = begin; id < end; ++id) {
      const AltIndex a = out[id];
      for (const auto& coalition : coalitions) {
        // Skip coalitions that cannot contain a strict gainer.
        bool any_can_gain = false;
        bool all_can_gain = true;
        ProfileId base = id;
        for (std::size_t member : coalition) {
          const auto& pref = space.preference(id, member);
          const bool can_gain = !pref.is_indifferent() && pref.peak() != a;
          any_can_gain |= can_gain;
          all_can_gain &= can_gain;
          base -= space.pref_at(id, member) * space.weight(member);
        }
        if (mode == GainMode::all_strict ? !all_can_gain : !any_can_gain) continue;

        mis.assign(coalition.size(), 0);
        while (true) {
          ProfileId dev = base;
          for (std::size_t j = 0; j < coalition.size(); ++j) dev += mis[j] * space.weight(coalition[j]);
          const AltIndex b = out[dev];
          if (b != a) {
            bool all_weak = true;
            bool all_strict = true;
            bool any_strict = false;
            for (std::size_t member : coalition) {
              const auto& pref = space.preference(id, member);
              const bool weak = pref.weakly_prefers(b, a);
              const bool strict = pref.strictly_prefers(b, a);
              all_weak &= weak;
              all_strict &= strict;
              any_strict |= strict;
            }
            const bool profitable = mode == GainMode::all_strict ? all_strict : (all_weak && any_strict);
            if (profitable) {
              return Deviation{id, coalition, mis, dev, a, b};
            }
          }
          // Odometer: last member least significant.
          std::size_t j = coalition.size();
          while (j > 0 && ++mis[j - 1] == radix) mis[--j] = 0;
          if (j == 0) break;
        }
      }
    }
    return std::nullopt;
  };
  return parallel::first_hit<Deviation>(space.count(), options.workers, scan);
}

inline AxiomVerdict deviation_verdict(Axiom axiom, std::size_t k, std::optional<Deviation> hit) {
  AxiomVerdict v{axiom, k, !hit.has_value(), std::nullopt};
  if (hit) v.witness = std::move(*hit);
  return v;
}

// Smallest-id profile with the same indifferent agents and the same peaks.
inline ProfileId tops_representative(const ProfileSpace& space, ProfileId id) {
  const auto& domain = space.domain();
  ProfileId rep = 0;
  for (std::size_t i = 0; i < space.agents(); ++i) {
    const PrefIndex p = space.pref_at(id, i);
    const PrefIndex q = p == 0 ? 0 : domain.first_with_peak(domain[p].peak());
    rep += q * space.weight(i);
  }
  return rep;
}

// Smallest-id permutation of the profile (reports sorted ascending).
inline ProfileId anonymity_representative(const ProfileSpace& space, ProfileId id) {
  std::vector<PrefIndex> prefs(space.agents());
  for (std::size_t i = 0; i < prefs.size(); ++i) prefs[i] = space.pref_at(id, i);
  std::sort(prefs.begin(), prefs.end());
  return space.encode(prefs);
}

template <typename Representative>
std::optional<ProfilePair> first_class_mismatch(const Rule& table, const CheckOptions& options, Representative rep) {
  const auto& space = table.space();
  const auto& out = table.outcomes();
  auto scan = [&](ProfileId begin, ProfileId end) -> std::optional<ProfilePair> {
    for (ProfileId id = begin; id < end; ++id) {
      const ProfileId r = rep(space, id);
      if (out[r] != out[id]) return ProfilePair{id, r, out[id], out[r]};
    }
    return std::nullopt;
  };
  return parallel::first_hit<ProfilePair>(space.count(), options.workers, scan);
}

inline std::optional<Inefficiency> inefficiency_at(const ProfileSpace& space, ProfileId id, AltIndex a) {
  const auto s = peak_summary(space, id);
  if (s.all_indifferent) return std::nullopt;
  if (a < s.tau_min) return Inefficiency{id, a, s.tau_min};
  if (a > s.tau_max) return Inefficiency{id, a, s.tau_max};
  return std::nullopt;
}

}  // namespace detail

inline AxiomVerdict check_group_sp(const Rule& rule, std::size_t max_coalition, const CheckOptions& options = {}) {
  const Rule t = materialize_table(rule);
  return detail::deviation_verdict(
      Axiom::gsp, max_coalition,
      detail::first_profitable_deviation(t, max_coalition, detail::GainMode::weak_with_one_strict, options));
}

inline AxiomVerdict check_sp(const Rule& rule, const CheckOptions& options = {}) {
  auto v = check_group_sp(rule, 1, options);
  v.axiom = Axiom::sp;
  return v;
}

inline AxiomVerdict check_pairwise_sp(const Rule& rule, const CheckOptions& options = {}) {
  auto v = check_group_sp(rule, 2, options);
  v.axiom = Axiom::pairwise_sp;
  return v;
}

inline AxiomVerdict check_wgsp(const Rule& rule, std::size_t max_coalition, const CheckOptions& options = {}) {
  const Rule t = materialize_table(rule);
  return detail::deviation_verdict(
      Axiom::wgsp, max_coalition,
      detail::first_profitable_deviation(t, max_coalition, detail::GainMode::all_strict, options));
}

inline AxiomVerdict check_weak_pairwise_sp(const Rule& rule, const CheckOptions& options = {}) {
  auto v = check_wgsp(rule, 2, options);
  v.axiom = Axiom::weak_pairwise_sp;
  return v;
}

inline AxiomVerdict check_efficiency(const Rule& rule, const CheckOptions& options = {}) {
  const Rule t = materialize_table(rule);
  const auto& space = t.space();
  const auto& out = t.outcomes();
  auto hit = parallel::first_hit<Inefficiency>(
      space.count(), options.workers, [&](ProfileId begin, ProfileId end) -> std::optional<Inefficiency> {
        for (ProfileId id = begin; id < end; ++id)
          if (auto w = detail::inefficiency_at(space, id, out[id])) return w;
        return std::nullopt;
      });
  AxiomVerdict v{Axiom::efficiency, 0, !hit.has_value(), std::nullopt};
  if (hit) v.witness = *hit;
  return v;
}

// All profiles whose outcome lies outside the efficient set, ascending id.
inline std::vector<Inefficiency> inefficient_profiles(const Rule& rule) {
  const Rule t = materialize_table(rule);
  std::vector<Inefficiency> out;
  for (ProfileId id = 0; id < t.space().count(); ++id)
    if (auto w = detail::inefficiency_at(t.space(), id, t.outcomes()[id])) out.push_back(*w);
  return out;
}

// Onto on a grid means the image is the whole grid.
inline AxiomVerdict check_onto(const Rule& rule, const CheckOptions& = {}) {
  const Rule t = materialize_table(rule);
  std::vector<bool> hit(t.space().grid().size(), false);
  for (AltIndex a : t.outcomes()) hit[a] = true;
  AxiomVerdict v{Axiom::onto, 0, true, std::nullopt};
  for (AltIndex a = 0; a < hit.size(); ++a) {
    if (!hit[a]) {
      v.pass = false;
      v.witness = MissingAlternative{a};
      break;
    }
  }
  return v;
}

inline AxiomVerdict check_tops_only(const Rule& rule, const CheckOptions& options = {}) {
  const Rule t = materialize_table(rule);
  auto hit = detail::first_class_mismatch(t, options, detail::tops_representative);
  AxiomVerdict v{Axiom::tops_only, 0, !hit.has_value(), std::nullopt};
  if (hit) v.witness = *hit;
  return v;
}

inline AxiomVerdict check_anonymity(const Rule& rule, const CheckOptions& options = {}) {
  const Rule t = materialize_table(rule);
  auto hit = detail::first_class_mismatch(t, options, detail::anonymity_representative);
  AxiomVerdict v{Axiom::anonymity, 0, !hit.has_value(), std::nullopt};
  if (hit) v.witness = *hit;
  return v;
}

// Dispatch by tag. The coalition bound applies to gsp and wgsp and defaults
// to the number of agents.
inline AxiomVerdict check(const Rule& rule, Axiom axiom, std::optional<std::size_t> max_coalition = std::nullopt,
                          const CheckOptions& options = {}) {
  const std::size_t k = max_coalition.value_or(rule.space().agents());
  switch (axiom) {
    case Axiom::onto: return check_onto(rule, options);
    case Axiom::sp: return check_sp(rule, options);
    case Axiom::pairwise_sp: return check_pairwise_sp(rule, options);
    case Axiom::gsp: return check_group_sp(rule, k, options);
    case Axiom::wgsp: return check_wgsp(rule, k, options);
    case Axiom::weak_pairwise_sp: return check_weak_pairwise_sp(rule, options);
    case Axiom::efficiency: return check_efficiency(rule, options);
    case Axiom::tops_only: return check_tops_only(rule, options);
    case Axiom::anonymity: return check_anonymity(rule, options);
  }
  throw std::invalid_argument("unknown axiom");
}

// Every axiom in `all_axioms` order, group checks at the full agent count.
inline std::vector<AxiomVerdict> check_all(const Rule& rule, const CheckOptions& options = {}) {
  const Rule t = materialize_table(rule);
  std::vector<AxiomVerdict> out;
  out.reserve(all_axioms.size());
  for (Axiom a : all_axioms) out.push_back(check(t, a, std::nullopt, options));
  return out;
}

inline const AxiomVerdict* find_verdict(const std::vector<AxiomVerdict>& verdicts, Axiom axiom) {
  for (const auto& v : verdicts)
    if (v.axiom == axiom) return &v;
  return nullptr;
}

// Broken links of GSP(n) => pairwise SP => SP, GSP(n) => WGSP(n),
// pairwise SP => weak pairwise SP, WGSP(n) => weak pairwise SP. A non-empty
// result means a checker is wrong.
inline std::vector<std::string> implication_violations(const std::vector<AxiomVerdict>& verdicts) {
  std::vector<std::string> broken;
  auto passes = [&](Axiom a) -> std::optional<bool> {
    const auto* v = find_verdict(verdicts, a);
    return v ? std::optional<bool>(v->pass) : std::nullopt;
  };
  auto implies = [&](Axiom from, Axiom to) {
    auto f = passes(from);
    auto t = passes(to);
    if (f && t && *f && !*t)
      broken.push_back(std::string(axiom_name(from)) + " => " + std::string(axiom_name(to)));
  };
  implies(Axiom::gsp, Axiom::pairwise_sp);
  implies(Axiom::pairwise_sp, Axiom::sp);
  implies(Axiom::gsp, Axiom::wgsp);
  implies(Axiom::pairwise_sp, Axiom::weak_pairwise_sp);
  implies(Axiom::wgsp, Axiom::weak_pairwise_sp);
  return broken;
}

// Re-derives a failing verdict's witness from the rule through the public
// Profile/Preference API only. Passing verdicts verify trivially.
inline bool verify_witness(const Rule& rule, const AxiomVerdict& verdict) {
  if (verdict.pass) return !verdict.witness.has_value();
  if (!verdict.witness) return false;
  const auto& space = rule.space();
  const auto& domain = space.domain();

  return std::visit(
      [&](const auto& w) -> bool {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, Deviation>) {
          const bool strict_mode = verdict.axiom == Axiom::wgsp || verdict.axiom == Axiom::weak_pairwise_sp;
          const std::size_t bound = verdict.axiom == Axiom::sp ? 1
                                    : (verdict.axiom == Axiom::pairwise_sp || verdict.axiom == Axiom::weak_pairwise_sp)
                                        ? 2
                                        : verdict.max_coalition;
          if (w.coalition.empty() || w.coalition.size() > bound || w.misreport.size() != w.coalition.size())
            return false;
          const Profile truthful = space.decode(w.profile);
          std::vector<PrefIndex> prefs(truthful.prefs().begin(), truthful.prefs().end());
          for (std::size_t j = 0; j < w.coalition.size(); ++j) prefs.at(w.coalition[j]) = w.misreport[j];
          const Profile deviant = space.make(prefs);
          const AltIndex a = eval(rule, truthful);
          const AltIndex b = eval(rule, deviant);
          if (a != w.outcome_truthful || b != w.outcome_deviant || deviant.id() != w.deviant) return false;
          bool all_weak = true, all_strict = true, any_strict = false;
          for (std::size_t member : w.coalition) {
            const auto& pref = domain[truthful[member]];
            all_weak &= pref.weakly_prefers(b, a);
            all_strict &= pref.strictly_prefers(b, a);
            any_strict |= pref.strictly_prefers(b, a);
          }
          return strict_mode ? all_strict : (all_weak && any_strict);
        } else if constexpr (std::is_same_v<W, ProfilePair>) {
          const Profile p = space.decode(w.profile);
          const Profile q = space.decode(w.other);
          if (eval(rule, p) != w.outcome || eval(rule, q) != w.other_outcome || w.outcome == w.other_outcome)
            return false;
          if (verdict.axiom == Axiom::tops_only) {
            for (std::size_t i = 0; i < space.agents(); ++i) {
              const auto& a = domain[p[i]];
              const auto& b = domain[q[i]];
              if (a.is_indifferent() != b.is_indifferent()) return false;
              if (!a.is_indifferent() && a.peak() != b.peak()) return false;
            }
            return true;
          }
          if (verdict.axiom == Axiom::anonymity) {
            std::vector<PrefIndex> x(p.prefs().begin(), p.prefs().end());
            std::vector<PrefIndex> y(q.prefs().begin(), q.prefs().end());
            return std::is_permutation(x.begin(), x.end(), y.begin());
          }
          return false;
        } else if constexpr (std::is_same_v<W, Inefficiency>) {
          const Profile p = space.decode(w.profile);
          if (eval(rule, p) != w.outcome || w.dominating == w.outcome) return false;
          bool all_weak = true, any_strict = false;
          for (PrefIndex idx : p.prefs()) {
            all_weak &= domain[idx].weakly_prefers(w.dominating, w.outcome);
            any_strict |= domain[idx].strictly_prefers(w.dominating, w.outcome);
          }
          return all_weak && any_strict;
        } else {
          for (ProfileId id = 0; id < space.count(); ++id)
            if (rule(id) == w.alternative) return false;
          return w.alternative < space.grid().size();
        }
      },
      *verdict.witness);
}

}  // namespace augsp
