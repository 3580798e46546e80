#pragma once

// Discretized public-good interval, the single-peaked domain augmented with
// complete indifference, and profile encoding.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "augsp/rational.hpp"

namespace augsp {

using AltIndex = std::uint16_t;
using PrefIndex = std::uint32_t;
using ProfileId = std::uint64_t;

// Sorted finite subset of [0,1] containing both endpoints.
class Grid {
 public:
  explicit Grid(std::vector<Rational> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw std::invalid_argument("grid needs at least two points");
    if (values_.size() > std::numeric_limits<AltIndex>::max())
      throw std::invalid_argument("grid too large");
    if (values_.front() != Rational(0) || values_.back() != Rational(1))
      throw std::invalid_argument("grid must start at 0 and end at 1");
    for (std::size_t i = 1; i < values_.size(); ++i)
      if (!(values_[i - 1] < values_[i]))
        throw std::invalid_argument("grid values must be strictly increasing");
  }

  // m evenly spaced points 0, 1/(m-1), ..., 1.
  static Grid uniform(std::size_t m) {
    if (m < 2) throw std::invalid_argument("grid needs at least two points");
    std::vector<Rational> v;
    v.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
      v.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(m - 1));
    return Grid(std::move(v));
  }

  // Comma-separated list of rationals ("0,1/2,1" or "0,0.5,1").
  static Grid parse(std::string_view csv) {
    std::vector<Rational> v;
    std::size_t start = 0;
    while (start <= csv.size()) {
      auto comma = csv.find(',', start);
      if (comma == std::string_view::npos) comma = csv.size();
      auto token = csv.substr(start, comma - start);
      while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
      while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
      v.push_back(Rational::parse(token));
      start = comma + 1;
    }
    return Grid(std::move(v));
  }

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](AltIndex i) const { return values_[i]; }
  std::span<const Rational> values() const { return values_; }

  std::optional<AltIndex> index_of(const Rational& value) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), value);
    if (it == values_.end() || *it != value) return std::nullopt;
    return static_cast<AltIndex>(it - values_.begin());
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::vector<Rational> values_;
};

// True iff every prefix of the ranking is a contiguous index interval
// containing ranking[0]. Throws on anything that is not a permutation of
// 0..m-1.
inline bool validate_preference(std::span<const AltIndex> ranking, std::size_t m) {
  if (ranking.size() != m) throw std::invalid_argument("ranking length differs from grid size");
  std::vector<bool> seen(m, false);
  for (AltIndex a : ranking) {
    if (a >= m || seen[a]) throw std::invalid_argument("ranking is not a permutation of the grid");
    seen[a] = true;
  }
  AltIndex lo = ranking[0];
  AltIndex hi = ranking[0];
  for (std::size_t k = 1; k < m; ++k) {
    const AltIndex a = ranking[k];
    if (lo > 0 && a == lo - 1) {
      lo = a;
    } else if (a == hi + 1) {
      hi = a;
    } else {
      return false;
    }
  }
  return true;
}

inline bool validate_preference(std::span<const AltIndex> ranking, const Grid& grid) {
  return validate_preference(ranking, grid.size());
}

// Either complete indifference or a strict single-peaked order, stored as a
// ranking (best first) together with its inverse permutation.
class Preference {
 public:
  static Preference indifferent() { return Preference{}; }

  static Preference single_peaked(std::vector<AltIndex> ranking) {
    if (ranking.empty()) throw std::invalid_argument("empty ranking");
    if (!validate_preference(ranking, ranking.size()))
      throw std::invalid_argument("ranking is not single-peaked");
    Preference p;
    p.position_.assign(ranking.size(), 0);
    for (std::size_t k = 0; k < ranking.size(); ++k) p.position_[ranking[k]] = static_cast<AltIndex>(k);
    p.ranking_ = std::move(ranking);
    return p;
  }

  bool is_indifferent() const { return ranking_.empty(); }

  AltIndex peak() const {
    assert(!is_indifferent());
    return ranking_.front();
  }

  std::span<const AltIndex> ranking() const { return ranking_; }

  // a R b
  bool weakly_prefers(AltIndex a, AltIndex b) const {
    return is_indifferent() || position_[a] <= position_[b];
  }

  // a P b
  bool strictly_prefers(AltIndex a, AltIndex b) const {
    return !is_indifferent() && position_[a] < position_[b];
  }

  friend bool operator==(const Preference& a, const Preference& b) { return a.ranking_ == b.ranking_; }

  // Canonical order: indifference first, then by peak, then lexicographic on
  // the ranking (the peak is ranking[0], so plain lexicographic suffices).
  friend std::strong_ordering operator<=>(const Preference& a, const Preference& b) {
    if (a.is_indifferent() || b.is_indifferent())
      return static_cast<int>(!a.is_indifferent()) <=> static_cast<int>(!b.is_indifferent());
    return std::lexicographical_compare_three_way(a.ranking_.begin(), a.ranking_.end(),
                                                  b.ranking_.begin(), b.ranking_.end());
  }

 private:
  std::vector<AltIndex> ranking_;
  std::vector<AltIndex> position_;
};

namespace detail {

inline void extend_single_peaked(std::vector<AltIndex>& prefix, AltIndex lo, AltIndex hi, std::size_t m,
                                 std::vector<Preference>& out) {
  if (prefix.size() == m) {
    out.push_back(Preference::single_peaked(prefix));
    return;
  }
  if (lo > 0) {
    prefix.push_back(static_cast<AltIndex>(lo - 1));
    extend_single_peaked(prefix, static_cast<AltIndex>(lo - 1), hi, m, out);
    prefix.pop_back();
  }
  if (hi + 1u < m) {
    prefix.push_back(static_cast<AltIndex>(hi + 1));
    extend_single_peaked(prefix, lo, static_cast<AltIndex>(hi + 1), m, out);
    prefix.pop_back();
  }
}

}  // namespace detail

// Indifference first, then every strict single-peaked order in canonical
// order. Size is 1 + 2^(m-1).
inline std::vector<Preference> enumerate_preferences(const Grid& grid) {
  const std::size_t m = grid.size();
  if (m > 24) throw std::invalid_argument("grid too large to enumerate preferences");
  std::vector<Preference> out;
  out.reserve(1 + (std::size_t{1} << (m - 1)));
  out.push_back(Preference::indifferent());
  std::vector<AltIndex> prefix;
  for (std::size_t peak = 0; peak < m; ++peak) {
    prefix.assign(1, static_cast<AltIndex>(peak));
    detail::extend_single_peaked(prefix, static_cast<AltIndex>(peak), static_cast<AltIndex>(peak), m, out);
  }
  std::sort(out.begin() + 1, out.end());
  return out;
}

// A grid together with its canonically ordered preference domain.
class Domain {
 public:
  explicit Domain(Grid grid) : grid_(std::move(grid)), prefs_(enumerate_preferences(grid_)) {
    first_with_peak_.assign(grid_.size(), 0);
    for (PrefIndex p = static_cast<PrefIndex>(prefs_.size()); p-- > 1;)
      first_with_peak_[prefs_[p].peak()] = p;
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return prefs_.size(); }
  const Preference& operator[](PrefIndex p) const { return prefs_[p]; }
  std::span<const Preference> preferences() const { return prefs_; }

  PrefIndex index_of(const Preference& pref) const {
    auto it = std::lower_bound(prefs_.begin(), prefs_.end(), pref);
    if (it == prefs_.end() || *it != pref) throw std::invalid_argument("preference not in domain");
    return static_cast<PrefIndex>(it - prefs_.begin());
  }

  // Smallest domain index among the single-peaked orders with this peak.
  PrefIndex first_with_peak(AltIndex peak) const { return first_with_peak_[peak]; }

 private:
  Grid grid_;
  std::vector<Preference> prefs_;
  std::vector<PrefIndex> first_with_peak_;
};

class ProfileSpace;

// n preferences (as domain indices) plus the profile's mixed-radix id.
class Profile {
 public:
  std::size_t agents() const { return prefs_.size(); }
  PrefIndex operator[](std::size_t agent) const { return prefs_[agent]; }
  std::span<const PrefIndex> prefs() const { return prefs_; }
  ProfileId id() const { return id_; }

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  friend class ProfileSpace;
  Profile(std::vector<PrefIndex> prefs, ProfileId id) : prefs_(std::move(prefs)), id_(id) {}

  std::vector<PrefIndex> prefs_;
  ProfileId id_ = 0;
};

// All profiles of n agents over one domain. Ids are mixed-radix with agent 0
// the most significant digit and radix equal to the domain size.
class ProfileSpace {
 public:
  ProfileSpace(std::shared_ptr<const Domain> domain, std::size_t agents)
      : domain_(std::move(domain)), agents_(agents) {
    if (!domain_) throw std::invalid_argument("null domain");
    if (agents_ < 2) throw std::invalid_argument("need at least two agents");
    weights_.assign(agents_, 1);
    const ProfileId radix = domain_->size();
    ProfileId count = 1;
    for (std::size_t i = agents_; i-- > 0;) {
      weights_[i] = count;
      if (count > std::numeric_limits<ProfileId>::max() / radix)
        throw std::invalid_argument("profile space too large");
      count *= radix;
    }
    count_ = count;
  }

  ProfileSpace(const Grid& grid, std::size_t agents)
      : ProfileSpace(std::make_shared<const Domain>(grid), agents) {}

  const Domain& domain() const { return *domain_; }
  const std::shared_ptr<const Domain>& domain_ptr() const { return domain_; }
  const Grid& grid() const { return domain_->grid(); }
  std::size_t agents() const { return agents_; }
  std::size_t radix() const { return domain_->size(); }
  ProfileId count() const { return count_; }
  ProfileId weight(std::size_t agent) const { return weights_[agent]; }

  PrefIndex pref_at(ProfileId id, std::size_t agent) const {
    return static_cast<PrefIndex>((id / weights_[agent]) % radix());
  }

  const Preference& preference(ProfileId id, std::size_t agent) const {
    return (*domain_)[pref_at(id, agent)];
  }

  ProfileId with_pref(ProfileId id, std::size_t agent, PrefIndex pref) const {
    return id - pref_at(id, agent) * weights_[agent] + pref * weights_[agent];
  }

  ProfileId encode(std::span<const PrefIndex> prefs) const {
    if (prefs.size() != agents_) throw std::invalid_argument("profile has wrong number of agents");
    ProfileId id = 0;
    for (std::size_t i = 0; i < agents_; ++i) {
      if (prefs[i] >= radix()) throw std::invalid_argument("preference index out of range");
      id += prefs[i] * weights_[i];
    }
    return id;
  }

  Profile make(std::vector<PrefIndex> prefs) const {
    const ProfileId id = encode(prefs);
    return Profile(std::move(prefs), id);
  }

  Profile make(std::span<const Preference> prefs) const {
    std::vector<PrefIndex> idx;
    idx.reserve(prefs.size());
    for (const auto& p : prefs) idx.push_back(domain_->index_of(p));
    return make(std::move(idx));
  }

  Profile decode(ProfileId id) const {
    if (id >= count_) throw std::out_of_range("profile id out of range");
    std::vector<PrefIndex> prefs(agents_);
    for (std::size_t i = 0; i < agents_; ++i) prefs[i] = pref_at(id, i);
    return Profile(std::move(prefs), id);
  }

  // Structural compatibility check used before evaluating a profile.
  bool contains(const Profile& profile) const {
    if (profile.agents() != agents_) return false;
    for (PrefIndex p : profile.prefs())
      if (p >= radix()) return false;
    return encode(profile.prefs()) == profile.id();
  }

  friend bool operator==(const ProfileSpace& a, const ProfileSpace& b) {
    return a.agents_ == b.agents_ && (a.domain_ == b.domain_ || a.grid() == b.grid());
  }

 private:
  std::shared_ptr<const Domain> domain_;
  std::size_t agents_ = 0;
  std::vector<ProfileId> weights_;
  ProfileId count_ = 0;
};

// Every profile exactly once, ascending id.
inline auto enumerate_profiles(const ProfileSpace& space) {
  return std::views::iota(ProfileId{0}, space.count()) |
         std::views::transform([space](ProfileId id) { return space.decode(id); });
}

struct PeakSummary {
  std::vector<AltIndex> peaks;  // sorted, distinct
  AltIndex tau_min = 0;
  AltIndex tau_max = 0;
  bool all_indifferent = true;
};

inline PeakSummary peak_summary(const ProfileSpace& space, ProfileId id) {
  PeakSummary s;
  for (std::size_t i = 0; i < space.agents(); ++i) {
    const auto& pref = space.preference(id, i);
    if (!pref.is_indifferent()) s.peaks.push_back(pref.peak());
  }
  std::sort(s.peaks.begin(), s.peaks.end());
  s.peaks.erase(std::unique(s.peaks.begin(), s.peaks.end()), s.peaks.end());
  if (!s.peaks.empty()) {
    s.all_indifferent = false;
    s.tau_min = s.peaks.front();
    s.tau_max = s.peaks.back();
  }
  return s;
}

inline PeakSummary peak_summary(const ProfileSpace& space, const Profile& profile) {
  return peak_summary(space, profile.id());
}

// Whole grid at the all-indifferent profile, else [tau_min, tau_max].
inline std::vector<AltIndex> efficient_set(const ProfileSpace& space, ProfileId id) {
  const auto s = peak_summary(space, id);
  const AltIndex lo = s.all_indifferent ? 0 : s.tau_min;
  const AltIndex hi = s.all_indifferent ? static_cast<AltIndex>(space.grid().size() - 1) : s.tau_max;
  std::vector<AltIndex> out(hi - lo + 1);
  std::iota(out.begin(), out.end(), lo);
  return out;
}

inline std::vector<AltIndex> efficient_set(const ProfileSpace& space, const Profile& profile) {
  return efficient_set(space, profile.id());
}

// Alternatives a with no b that every agent strictly prefers to a.
inline std::vector<AltIndex> efficient_set_star(const ProfileSpace& space, ProfileId id) {
  const auto m = static_cast<AltIndex>(space.grid().size());
  std::vector<AltIndex> out;
  for (AltIndex a = 0; a < m; ++a) {
    bool dominated = false;
    for (AltIndex b = 0; b < m && !dominated; ++b) {
      if (b == a) continue;
      bool all_strict = true;
      for (std::size_t i = 0; i < space.agents() && all_strict; ++i)
        all_strict = space.preference(id, i).strictly_prefers(b, a);
      dominated = all_strict;
    }
    if (!dominated) out.push_back(a);
  }
  return out;
}

inline std::vector<AltIndex> efficient_set_star(const ProfileSpace& space, const Profile& profile) {
  return efficient_set_star(space, profile.id());
}

}  // namespace augsp
