#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace augsp {

// Exact rational with a positive, reduced denominator. Grid values only need
// ordering and equality, so no arithmetic beyond construction is provided.
class Rational {
 public:
  constexpr Rational() = default;

  Rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num_ = num / (g == 0 ? 1 : g);
    den_ = den / (g == 0 ? 1 : g);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend bool operator==(const Rational&, const Rational&) = default;

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // True when the value has a terminating decimal expansion (den = 2^a 5^b).
  bool has_finite_decimal() const {
    std::int64_t d = den_;
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    return d == 1;
  }

  // "p/q", or "p" for integers.
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Exact decimal rendering; only valid when has_finite_decimal().
  std::string to_decimal_string() const {
    if (!has_finite_decimal()) throw std::logic_error("no finite decimal for " + to_string());
    const bool neg = num_ < 0;
    std::int64_t n = neg ? -num_ : num_;
    std::string out = std::to_string(n / den_);
    std::int64_t rem = n % den_;
    if (rem != 0) {
      out += '.';
      while (rem != 0) {
        rem *= 10;
        out += static_cast<char>('0' + rem / den_);
        rem %= den_;
      }
    }
    return neg ? "-" + out : out;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Accepts "p/q", "p", and plain decimals such as "0.25" or ".5".
  static Rational parse(std::string_view text) {
    auto fail = [&]() -> Rational {
      throw std::invalid_argument("cannot parse rational '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      const auto p = parse_int(text.substr(0, slash));
      const auto q = parse_int(text.substr(slash + 1));
      if (!p || !q || *q == 0) return fail();
      return Rational(*p, *q);
    }

    bool neg = false;
    std::string_view body = text;
    if (body.front() == '-' || body.front() == '+') {
      neg = body.front() == '-';
      body.remove_prefix(1);
    }
    const auto dot = body.find('.');
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if (whole.empty() && frac.empty()) return fail();
    if (frac.size() > 17) return fail();

    std::int64_t w = 0;
    if (!whole.empty()) {
      auto v = parse_int(whole);
      if (!v || *v < 0) return fail();
      w = *v;
    }
    std::int64_t den = 1;
    std::int64_t f = 0;
    for (char c : frac) {
      if (c < '0' || c > '9') return fail();
      f = f * 10 + (c - '0');
      den *= 10;
    }
    if (w > (INT64_MAX - f) / den) return fail();
    const std::int64_t num = w * den + f;
    return Rational(neg ? -num : num, den);
  }

 private:
  static std::optional<std::int64_t> parse_int(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace augsp
