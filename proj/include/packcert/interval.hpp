#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace packcert {

/// Closed interval [lo, hi] of doubles. Every arithmetic result is widened
/// outward by one ulp on each side, so it encloses the exact real result
/// whenever the operands enclose theirs.
class Interval {
public:
  constexpr Interval() = default;
  /// Exact point interval.
  constexpr explicit Interval(double v) : lo_(v), hi_(v) {}
  /// Throws std::invalid_argument if lo > hi.
  Interval(double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const { return 0.5 * (lo_ + hi_); }
  double width() const { return hi_ - lo_; }
  bool contains(double v) const { return lo_ <= v && v <= hi_; }
  bool contains(const Interval &o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool is_point() const { return lo_ == hi_; }

  /// Widens each endpoint by `ulps` units in the last place.
  Interval widened(int ulps) const;

  friend Interval operator+(const Interval &a, const Interval &b);
  friend Interval operator-(const Interval &a, const Interval &b);
  friend Interval operator-(const Interval &a);
  friend Interval operator*(const Interval &a, const Interval &b);
  /// Throws std::domain_error when b contains zero.
  friend Interval operator/(const Interval &a, const Interval &b);

  friend bool operator==(const Interval &, const Interval &) = default;

private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

Interval sqrt(const Interval &x);
Interval pow(const Interval &x, int n);
/// Interval hull of a double from a correctly rounded operation (one ulp).
Interval enclose(double v);

/// Enclosures of transcendental constants, widened by `ulps` on each side.
Interval pi_interval(int ulps = 4);
Interval sqrt2_interval(int ulps = 4);
/// acos(1/3), the dihedral angle of the regular tetrahedron.
Interval acos_third_interval(int ulps = 4);

/// Exact rational with 64-bit numerator and denominator. Arithmetic throws
/// std::overflow_error instead of wrapping.
class Rational {
public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {} // NOLINT implicit
  Rational(std::int64_t num, std::int64_t den);

  /// Parses "123", "-0.0255", "56/3".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// Tightest interval of doubles containing the value.
  Interval enclosure() const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend Rational operator+(const Rational &a, const Rational &b);
  friend Rational operator-(const Rational &a, const Rational &b);
  friend Rational operator-(const Rational &a);
  friend Rational operator*(const Rational &a, const Rational &b);
  friend Rational operator/(const Rational &a, const Rational &b);
  friend bool operator==(const Rational &, const Rational &) = default;
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

  /// Already reduced, den > 0. No checks.
  static Rational reduced(std::int64_t num, std::int64_t den) {
    Rational r;
    r.num_ = num;
    r.den_ = den;
    return r;
  }

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::int64_t binomial(std::int64_t n, std::int64_t k);

} // namespace packcert
