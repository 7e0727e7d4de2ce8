#include "packcert/interval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace packcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double v, int ulps = 1) {
  for (int i = 0; i < ulps; ++i)
    v = std::nextafter(v, -kInf);
  return v;
}

double up(double v, int ulps = 1) {
  for (int i = 0; i < ulps; ++i)
    v = std::nextafter(v, kInf);
  return v;
}

Interval outward(double lo, double hi) { return Interval(down(lo), up(hi)); }

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("Rational overflow");
  return static_cast<std::int64_t>(v);
}

Rational make(i128 num, i128 den) {
  if (den == 0)
    throw std::domain_error("Rational division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational::reduced(narrow(num), narrow(den));
}

} // namespace

// --- Interval ---------------------------------------------------------------

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo <= hi))
    throw std::invalid_argument("Interval: lo > hi");
}

Interval Interval::widened(int ulps) const { return Interval(down(lo_, ulps), up(hi_, ulps)); }

Interval operator+(const Interval &a, const Interval &b) {
  return outward(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

Interval operator-(const Interval &a, const Interval &b) {
  return outward(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

Interval operator-(const Interval &a) { return Interval(-a.hi_, -a.lo_); }

Interval operator*(const Interval &a, const Interval &b) {
  const double p[] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  return outward(*std::min_element(std::begin(p), std::end(p)),
                 *std::max_element(std::begin(p), std::end(p)));
}

Interval operator/(const Interval &a, const Interval &b) {
  if (b.lo_ <= 0.0 && b.hi_ >= 0.0)
    throw std::domain_error("Interval division by an interval containing 0");
  const double p[] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
  return outward(*std::min_element(std::begin(p), std::end(p)),
                 *std::max_element(std::begin(p), std::end(p)));
}

Interval sqrt(const Interval &x) {
  if (x.lo() < 0.0)
    throw std::domain_error("Interval sqrt of negative values");
  return Interval(std::max(0.0, down(std::sqrt(x.lo()))), up(std::sqrt(x.hi())));
}

Interval pow(const Interval &x, int n) {
  if (n < 1)
    throw std::invalid_argument("Interval pow needs n >= 1");
  Interval r = x;
  for (int i = 1; i < n; ++i)
    r = r * x;
  return r;
}

Interval enclose(double v) { return outward(v, v); }

Interval pi_interval(int ulps) {
  return Interval(std::numbers::pi).widened(ulps);
}

Interval sqrt2_interval(int ulps) {
  return Interval(std::numbers::sqrt2).widened(ulps);
}

Interval acos_third_interval(int ulps) {
  // acos is decreasing; 1/3 itself is rounded
  const Interval third = Interval(1.0) / Interval(3.0);
  return Interval(std::acos(third.hi()), std::acos(third.lo())).widened(ulps);
}

// --- Rational ---------------------------------------------------------------

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = make(num, den);
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
    return v;
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos)
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));

  const auto dot = text.find('.');
  if (dot == std::string_view::npos)
    return Rational(parse_int(text));
  const std::string_view frac = text.substr(dot + 1);
  if (frac.empty() || frac.find_first_not_of("0123456789") != std::string_view::npos)
    throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
  std::string digits(text.substr(0, dot));
  digits += frac;
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i)
    den *= 10;
  return Rational(parse_int(digits), den);
}

Interval Rational::enclosure() const {
  constexpr std::int64_t kExact = std::int64_t{1} << 53;
  const bool exact_num = num_ > -kExact && num_ < kExact;
  if (den_ == 1 && exact_num)
    return Interval(static_cast<double>(num_));
  if (exact_num && den_ < kExact)
    return Interval(static_cast<double>(num_)) / Interval(static_cast<double>(den_));
  return enclose(to_double()).widened(2);
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational &a, const Rational &b) {
  return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator-(const Rational &a, const Rational &b) {
  return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator-(const Rational &a) { return make(-i128(a.num_), a.den_); }

Rational operator*(const Rational &a, const Rational &b) {
  return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rational operator/(const Rational &a, const Rational &b) {
  return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
  const i128 l = i128(a.num_) * b.den_;
  const i128 r = i128(b.num_) * a.den_;
  return l < r ? std::strong_ordering::less
               : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n)
    return 0;
  k = std::min(k, n - k);
  i128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i)
    r = r * (n - k + i) / i; // exact: r * (n-k+i) is divisible by i here
  return narrow(r);
}

} // namespace packcert
