#include "packcert/audit.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "packcert/errors.hpp"
#include "packcert/score.hpp"

namespace packcert {

namespace {

// Polynomial in one variable, coefficient i multiplies x^i.
using Poly = std::vector<Rational>;

Poly poly_trim(Poly p) {
  while (p.size() > 1 && p.back() == Rational(0))
    p.pop_back();
  return p;
}

Poly poly_add(const Poly &a, const Poly &b, Rational sb = 1) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = r[i] + a[i];
  for (std::size_t i = 0; i < b.size(); ++i)
    r[i] = r[i] + sb * b[i];
  return poly_trim(r);
}

Poly poly_mul(const Poly &a, const Poly &b) {
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = r[i + j] + a[i] * b[j];
  return poly_trim(r);
}

Poly poly_scale(const Poly &a, Rational s) {
  Poly r = a;
  for (Rational &c : r)
    c = c * s;
  return poly_trim(r);
}

// (x + shift)^n
Poly binomial_power(Rational shift, int n) {
  Poly r{Rational(1)};
  for (int i = 0; i < n; ++i)
    r = poly_mul(r, Poly{shift, Rational(1)});
  return r;
}

Rational max_abs_coefficient(const Poly &p) {
  Rational m(0);
  for (const Rational &c : p)
    m = std::max(m, c < Rational(0) ? -c : c);
  return m;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

// Literal lookup with the tamper overrides applied.
class Literals {
public:
  explicit Literals(const AuditOptions &opt) : opt_(opt) {}

  std::string text(const std::string &key) const {
    const auto it = opt_.tighten.find(key);
    return it == opt_.tighten.end() ? key : it->second;
  }
  Rational q(const std::string &key) const { return Rational::parse(text(key)); }
  Interval iv(const std::string &key) const { return q(key).enclosure(); }

  Interval pi() const { return pi_interval(opt_.transcendental_ulps); }
  Interval sqrt2() const { return sqrt2_interval(opt_.transcendental_ulps); }
  Interval acos_third() const { return acos_third_interval(opt_.transcendental_ulps); }

private:
  const AuditOptions &opt_;
};

bool decide(const Interval &c, const Interval &b, Relation rel) {
  switch (rel) {
  case Relation::le:
    return c.hi() <= b.lo();
  case Relation::ge:
    return c.lo() >= b.hi();
  case Relation::within:
    return b.contains(c);
  case Relation::eq:
    return c.is_point() && b.is_point() && c == b;
  }
  return false;
}

AuditStep interval_step(std::string name, std::string claim, Interval computed,
                        Interval bound, Relation rel, double estimate) {
  AuditStep s{std::move(name), std::move(claim), computed, bound, rel, false, estimate};
  s.pass = decide(computed, bound, rel);
  return s;
}

AuditStep exact_step(std::string name, std::string claim, Rational computed, Rational bound,
                     Relation rel) {
  AuditStep s{std::move(name), std::move(claim), computed.enclosure(), bound.enclosure(),
              rel, false, computed.to_double()};
  switch (rel) {
  case Relation::le:
    s.pass = computed <= bound;
    break;
  case Relation::ge:
    s.pass = computed >= bound;
    break;
  case Relation::eq:
    s.pass = computed == bound;
    break;
  case Relation::within:
    throw std::logic_error("exact_step: use interval_step for containment");
  }
  return s;
}

// Identity of two polynomials, reported as the largest coefficient gap.
AuditStep poly_identity_step(std::string name, std::string claim, const Poly &lhs,
                             const Poly &rhs) {
  return exact_step(std::move(name), std::move(claim),
                    max_abs_coefficient(poly_add(lhs, rhs, Rational(-1))), Rational(0),
                    Relation::eq);
}

struct ConstantEnclosures {
  Interval sol0, tau0, m1, m2;
};

ConstantEnclosures enclose_constants(const Literals &lit) {
  ConstantEnclosures c;
  const Interval pi = lit.pi();
  const Interval s2 = lit.sqrt2();
  c.sol0 = Interval(3.0) * lit.acos_third() - pi;
  c.tau0 = Interval(4.0) * pi - Interval(20.0) * c.sol0;
  c.m1 = c.sol0 * Interval(2.0) * s2 / c.tau0;
  c.m2 = (Interval(6.0) * c.sol0 - pi) * s2 / (Interval(6.0) * c.tau0);
  return c;
}

// poly_weight - linear_weight on an interval inside [1, h0].
Interval score_gap(const Interval &h, const Literals &lit) {
  const Interval s2 = lit.sqrt2();
  const Interval hp = lit.iv("1.3254");
  const Interval h0 = lit.iv("1.26");
  const Interval one(1.0);
  const Interval m = (s2 - h) / (s2 - one) * ((hp - h) / (hp - one)) *
                     ((Interval(17.0) * h - Interval(9.0) * h * h - Interval(3.0)) /
                      Interval(5.0));
  const Interval l = (h0 - h) / (h0 - one);
  return m - l;
}

// d/dh (poly_weight - linear_weight), naive interval extension.
Interval score_gap_slope(const Interval &h, const Literals &lit) {
  const Interval s2 = lit.sqrt2();
  const Interval hp = lit.iv("1.3254");
  const Interval h0 = lit.iv("1.26");
  const Interval one(1.0);
  const Interval f1 = (s2 - h) / (s2 - one);
  const Interval f2 = (hp - h) / (hp - one);
  const Interval f3 = (Interval(17.0) * h - Interval(9.0) * h * h - Interval(3.0)) / Interval(5.0);
  const Interval d1 = -(one / (s2 - one));
  const Interval d2 = -(one / (hp - one));
  const Interval d3 = (Interval(17.0) - Interval(18.0) * h) / Interval(5.0);
  const Interval dm = d1 * f2 * f3 + f1 * d2 * f3 + f1 * f2 * d3;
  const Interval dl = -(one / (h0 - one));
  return dm - dl;
}

// Bisection whose every sign decision is certified by interval evaluation.
// Returns the last bracket [lo, hi] with certified g(lo) < 0 < g(hi).
Interval enclose_h_minus(const Literals &lit) {
  double lo = lit.q("1.231").to_double();
  double hi = lit.q("1.232").to_double();
  // 1e-10 is plenty downstream and keeps the plain double root inside
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    const Interval g = score_gap(Interval(mid), lit);
    if (g.hi() < 0.0)
      lo = mid;
    else if (g.lo() > 0.0)
      hi = mid;
    else
      break;
  }
  return Interval(lo, hi);
}

Interval beta_profile_interval(const Interval &h, const Literals &lit) {
  const Interval h0 = lit.iv("1.26");
  const Interval hp = lit.iv("1.3254");
  const Interval t = (h - h0) * (h - h0) / ((hp - h0) * (hp - h0));
  return lit.iv("0.005") * (Interval(1.0) - t);
}

Interval alpha_product_factor(const Literals &lit) {
  // 3.52^3 * 8 * 63/13 * 0.0255
  return pow(lit.iv("3.52"), 3) * Interval(8.0) * lit.iv("63/13") * lit.iv("0.0255");
}

} // namespace

// --- chain ------------------------------------------------------------------

std::vector<AuditStep> audit_constants(const AuditOptions &opt) {
  const Literals lit(opt);
  const ConstantEnclosures c = enclose_constants(lit);
  const ScoreConstants &k = score_constants();
  std::vector<AuditStep> steps;

  steps.push_back(interval_step("sol0", "sol0 = 3 acos(1/3) - pi lies in [0.5512, 0.5513]", c.sol0,
                                Interval(0.5512, 0.5513), Relation::within, k.sol0));
  steps.push_back(interval_step(
      "m1_range", "m1 = sol0 * 2 sqrt(2) / tau0 lies in [1.0120, 1.0121]", c.m1,
      Interval(lit.iv("1.0120").lo(), lit.iv("1.0121").hi()), Relation::within, k.m1));
  steps.push_back(interval_step(
      "m2_range", "m2 = (6 sol0 - pi) sqrt(2) / (6 tau0) lies in [0.02541, 0.02542]", c.m2,
      Interval(lit.iv("0.02541").lo(), lit.iv("0.02542").hi()), Relation::within, k.m2));
  steps.push_back(interval_step("m1_upper", "m1 <= " + lit.text("1.013"), c.m1, lit.iv("1.013"),
                                Relation::le, k.m1));
  steps.push_back(interval_step("m2_upper", "m2 <= " + lit.text("0.0255"), c.m2,
                                lit.iv("0.0255"), Relation::le, k.m2));

  const Interval s2 = lit.sqrt2();
  const Interval gap = Interval(8.0) * c.m1 - Interval(96.0) * c.m2 - Interval(4.0) * s2;
  // 8 m1 - 96 m2 = (sqrt2 / tau0) (a sol0 + b pi). Exact when (a, b) = 4 (-20, 4),
  // the coefficients of tau0.
  const Rational a = Rational(8) * 2 - Rational(96, 6) * 6;
  const Rational b = Rational(96, 6);
  steps.push_back(exact_step("fcc_identity_exact",
                             "8 m1 - 96 m2 = sqrt(2) (16 pi - 80 sol0) / tau0 = 4 sqrt(2)",
                             max_abs_coefficient(Poly{a - Rational(4) * -20, b - Rational(4) * 4}),
                             Rational(0), Relation::eq));
  steps.push_back(interval_step("fcc_identity_numeric",
                                "8 m1 - 96 m2 - 4 sqrt(2) lies in [-1e-10, 1e-10]", gap,
                                Interval(-1e-10, 1e-10), Relation::within,
                                8.0 * k.m1 - 96.0 * k.m2 - 4.0 * std::numbers::sqrt2));

  const Interval pi = lit.pi();
  const Interval fcc_density = Interval(4.0) / Interval(3.0) * pi / (Interval(4.0) * s2) -
                               pi / sqrt(Interval(18.0));
  steps.push_back(interval_step(
      "fcc_density", "vol(B(0,1)) / (4 sqrt(2)) - pi / sqrt(18) lies in [-1e-12, 1e-12]",
      fcc_density, Interval(-1e-12, 1e-12), Relation::within,
      ball_volume(1.0) / (4.0 * std::numbers::sqrt2) - std::numbers::pi / std::sqrt(18.0)));

  const std::string lo_text = lit.text("1.231"), hi_text = lit.text("1.232");
  steps.push_back(interval_step("h_minus_sign_low",
                                "M(" + lo_text + ") - L(" + lo_text + ") <= 0",
                                score_gap(lit.iv("1.231"), lit), Interval(0.0), Relation::le,
                                poly_weight(1.231) - linear_weight(1.231)));
  steps.push_back(interval_step("h_minus_sign_high",
                                "M(" + hi_text + ") - L(" + hi_text + ") >= 0",
                                score_gap(lit.iv("1.232"), lit), Interval(0.0), Relation::ge,
                                poly_weight(1.232) - linear_weight(1.232)));
  const Interval bracket(lit.iv("1.231").lo(), lit.iv("1.232").hi());
  steps.push_back(interval_step("h_minus_unique",
                                "d/dh (M - L) > 0 on [" + lo_text + ", " + hi_text +
                                    "], so the root is unique",
                                score_gap_slope(bracket, lit), Interval(0.0), Relation::ge, 0.0));
  steps.back().pass = steps.back().computed.lo() > 0.0;
  steps.back().estimate = steps.back().computed.mid();

  const Interval hm = enclose_h_minus(lit);
  steps.push_back(interval_step("h_minus_range", "h- lies in [" + lo_text + ", " + hi_text + "]",
                                hm, bracket, Relation::within, k.h_minus));
  steps.push_back(interval_step("h_minus_value", "h- = 1.23175 +- 5e-4", hm,
                                Interval(1.23125, 1.23225), Relation::within, k.h_minus));
  return steps;
}

std::vector<AuditStep> audit_c2(const AuditOptions &opt) {
  const Literals lit(opt);
  const ConstantEnclosures c = enclose_constants(lit);
  const ScoreConstants &k = score_constants();
  const Rational four_thirds(4, 3);
  std::vector<AuditStep> steps;

  // vol(B(0,r)) - vol(B(0,r-2)), in units of pi
  const Poly shell2 =
      poly_scale(poly_add(binomial_power(0, 3), binomial_power(-2, 3), Rational(-1)), four_thirds);
  steps.push_back(poly_identity_step("c2_shell_identity",
                                     "4/3 (r^3 - (r-2)^3) = 8 r^2 - 16 r + 32/3", shell2,
                                     Poly{Rational(32, 3), Rational(-16), Rational(8)}));
  // dropping -16 r only raises the bound for r >= 0
  steps.push_back(exact_step("c2_shell_linear_term",
                             "the r-coefficient -16 of the shell volume is <= 0", shell2[1],
                             Rational(0), Relation::le));
  const Rational c2_coeff = lit.q("56/3");
  steps.push_back(exact_step("c2_r_ge_1",
                             "8 pi r^2 + 32/3 pi <= " + lit.text("56/3") + " pi r^2 for r >= 1",
                             Rational(8) + Rational(32, 3), c2_coeff, Relation::le));

  const Poly shell5 = poly_add(binomial_power(5, 3), binomial_power(-5, 3), Rational(-1));
  steps.push_back(poly_identity_step("c2_shell5_identity", "(r+5)^3 - (r-5)^3 = 30 r^2 + 250",
                                     shell5, Poly{Rational(250), Rational(0), Rational(30)}));
  const Rational c1120 = lit.q("1120");
  steps.push_back(exact_step("c2_1120",
                             "(30 r^2 + 250) 4 pi <= " + lit.text("1120") + " pi r^2 for r >= 1",
                             Rational(4) * (shell5[2] + shell5[0]), c1120, Relation::le));
  steps.push_back(exact_step("c2_2240",
                             "(2 m1 / pi) " + lit.text("1120") + " pi r^2 <= m1 " +
                                 lit.text("2240") + " r^2",
                             Rational(2) * c1120, lit.q("2240"), Relation::le));

  const Interval c2 = -(lit.iv("56/3") + lit.iv("2240") * c.m1);
  steps.push_back(interval_step("c2_value", "c2 = -56/3 - m1 2240 lies in [-2285.73, -2285.72]",
                                c2, Interval(-2285.73, -2285.72), Relation::within,
                                -(56.0 / 3.0 + 2240.0 * k.m1)));
  return steps;
}

std::vector<AuditStep> audit_alpha(const AuditOptions &opt) {
  const Literals lit(opt);
  const Interval pi = lit.pi();
  std::vector<AuditStep> steps;

  const Poly shell4 = poly_scale(
      poly_add(binomial_power(4, 3), binomial_power(-4, 3), Rational(-1)), Rational(4, 3));
  steps.push_back(poly_identity_step("alpha_shell4_identity",
                                     "4/3 ((r+4)^3 - (r-4)^3) = 32 r^2 + 512/3", shell4,
                                     Poly{Rational(512, 3), Rational(0), Rational(32)}));
  steps.push_back(exact_step("alpha_ball_radius", "2 h0 + 1 = 3.52", Rational(2) * lit.q("1.26") + 1,
                             lit.q("3.52"), Relation::eq));
  steps.push_back(exact_step("alpha_L_max", "L(0) = h0 / (h0 - 1) = 126/26 = 63/13",
                             lit.q("1.26") / (lit.q("1.26") - 1), lit.q("63/13"), Relation::eq));
  steps.push_back(exact_step("alpha_edge_factor", "1/2 * 16 m2 = 8 m2", Rational(16) / 2,
                             Rational(8), Relation::eq));

  const Interval factor = alpha_product_factor(lit);
  const double factor_est = std::pow(3.52, 3) * 8.0 * 63.0 / 13.0 * 0.0255;
  const Interval r2 = Interval(32.0) * pi + Interval(30.0) * factor;
  steps.push_back(interval_step(
      "alpha_r2_coeff",
      "32 pi + 30 * 3.52^3 * 8 * 63/13 * " + lit.text("0.0255") + " <= " + lit.text("1394.1"), r2,
      lit.iv("1394.1"), Relation::le, 32.0 * std::numbers::pi + 30.0 * factor_est));
  const Interval c0 = Interval(512.0) / Interval(3.0) * pi + Interval(250.0) * factor;
  steps.push_back(interval_step(
      "alpha_const",
      "512/3 pi + 250 * 3.52^3 * 8 * 63/13 * " + lit.text("0.0255") + " <= " + lit.text("11315.6"),
      c0, lit.iv("11315.6"), Relation::le, 512.0 / 3.0 * std::numbers::pi + 250.0 * factor_est));
  steps.push_back(exact_step("alpha_total",
                             lit.text("1394.1") + " r^2 + " + lit.text("11315.6") + " <= " +
                                 lit.text("12710") + " r^2 for r >= 1",
                             lit.q("1394.1") + lit.q("11315.6"), lit.q("12710"), Relation::le));
  return steps;
}

std::vector<AuditStep> audit_zeta(const AuditOptions &opt) {
  const Literals lit(opt);
  std::vector<AuditStep> steps;

  const Interval ball = pow(Interval(2.0) * lit.sqrt2() + Interval(1.0), 3);
  steps.push_back(interval_step("zeta_ball_count", "(2 sqrt(2) + 1)^3 lies in [56.1, 56.2]", ball,
                                Interval(56.1, 56.2), Relation::within,
                                std::pow(2.0 * std::numbers::sqrt2 + 1.0, 3)));
  // floor is certified only when the enclosure avoids every integer
  const double fl = std::floor(ball.lo());
  const bool floor_known = std::floor(ball.hi()) == fl && ball.lo() > fl;
  const std::int64_t n = floor_known ? static_cast<std::int64_t>(fl) : -1;
  steps.push_back(exact_step("zeta_floor", "floor((2 sqrt(2) + 1)^3) = 56", Rational(n),
                             Rational(56), Relation::eq));
  steps.push_back(exact_step("zeta_binomial", "C(56, 3) = " + lit.text("27720"),
                             Rational(binomial(56, 3)), lit.q("27720"), Relation::eq));

  const Poly shell5 = poly_add(binomial_power(5, 3), binomial_power(-5, 3), Rational(-1));
  const Poly quarter = poly_scale(shell5, Rational(1, 4));
  steps.push_back(poly_identity_step("zeta_quarter", "(30 r^2 + 250) / 4 = 7.5 r^2 + 62.5",
                                     quarter,
                                     Poly{Rational::parse("62.5"), Rational(0), Rational::parse("7.5")}));

  const AuditStep beta_nonneg = interval_step(
      "zeta_beta_nonneg", "beta0(h-) >= 0, so 0 <= beta0 <= 0.005 on [h-, h+]",
      beta_profile_interval(enclose_h_minus(lit), lit), Interval(0.0), Relation::ge,
      beta_profile(score_constants().h_minus));
  steps.push_back(beta_nonneg);
  steps.push_back(exact_step("zeta_two_edges", "2 * 0.005 = 0.01", Rational(2) * lit.q("0.005"),
                             lit.q("0.01"), Relation::eq));

  const Rational per_cell = lit.q("0.01");
  const Rational cells = lit.q("27720");
  steps.push_back(exact_step("zeta_r2", "7.5 * " + lit.text("27720") + " * 0.01 = " + lit.text("2079"),
                             quarter[2] * cells * per_cell, lit.q("2079"), Relation::eq));
  steps.push_back(exact_step("zeta_const",
                             "62.5 * " + lit.text("27720") + " * 0.01 = " + lit.text("17325"),
                             quarter[0] * cells * per_cell, lit.q("17325"), Relation::eq));
  steps.push_back(exact_step("zeta_total",
                             lit.text("2079") + " r^2 + " + lit.text("17325") + " <= " +
                                 lit.text("19404") + " r^2 for r >= 1",
                             lit.q("2079") + lit.q("17325"), lit.q("19404"), Relation::le));
  return steps;
}

std::vector<AuditStep> audit_c0_c1_final(const AuditOptions &opt) {
  const Literals lit(opt);
  const ConstantEnclosures c = enclose_constants(lit);
  const ScoreConstants &k = score_constants();
  std::vector<AuditStep> steps;

  steps.push_back(exact_step("c0_sum",
                             lit.text("19404") + " + " + lit.text("12710") + " <= " +
                                 lit.text("32114"),
                             lit.q("19404") + lit.q("12710"), lit.q("32114"), Relation::le));

  const Interval c1 = lit.iv("56/3") + c.m1 * lit.iv("2240") + lit.iv("32114");
  steps.push_back(interval_step("c1_enclosure",
                                "c1 = 56/3 + m1 2240 + " + lit.text("32114") + " <= " +
                                    lit.text("34402"),
                                c1, lit.iv("34402"), Relation::le,
                                56.0 / 3.0 + 2240.0 * k.m1 + 32114.0));
  steps.push_back(exact_step("c1_displayed",
                             "56/3 + " + lit.text("1.013") + " * 2240 + " + lit.text("32114") +
                                 " <= " + lit.text("34402"),
                             lit.q("56/3") + lit.q("1.013") * lit.q("2240") + lit.q("32114"),
                             lit.q("34402"), Relation::le));

  // (1 + 3x)^3 with x = 1/r
  const Poly cube = poly_mul(poly_mul(Poly{1, 3}, Poly{1, 3}), Poly{1, 3});
  steps.push_back(poly_identity_step("final_expansion",
                                     "(1 + 3/r)^3 = 1 + 9/r + 27/r^2 + 27/r^3", cube,
                                     Poly{1, 9, 27, 27}));
  steps.push_back(exact_step("final_63", "9 + 27 + 27 = 63 (1/r^k <= 1/r for r >= 1)",
                             cube[1] + cube[2] + cube[3], Rational(63), Relation::eq));
  steps.push_back(exact_step("final_21pi", "63 pi / sqrt(18) = 63 pi / (3 sqrt(2)) = 21 pi / sqrt(2)",
                             Rational(63) / 3, Rational(21), Relation::eq));
  steps.push_back(exact_step("final_c1_factor",
                             "c1 (1 + 2 + 1) / (4 sqrt(2)) = c1 / sqrt(2)",
                             Rational(1 + 2 + 1) / 4, Rational(1), Relation::eq));

  const Interval fin = (Interval(21.0) * lit.pi() + lit.iv("34402")) / lit.sqrt2();
  steps.push_back(interval_step("final_constant",
                                "(21 pi + " + lit.text("34402") + ") / sqrt(2) <= " +
                                    lit.text("24373"),
                                fin, lit.iv("24373"), Relation::le,
                                (21.0 * std::numbers::pi + 34402.0) / std::numbers::sqrt2));
  return steps;
}

std::vector<AuditStep> audit_bound_on_packing(const Packing &p, const std::vector<double> &r_list,
                                              const AuditOptions &opt) {
  const Literals lit(opt);
  const Interval pi = lit.pi();
  const Interval s2 = lit.sqrt2();
  const Interval fcc_limit = pi / sqrt(Interval(18.0));
  std::vector<AuditStep> steps;
  for (double r : r_list) {
    if (r > p.gen_radius() - 1.0)
      throw ContainerExceedsGeneration("audit radius exceeds gen_radius - 1");
    const double d = density(p, r);
    // floating sum of a few thousand lens volumes; the margin is generous
    const Interval dens = enclose(d).widened(64);
    const Interval R(r);
    const Interval thm = fcc_limit + lit.iv("24373") / R;
    const Interval ineq = fcc_limit * pow(Interval(1.0) + Interval(3.0) / R, 3) +
                          lit.iv("34402") * pow(R + Interval(1.0), 2) /
                              (pow(R, 3) * Interval(4.0) * s2);
    const std::string tag = fmt(r);
    auto claim = [&](std::string text, const Interval &rhs) {
      if (rhs.lo() > 1.0)
        text += " [vacuous at this scale]";
      return text;
    };
    steps.push_back(interval_step(
        "density_bound_r" + tag,
        claim("density(V,0," + tag + ") <= pi/sqrt(18) + " + lit.text("24373") + "/" + tag, thm),
        dens, thm, Relation::le, d));
    steps.push_back(interval_step(
        "density_inequality_r" + tag,
        claim("density(V,0," + tag + ") <= pi/sqrt(18) (1+3/r)^3 + " + lit.text("34402") +
                  " (r+1)^2 / (r^3 4 sqrt(2)) at r = " + tag,
              ineq),
        dens, ineq, Relation::le, d));
  }
  return steps;
}

Certificate full_report(const AuditOptions &opt) {
  Certificate cert;
  for (auto part : {audit_constants, audit_c2, audit_alpha, audit_zeta, audit_c0_c1_final}) {
    std::vector<AuditStep> s = part(opt);
    cert.steps.insert(cert.steps.end(), s.begin(), s.end());
  }
  cert.pass = std::all_of(cert.steps.begin(), cert.steps.end(),
                          [](const AuditStep &s) { return s.pass; });
  return cert;
}

std::string certificate_json(const Certificate &cert) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const AuditStep &s : cert.steps)
    out.push_back({{"name", s.name},
                   {"claim", s.claim},
                   {"computed", {s.computed.lo(), s.computed.hi()}},
                   {"bound", {s.bound.lo(), s.bound.hi()}},
                   {"pass", s.pass}});
  return out.dump(2) + "\n";
}

std::string certificate_csv(const Certificate &cert) {
  auto quote = [](const std::string &s) {
    std::string q = "\"";
    for (char ch : s)
      q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  // doubles via nlohmann for the same shortest round-trip text as the JSON
  auto num = [](double v) { return nlohmann::json(v).dump(); };
  std::string out = "name,claim,computed_lo,computed_hi,bound_lo,bound_hi,pass\n";
  for (const AuditStep &s : cert.steps)
    out += s.name + "," + quote(s.claim) + "," + num(s.computed.lo()) + "," +
           num(s.computed.hi()) + "," + num(s.bound.lo()) + "," + num(s.bound.hi()) + "," +
           (s.pass ? "true" : "false") + "\n";
  return out;
}

std::string tighten_by_one_unit(const std::string &literal) {
  if (const auto slash = literal.find('/'); slash != std::string::npos) {
    const Rational num = Rational::parse(literal.substr(0, slash));
    return (num - 1).str() + literal.substr(slash);
  }
  const auto dot = literal.find('.');
  const std::size_t decimals = dot == std::string::npos ? 0 : literal.size() - dot - 1;
  std::int64_t unit_den = 1;
  for (std::size_t i = 0; i < decimals; ++i)
    unit_den *= 10;
  const Rational lowered = Rational::parse(literal) - Rational(1, unit_den);
  // back to fixed-point text with the same number of decimals
  const std::int64_t scaled = (lowered * Rational(unit_den)).num();
  if (decimals == 0)
    return std::to_string(scaled);
  std::string digits = std::to_string(scaled < 0 ? -scaled : scaled);
  if (digits.size() <= decimals)
    digits.insert(0, decimals - digits.size() + 1, '0');
  digits.insert(digits.size() - decimals, ".");
  return (scaled < 0 ? "-" : "") + digits;
}

const std::vector<std::string> &upper_bound_literals() {
  static const std::vector<std::string> literals = {
      "1.013", "0.0255", "56/3",  "1120",  "2240",  "1394.1", "11315.6", "12710",
      "27720", "2079",   "17325", "19404", "32114", "34402",  "24373"};
  return literals;
}

} // namespace packcert
