#include "packcert/score.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "packcert/errors.hpp"
#include "packcert/voronoi.hpp"

namespace packcert {

namespace {

constexpr double kH0 = 1.26;
constexpr double kHPlus = 1.3254;
constexpr double kHMinusLo = 1.231;
constexpr double kHMinusHi = 1.232;

ScoreConstants make_constants() {
  using std::numbers::pi;
  using std::numbers::sqrt2;
  ScoreConstants c{};
  c.h0 = kH0;
  c.h_plus = kHPlus;
  c.sol0 = 3.0 * std::acos(1.0 / 3.0) - pi;
  c.tau0 = 4.0 * pi - 20.0 * c.sol0;
  c.m1 = c.sol0 * 2.0 * sqrt2 / c.tau0;
  c.m2 = (6.0 * c.sol0 - pi) * sqrt2 / (6.0 * c.tau0);
  c.h_minus = 0.0;
  return c;
}

void check_vanishes_beyond_sqrt2(const EdgeWeight &f) {
  for (double h : {std::numbers::sqrt2, 1.45, 1.6, 2.0, 3.0, 4.0})
    if (f(h) != 0.0)
      throw std::invalid_argument("edge weight must vanish for h >= sqrt(2)");
}

} // namespace

const ScoreConstants &score_constants() {
  static const ScoreConstants constants = [] {
    ScoreConstants c = make_constants();
    c.h_minus = find_h_minus();
    return c;
  }();
  return constants;
}

double linear_weight(double h) { return h <= kH0 ? (kH0 - h) / (kH0 - 1.0) : 0.0; }

double poly_weight(double h) {
  using std::numbers::sqrt2;
  if (h > sqrt2)
    return 0.0;
  return (sqrt2 - h) / (sqrt2 - 1.0) * (kHPlus - h) / (kHPlus - 1.0) *
         (17.0 * h - 9.0 * h * h - 3.0) / 5.0;
}

double beta_profile(double h) {
  const double t = (h - kH0) / (kHPlus - kH0);
  return 0.005 * (1.0 - t * t);
}

double find_h_minus() {
  auto g = [](double h) { return poly_weight(h) - linear_weight(h); };
  double lo = kHMinusLo, hi = kHMinusHi;
  const double glo = g(lo);
  if (glo == 0.0)
    return lo;
  if (std::signbit(glo) == std::signbit(g(hi)))
    throw NoSignChange("poly_weight - linear_weight keeps its sign on [1.231, 1.232]");
  while (hi - lo >= 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0)
      return mid;
    (std::signbit(gm) == std::signbit(glo) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

double score_with_volume(const Packing &p, std::size_t v, double vol, const EdgeWeight &f) {
  const ScoreConstants &k = score_constants();
  const Point3 &u0 = p[v];
  double sum = 0.0;
  for (std::size_t u : p.neighbor_indices(u0, 2.0 * std::numbers::sqrt2))
    sum += f(distance(p[u], u0) / 2.0);
  return -vol + 8.0 * k.m1 - 8.0 * k.m2 * sum;
}

} // namespace

double vertex_score(const Packing &p, std::size_t v, const EdgeWeight &f) {
  check_vanishes_beyond_sqrt2(f);
  return score_with_volume(p, v, voronoi_cell(p, v).volume, f);
}

double neighbor_weight_sum(const Packing &p, std::size_t v) {
  const Point3 &u0 = p[v];
  double sum = 0.0;
  for (std::size_t u : p.neighbor_indices(u0, 2.0 * kH0)) {
    const double h = distance(p[u], u0) / 2.0;
    if (h <= kH0)
      sum += linear_weight(h);
  }
  return sum;
}

CompatibilityReport fcc_compatibility_check(const Packing &p, double region_radius,
                                            const EdgeWeight &f) {
  if (region_radius > p.gen_radius() - kInteriorMargin + kGeomTol)
    throw BoundaryVertex("region_radius exceeds gen_radius - 6");
  check_vanishes_beyond_sqrt2(f);
  const double fcc_volume = 4.0 * std::numbers::sqrt2;
  CompatibilityReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i : p.indices_within(region_radius)) {
    const double vol = voronoi_cell(p, i).volume;
    const double margin = vol + score_with_volume(p, i, vol, f) - fcc_volume;
    ++rep.vertices;
    if (margin < rep.min_margin) {
      rep.min_margin = margin;
      rep.argmin = i;
    }
  }
  rep.pass = rep.vertices > 0 && rep.min_margin >= -1e-9;
  return rep;
}

NegligibilityReport negligibility_scan(const Packing &p, const EdgeWeight &f,
                                       const std::vector<double> &r_list) {
  NegligibilityReport rep;
  if (r_list.empty())
    return rep;
  const double r_max = *std::max_element(r_list.begin(), r_list.end());
  if (r_max > p.gen_radius() - kInteriorMargin + kGeomTol)
    throw BoundaryVertex("negligibility radius exceeds gen_radius - 6");

  std::vector<std::pair<double, double>> scored; // (|v|^2, score)
  for (std::size_t i : p.indices_within(r_max))
    scored.emplace_back(norm2(p[i]), vertex_score(p, i, f));

  rep.max_ratio = -std::numeric_limits<double>::infinity();
  for (double r : r_list) {
    NegligibilityRow row{r, 0.0, 0.0, 0};
    for (const auto &[d2, s] : scored)
      if (d2 < r * r) {
        row.sum += s;
        ++row.vertices;
      }
    row.ratio = row.sum / (r * r);
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    rep.rows.push_back(row);
  }
  return rep;
}

} // namespace packcert
