#pragma once

#include <functional>
#include <vector>

#include "packcert/packing.hpp"

namespace packcert {

/// Constants of the vertex and cell scores, computed from their defining
/// expressions in double precision.
struct ScoreConstants {
  double h0;      ///< 1.26, breakpoint of linear_weight
  double h_plus;  ///< 1.3254, upper end of the critical range
  double sol0;    ///< 3 acos(1/3) - pi, solid angle of a regular tetrahedron
  double tau0;    ///< 4 pi - 20 sol0
  double m1;      ///< sol0 * 2 sqrt(2) / tau0
  double m2;      ///< (6 sol0 - pi) sqrt(2) / (6 tau0)
  double h_minus; ///< root of poly_weight - linear_weight in [1.231, 1.232]
};

const ScoreConstants &score_constants();

/// (h0 - h) / (h0 - 1) below h0, zero above.
double linear_weight(double h);

/// (sqrt2 - h)/(sqrt2 - 1) * (h+ - h)/(h+ - 1) * (17h - 9h^2 - 3)/5 up to
/// sqrt(2), zero above.
double poly_weight(double h);

/// 0.005 (1 - (h - h0)^2 / (h+ - h0)^2) on all of R; callers restrict h.
double beta_profile(double h);

/// Bisection for the root of poly_weight - linear_weight on [1.231, 1.232]
/// down to a bracket narrower than 1e-12. Throws NoSignChange.
double find_h_minus();

using EdgeWeight = std::function<double(double)>;

/// -vol(voronoi(v)) + 8 m1 - sum over neighbors u of 8 m2 f(|u - v| / 2).
/// The sum stops at distance 2 sqrt(2) (h = sqrt 2); f must vanish beyond
/// that, which is spot-checked (std::invalid_argument otherwise).
double vertex_score(const Packing &p, std::size_t v, const EdgeWeight &f = linear_weight);

/// Sum of linear_weight(|u - v| / 2) over neighbors u with h <= h0.
double neighbor_weight_sum(const Packing &p, std::size_t v);

struct CompatibilityReport {
  double min_margin = 0.0; ///< min over vertices of vol + score - 4 sqrt 2
  std::size_t argmin = 0;
  std::size_t vertices = 0;
  bool pass = false; ///< min_margin >= -1e-9
};

CompatibilityReport fcc_compatibility_check(const Packing &p, double region_radius,
                                            const EdgeWeight &f = linear_weight);

struct NegligibilityRow {
  double r = 0.0;
  double sum = 0.0; ///< sum of vertex scores over centers with |v| < r
  double ratio = 0.0;
  std::size_t vertices = 0;
};

struct NegligibilityReport {
  std::vector<NegligibilityRow> rows;
  double max_ratio = 0.0;
};

NegligibilityReport negligibility_scan(const Packing &p, const EdgeWeight &f,
                                       const std::vector<double> &r_list);

} // namespace packcert
