#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "packcert/packing.hpp"
#include "packcert/score.hpp"

namespace packcert {

/// Tetrahedral cell on four packing centers with circumradius below sqrt(2)
/// and an empty circumball.
struct FourCell {
  /// Local vertex pairs, in the order used by `dihedrals`.
  static constexpr std::array<std::array<int, 2>, 6> kEdgePairs = {
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

  std::array<std::size_t, 4> vertices{}; ///< center indices, ascending
  std::array<Point3, 4> points{};
  Circumsphere circumsphere;
  double volume = 0.0;
  std::array<double, 4> solid_angles{};
  std::array<double, 6> dihedrals{};

  double total_solid_angle() const;
  /// Dihedral angle along the edge joining local vertices a and b.
  double dihedral(int a, int b) const;
  double diameter() const;
};

/// Builds the cached geometry of a cell from its points. Throws
/// DegenerateInput for a flat quadruple.
FourCell make_four_cell(const std::array<Point3, 4> &points,
                        const std::array<std::size_t, 4> &ids = {0, 1, 2, 3});

struct Edge {
  std::size_t i = 0; ///< center index of one endpoint (i < j)
  std::size_t j = 0;
  int a = 0; ///< local vertex numbers inside the cell the edge came from
  int b = 0;
  double h = 0.0; ///< half the endpoint distance

  bool same_endpoints(const Edge &o) const { return i == o.i && j == o.j; }
};

struct CellEnumeration {
  std::vector<FourCell> cells;
  /// Kept quadruples with a fifth center on the circumsphere within 1e-9.
  std::vector<std::array<std::size_t, 4>> cospherical;
};

/// All 4-cells of the packing that have at least one vertex in
/// B(0, region_radius), ordered by their sorted index quadruple.
CellEnumeration enumerate_four_cells(const Packing &p, double region_radius);

std::array<Edge, 6> edges_of(const FourCell &x);

struct CriticalEdges {
  std::vector<Edge> edges;       ///< edges with h in [h-, h+]
  std::optional<double> weight;  ///< 1 / |edges| when nonempty
};

CriticalEdges critical_edges(const FourCell &x);

/// beta0(h(eps)) - beta0(h(eps')) when the cell has exactly two critical
/// edges, they are opposite and eps is one of them; 0 otherwise.
double beta(const Edge &eps, const FourCell &x);

/// vol(X) - (2 m1 / pi) tsol(X) + (8 m2 / pi) sum_e dih(X, e) f(h(e)).
double cell_score(const FourCell &x, const EdgeWeight &f = linear_weight);

inline constexpr std::string_view kPartialClusterLabel = "partial (k<=3 cells omitted)";

struct ClusterEntry {
  Edge edge;
  double partial_gamma = 0.0; ///< sum over its 4-cells of score * weight + beta
  std::size_t cell_count = 0;
};

/// One entry per critical edge with both endpoints in B(0, region_radius),
/// ordered by endpoint indices. Only 4-cells contribute.
std::vector<ClusterEntry> cluster_report(const Packing &p, double region_radius);
std::vector<ClusterEntry> cluster_report(const std::vector<FourCell> &cells,
                                         const Packing &p, double region_radius);

struct AngleCheckReport {
  std::size_t edges_checked = 0;
  double max_edge_dihedral_sum = 0.0;
  std::size_t vertices_checked = 0;
  double max_vertex_solid_sum = 0.0;
  bool pass = false;
};

/// Around every edge (both ends in the region, h < sqrt 2) the 4-cell
/// dihedrals sum to at most 2 pi; around every vertex the solid angles sum
/// to at most 4 pi. Both with slack 1e-9.
AngleCheckReport edge_angle_checks(const Packing &p, double region_radius);
AngleCheckReport edge_angle_checks(const std::vector<FourCell> &cells, const Packing &p,
                                   double region_radius);

} // namespace packcert
