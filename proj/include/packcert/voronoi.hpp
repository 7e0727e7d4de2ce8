#pragma once

#include <map>

#include "packcert/packing.hpp"

namespace packcert {

struct VoronoiCell {
  std::size_t owner = 0;
  ConvexPolytope polytope;
  double volume = 0.0;
  /// Largest distance from the owner to a cell vertex.
  double max_vertex_distance = 0.0;
};

/// Half-width of the seed cube. Larger than 2 so that the containment check
/// against B(owner, 2) can actually fail.
inline constexpr double kVoronoiSeedHalfWidth = 2.5;
/// Neighbors within this distance contribute bisectors.
inline constexpr double kVoronoiNeighborCutoff = 8.0;
/// Centers farther than gen_radius - kInteriorMargin from the origin are
/// boundary centers; their cells may see missing neighbors.
inline constexpr double kInteriorMargin = 6.0;

/// Cell of center `v`. Throws BoundaryVertex when v is not interior and
/// ContainmentViolation when a cell vertex is farther than 2 + 1e-9 from v.
VoronoiCell voronoi_cell(const Packing &p, std::size_t v);

/// Volumes of the cells of all centers in B(0, region_radius), keyed by index.
std::map<std::size_t, double> voronoi_volumes(const Packing &p, double region_radius);

} // namespace packcert
