#include "packcert/voronoi.hpp"

#include <algorithm>
#include <sstream>

#include "packcert/errors.hpp"

namespace packcert {

VoronoiCell voronoi_cell(const Packing &p, std::size_t v) {
  const Point3 &owner = p[v];
  if (norm(owner) > p.gen_radius() - kInteriorMargin + kGeomTol) {
    std::ostringstream msg;
    msg << "center " << v << " at distance " << norm(owner)
        << " is not interior (limit gen_radius - " << kInteriorMargin << ")";
    throw BoundaryVertex(msg.str());
  }

  VoronoiCell cell;
  cell.owner = v;
  cell.polytope = bisector_cell(owner, p.neighbors(owner, kVoronoiNeighborCutoff),
                                kVoronoiSeedHalfWidth);
  for (const Point3 &x : cell.polytope.vertices())
    cell.max_vertex_distance = std::max(cell.max_vertex_distance, distance(x, owner));
  if (cell.max_vertex_distance > 2.0 + kGeomTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "cell of center " << v << " reaches distance " << cell.max_vertex_distance
        << " > 2 (packing not saturated around it)";
    throw ContainmentViolation(msg.str());
  }
  cell.volume = cell.polytope.volume();
  return cell;
}

std::map<std::size_t, double> voronoi_volumes(const Packing &p, double region_radius) {
  if (region_radius > p.gen_radius() - kInteriorMargin + kGeomTol)
    throw BoundaryVertex("region_radius exceeds gen_radius - 6");
  std::map<std::size_t, double> out;
  for (std::size_t i : p.indices_within(region_radius))
    out.emplace(i, voronoi_cell(p, i).volume);
  return out;
}

} // namespace packcert
