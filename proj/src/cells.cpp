#include "packcert/cells.hpp"

#include <algorithm>
#include <map>
#include <numbers>

#include "packcert/errors.hpp"
#include "packcert/voronoi.hpp"

namespace packcert {

namespace {

constexpr double kCriticalTol = 1e-12;
constexpr double kMaxCircumradius = std::numbers::sqrt2;

bool in_region(const Point3 &p, double region_radius) {
  return norm(p) <= region_radius + kGeomTol;
}

} // namespace

double FourCell::total_solid_angle() const {
  return solid_angles[0] + solid_angles[1] + solid_angles[2] + solid_angles[3];
}

double FourCell::dihedral(int a, int b) const {
  if (a > b)
    std::swap(a, b);
  for (std::size_t e = 0; e < kEdgePairs.size(); ++e)
    if (kEdgePairs[e][0] == a && kEdgePairs[e][1] == b)
      return dihedrals[e];
  throw std::out_of_range("FourCell::dihedral: not an edge");
}

double FourCell::diameter() const {
  double d = 0.0;
  for (const auto &[a, b] : kEdgePairs)
    d = std::max(d, distance(points[a], points[b]));
  return d;
}

FourCell make_four_cell(const std::array<Point3, 4> &points,
                        const std::array<std::size_t, 4> &ids) {
  FourCell x;
  x.vertices = ids;
  x.points = points;
  x.circumsphere = circumsphere(points);
  x.volume = tetra_volume(points[0], points[1], points[2], points[3]);
  for (int v = 0; v < 4; ++v)
    x.solid_angles[v] = solid_angle_cone(points[v], points[(v + 1) % 4],
                                         points[(v + 2) % 4], points[(v + 3) % 4]);
  for (std::size_t e = 0; e < FourCell::kEdgePairs.size(); ++e) {
    const auto [a, b] = FourCell::kEdgePairs[e];
    int others[2];
    int n = 0;
    for (int v = 0; v < 4; ++v)
      if (v != a && v != b)
        others[n++] = v;
    x.dihedrals[e] =
        dihedral_angle(points[a], points[b], points[others[0]], points[others[1]]);
  }
  return x;
}

CellEnumeration enumerate_four_cells(const Packing &p, double region_radius) {
  if (region_radius > p.gen_radius() - kInteriorMargin + kGeomTol)
    throw BoundaryVertex("region_radius exceeds gen_radius - 6");

  // circumradius < sqrt 2 bounds every edge by 2 sqrt 2
  const double max_edge = 2.0 * kMaxCircumradius;
  const double max_edge2 = max_edge * max_edge;
  CellEnumeration out;

  for (std::size_t a = 0; a < p.size(); ++a) {
    if (norm(p[a]) > region_radius + max_edge + kGeomTol)
      continue;
    std::vector<std::size_t> nbrs;
    for (std::size_t n : p.neighbor_indices(p[a], max_edge))
      if (n > a)
        nbrs.push_back(n);

    for (std::size_t ib = 0; ib < nbrs.size(); ++ib)
      for (std::size_t ic = ib + 1; ic < nbrs.size(); ++ic) {
        const std::size_t b = nbrs[ib], c = nbrs[ic];
        if (norm2(p[b] - p[c]) > max_edge2)
          continue;
        for (std::size_t id = ic + 1; id < nbrs.size(); ++id) {
          const std::size_t d = nbrs[id];
          if (norm2(p[b] - p[d]) > max_edge2 || norm2(p[c] - p[d]) > max_edge2)
            continue;
          const std::array<Point3, 4> pts{p[a], p[b], p[c], p[d]};
          if (!std::any_of(pts.begin(), pts.end(),
                           [&](const Point3 &q) { return in_region(q, region_radius); }))
            continue;
          if (tetra_volume(pts[0], pts[1], pts[2], pts[3]) <= kGeomTol)
            continue;
          Circumsphere cs;
          try {
            cs = circumsphere(pts);
          } catch (const DegenerateInput &) {
            continue;
          }
          if (cs.radius >= kMaxCircumradius - kGeomTol)
            continue;

          bool empty = true;
          bool boundary_hit = false;
          for (std::size_t o : p.neighbor_indices(cs.center, cs.radius + kGeomTol)) {
            if (o == a || o == b || o == c || o == d)
              continue;
            if (distance(p[o], cs.center) < cs.radius - kGeomTol) {
              empty = false;
              break;
            }
            boundary_hit = true;
          }
          if (!empty)
            continue;
          const std::array<std::size_t, 4> ids{a, b, c, d};
          if (boundary_hit)
            out.cospherical.push_back(ids);
          out.cells.push_back(make_four_cell(pts, ids));
        }
      }
  }
  return out;
}

std::array<Edge, 6> edges_of(const FourCell &x) {
  std::array<Edge, 6> out;
  for (std::size_t e = 0; e < FourCell::kEdgePairs.size(); ++e) {
    const auto [a, b] = FourCell::kEdgePairs[e];
    Edge &edge = out[e];
    edge.i = std::min(x.vertices[a], x.vertices[b]);
    edge.j = std::max(x.vertices[a], x.vertices[b]);
    edge.a = a;
    edge.b = b;
    edge.h = distance(x.points[a], x.points[b]) / 2.0;
  }
  return out;
}

CriticalEdges critical_edges(const FourCell &x) {
  const ScoreConstants &k = score_constants();
  CriticalEdges out;
  for (const Edge &e : edges_of(x))
    if (e.h >= k.h_minus - kCriticalTol && e.h <= k.h_plus + kCriticalTol)
      out.edges.push_back(e);
  if (!out.edges.empty())
    out.weight = 1.0 / static_cast<double>(out.edges.size());
  return out;
}

double beta(const Edge &eps, const FourCell &x) {
  const CriticalEdges ec = critical_edges(x);
  if (ec.edges.size() != 2)
    return 0.0;
  const Edge &e0 = ec.edges[0];
  const Edge &e1 = ec.edges[1];
  const bool opposite = e0.a != e1.a && e0.a != e1.b && e0.b != e1.a && e0.b != e1.b;
  if (!opposite)
    return 0.0;
  if (eps.same_endpoints(e0))
    return beta_profile(e0.h) - beta_profile(e1.h);
  if (eps.same_endpoints(e1))
    return beta_profile(e1.h) - beta_profile(e0.h);
  return 0.0;
}

double cell_score(const FourCell &x, const EdgeWeight &f) {
  const ScoreConstants &k = score_constants();
  double dih_sum = 0.0;
  for (const Edge &e : edges_of(x))
    dih_sum += x.dihedral(e.a, e.b) * f(e.h);
  return x.volume - (2.0 * k.m1 / std::numbers::pi) * x.total_solid_angle() +
         (8.0 * k.m2 / std::numbers::pi) * dih_sum;
}

std::vector<ClusterEntry> cluster_report(const std::vector<FourCell> &cells,
                                         const Packing &p, double region_radius) {
  std::map<std::pair<std::size_t, std::size_t>, ClusterEntry> clusters;
  for (const FourCell &x : cells) {
    const CriticalEdges ec = critical_edges(x);
    if (ec.edges.empty())
      continue;
    const double score = cell_score(x);
    for (const Edge &e : ec.edges) {
      if (!in_region(p[e.i], region_radius) || !in_region(p[e.j], region_radius))
        continue;
      ClusterEntry &entry = clusters[{e.i, e.j}];
      entry.edge = e;
      entry.partial_gamma += score * *ec.weight + beta(e, x);
      ++entry.cell_count;
    }
  }
  std::vector<ClusterEntry> out;
  out.reserve(clusters.size());
  for (auto &[key, entry] : clusters)
    out.push_back(entry);
  return out;
}

std::vector<ClusterEntry> cluster_report(const Packing &p, double region_radius) {
  return cluster_report(enumerate_four_cells(p, region_radius).cells, p, region_radius);
}

AngleCheckReport edge_angle_checks(const std::vector<FourCell> &cells, const Packing &p,
                                   double region_radius) {
  std::map<std::pair<std::size_t, std::size_t>, double> edge_sum;
  std::map<std::size_t, double> vertex_sum;
  const auto interior = p.indices_within(region_radius + kGeomTol);
  const double max_edge = 2.0 * std::numbers::sqrt2;
  for (std::size_t i : interior) {
    vertex_sum[i] = 0.0;
    for (std::size_t j : p.neighbor_indices(p[i], max_edge))
      if (j > i && in_region(p[j], region_radius) && distance(p[i], p[j]) < max_edge)
        edge_sum[{i, j}] = 0.0;
  }
  for (const FourCell &x : cells) {
    for (const Edge &e : edges_of(x))
      if (auto it = edge_sum.find({e.i, e.j}); it != edge_sum.end())
        it->second += x.dihedral(e.a, e.b);
    for (int v = 0; v < 4; ++v)
      if (auto it = vertex_sum.find(x.vertices[v]); it != vertex_sum.end())
        it->second += x.solid_angles[v];
  }

  AngleCheckReport rep;
  rep.edges_checked = edge_sum.size();
  rep.vertices_checked = vertex_sum.size();
  for (const auto &[key, s] : edge_sum)
    rep.max_edge_dihedral_sum = std::max(rep.max_edge_dihedral_sum, s);
  for (const auto &[key, s] : vertex_sum)
    rep.max_vertex_solid_sum = std::max(rep.max_vertex_solid_sum, s);
  rep.pass = rep.max_edge_dihedral_sum <= 2.0 * std::numbers::pi + 1e-9 &&
             rep.max_vertex_solid_sum <= 4.0 * std::numbers::pi + 1e-9;
  return rep;
}

AngleCheckReport edge_angle_checks(const Packing &p, double region_radius) {
  return edge_angle_checks(enumerate_four_cells(p, region_radius).cells, p, region_radius);
}

} // namespace packcert
