#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "packcert/cells.hpp"
#include "packcert/errors.hpp"
#include "packcert/voronoi.hpp"
#include "support.hpp"

using namespace packcert;

namespace {

// alternate cube corners scaled to edge 2
const double kS = 1.0 / std::numbers::sqrt2;
const std::array<Point3, 4> kRegular = {
    Point3{1, 1, 1} * kS, Point3{1, -1, -1} * kS, Point3{-1, 1, -1} * kS,
    Point3{-1, -1, 1} * kS};

// circumradius < sqrt 2, empty open circumball; the definition, checked naively
std::set<std::array<std::size_t, 4>> brute_cells(const Packing &p, const Point3 &around,
                                                 double reach) {
  std::vector<std::size_t> near;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (distance(p[i], around) <= reach)
      near.push_back(i);
  std::set<std::array<std::size_t, 4>> out;
  for (std::size_t a = 0; a < near.size(); ++a)
    for (std::size_t b = a + 1; b < near.size(); ++b)
      for (std::size_t c = b + 1; c < near.size(); ++c)
        for (std::size_t d = c + 1; d < near.size(); ++d) {
          const std::array<std::size_t, 4> ids{near[a], near[b], near[c], near[d]};
          const std::array<Point3, 4> pts{p[ids[0]], p[ids[1]], p[ids[2]], p[ids[3]]};
          if (tetra_volume(pts[0], pts[1], pts[2], pts[3]) <= 1e-9)
            continue;
          const Circumsphere cs = circumsphere(pts);
          if (cs.radius >= std::numbers::sqrt2 - 1e-9)
            continue;
          bool empty = true;
          for (std::size_t o = 0; o < p.size() && empty; ++o)
            if (std::find(ids.begin(), ids.end(), o) == ids.end() &&
                distance(p[o], cs.center) < cs.radius - 1e-9)
              empty = false;
          if (empty)
            out.insert(ids);
        }
  return out;
}

bool strictly_inside(const FourCell &x, const Point3 &q) {
  for (int v = 0; v < 4; ++v) {
    const Point3 &a = x.points[(v + 1) % 4], &b = x.points[(v + 2) % 4],
                 &c = x.points[(v + 3) % 4];
    const double s_v = triple(b - a, c - a, x.points[v] - a);
    const double s_q = triple(b - a, c - a, q - a);
    if (s_q / s_v <= 1e-9)
      return false;
  }
  return true;
}

} // namespace

TEST_CASE("regular tetrahedron") {
  const FourCell x = make_four_cell(kRegular);
  const double sol0 = 3.0 * std::acos(1.0 / 3.0) - std::numbers::pi;
  for (double s : x.solid_angles)
    CHECK(s == doctest::Approx(sol0).epsilon(1e-13));
  for (double d : x.dihedrals)
    CHECK(d == doctest::Approx(std::acos(1.0 / 3.0)).epsilon(1e-13));
  CHECK(x.diameter() == doctest::Approx(2.0));
  CHECK(x.dihedral(2, 0) == x.dihedrals[1]);
  CHECK(std::abs(cell_score(x)) < 1e-9);
  for (const Edge &e : edges_of(x))
    CHECK(e.h == doctest::Approx(1.0));
  CHECK(critical_edges(x).edges.empty());
  CHECK_FALSE(critical_edges(x).weight.has_value());
}

TEST_CASE("flat quadruple is rejected") {
  CHECK_THROWS_AS(make_four_cell({Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0},
                                  Point3{1, 1, 0}}),
                  DegenerateInput);
}

TEST_CASE("beta on a cell with two opposite critical edges") {
  // AB and CD opposite with h = 1.25 and 1.30; the other edges have h ~ 0.95
  const FourCell x = make_four_cell({Point3{-1.25, 0, -0.3}, Point3{1.25, 0, -0.3},
                                     Point3{0, -1.3, 0.3}, Point3{0, 1.3, 0.3}});
  const CriticalEdges ec = critical_edges(x);
  REQUIRE(ec.edges.size() == 2);
  CHECK(*ec.weight * 2.0 == 1.0);
  const double b0 = beta(ec.edges[0], x);
  const double b1 = beta(ec.edges[1], x);
  CHECK(b0 == doctest::Approx(beta_profile(1.25) - beta_profile(1.30)));
  CHECK(b0 + b1 == doctest::Approx(0.0));
  CHECK(beta(edges_of(x)[1], x) == 0.0);

  // adjacent critical edges give zero
  const FourCell y = make_four_cell({Point3{0, 0, 0}, Point3{2.5, 0, 0}, Point3{0, 2.56, 0},
                                     Point3{0.4, 0.4, 1.6}});
  for (const Edge &e : critical_edges(y).edges)
    CHECK(beta(e, y) == 0.0);
}

TEST_CASE("FCC: every interior vertex lies in exactly 8 four-cells") {
  const Packing p = generate_fcc(10);
  const CellEnumeration en = enumerate_four_cells(p, 4);
  std::map<std::size_t, int> per_vertex;
  for (const FourCell &x : en.cells) {
    CHECK(x.circumsphere.radius == doctest::Approx(std::sqrt(1.5)));
    for (std::size_t v : x.vertices)
      ++per_vertex[v];
  }
  for (std::size_t v : p.indices_within(2))
    CHECK(per_vertex[v] == 8);

  const std::size_t o = p.indices_within(0.1).at(0);
  std::set<std::array<std::size_t, 4>> mine;
  for (const FourCell &x : en.cells)
    if (std::find(x.vertices.begin(), x.vertices.end(), o) != x.vertices.end())
      mine.insert(x.vertices);
  std::set<std::array<std::size_t, 4>> brute;
  for (const auto &ids : brute_cells(p, p[o], 2.0 * std::numbers::sqrt2))
    if (std::find(ids.begin(), ids.end(), o) != ids.end())
      brute.insert(ids);
  CHECK(mine == brute);
  CHECK(edge_angle_checks(en.cells, p, 4).pass);
}

TEST_CASE("enumeration matches the definition on a random packing") {
  const Packing p = generate_random_saturated(10, 5);
  const CellEnumeration en = enumerate_four_cells(p, 2);
  std::set<std::array<std::size_t, 4>> found;
  for (const FourCell &x : en.cells) {
    found.insert(x.vertices);
    CHECK(std::is_sorted(x.vertices.begin(), x.vertices.end()));
  }
  // cells touching centers near the origin
  const auto center = p.indices_within(2);
  std::set<std::array<std::size_t, 4>> brute;
  for (const auto &ids : brute_cells(p, {0, 0, 0}, 2.0 + 2.0 * std::numbers::sqrt2 + 0.1))
    if (std::any_of(ids.begin(), ids.end(), [&](std::size_t i) {
          return std::find(center.begin(), center.end(), i) != center.end();
        }))
      brute.insert(ids);
  CHECK(found == brute);
  CHECK_THROWS_AS(enumerate_four_cells(p, 5), BoundaryVertex);
}

TEST_CASE("four-cells have disjoint interiors") {
  // jittered, slightly expanded FCC: generic and full of 4-cells
  std::mt19937_64 rng(2);
  std::vector<Point3> centers;
  const Packing base = generate_fcc(6.3);
  for (const Point3 &c : base.centers())
    centers.push_back(c * 1.05 + support::random_point(rng, 0.02));
  // a generous gen_radius lets the whole finite set count as interior;
  // empty-circumball cells of a finite set are disjoint all the same
  const Packing p(centers, 10, PackingKind::random);
  REQUIRE(p.size() <= 200);
  const CellEnumeration en = enumerate_four_cells(p, 4);
  REQUIRE(en.cells.size() > 100);
  std::gamma_distribution<double> expo(1.0, 1.0);
  for (std::size_t i = 0; i < en.cells.size(); ++i) {
    const FourCell &x = en.cells[i];
    for (int s = 0; s < 1000; ++s) {
      double w[4], sum = 0;
      for (double &wi : w)
        sum += (wi = expo(rng));
      Point3 q;
      for (int v = 0; v < 4; ++v)
        q += x.points[v] * (w[v] / sum);
      for (std::size_t j = 0; j < en.cells.size(); ++j)
        if (j != i && distance(en.cells[j].circumsphere.center, x.circumsphere.center) <
                          en.cells[j].circumsphere.radius + x.circumsphere.radius)
          REQUIRE_FALSE(strictly_inside(en.cells[j], q));
    }
  }
}

TEST_CASE("critical weights sum to one and clusters carry the partial label") {
  bool seen = false;
  for (std::uint64_t seed : {1, 2, 3, 4}) {
    const Packing p = generate_random_saturated(14, seed);
    const CellEnumeration en = enumerate_four_cells(p, 8);
    for (const FourCell &x : en.cells) {
      const CriticalEdges ec = critical_edges(x);
      if (ec.edges.empty())
        continue;
      seen = true;
      double total = 0.0;
      for (std::size_t k = 0; k < ec.edges.size(); ++k)
        total += *ec.weight;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
    }
    const AngleCheckReport angles = edge_angle_checks(en.cells, p, 8);
    CHECK(angles.pass);
    CHECK(angles.vertices_checked == p.indices_within(8).size());
    for (const ClusterEntry &c : cluster_report(en.cells, p, 8)) {
      CHECK(c.cell_count > 0);
      CHECK(c.edge.h >= score_constants().h_minus - 1e-12);
      CHECK(c.edge.h <= score_constants().h_plus + 1e-12);
    }
  }
  CHECK(seen);
  CHECK(kPartialClusterLabel == "partial (k<=3 cells omitted)");
}
