#include "packcert/geom.hpp"

#include <algorithm>
#include <numbers>

#include "packcert/errors.hpp"

namespace packcert {

Circumsphere circumsphere(std::span<const Point3> points) {
  if (points.size() < 2 || points.size() > 4)
    throw DegenerateInput("circumsphere needs 2 to 4 points");

  const Point3 &p0 = points[0];
  const Point3 a = points[1] - p0;

  if (points.size() == 2) {
    if (norm(a) <= kGeomTol)
      throw DegenerateInput("circumsphere: coincident points");
    return {p0 + 0.5 * a, 0.5 * norm(a)};
  }

  const Point3 b = points[2] - p0;
  const Point3 axb = cross(a, b);
  const double axb2 = norm2(axb);

  if (points.size() == 3) {
    if (std::sqrt(axb2) <= kGeomTol * norm(a) * norm(b))
      throw DegenerateInput("circumsphere: collinear points");
    const Point3 offset = cross(norm2(a) * b - norm2(b) * a, axb) / (2.0 * axb2);
    return {p0 + offset, norm(offset)};
  }

  const Point3 c = points[3] - p0;
  const double det = dot(a, cross(b, c));
  if (std::abs(det) <= kGeomTol * norm(a) * norm(b) * norm(c))
    throw DegenerateInput("circumsphere: coplanar points");
  const Point3 offset =
      (norm2(a) * cross(b, c) + norm2(b) * cross(c, a) + norm2(c) * axb) /
      (2.0 * det);
  return {p0 + offset, norm(offset)};
}

double solid_angle_cone(const Point3 &apex, const Point3 &a, const Point3 &b,
                        const Point3 &c) {
  const Point3 u = a - apex;
  const Point3 v = b - apex;
  const Point3 w = c - apex;
  const double lu = norm(u);
  const double lv = norm(v);
  const double lw = norm(w);
  if (lu == 0.0 || lv == 0.0 || lw == 0.0)
    throw DegenerateInput("solid_angle_cone: zero direction");

  const double t = triple(u, v, w);
  if (std::abs(t) / (lu * lv * lw) <= 1e-12)
    throw DegenerateInput("solid_angle_cone: dependent directions");

  const double denom =
      lu * lv * lw + dot(u, v) * lw + dot(u, w) * lv + dot(v, w) * lu;
  return 2.0 * std::atan2(std::abs(t), denom);
}

double dihedral_angle(const Point3 &v0, const Point3 &v1, const Point3 &v2,
                      const Point3 &v3) {
  const Point3 w1 = v1 - v0;
  const Point3 w2 = v2 - v0;
  const Point3 w3 = v3 - v0;
  const double l11 = norm2(w1);
  if (l11 == 0.0)
    throw DegenerateInput("dihedral_angle: v0 == v1");

  const Point3 p2 = l11 * w2 - dot(w1, w2) * w1;
  const Point3 p3 = l11 * w3 - dot(w1, w3) * w1;
  // |p_i| = |w1|^2 * dist(v_i, line v0v1)
  if (norm(p2) <= 1e-12 * l11 * std::max(1.0, norm(w2)) ||
      norm(p3) <= 1e-12 * l11 * std::max(1.0, norm(w3)))
    throw DegenerateInput("dihedral_angle: point on the edge line");

  return std::atan2(norm(cross(p2, p3)), dot(p2, p3));
}

double tetra_volume(const Point3 &a, const Point3 &b, const Point3 &c,
                    const Point3 &d) {
  return std::abs(triple(b - a, c - a, d - a)) / 6.0;
}

double ball_volume(double r) { return 4.0 / 3.0 * std::numbers::pi * r * r * r; }

double ball_lens_volume(const Point3 &c1, double r1, const Point3 &c2,
                        double r2) {
  const double d = distance(c1, c2);
  if (d >= r1 + r2)
    return 0.0;
  if (d <= std::abs(r1 - r2))
    return ball_volume(std::min(r1, r2));
  // two spherical caps meeting on the radical plane
  const double s = r1 + r2 - d;
  const double diff = r1 - r2;
  return std::numbers::pi * s * s * (d * d + 2.0 * d * (r1 + r2) - 3.0 * diff * diff) /
         (12.0 * d);
}

} // namespace packcert
