#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace packcert {

/// Point or vector in R^3. Lengths are in units of the packed sphere radius.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Point3 &operator+=(const Point3 &o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Point3 &operator-=(const Point3 &o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Point3 &operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Point3 &, const Point3 &) = default;
};

constexpr Point3 operator+(Point3 a, const Point3 &b) { return a += b; }
constexpr Point3 operator-(Point3 a, const Point3 &b) { return a -= b; }
constexpr Point3 operator-(const Point3 &a) { return {-a.x, -a.y, -a.z}; }
constexpr Point3 operator*(Point3 a, double s) { return a *= s; }
constexpr Point3 operator*(double s, Point3 a) { return a *= s; }
constexpr Point3 operator/(Point3 a, double s) { return a *= 1.0 / s; }

constexpr double dot(const Point3 &a, const Point3 &b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
constexpr Point3 cross(const Point3 &a, const Point3 &b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
constexpr double norm2(const Point3 &a) { return dot(a, a); }
inline double norm(const Point3 &a) { return std::sqrt(norm2(a)); }
inline double distance(const Point3 &a, const Point3 &b) { return norm(a - b); }
constexpr double triple(const Point3 &a, const Point3 &b, const Point3 &c) {
  return dot(a, cross(b, c));
}

/// Global degeneracy tolerance, in units of the sphere radius.
inline constexpr double kGeomTol = 1e-9;

struct Circumsphere {
  Point3 center;
  double radius = 0.0;
};

/// Smallest sphere through 2-4 affinely independent points whose center lies
/// in their affine hull. Throws DegenerateInput for dependent input; the test
/// is scale-free (sine of the spanned angle, or normalized triple product,
/// below kGeomTol).
Circumsphere circumsphere(std::span<const Point3> points);

/// Solid angle at `apex` of the simplicial cone spanned by a, b, c, using the
/// half-angle arctangent (Van Oosterom-Strackee) form. Result lies in (0, 2pi).
double solid_angle_cone(const Point3 &apex, const Point3 &a, const Point3 &b,
                        const Point3 &c);

/// Angle in [0, pi] between the half-planes bounded by the line v0v1 that
/// contain v2 and v3. With w_i = v_i - v0 it is the angle between
///   (w1.w1) w2 - (w1.w2) w1   and   (w1.w1) w3 - (w1.w3) w1.
double dihedral_angle(const Point3 &v0, const Point3 &v1, const Point3 &v2,
                      const Point3 &v3);

double tetra_volume(const Point3 &a, const Point3 &b, const Point3 &c,
                    const Point3 &d);

/// Volume of B(c1, r1) intersected with B(c2, r2).
double ball_lens_volume(const Point3 &c1, double r1, const Point3 &c2,
                        double r2);

double ball_volume(double r);

/// Half-space { x : normal . x <= offset }. The normal need not be unit.
struct Plane {
  Point3 normal;
  double offset = 0.0;

  double signed_distance(const Point3 &p) const {
    return (dot(normal, p) - offset) / norm(normal);
  }
};

/// Bounded convex polytope stored as a vertex list plus faces. Each face is a
/// ring of vertex indices ordered counter-clockwise seen from outside, and
/// carries its supporting plane with an outward unit normal.
class ConvexPolytope {
public:
  struct Face {
    std::vector<std::size_t> ring;
    Point3 normal;
    double offset = 0.0;
  };

  ConvexPolytope() = default;

  static ConvexPolytope box(const Point3 &lo, const Point3 &hi);
  static ConvexPolytope cube(const Point3 &center, double half_width);

  bool empty() const { return faces_.empty(); }
  const std::vector<Point3> &vertices() const { return vertices_; }
  const std::vector<Face> &faces() const { return faces_; }

  /// Intersection with the half-space. Faces are re-derived from the clipped
  /// rings; the new cap face takes the plane's normal.
  ConvexPolytope clip(const Plane &plane) const;

  /// Volume by fan decomposition from the vertex centroid.
  double volume() const;

  Point3 centroid() const;
  bool contains(const Point3 &p, double tol = kGeomTol) const;

private:
  std::vector<Point3> vertices_;
  std::vector<Face> faces_;
};

/// Voronoi-style cell of `owner`: the cube of the given half-width around it,
/// clipped by the bisector half-space of every point in `others` (points equal
/// to the owner are skipped).
ConvexPolytope bisector_cell(const Point3 &owner, std::span<const Point3> others,
                             double half_width);

inline ConvexPolytope clip_halfspace(const ConvexPolytope &p,
                                     const Plane &plane) {
  return p.clip(plane);
}
inline double polytope_volume(const ConvexPolytope &p) { return p.volume(); }

} // namespace packcert
