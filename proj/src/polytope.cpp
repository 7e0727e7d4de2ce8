#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "packcert/geom.hpp"

namespace packcert {

namespace {

// Vertices within this distance of a cutting plane count as lying on it.
constexpr double kOnPlane = 1e-11;

Point3 unit(const Point3 &v) { return v / norm(v); }

} // namespace

ConvexPolytope ConvexPolytope::box(const Point3 &lo, const Point3 &hi) {
  ConvexPolytope p;
  for (int i = 0; i < 8; ++i)
    p.vertices_.push_back({(i & 1) ? hi.x : lo.x, (i & 2) ? hi.y : lo.y,
                           (i & 4) ? hi.z : lo.z});
  // rings are counter-clockwise seen from outside
  p.faces_ = {
      {{0, 4, 6, 2}, {-1, 0, 0}, -lo.x}, {{1, 3, 7, 5}, {1, 0, 0}, hi.x},
      {{0, 1, 5, 4}, {0, -1, 0}, -lo.y}, {{2, 6, 7, 3}, {0, 1, 0}, hi.y},
      {{0, 2, 3, 1}, {0, 0, -1}, -lo.z}, {{4, 5, 7, 6}, {0, 0, 1}, hi.z},
  };
  return p;
}

ConvexPolytope ConvexPolytope::cube(const Point3 &center, double half_width) {
  const Point3 h{half_width, half_width, half_width};
  return box(center - h, center + h);
}

ConvexPolytope ConvexPolytope::clip(const Plane &plane) const {
  if (empty())
    return {};

  const double len = norm(plane.normal);
  const Point3 n = plane.normal / len;
  const double off = plane.offset / len;

  std::vector<double> dist(vertices_.size());
  bool any_out = false;
  bool any_in = false;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    dist[i] = dot(n, vertices_[i]) - off;
    any_out |= dist[i] > kOnPlane;
    any_in |= dist[i] < -kOnPlane;
  }
  if (!any_out)
    return *this;
  if (!any_in)
    return {};

  ConvexPolytope out;
  std::vector<std::size_t> remap(vertices_.size(), SIZE_MAX);
  std::vector<bool> on_cap;
  auto keep = [&](std::size_t i) {
    if (remap[i] == SIZE_MAX) {
      remap[i] = out.vertices_.size();
      out.vertices_.push_back(vertices_[i]);
      on_cap.push_back(std::abs(dist[i]) <= kOnPlane);
    }
    return remap[i];
  };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cut_vertex;
  auto cut = [&](std::size_t i, std::size_t j) {
    const auto key = std::minmax(i, j);
    auto it = cut_vertex.find(key);
    if (it != cut_vertex.end())
      return it->second;
    // interpolate from the lower index so both faces sharing the edge agree
    const auto [a, b] = key;
    const double t = dist[a] / (dist[a] - dist[b]);
    out.vertices_.push_back(vertices_[a] + t * (vertices_[b] - vertices_[a]));
    on_cap.push_back(true);
    cut_vertex.emplace(key, out.vertices_.size() - 1);
    return out.vertices_.size() - 1;
  };

  for (const Face &face : faces_) {
    Face clipped{{}, face.normal, face.offset};
    const std::size_t m = face.ring.size();
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = face.ring[k];
      const std::size_t j = face.ring[(k + 1) % m];
      if (dist[i] <= kOnPlane)
        clipped.ring.push_back(keep(i));
      if ((dist[i] < -kOnPlane && dist[j] > kOnPlane) ||
          (dist[i] > kOnPlane && dist[j] < -kOnPlane))
        clipped.ring.push_back(cut(i, j));
    }
    if (clipped.ring.size() >= 3)
      out.faces_.push_back(std::move(clipped));
  }

  // cap face from every surviving vertex on the plane, ordered by angle
  std::vector<std::size_t> cap;
  for (std::size_t i = 0; i < out.vertices_.size(); ++i)
    if (on_cap[i])
      cap.push_back(i);
  if (cap.size() >= 3) {
    Point3 mid;
    for (std::size_t i : cap)
      mid += out.vertices_[i];
    mid = mid / static_cast<double>(cap.size());
    const Point3 ref = std::abs(n.x) < 0.9 ? Point3{1, 0, 0} : Point3{0, 1, 0};
    const Point3 e1 = unit(cross(n, ref));
    const Point3 e2 = cross(n, e1);
    std::vector<double> angle(out.vertices_.size());
    for (std::size_t i : cap) {
      const Point3 d = out.vertices_[i] - mid;
      angle[i] = std::atan2(dot(d, e2), dot(d, e1));
    }
    std::sort(cap.begin(), cap.end(),
              [&](std::size_t a, std::size_t b) { return angle[a] < angle[b]; });
    out.faces_.push_back({std::move(cap), n, off});
  }

  // drop vertices no face references any more
  std::vector<std::size_t> used(out.vertices_.size(), SIZE_MAX);
  std::vector<Point3> compact;
  for (Face &face : out.faces_)
    for (std::size_t &i : face.ring) {
      if (used[i] == SIZE_MAX) {
        used[i] = compact.size();
        compact.push_back(out.vertices_[i]);
      }
      i = used[i];
    }
  out.vertices_ = std::move(compact);
  if (out.faces_.size() < 4)
    return {};
  return out;
}

Point3 ConvexPolytope::centroid() const {
  Point3 c;
  for (const Point3 &v : vertices_)
    c += v;
  return vertices_.empty() ? c : c / static_cast<double>(vertices_.size());
}

double ConvexPolytope::volume() const {
  if (empty())
    return 0.0;
  const Point3 c = centroid();
  double vol = 0.0;
  for (const Face &face : faces_) {
    const Point3 &a = vertices_[face.ring[0]];
    for (std::size_t k = 1; k + 1 < face.ring.size(); ++k)
      vol += tetra_volume(c, a, vertices_[face.ring[k]],
                          vertices_[face.ring[k + 1]]);
  }
  return vol;
}

bool ConvexPolytope::contains(const Point3 &p, double tol) const {
  if (empty())
    return false;
  return std::all_of(faces_.begin(), faces_.end(), [&](const Face &f) {
    return dot(f.normal, p) - f.offset <= tol;
  });
}

ConvexPolytope bisector_cell(const Point3 &owner, std::span<const Point3> others,
                             double half_width) {
  // nearest first: far bisectors then rarely cut and clip() returns early
  std::vector<Point3> sorted(others.begin(), others.end());
  std::sort(sorted.begin(), sorted.end(), [&](const Point3 &a, const Point3 &b) {
    return norm2(a - owner) < norm2(b - owner);
  });
  ConvexPolytope cell = ConvexPolytope::cube(owner, half_width);
  for (const Point3 &w : sorted) {
    const Point3 d = w - owner;
    if (norm2(d) == 0.0)
      continue;
    cell = cell.clip({d, dot(d, 0.5 * (owner + w))});
  }
  return cell;
}

} // namespace packcert
