#include "packcert/packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "packcert/errors.hpp"

namespace packcert {

namespace {

constexpr double kCellSize = 2.0;
constexpr int kRsaMaxRejections = 5000;
constexpr double kRepairStep = 0.25;

// Growable grid used while a random packing is still being built.
class DynamicGrid {
public:
  explicit DynamicGrid(double extent)
      : origin_(-extent), dim_(static_cast<int>(std::ceil(2.0 * extent / kCellSize)) + 1),
        cells_(static_cast<std::size_t>(dim_) * dim_ * dim_) {}

  void insert(const Point3 &p) {
    cells_[flat(coord(p.x), coord(p.y), coord(p.z))].push_back(
        static_cast<std::uint32_t>(points_.size()));
    points_.push_back(p);
  }

  /// True when no stored point is closer than `radius` to q.
  bool clear_of(const Point3 &q, double radius) const {
    const double r2 = radius * radius;
    for (int i = coord(q.x - radius); i <= coord(q.x + radius); ++i)
      for (int j = coord(q.y - radius); j <= coord(q.y + radius); ++j)
        for (int k = coord(q.z - radius); k <= coord(q.z + radius); ++k)
          for (std::uint32_t idx : cells_[flat(i, j, k)])
            if (norm2(points_[idx] - q) < r2)
              return false;
    return true;
  }

  std::vector<Point3> within(const Point3 &q, double radius) const {
    std::vector<Point3> out;
    const double r2 = radius * radius;
    for (int i = coord(q.x - radius); i <= coord(q.x + radius); ++i)
      for (int j = coord(q.y - radius); j <= coord(q.y + radius); ++j)
        for (int k = coord(q.z - radius); k <= coord(q.z + radius); ++k)
          for (std::uint32_t idx : cells_[flat(i, j, k)])
            if (norm2(points_[idx] - q) <= r2)
              out.push_back(points_[idx]);
    return out;
  }

  const std::vector<Point3> &points() const { return points_; }

private:
  int coord(double v) const {
    const int c = static_cast<int>(std::floor((v - origin_) / kCellSize));
    return std::clamp(c, 0, dim_ - 1);
  }
  std::size_t flat(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }

  double origin_;
  int dim_;
  std::vector<std::vector<std::uint32_t>> cells_;
  std::vector<Point3> points_;
};

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_uniform(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Probe points step*Z^3 inside the closed ball B(0, radius), x-major order.
template <class Fn> void for_each_probe(double radius, double step, Fn &&fn) {
  const int n = static_cast<int>(std::floor(radius / step));
  const double r2 = radius * radius;
  for (int i = -n; i <= n; ++i)
    for (int j = -n; j <= n; ++j)
      for (int k = -n; k <= n; ++k) {
        const Point3 q{i * step, j * step, k * step};
        if (norm2(q) <= r2)
          fn(q);
      }
}

void check_generator_radius(double radius) {
  if (!(radius >= 4.0))
    throw ValidationError("generator radius must be >= 4");
}

} // namespace

// --- GridIndex --------------------------------------------------------------

GridIndex::GridIndex(std::span<const Point3> points, double extent, double cell_size)
    : points_(points), origin_(-extent), cell_(cell_size),
      dim_(static_cast<int>(std::ceil(2.0 * extent / cell_size)) + 1) {
  const std::size_t ncells = static_cast<std::size_t>(dim_) * dim_ * dim_;
  std::vector<std::size_t> cell_of(points.size());
  start_.assign(ncells + 1, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point3 &p = points[i];
    cell_of[i] = flat(cell_coord(p.x), cell_coord(p.y), cell_coord(p.z));
    ++start_[cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < ncells; ++c)
    start_[c + 1] += start_[c];
  items_.resize(points.size());
  std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t i = 0; i < points.size(); ++i)
    items_[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
}

int GridIndex::cell_coord(double v) const {
  const double c = std::floor((v - origin_) / cell_);
  return static_cast<int>(std::clamp(c, 0.0, static_cast<double>(dim_ - 1)));
}

std::optional<std::size_t> GridIndex::nearest(const Point3 &q) const {
  if (points_.empty())
    return std::nullopt;
  // Cells in shell s around q's (clamped) cell are at least (s-1)*cell_ away
  // once q lies inside the grid; outside it we fall back to a full scan.
  const double hi = origin_ + dim_ * cell_;
  const bool inside = q.x >= origin_ && q.x < hi && q.y >= origin_ && q.y < hi &&
                      q.z >= origin_ && q.z < hi;
  std::size_t best = 0;
  double best2 = std::numeric_limits<double>::infinity();
  if (!inside) {
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (const double d2 = norm2(points_[i] - q); d2 < best2) {
        best2 = d2;
        best = i;
      }
    return best;
  }
  const int ci = cell_coord(q.x), cj = cell_coord(q.y), ck = cell_coord(q.z);
  for (int s = 0; s <= dim_; ++s) {
    for (int i = ci - s; i <= ci + s; ++i)
      for (int j = cj - s; j <= cj + s; ++j)
        for (int k = ck - s; k <= ck + s; ++k) {
          if (std::max({std::abs(i - ci), std::abs(j - cj), std::abs(k - ck)}) != s)
            continue;
          if (i < 0 || j < 0 || k < 0 || i >= dim_ || j >= dim_ || k >= dim_)
            continue;
          const std::size_t c = flat(i, j, k);
          for (std::uint32_t n = start_[c]; n < start_[c + 1]; ++n) {
            const double d2 = norm2(points_[items_[n]] - q);
            if (d2 < best2 || (d2 == best2 && items_[n] < best)) {
              best2 = d2;
              best = items_[n];
            }
          }
        }
    if (std::sqrt(best2) <= s * cell_)
      break;
  }
  return best;
}

// --- Packing ----------------------------------------------------------------

std::string_view to_string(PackingKind kind) {
  switch (kind) {
  case PackingKind::fcc:
    return "fcc";
  case PackingKind::cubic:
    return "cubic";
  case PackingKind::random:
    return "random";
  }
  return "?";
}

PackingKind packing_kind_from_string(std::string_view s) {
  if (s == "fcc")
    return PackingKind::fcc;
  if (s == "cubic")
    return PackingKind::cubic;
  if (s == "random")
    return PackingKind::random;
  throw SchemaError("unknown packing kind '" + std::string(s) + "'");
}

Packing::Packing(std::vector<Point3> centers, double gen_radius, PackingKind kind,
                 std::optional<std::uint64_t> seed)
    : centers_(std::move(centers)), gen_radius_(gen_radius), kind_(kind), seed_(seed) {
  if (!std::isfinite(gen_radius_) || gen_radius_ <= 0.0)
    throw ValidationError("gen_radius must be positive and finite");
  for (const Point3 &c : centers_) {
    if (!std::isfinite(c.x) || !std::isfinite(c.y) || !std::isfinite(c.z))
      throw ValidationError("non-finite center coordinate");
    if (norm(c) > gen_radius_ + kGeomTol)
      throw ValidationError("center outside gen_radius");
  }
  index_ = GridIndex(centers_, gen_radius_ + kGeomTol, kCellSize);
  const double min2 = (2.0 - kGeomTol) * (2.0 - kGeomTol);
  for (std::size_t i = 0; i < centers_.size(); ++i)
    index_.for_each_within(centers_[i], 2.0, [&](std::size_t j) {
      if (j != i && norm2(centers_[j] - centers_[i]) < min2)
        throw ValidationError("centers closer than 2 (overlapping spheres)");
    });
}

Packing::Packing(const Packing &other)
    : centers_(other.centers_), gen_radius_(other.gen_radius_), kind_(other.kind_),
      seed_(other.seed_), index_(centers_, gen_radius_ + kGeomTol, kCellSize) {}

Packing &Packing::operator=(const Packing &other) {
  if (this != &other) {
    Packing copy(other);
    *this = std::move(copy);
  }
  return *this;
}

std::vector<std::size_t> Packing::neighbor_indices(const Point3 &v, double cutoff) const {
  std::vector<std::size_t> out;
  index_.for_each_within(v, cutoff, [&](std::size_t i) {
    if (centers_[i] != v)
      out.push_back(i);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point3> Packing::neighbors(const Point3 &v, double cutoff) const {
  if (cutoff > 8.0)
    throw ValidationError("neighbor cutoff must be <= 8");
  std::vector<Point3> out;
  for (std::size_t i : neighbor_indices(v, cutoff))
    out.push_back(centers_[i]);
  return out;
}

std::vector<std::size_t> Packing::indices_within(double radius) const {
  std::vector<std::size_t> out;
  index_.for_each_within({0, 0, 0}, radius + kGeomTol, [&](std::size_t i) { out.push_back(i); });
  std::sort(out.begin(), out.end());
  return out;
}

double Packing::nearest_distance(const Point3 &q) const {
  const auto i = index_.nearest(q);
  return i ? distance(centers_[*i], q) : std::numeric_limits<double>::infinity();
}

// --- generators ---------------------------------------------------------------

Packing generate_fcc(double radius) {
  check_generator_radius(radius);
  const double s = std::sqrt(2.0);
  const int n = static_cast<int>(std::floor(radius / s));
  const double r2 = radius * radius;
  std::vector<Point3> pts;
  for (int i = -n; i <= n; ++i)
    for (int j = -n; j <= n; ++j)
      for (int k = -n; k <= n; ++k) {
        if ((i + j + k) % 2 != 0)
          continue;
        // exact integer test; s * s rounds above 2
        if (2.0 * (i * i + j * j + k * k) <= r2)
          pts.push_back({s * i, s * j, s * k});
      }
  return Packing(std::move(pts), radius, PackingKind::fcc);
}

Packing generate_cubic(double radius) {
  check_generator_radius(radius);
  const int n = static_cast<int>(std::floor(radius / 2.0));
  const double r2 = radius * radius;
  std::vector<Point3> pts;
  for (int i = -n; i <= n; ++i)
    for (int j = -n; j <= n; ++j)
      for (int k = -n; k <= n; ++k) {
        const Point3 p{2.0 * i, 2.0 * j, 2.0 * k};
        if (norm2(p) <= r2)
          pts.push_back(p);
      }
  return Packing(std::move(pts), radius, PackingKind::cubic);
}

Packing generate_random_saturated(double radius, std::uint64_t seed,
                                  RandomPackingStats *stats) {
  check_generator_radius(radius);
  RandomPackingStats local;
  DynamicGrid grid(radius);
  std::mt19937_64 rng(seed);

  // random sequential adsorption
  for (int rejections = 0; rejections < kRsaMaxRejections;) {
    Point3 q;
    do {
      q = {(2.0 * unit_uniform(rng) - 1.0) * radius,
           (2.0 * unit_uniform(rng) - 1.0) * radius,
           (2.0 * unit_uniform(rng) - 1.0) * radius};
    } while (norm2(q) > radius * radius);
    if (grid.clear_of(q, 2.0)) {
      grid.insert(q);
      ++local.rsa_accepted;
      rejections = 0;
    } else {
      ++rejections;
    }
  }

  // probe-grid repair sweep
  const double inner = radius - 1.0;
  for (bool inserted = true; inserted;) {
    inserted = false;
    for_each_probe(inner, kRepairStep, [&](const Point3 &q) {
      if (grid.clear_of(q, 2.0)) {
        grid.insert(q);
        ++local.sweep_inserted;
        inserted = true;
      }
    });
  }

  // Holes narrower than the probe step survive the sweep. Any point of a
  // cell (clipped by all neighbors within 8) at distance d in (2, 4] from its
  // owner is >= d from every center, so it can take a new sphere.
  constexpr double kHalfWidth = 4.0;
  for (bool inserted = true; inserted;) {
    inserted = false;
    const std::size_t count = grid.points().size();
    for (std::size_t i = 0; i < count; ++i) {
      const Point3 v = grid.points()[i];
      const std::vector<Point3> near = grid.within(v, 2.0 * kHalfWidth);
      const ConvexPolytope cell = bisector_cell(v, near, kHalfWidth);
      std::vector<Point3> verts = cell.vertices();
      std::sort(verts.begin(), verts.end(), [&](const Point3 &a, const Point3 &b) {
        return norm2(a - v) > norm2(b - v);
      });
      for (const Point3 &x : verts) {
        const double d = distance(x, v);
        if (d <= 2.0 + kGeomTol)
          break;
        const Point3 y = d <= kHalfWidth ? x : v + (x - v) * (kHalfWidth / d);
        if (norm(y) <= inner && grid.clear_of(y, 2.0)) {
          grid.insert(y);
          ++local.hole_inserted;
          inserted = true;
          break;
        }
      }
    }
  }

  if (stats)
    *stats = local;
  return Packing(grid.points(), radius, PackingKind::random, seed);
}

SaturationCertificate is_saturated(const Packing &p, double region_radius,
                                   double grid_step) {
  if (region_radius + 1.0 > p.gen_radius() + kGeomTol)
    throw ContainerExceedsGeneration("saturation region + 1 exceeds gen_radius");
  if (!(grid_step > 0.0))
    throw ValidationError("grid_step must be positive");
  SaturationCertificate cert{grid_step, 0.0, region_radius, {}, 0};
  for_each_probe(region_radius, grid_step, [&](const Point3 &q) {
    ++cert.probes;
    const double d = p.nearest_distance(q);
    if (d > cert.worst_gap) {
      cert.worst_gap = d;
      cert.worst_probe = q;
    }
  });
  return cert;
}

double density(const Packing &p, double r) {
  if (!(r >= 1.0) || r + 1.0 > p.gen_radius() + kGeomTol)
    throw ContainerExceedsGeneration("density needs 1 <= r and r + 1 <= gen_radius");
  const Point3 origin{};
  double covered = 0.0;
  for (std::size_t i : p.indices_within(r + 1.0))
    covered += ball_lens_volume(p[i], 1.0, origin, r);
  return covered / ball_volume(r);
}

} // namespace packcert
