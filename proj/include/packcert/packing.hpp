#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "packcert/geom.hpp"

namespace packcert {

/// Uniform grid over a cube [-extent, extent]^3 with CSR-packed cell lists.
class GridIndex {
public:
  GridIndex() = default;
  GridIndex(std::span<const Point3> points, double extent, double cell_size);

  /// Calls fn(index) for every point p with |p - q| <= radius.
  template <class Fn> void for_each_within(const Point3 &q, double radius, Fn &&fn) const;

  /// Index of the nearest point, or nullopt for an empty index.
  std::optional<std::size_t> nearest(const Point3 &q) const;

private:
  int cell_coord(double v) const;
  std::size_t flat(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }

  std::span<const Point3> points_;
  double origin_ = 0.0;
  double cell_ = 1.0;
  int dim_ = 0;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> items_;
};

enum class PackingKind { fcc, cubic, random };

std::string_view to_string(PackingKind kind);
PackingKind packing_kind_from_string(std::string_view s);

/// Immutable set of unit-sphere centers generated inside B(0, gen_radius).
class Packing {
public:
  /// Validates: every center within gen_radius and pairwise distances >= 2
  /// (both with tolerance kGeomTol). Throws ValidationError.
  Packing(std::vector<Point3> centers, double gen_radius, PackingKind kind,
          std::optional<std::uint64_t> seed = std::nullopt);

  Packing(const Packing &other);
  Packing &operator=(const Packing &other);
  Packing(Packing &&) noexcept = default;
  Packing &operator=(Packing &&) noexcept = default;

  const std::vector<Point3> &centers() const { return centers_; }
  std::size_t size() const { return centers_.size(); }
  const Point3 &operator[](std::size_t i) const { return centers_[i]; }
  double gen_radius() const { return gen_radius_; }
  PackingKind kind() const { return kind_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  /// Indices of centers w != v with |w - v| <= cutoff, ascending.
  std::vector<std::size_t> neighbor_indices(const Point3 &v, double cutoff) const;
  /// Same as neighbor_indices but returns the points. cutoff must be <= 8.
  std::vector<Point3> neighbors(const Point3 &v, double cutoff) const;

  /// Indices of centers inside the closed ball B(0, radius + kGeomTol), ascending.
  std::vector<std::size_t> indices_within(double radius) const;

  double nearest_distance(const Point3 &q) const;

  friend bool operator==(const Packing &a, const Packing &b) {
    return a.centers_ == b.centers_ && a.gen_radius_ == b.gen_radius_ &&
           a.kind_ == b.kind_ && a.seed_ == b.seed_;
  }

private:
  std::vector<Point3> centers_;
  double gen_radius_;
  PackingKind kind_;
  std::optional<std::uint64_t> seed_;
  GridIndex index_;
};

struct SaturationCertificate {
  double grid_step = 0.0;
  double worst_gap = 0.0;
  double region_radius = 0.0;
  Point3 worst_probe;
  std::size_t probes = 0;

  /// Saturated at the probe resolution.
  bool saturated() const { return worst_gap < 2.0; }
};

/// All points sqrt(2)*(x,y,z), x+y+z even, inside B(0, radius).
Packing generate_fcc(double radius);
/// All points of 2Z^3 inside B(0, radius).
Packing generate_cubic(double radius);

struct RandomPackingStats {
  std::size_t rsa_accepted = 0;
  std::size_t sweep_inserted = 0;
  std::size_t hole_inserted = 0;
};

/// Random sequential adsorption in B(0, radius) until 5000 consecutive
/// rejections, then a probe-grid repair sweep (step 0.25 over B(0, radius-1))
/// and a Voronoi-vertex hole fill over the same ball. Deterministic per seed.
Packing generate_random_saturated(double radius, std::uint64_t seed,
                                  RandomPackingStats *stats = nullptr);

/// Probes the cubic grid step*Z^3 inside B(0, region_radius) and reports the
/// largest distance from a probe to its nearest center.
SaturationCertificate is_saturated(const Packing &p, double region_radius,
                                   double grid_step);

/// Fraction of B(0, r) covered by the packed unit balls. Requires r >= 1 and
/// r + 1 <= gen_radius, otherwise throws ContainerExceedsGeneration.
double density(const Packing &p, double r);

void save(const Packing &p, const std::filesystem::path &path);
Packing load(const std::filesystem::path &path);

std::string to_json_string(const Packing &p);
Packing from_json_string(const std::string &text);

/// Writes `contents` to a sibling temp file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path &path, const std::string &contents);

// ---------------------------------------------------------------------------

template <class Fn>
void GridIndex::for_each_within(const Point3 &q, double radius, Fn &&fn) const {
  if (dim_ == 0)
    return;
  const double r2 = radius * radius;
  const int ilo = cell_coord(q.x - radius), ihi = cell_coord(q.x + radius);
  const int jlo = cell_coord(q.y - radius), jhi = cell_coord(q.y + radius);
  const int klo = cell_coord(q.z - radius), khi = cell_coord(q.z + radius);
  for (int i = ilo; i <= ihi; ++i)
    for (int j = jlo; j <= jhi; ++j)
      for (int k = klo; k <= khi; ++k) {
        const std::size_t c = flat(i, j, k);
        for (std::uint32_t n = start_[c]; n < start_[c + 1]; ++n) {
          const std::uint32_t idx = items_[n];
          if (norm2(points_[idx] - q) <= r2)
            fn(static_cast<std::size_t>(idx));
        }
      }
}

} // namespace packcert
