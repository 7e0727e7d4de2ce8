#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "packcert/geom.hpp"

namespace support {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string &tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("packcert_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  std::filesystem::path operator/(const std::string &name) const { return path_ / name; }

private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void spit(const std::filesystem::path &p, const std::string &text) {
  std::ofstream(p, std::ios::binary) << text;
}

inline packcert::Point3 random_point(std::mt19937_64 &rng, double half_width) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  return {u(rng), u(rng), u(rng)};
}

/// Random tetrahedron with volume bounded away from zero.
inline std::array<packcert::Point3, 4> random_tetra(std::mt19937_64 &rng) {
  for (;;) {
    std::array<packcert::Point3, 4> t{random_point(rng, 2), random_point(rng, 2),
                                      random_point(rng, 2), random_point(rng, 2)};
    if (packcert::tetra_volume(t[0], t[1], t[2], t[3]) > 0.05)
      return t;
  }
}

} // namespace support
