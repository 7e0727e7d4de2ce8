#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "packcert/errors.hpp"
#include "packcert/packing.hpp"
#include "support.hpp"

using namespace packcert;

namespace {

std::size_t origin_index(const Packing &p) { return p.indices_within(0.1).at(0); }

} // namespace

TEST_CASE("lattice generators") {
  // counts from a direct integer enumeration
  CHECK(generate_fcc(12).size() == 1289);
  CHECK(generate_fcc(16).size() == 3055);
  CHECK(generate_cubic(12).size() == 925);
  CHECK(generate_fcc(12).kind() == PackingKind::fcc);
  CHECK_FALSE(generate_fcc(12).seed().has_value());
  CHECK_THROWS_AS(generate_fcc(2), ValidationError);
  CHECK_THROWS_AS(generate_cubic(3.9), ValidationError);
  CHECK_THROWS_AS(generate_random_saturated(3, 1), ValidationError);
}

TEST_CASE("packing validation") {
  CHECK_THROWS_AS(Packing({{0, 0, 0}, {1.5, 0, 0}}, 5, PackingKind::random), ValidationError);
  CHECK_THROWS_AS(Packing({{0, 0, 6}}, 5, PackingKind::random), ValidationError);
  CHECK_THROWS_AS(Packing({{0, 0, NAN}}, 5, PackingKind::random), ValidationError);
  CHECK_NOTHROW(Packing({{0, 0, 0}, {2, 0, 0}}, 5, PackingKind::random));
}

TEST_CASE("lattice neighbor shells") {
  const Packing fcc = generate_fcc(10);
  const Point3 v = fcc[origin_index(fcc)];
  CHECK(fcc.neighbors(v, 2.0 + 1e-9).size() == 12);
  CHECK(fcc.neighbors(v, 2.52).size() == 12);
  CHECK(fcc.neighbors(v, 2.9).size() == 18);
  const Packing cubic = generate_cubic(10);
  CHECK(cubic.neighbors({0, 0, 0}, 2.52).size() == 6);
  CHECK(fcc.nearest_distance({0.1, 0, 0}) == doctest::Approx(0.1));
}

TEST_CASE("neighbor queries agree with brute force") {
  const Packing p = generate_random_saturated(9, 4);
  std::mt19937_64 rng(8);
  for (int n = 0; n < 300; ++n) {
    const Point3 q = support::random_point(rng, 8);
    const double cutoff = std::uniform_real_distribution<double>(0.5, 8.0)(rng);
    std::vector<std::size_t> brute;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] != q && distance(p[i], q) <= cutoff)
        brute.push_back(i);
    REQUIRE(p.neighbor_indices(q, cutoff) == brute);
    double best = INFINITY;
    for (const Point3 &c : p.centers())
      best = std::min(best, distance(c, q));
    REQUIRE(p.nearest_distance(q) == doctest::Approx(best));
  }
}

TEST_CASE("random generator is deterministic and saturated") {
  RandomPackingStats stats;
  const Packing a = generate_random_saturated(10, 7, &stats);
  const Packing b = generate_random_saturated(10, 7);
  const Packing c = generate_random_saturated(10, 8);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(a.seed() == std::optional<std::uint64_t>(7));
  CHECK(stats.rsa_accepted > 0);
  CHECK(stats.rsa_accepted + stats.sweep_inserted + stats.hole_inserted == a.size());

  const SaturationCertificate sat = is_saturated(a, 9, 0.25);
  CHECK(sat.saturated());
  CHECK(sat.probes > 100000);
  CHECK_THROWS_AS(is_saturated(a, 9.5, 0.25), ContainerExceedsGeneration);
}

TEST_CASE("density") {
  const Packing one({{0, 0, 0}}, 3, PackingKind::random);
  CHECK(density(one, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(density(one, 2) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK_THROWS_AS(density(one, 2.5), ContainerExceedsGeneration);
  CHECK_THROWS_AS(density(one, 0.5), ContainerExceedsGeneration);
  // FCC density approaches pi / sqrt(18) from a ball-shaped sample
  const double d = density(generate_fcc(16), 14);
  CHECK(std::abs(d - 0.74048) < 0.02);
}

TEST_CASE("json round trip is bit exact") {
  support::TempDir dir("io");
  const Packing p = generate_random_saturated(8, 3);
  save(p, dir / "p.json");
  const Packing q = load(dir / "p.json");
  CHECK(p == q);
  CHECK(std::equal(p.centers().begin(), p.centers().end(), q.centers().begin()));
  CHECK(to_json_string(q) == support::slurp(dir / "p.json"));
  const Packing f = load((save(generate_fcc(5), dir / "f.json"), dir / "f.json"));
  CHECK_FALSE(f.seed().has_value());
}

TEST_CASE("load rejects bad files") {
  support::TempDir dir("bad");
  CHECK_THROWS_AS(load(dir / "missing.json"), IoError);
  const auto bad = [&](const std::string &text) {
    support::spit(dir / "b.json", text);
    return load(dir / "b.json");
  };
  CHECK_THROWS_AS(bad("{not json"), SchemaError);
  CHECK_THROWS_AS(bad("[]"), SchemaError);
  CHECK_THROWS_AS(bad(R"({"kind":"fcc","seed":null,"gen_radius":5})"), SchemaError);
  CHECK_THROWS_AS(bad(R"({"kind":"hex","seed":null,"gen_radius":5,"centers":[]})"), SchemaError);
  CHECK_THROWS_AS(bad(R"({"kind":"fcc","seed":"x","gen_radius":5,"centers":[]})"), SchemaError);
  CHECK_THROWS_AS(bad(R"({"kind":"fcc","seed":null,"gen_radius":5,"centers":[[0,0]]})"),
                  SchemaError);
  CHECK_THROWS_AS(
      bad(R"({"kind":"fcc","seed":null,"gen_radius":5,"centers":[[0,0,0],[1,0,0]]})"),
      ValidationError);
  CHECK_THROWS_AS(write_file_atomic(dir / "no" / "such" / "dir.json", "x"), IoError);
}
