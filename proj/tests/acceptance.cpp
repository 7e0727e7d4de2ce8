// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "packcert/audit.hpp"
#include "packcert/cells.hpp"
#include "packcert/score.hpp"
#include "packcert/voronoi.hpp"
#include "support.hpp"

using namespace packcert;

namespace {

const double kSqrt2 = std::numbers::sqrt2;
// alternate cube corners scaled to edge 2
const double kS = 1.0 / std::numbers::sqrt2;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      detail << " FAILED[" << what << "]";
    }
  }
};

// Packings shared by several criteria.
const Packing &fcc18() {
  static const Packing p = generate_fcc(18);
  return p;
}
const Packing &cubic18() {
  static const Packing p = generate_cubic(18);
  return p;
}
const std::vector<Packing> &randoms() {
  static const std::vector<Packing> ps = [] {
    std::vector<Packing> out;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
      out.push_back(generate_random_saturated(16, seed));
    return out;
  }();
  return ps;
}
constexpr double kRandomRegion = 10.0;

std::size_t origin_index(const Packing &p) { return p.indices_within(0.1).at(0); }

bool steps_pass(const std::vector<AuditStep> &steps, std::initializer_list<const char *> names) {
  for (const char *n : names) {
    bool found = false;
    for (const AuditStep &s : steps)
      if (s.name == n) {
        found = true;
        if (!s.pass)
          return false;
      }
    if (!found)
      return false;
  }
  return true;
}

void criterion1(Outcome &o) {
  const auto t0 = std::chrono::steady_clock::now();
  const ScoreConstants &k = score_constants();
  const auto steps = audit_constants();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.detail << std::setprecision(12) << "m1=" << k.m1 << " m2=" << k.m2 << " h-=" << k.h_minus;
  o.require(k.m1 >= 1.0120 && k.m1 <= 1.0121, "m1 range");
  o.require(k.m2 >= 0.02541 && k.m2 <= 0.02542, "m2 range");
  o.require(k.h_minus >= 1.231 && k.h_minus <= 1.232, "h- range");
  o.require(std::abs(k.h_minus - 1.23175) <= 5e-4, "h- value");
  o.require(steps_pass(steps, {"m1_range", "m2_range", "h_minus_range", "h_minus_value",
                               "h_minus_unique"}),
            "interval enclosures");
  o.require(secs < 1.0, "runtime");
}

void criterion2(Outcome &o) {
  const auto t0 = std::chrono::steady_clock::now();
  const ScoreConstants &k = score_constants();
  const double gap = 8 * k.m1 - 96 * k.m2 - 4 * kSqrt2;
  o.require(std::abs(gap) <= 1e-12, "identity");
  o.require(steps_pass(audit_constants(), {"fcc_identity_exact"}), "exact identity");
  const Packing &p = fcc18();
  double worst = 0.0;
  const auto interior = p.indices_within(12);
  for (std::size_t v : interior)
    worst = std::max(worst, std::abs(vertex_score(p, v)));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.detail << "identity gap " << gap << ", max |G| " << worst << " over " << interior.size()
           << " interior FCC vertices";
  o.require(interior.size() >= 400, "interior count");
  o.require(worst <= 1e-9, "G");
  o.require(secs < 60.0, "runtime");
}

void criterion3(Outcome &o) {
  const Packing &p = fcc18();
  double worst = 0.0;
  const auto vols = voronoi_volumes(p, 12);
  for (const auto &[v, vol] : vols)
    worst = std::max(worst, std::abs(vol / (4 * kSqrt2) - 1.0));
  o.detail << "max relative deviation " << worst << " over " << vols.size() << " cells";
  o.require(worst <= 1e-9, "volume");
}

void criterion4(Outcome &o) {
  const auto t0 = std::chrono::steady_clock::now();
  const FourCell reg = make_four_cell(
      {Point3{1, 1, 1} * kS, Point3{1, -1, -1} * kS, Point3{-1, 1, -1} * kS,
       Point3{-1, -1, 1} * kS});
  const double g_reg = cell_score(reg);
  o.require(std::abs(g_reg) <= 1e-9, "regular tetrahedron");
  std::size_t checked = 0;
  double worst = INFINITY;
  for (const Packing &p : randoms())
    for (const FourCell &x : enumerate_four_cells(p, kRandomRegion).cells)
      if (critical_edges(x).edges.empty()) {
        ++checked;
        worst = std::min(worst, cell_score(x));
      }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.detail << "gamma(regular) " << g_reg << ", min gamma " << worst << " over " << checked
           << " cells without critical edges, seeds 1-20";
  o.require(checked > 0, "no cells");
  o.require(worst >= -1e-9, "gamma");
  o.require(secs < 300.0, "runtime");
}

void criterion5(Outcome &o) {
  const Packing &f = fcc18();
  double fcc_dev = 0.0;
  for (std::size_t v : f.indices_within(12))
    fcc_dev = std::max(fcc_dev, std::abs(neighbor_weight_sum(f, v) - 12.0));
  double worst = 0.0;
  std::size_t n = 0;
  for (const Packing &p : randoms())
    for (std::size_t v : p.indices_within(kRandomRegion)) {
      worst = std::max(worst, neighbor_weight_sum(p, v));
      ++n;
    }
  o.detail << "FCC max |sum - 12| " << fcc_dev << ", random max sum " << worst << " over "
           << n << " vertices";
  o.require(fcc_dev <= 1e-9, "FCC equality");
  o.require(worst <= 12.0 + 1e-9, "random bound");
}

void criterion6(Outcome &o) {
  const ScoreConstants &k = score_constants();
  double worst = INFINITY;
  auto check = [&](const Packing &p, double region) {
    const CompatibilityReport r = fcc_compatibility_check(p, region);
    worst = std::min(worst, r.min_margin);
    return r;
  };
  check(fcc18(), 12);
  for (const Packing &p : randoms())
    check(p, kRandomRegion);
  const CompatibilityReport cub = check(cubic18(), 12);
  const double expected = (8.0 + (-8.0 + 8.0 * k.m1 - 48.0 * k.m2)) - 4.0 * kSqrt2;
  const double direct = 8.0 + vertex_score(cubic18(), origin_index(cubic18())) - 4.0 * kSqrt2;
  o.detail << "min margin " << worst << ", cubic margin " << std::setprecision(15)
           << cub.min_margin << " vs formula " << expected;
  o.require(worst >= -1e-9, "compatibility");
  o.require(std::abs(cub.min_margin - expected) <= 1e-9, "cubic formula");
  o.require(std::abs(direct - expected) <= 1e-9, "cubic direct");
}

void criterion7(Outcome &o) {
  const auto t0 = std::chrono::steady_clock::now();
  const Certificate cert = full_report();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(cert.pass, "certificate");
  o.require(steps_pass(cert.steps, {"zeta_binomial", "zeta_total", "c0_sum", "alpha_r2_coeff",
                                    "alpha_const", "alpha_total", "c1_enclosure",
                                    "c1_displayed", "final_constant"}),
            "named steps");
  std::size_t flipped = 0;
  for (const std::string &lit : upper_bound_literals()) {
    AuditOptions opt;
    opt.tighten[lit] = tighten_by_one_unit(lit);
    if (!full_report(opt).pass)
      ++flipped;
    else
      o.require(false, "tamper " + lit);
  }
  o.detail << cert.steps.size() << " steps, " << flipped << "/" << upper_bound_literals().size()
           << " tampered bounds fail, " << std::setprecision(3) << secs << " s";
  o.require(secs < 1.0, "runtime");
}

// Monte Carlo coverage of B(0, r); returns {estimate, standard error}.
std::pair<double, double> monte_carlo(const Packing &p, double r, std::uint64_t seed,
                                      std::size_t samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-r, r);
  std::size_t hit = 0;
  for (std::size_t n = 0; n < samples;) {
    const Point3 q{u(rng), u(rng), u(rng)};
    if (norm2(q) > r * r)
      continue;
    ++n;
    if (p.nearest_distance(q) <= 1.0)
      ++hit;
  }
  const double est = static_cast<double>(hit) / static_cast<double>(samples);
  return {est, std::sqrt(est * (1.0 - est) / static_cast<double>(samples))};
}

void criterion8(Outcome &o) {
  const Packing one({{0, 0, 0}}, 3, PackingKind::random);
  o.require(density(one, 1) == 1.0, "single ball r=1");
  o.require(std::abs(density(one, 2) - 0.125) <= 1e-15, "single ball r=2");
  double worst_sigma = 0.0;
  std::uint64_t seed = 100;
  for (const Packing *p : {&fcc18(), &randoms().front()})
    for (double r : {5.0, 8.0, 10.0}) {
      const double exact = density(*p, r);
      const auto [est, se] = monte_carlo(*p, r, seed++, 10'000'000);
      const double z = std::abs(est - exact) / se;
      worst_sigma = std::max(worst_sigma, z);
      o.require(z <= 3.0, std::string(to_string(p->kind())) + " r=" + std::to_string(r));
    }
  o.detail << "single ball exact, worst |MC - exact| = " << std::setprecision(3) << worst_sigma
           << " sigma over 6 cases of 1e7 samples";
}

void criterion9(Outcome &o) {
  std::mt19937_64 rng(91);
  double worst_excess = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const auto t = support::random_tetra(rng);
    for (int v = 0; v < 4; ++v) {
      const Point3 &a = t[v], &b = t[(v + 1) % 4], &c = t[(v + 2) % 4], &d = t[(v + 3) % 4];
      const double excess = dihedral_angle(a, b, c, d) + dihedral_angle(a, c, b, d) +
                            dihedral_angle(a, d, b, c) - std::numbers::pi;
      worst_excess = std::max(worst_excess, std::abs(solid_angle_cone(a, b, c, d) - excess));
    }
  }
  std::normal_distribution<double> g;
  const ConvexPolytope cube = ConvexPolytope::cube({0, 0, 0}, 1.0);
  double worst_clip = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const Point3 normal{g(rng), g(rng), g(rng)};
    const double offset = 0.8 * g(rng);
    const double total = cube.clip({normal, offset}).volume() + cube.clip({-normal, -offset}).volume();
    worst_clip = std::max(worst_clip, std::abs(total / 8.0 - 1.0));
  }
  o.detail << "max excess error " << worst_excess << ", max clip relative error " << worst_clip;
  o.require(worst_excess <= 1e-9, "excess");
  o.require(worst_clip <= 1e-9, "clip");
}

void criterion10(Outcome &o) {
  support::TempDir dir("accept");
  std::ostringstream sink;
  auto cli = [&](std::vector<std::string> args) { return cli::run(args, sink, sink); };
  const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
  bool same_packings = true;
  for (const char *seed : {"1", "7", "42"}) {
    cli({"generate", "--kind", "random", "--radius", "12", "--seed", seed, "--out", a});
    cli({"generate", "--kind", "random", "--radius", "12", "--seed", seed, "--out", b});
    same_packings = same_packings && support::slurp(a) == support::slurp(b) &&
                    !support::slurp(a).empty();
  }
  const std::string m1 = (dir / "m1.json").string(), m2 = (dir / "m2.json").string();
  const std::string c1 = (dir / "m1.csv").string(), c2 = (dir / "m2.csv").string();
  const std::vector<std::string> base = {"measure", "--in", a, "--r", "3", "--r", "5"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return cli(args);
  };
  const int e1 = with({"--out", m1}), e2 = with({"--out", m2});
  with({"--format", "csv", "--out", c1});
  with({"--format", "csv", "--out", c2});
  const bool same_reports = support::slurp(m1) == support::slurp(m2) &&
                            support::slurp(c1) == support::slurp(c2) &&
                            !support::slurp(m1).empty();
  o.detail << "generate byte-identical: " << (same_packings ? "yes" : "no")
           << ", measure byte-identical: " << (same_reports ? "yes" : "no");
  o.require(same_packings, "generate");
  o.require(same_reports && e1 == 0 && e2 == 0, "measure");
}

} // namespace

int main() {
  const std::vector<std::pair<int, std::function<void(Outcome &)>>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},  {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}};
  int failed = 0;
  for (const auto &[n, fn] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " - "
              << o.detail.str() << " (" << std::fixed << std::setprecision(2) << secs << " s)"
              << std::defaultfloat << std::endl;
    failed += o.pass ? 0 : 1;
  }
  std::cout << (failed ? "acceptance: FAIL" : "acceptance: PASS") << std::endl;
  return failed ? 1 : 0;
}
