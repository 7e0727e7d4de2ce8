#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "packcert/audit.hpp"
#include "packcert/cells.hpp"
#include "packcert/errors.hpp"
#include "packcert/packing.hpp"
#include "packcert/score.hpp"
#include "packcert/voronoi.hpp"

#ifndef PACKCERT_VERSION
#define PACKCERT_VERSION "0.0.0"
#endif

namespace packcert::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Anchor strings name the formula a reported number stands for.
namespace anchor {
constexpr const char *density = "density(V,0,r) = vol(union of unit balls in B(0,r)) / vol(B(0,r))";
constexpr const char *voronoi = "vol(voronoi(V,v)); 4 sqrt(2) on FCC";
constexpr const char *score = "G(v,L) = -vol(voronoi(V,v)) + 8 m1 - sum 8 m2 L(h(v,u))";
constexpr const char *weight_sum = "sum over u with h(v,u) <= h0 of L(h(v,u)) <= 12";
constexpr const char *negligible = "sum over v in B(0,r) of G(v,L) <= c1 r^2";
constexpr const char *compat = "vol(voronoi(V,v)) + G(v,L) >= 4 sqrt(2)";
constexpr const char *cell_score = "gamma(X,L) = vol(X) - (2 m1/pi) tsol(X) + (8 m2/pi) sum dih(X,e) L(h(e))";
constexpr const char *angles = "sum of dihedrals around an edge <= 2 pi; solid angles around a vertex <= 4 pi";
constexpr const char *cluster = "Gamma(eps) = sum over X in CL(eps) of gamma(X,L) wt(X) + beta(eps,X)";
} // namespace anchor

struct Options {
  std::string in;
  std::string kind;
  double radius = 0.0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::vector<double> r;
  std::string out;
  std::string format = "json";
  double grid_step = 0.25;
  double region = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> tighten;
  int ulps = 4;
};

ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

std::string csv_number(double v) { return std::isfinite(v) ? ojson(v).dump() : ""; }

std::string csv_quote(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string q = "\"";
  for (char ch : s)
    q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

ojson header(const std::string &command, const Options &o, const Packing *p) {
  ojson config;
  config["input"] = o.in.empty() ? ojson(nullptr) : ojson(o.in);
  if (p != nullptr) {
    config["kind"] = std::string(to_string(p->kind()));
    config["gen_radius"] = p->gen_radius();
    config["seed"] = p->seed() ? ojson(*p->seed()) : ojson(nullptr);
    config["centers"] = p->size();
  }
  config["r"] = o.r;
  config["region"] = number_or_null(o.region);
  config["grid_step"] = o.grid_step;
  config["format"] = o.format;
  config["transcendental_ulps"] = o.ulps;
  config["tighten"] = o.tighten;
  ojson doc;
  doc["tool"] = "packcert";
  doc["version"] = PACKCERT_VERSION;
  doc["command"] = command;
  doc["config"] = std::move(config);
  return doc;
}

void emit(const Options &o, const std::string &text, std::ostream &out) {
  if (o.out.empty())
    out << text;
  else
    write_file_atomic(o.out, text);
}

Packing resolve_input(const Options &o) {
  const bool from_file = !o.in.empty();
  const bool from_generator = !o.kind.empty();
  if (from_file == from_generator)
    throw UsageError("give exactly one input: --in FILE or --kind/--radius[/--seed]");
  if (from_file) {
    try {
      return load(o.in);
    } catch (const ValidationError &e) {
      throw CheckFailure(std::string("packing file fails validation: ") + e.what());
    }
  }
  PackingKind kind;
  try {
    kind = packing_kind_from_string(o.kind);
  } catch (const SchemaError &e) {
    throw UsageError(e.what());
  }
  if (!(o.radius > 0.0))
    throw UsageError("--radius is required with --kind");
  switch (kind) {
  case PackingKind::fcc:
    return generate_fcc(o.radius);
  case PackingKind::cubic:
    return generate_cubic(o.radius);
  case PackingKind::random:
    if (!o.seed_set)
      throw UsageError("--kind random needs an explicit --seed");
    return generate_random_saturated(o.radius, o.seed);
  }
  throw UsageError("unknown kind");
}

double region_of(const Options &o, const Packing &p) {
  const double region =
      std::isnan(o.region) ? p.gen_radius() - kInteriorMargin : o.region;
  if (region < 0.0)
    throw UsageError("region is empty: gen_radius must exceed 6, or pass --region");
  return region;
}

std::vector<double> r_values(const Options &o, double region) {
  std::vector<double> r = o.r;
  if (r.empty())
    r.push_back(std::max(1.0, region));
  for (double v : r)
    if (!(v >= 1.0))
      throw UsageError("r values must be >= 1");
  return r;
}

struct Stats {
  std::size_t count = 0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;

  void add(double v) {
    ++count;
    min = std::min(min, v);
    max = std::max(max, v);
    sum += v;
  }
  ojson json(const char *anchor_text) const {
    return {{"count", count},
            {"min", number_or_null(min)},
            {"max", number_or_null(max)},
            {"mean", count ? ojson(sum / static_cast<double>(count)) : ojson(nullptr)},
            {"anchor", anchor_text}};
  }
};

struct Measurement {
  ojson doc;
  bool ok = true;
};

Measurement measure(const Packing &p, const Options &o) {
  const double region = region_of(o, p);
  const std::vector<double> rs = r_values(o, region);
  Measurement m;
  ojson &q = m.doc;

  ojson dens = ojson::array();
  for (double r : rs)
    dens.push_back({{"r", r}, {"value", density(p, r)}, {"anchor", anchor::density}});
  q["density"] = std::move(dens);

  Stats vol, g, wsum;
  for (std::size_t v : p.indices_within(region)) {
    const VoronoiCell cell = voronoi_cell(p, v);
    vol.add(cell.volume);
    g.add(vertex_score(p, v));
    wsum.add(neighbor_weight_sum(p, v));
  }
  q["region"] = region;
  q["voronoi_volume"] = vol.json(anchor::voronoi);
  q["vertex_score"] = g.json(anchor::score);
  q["neighbor_weight_sum_max"] = {{"value", number_or_null(wsum.max)},
                                  {"anchor", anchor::weight_sum}};
  if (wsum.count && wsum.max > 12.0 + 1e-9)
    m.ok = false;

  std::vector<double> neg_r;
  std::vector<double> skipped;
  for (double r : rs)
    (r <= p.gen_radius() - kInteriorMargin ? neg_r : skipped).push_back(r);
  ojson rows = ojson::array();
  if (!neg_r.empty())
    for (const NegligibilityRow &row : negligibility_scan(p, linear_weight, neg_r).rows)
      rows.push_back({{"r", row.r},
                      {"sum", row.sum},
                      {"ratio", row.ratio},
                      {"vertices", row.vertices}});
  q["negligibility"] = {{"rows", std::move(rows)},
                        {"skipped_r", skipped},
                        {"anchor", anchor::negligible}};

  const CompatibilityReport compat = fcc_compatibility_check(p, region);
  q["fcc_compatibility"] = {{"min_margin", number_or_null(compat.min_margin)},
                            {"argmin", compat.argmin},
                            {"vertices", compat.vertices},
                            {"pass", compat.pass},
                            {"anchor", anchor::compat}};
  m.ok = m.ok && compat.pass;
  return m;
}

std::string measurement_csv(const ojson &q) {
  std::string out = "quantity,r,value,anchor\n";
  auto row = [&](const std::string &name, const ojson &r, const ojson &value,
                 const std::string &anc) {
    out += name + "," + (r.is_null() ? "" : r.dump()) + "," +
           (value.is_null() ? "" : value.dump()) + "," + csv_quote(anc) + "\n";
  };
  for (const auto &d : q["density"])
    row("density", d["r"], d["value"], anchor::density);
  for (const char *key : {"voronoi_volume", "vertex_score"})
    for (const char *stat : {"count", "min", "max", "mean"})
      row(std::string(key) + "_" + stat, nullptr, q[key][stat], q[key]["anchor"]);
  row("neighbor_weight_sum_max", nullptr, q["neighbor_weight_sum_max"]["value"],
      anchor::weight_sum);
  for (const auto &r : q["negligibility"]["rows"]) {
    row("negligibility_sum", r["r"], r["sum"], anchor::negligible);
    row("negligibility_ratio", r["r"], r["ratio"], anchor::negligible);
  }
  row("fcc_compatibility_min_margin", nullptr, q["fcc_compatibility"]["min_margin"],
      anchor::compat);
  return out;
}

AuditOptions audit_options(const Options &o) {
  AuditOptions opt;
  opt.transcendental_ulps = o.ulps;
  for (const std::string &t : o.tighten) {
    const auto colon = t.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == t.size())
      throw UsageError("--tighten expects LITERAL:REPLACEMENT, got '" + t + "'");
    opt.tighten[t.substr(0, colon)] = t.substr(colon + 1);
  }
  return opt;
}

// --- commands ---------------------------------------------------------------

int cmd_generate(const Options &o, std::ostream &out) {
  if (o.kind.empty() || !o.in.empty())
    throw UsageError("generate needs --kind and no --in");
  if (o.out.empty())
    throw UsageError("generate needs --out");
  const Packing p = resolve_input(o);
  const SaturationCertificate sat = is_saturated(p, p.gen_radius() - 1.0, o.grid_step);
  save(p, o.out);
  out << "centers " << p.size() << "\n"
      << "saturation region " << sat.region_radius << " grid_step " << sat.grid_step
      << " probes " << sat.probes << " worst_gap " << sat.worst_gap << " saturated "
      << (sat.saturated() ? "yes" : "no") << "\n";
  return kOk;
}

int cmd_measure(const Options &o, std::ostream &out) {
  const Packing p = resolve_input(o);
  const Measurement m = measure(p, o);
  if (o.format == "csv") {
    emit(o, measurement_csv(m.doc), out);
  } else {
    ojson doc = header("measure", o, &p);
    doc["quantities"] = m.doc;
    doc["pass"] = m.ok;
    emit(o, doc.dump(2) + "\n", out);
  }
  return m.ok ? kOk : kCheckFailed;
}

int cmd_voronoi_stats(const Options &o, std::ostream &out) {
  const Packing p = resolve_input(o);
  const double region = region_of(o, p);
  ojson rows = ojson::array();
  std::string csv = "index,x,y,z,volume,max_vertex_distance,vertex_score\n";
  for (std::size_t v : p.indices_within(region)) {
    const VoronoiCell cell = voronoi_cell(p, v);
    const double g = vertex_score(p, v);
    rows.push_back({{"index", v},
                    {"center", {p[v].x, p[v].y, p[v].z}},
                    {"volume", cell.volume},
                    {"max_vertex_distance", cell.max_vertex_distance},
                    {"vertex_score", g}});
    csv += std::to_string(v) + "," + csv_number(p[v].x) + "," + csv_number(p[v].y) + "," +
           csv_number(p[v].z) + "," + csv_number(cell.volume) + "," +
           csv_number(cell.max_vertex_distance) + "," + csv_number(g) + "\n";
  }
  if (o.format == "csv") {
    emit(o, csv, out);
  } else {
    ojson doc = header("voronoi-stats", o, &p);
    doc["region"] = region;
    doc["anchors"] = {{"volume", anchor::voronoi}, {"vertex_score", anchor::score}};
    doc["cells"] = std::move(rows);
    emit(o, doc.dump(2) + "\n", out);
  }
  return kOk;
}

int cmd_cells(const Options &o, std::ostream &out) {
  const Packing p = resolve_input(o);
  const double region = region_of(o, p);
  const CellEnumeration cells = enumerate_four_cells(p, region);
  const AngleCheckReport angles = edge_angle_checks(cells.cells, p, region);

  Stats plain_gamma;
  std::size_t with_critical = 0;
  for (const FourCell &x : cells.cells) {
    if (!critical_edges(x).edges.empty()) {
      ++with_critical;
      continue;
    }
    plain_gamma.add(cell_score(x));
  }
  const bool gamma_ok = plain_gamma.count == 0 || plain_gamma.min >= -1e-9;
  const bool ok = angles.pass && gamma_ok;

  const std::vector<ClusterEntry> clusters = cluster_report(cells.cells, p, region);
  if (o.format == "csv") {
    std::string csv = "i,j,h,partial_gamma,cell_count,label\n";
    for (const ClusterEntry &c : clusters)
      csv += std::to_string(c.edge.i) + "," + std::to_string(c.edge.j) + "," +
             csv_number(c.edge.h) + "," + csv_number(c.partial_gamma) + "," +
             std::to_string(c.cell_count) + "," + std::string(kPartialClusterLabel) + "\n";
    emit(o, csv, out);
    return ok ? kOk : kCheckFailed;
  }

  ojson cl = ojson::array();
  for (const ClusterEntry &c : clusters)
    cl.push_back({{"i", c.edge.i},
                  {"j", c.edge.j},
                  {"h", c.edge.h},
                  {"partial_gamma", c.partial_gamma},
                  {"cell_count", c.cell_count},
                  {"label", kPartialClusterLabel}});
  ojson doc = header("cells", o, &p);
  doc["region"] = region;
  doc["four_cells"] = cells.cells.size();
  doc["cospherical"] = cells.cospherical.size();
  doc["with_critical_edges"] = with_critical;
  doc["gamma_without_critical_edges"] = plain_gamma.json(anchor::cell_score);
  doc["angle_checks"] = {{"edges_checked", angles.edges_checked},
                         {"max_edge_dihedral_sum", angles.max_edge_dihedral_sum},
                         {"vertices_checked", angles.vertices_checked},
                         {"max_vertex_solid_sum", angles.max_vertex_solid_sum},
                         {"pass", angles.pass},
                         {"anchor", anchor::angles}};
  doc["clusters"] = {{"anchor", anchor::cluster}, {"entries", std::move(cl)}};
  doc["pass"] = ok;
  emit(o, doc.dump(2) + "\n", out);
  return ok ? kOk : kCheckFailed;
}

int cmd_audit(const Options &o, std::ostream &out) {
  const Certificate cert = full_report(audit_options(o));
  emit(o, o.format == "csv" ? certificate_csv(cert) : certificate_json(cert), out);
  return cert.pass ? kOk : kCheckFailed;
}

int cmd_report(const Options &o, std::ostream &out) {
  const Packing p = resolve_input(o);
  const AuditOptions opt = audit_options(o);
  const Certificate audit = full_report(opt);
  const double region = region_of(o, p);
  Certificate bounds{audit_bound_on_packing(p, r_values(o, region), opt), true};
  bounds.pass = std::all_of(bounds.steps.begin(), bounds.steps.end(),
                            [](const AuditStep &s) { return s.pass; });
  const Measurement m = measure(p, o);
  const bool ok = audit.pass && bounds.pass && m.ok;

  if (o.format == "csv") {
    Certificate all = audit;
    all.steps.insert(all.steps.end(), bounds.steps.begin(), bounds.steps.end());
    emit(o, certificate_csv(all) + "\n" + measurement_csv(m.doc), out);
    return ok ? kOk : kCheckFailed;
  }
  ojson doc = header("report", o, &p);
  doc["certificate"] = ojson::parse(certificate_json(audit));
  doc["bound_on_packing"] = ojson::parse(certificate_json(bounds));
  doc["quantities"] = m.doc;
  doc["pass"] = ok;
  emit(o, doc.dump(2) + "\n", out);
  return ok ? kOk : kCheckFailed;
}

void add_input_options(CLI::App *sub, Options &o) {
  sub->add_option("--in", o.in, "Packing file");
  sub->add_option("--kind", o.kind, "Generator kind: fcc, cubic or random");
  sub->add_option("--radius", o.radius, "Generation radius");
  sub->add_option("--seed", o.seed, "Seed for --kind random")->each([&o](const std::string &) {
    o.seed_set = true;
  });
  sub->add_option("--region", o.region, "Interior region radius (default gen_radius - 6)");
}

void add_output_options(CLI::App *sub, Options &o) {
  sub->add_option("--out", o.out, "Output file (default stdout)");
  sub->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app{"Sphere packing measurement and constant-chain certification", "packcert"};
  app.set_version_flag("--version", PACKCERT_VERSION);
  app.require_subcommand(1, 1);

  CLI::App *generate = app.add_subcommand("generate", "Generate a packing file");
  add_input_options(generate, o);
  generate->add_option("--out", o.out, "Output packing file");
  generate->add_option("--grid-step", o.grid_step, "Saturation probe step");

  CLI::App *measure_cmd = app.add_subcommand("measure", "Density, Voronoi and score report");
  add_input_options(measure_cmd, o);
  add_output_options(measure_cmd, o);
  measure_cmd->add_option("--r", o.r, "Container radius (repeatable)");

  CLI::App *vstats = app.add_subcommand("voronoi-stats", "Per-center Voronoi cells");
  add_input_options(vstats, o);
  add_output_options(vstats, o);

  CLI::App *cells = app.add_subcommand("cells", "4-cell enumeration and clusters");
  add_input_options(cells, o);
  add_output_options(cells, o);

  CLI::App *audit = app.add_subcommand("audit", "Certify the constant chain");
  add_output_options(audit, o);
  audit->add_option("--tighten", o.tighten, "Replace a literal, LITERAL:REPLACEMENT");
  audit->add_option("--ulps", o.ulps, "Widening of transcendental constants")
      ->check(CLI::PositiveNumber);

  CLI::App *report = app.add_subcommand("report", "Audit plus measurement of one packing");
  add_input_options(report, o);
  add_output_options(report, o);
  report->add_option("--r", o.r, "Container radius (repeatable)");
  report->add_option("--tighten", o.tighten, "Replace a literal, LITERAL:REPLACEMENT");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (generate->parsed())
      return cmd_generate(o, out);
    if (measure_cmd->parsed())
      return cmd_measure(o, out);
    if (vstats->parsed())
      return cmd_voronoi_stats(o, out);
    if (cells->parsed())
      return cmd_cells(o, out);
    if (audit->parsed())
      return cmd_audit(o, out);
    if (report->parsed())
      return cmd_report(o, out);
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CheckFailure &e) {
    err << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const ContainmentViolation &e) {
    err << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const IoError &e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const SchemaError &e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const Error &e) {
    // ValidationError, ContainerExceedsGeneration, BoundaryVertex, ...
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

} // namespace packcert::cli
