#include <fstream>
#include <sstream>

#include <json.hpp>

#include "packcert/errors.hpp"
#include "packcert/packing.hpp"

namespace packcert {

using nlohmann::json;

std::string to_json_string(const Packing &p) {
  json centers = json::array();
  for (const Point3 &c : p.centers())
    centers.push_back({c.x, c.y, c.z});
  json doc = {
      {"kind", to_string(p.kind())},
      {"seed", p.seed() ? json(*p.seed()) : json(nullptr)},
      {"gen_radius", p.gen_radius()},
      {"centers", std::move(centers)},
  };
  // nlohmann prints doubles as the shortest round-trip decimal
  return doc.dump() + "\n";
}

Packing from_json_string(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw SchemaError(std::string("packing file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw SchemaError("packing file must be a JSON object");
  for (const char *key : {"kind", "seed", "gen_radius", "centers"})
    if (!doc.contains(key))
      throw SchemaError(std::string("packing file is missing '") + key + "'");

  if (!doc["kind"].is_string())
    throw SchemaError("'kind' must be a string");
  const PackingKind kind = packing_kind_from_string(doc["kind"].get<std::string>());

  std::optional<std::uint64_t> seed;
  if (!doc["seed"].is_null()) {
    if (!doc["seed"].is_number_integer())
      throw SchemaError("'seed' must be an integer or null");
    seed = doc["seed"].get<std::uint64_t>();
  }

  if (!doc["gen_radius"].is_number())
    throw SchemaError("'gen_radius' must be a number");
  const double gen_radius = doc["gen_radius"].get<double>();

  if (!doc["centers"].is_array())
    throw SchemaError("'centers' must be an array");
  std::vector<Point3> centers;
  centers.reserve(doc["centers"].size());
  for (const json &c : doc["centers"]) {
    if (!c.is_array() || c.size() != 3 || !c[0].is_number() || !c[1].is_number() ||
        !c[2].is_number())
      throw SchemaError("each center must be [x, y, z]");
    centers.push_back({c[0].get<double>(), c[1].get<double>(), c[2].get<double>()});
  }
  return Packing(std::move(centers), gen_radius, kind, seed);
}

void write_file_atomic(const std::filesystem::path &path, const std::string &contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << contents;
    if (!out.flush())
      throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw IoError("cannot rename onto '" + path.string() + "': " + ec.message());
}

void save(const Packing &p, const std::filesystem::path &path) {
  write_file_atomic(path, to_json_string(p));
}

Packing load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_string(buf.str());
}

} // namespace packcert
