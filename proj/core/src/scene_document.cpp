#include "cadscript/scene_document.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace cadscript {

using nlohmann::json;

namespace {

json point(const Vec3& p) { return json::array({p.x, p.y, p.z}); }

Vec3 point_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

}  // namespace

SceneDocument make_scene_document(const Session& session) {
  SceneDocument doc;
  doc.seed = session.seed();
  doc.revision = session.revision();
  for (const SceneObject& o : session.scene().objects()) {
    DocumentObject d;
    d.id = o.id;
    d.kind = std::string(o.solid.kind());
    d.state = o.state;
    const geom::TriangleMesh& m = o.solid.mesh();
    d.vertices.reserve(m.vertices.size() * 3);
    for (const Vec3& v : m.vertices) d.vertices.insert(d.vertices.end(), {v.x, v.y, v.z});
    d.indices.reserve(m.triangles.size() * 3);
    for (const auto& t : m.triangles) {
      for (auto i : t) d.indices.push_back(static_cast<std::uint32_t>(i));
    }
    d.bounds = o.solid.bounds();
    doc.objects.push_back(std::move(d));
  }
  if (const auto& study = session.last_sun_study()) {
    DocumentInsolation ins;
    ins.latitude = study->location.latitude_deg;
    ins.longitude = study->location.longitude_deg;
    ins.date = study->date.to_string();
    ins.interval_min = study->interval_min;
    ins.origin_x = study->grid.origin_x;
    ins.origin_y = study->grid.origin_y;
    ins.cell_size = study->grid.cell_size;
    ins.nx = study->grid.nx;
    ins.ny = study->grid.ny;
    ins.daylight_hours = study->daylight_hours;
    ins.sunlit_hours = study->sunlit_hours;
    ins.occupied = study->occupied;
    for (const auto& s : solar::sun_path(study->location, study->date, study->interval_min).samples) {
      ins.sun_path.push_back({s.instant.minutes_utc, s.angles.azimuth_deg, s.angles.altitude_deg});
    }
    doc.insolation = std::move(ins);
  }
  return doc;
}

std::string to_json(const SceneDocument& doc, int indent) {
  json objects = json::array();
  for (const DocumentObject& o : doc.objects) {
    objects.push_back({
        {"id", o.id},
        {"kind", o.kind},
        {"state", std::string(dsl::to_string(o.state))},
        {"aabb", {{"min", point(o.bounds.min)}, {"max", point(o.bounds.max)}}},
        {"vertices", o.vertices},
        {"indices", o.indices},
    });
  }
  json j = {
      {"format", "cadscript-scene"},
      {"version", doc.version},
      {"seed", doc.seed},
      {"revision", doc.revision},
      {"objects", std::move(objects)},
      {"insolation", nullptr},
  };
  if (doc.insolation) {
    const DocumentInsolation& s = *doc.insolation;
    j["insolation"] = {
        {"latitude", s.latitude},
        {"longitude", s.longitude},
        {"date", s.date},
        {"interval_min", s.interval_min},
        {"origin", {s.origin_x, s.origin_y}},
        {"cell_size", s.cell_size},
        {"nx", s.nx},
        {"ny", s.ny},
        {"daylight_hours", s.daylight_hours},
        {"sunlit_hours", s.sunlit_hours},
        {"occupied", s.occupied},
        {"sun_path", s.sun_path},
    };
  }
  return j.dump(indent);
}

SceneDocument scene_document_from_json(const std::string& text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw DocumentError("scene document is not a JSON object");
  try {
    if (j.at("format").get<std::string>() != "cadscript-scene") throw DocumentError("not a cadscript scene document");
    SceneDocument doc;
    doc.version = j.at("version").get<int>();
    if (doc.version != kSceneDocumentVersion) {
      throw DocumentError(fmt::format("unsupported scene document version {}", doc.version));
    }
    doc.seed = j.at("seed").get<std::uint64_t>();
    doc.revision = j.at("revision").get<std::uint64_t>();
    for (const json& o : j.at("objects")) {
      DocumentObject d;
      d.id = o.at("id").get<std::string>();
      d.kind = o.at("kind").get<std::string>();
      const std::string state = o.at("state").get<std::string>();
      if (state == "draft") {
        d.state = dsl::ObjectState::draft;
      } else if (state == "baked") {
        d.state = dsl::ObjectState::baked;
      } else {
        throw DocumentError(fmt::format("object '{}' has unknown state '{}'", d.id, state));
      }
      d.bounds.min = point_from(o.at("aabb").at("min"));
      d.bounds.max = point_from(o.at("aabb").at("max"));
      d.vertices = o.at("vertices").get<std::vector<double>>();
      d.indices = o.at("indices").get<std::vector<std::uint32_t>>();
      if (d.vertices.size() % 3 != 0 || d.indices.size() % 3 != 0) {
        throw DocumentError(fmt::format("object '{}' has ragged vertex or index arrays", d.id));
      }
      for (auto i : d.indices) {
        if (i >= d.vertices.size() / 3) throw DocumentError(fmt::format("object '{}' index {} out of range", d.id, i));
      }
      doc.objects.push_back(std::move(d));
    }
    if (const json& s = j.at("insolation"); !s.is_null()) {
      DocumentInsolation ins;
      ins.latitude = s.at("latitude").get<double>();
      ins.longitude = s.at("longitude").get<double>();
      ins.date = s.at("date").get<std::string>();
      ins.interval_min = s.at("interval_min").get<int>();
      ins.origin_x = s.at("origin").at(0).get<double>();
      ins.origin_y = s.at("origin").at(1).get<double>();
      ins.cell_size = s.at("cell_size").get<double>();
      ins.nx = s.at("nx").get<int>();
      ins.ny = s.at("ny").get<int>();
      ins.daylight_hours = s.at("daylight_hours").get<double>();
      ins.sunlit_hours = s.at("sunlit_hours").get<std::vector<double>>();
      ins.occupied = s.at("occupied").get<std::vector<std::uint8_t>>();
      ins.sun_path = s.at("sun_path").get<std::vector<std::array<double, 3>>>();
      const auto cells = static_cast<std::size_t>(ins.nx) * static_cast<std::size_t>(ins.ny);
      if (ins.sunlit_hours.size() != cells || ins.occupied.size() != cells) {
        throw DocumentError("insolation arrays do not match the grid size");
      }
      doc.insolation = std::move(ins);
    }
    return doc;
  } catch (const json::exception& e) {
    throw DocumentError(fmt::format("malformed scene document: {}", e.what()));
  }
}

}  // namespace cadscript
