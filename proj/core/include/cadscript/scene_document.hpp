#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cadscript/session.hpp"

namespace cadscript {

inline constexpr int kSceneDocumentVersion = 1;

struct DocumentObject {
  std::string id;
  std::string kind;
  dsl::ObjectState state = dsl::ObjectState::draft;
  std::vector<double> vertices;       // x y z per vertex
  std::vector<std::uint32_t> indices; // three per triangle
  geom::Aabb bounds;
  bool operator==(const DocumentObject&) const = default;
};

struct DocumentInsolation {
  double latitude = 0.0;
  double longitude = 0.0;
  std::string date;
  int interval_min = 0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  double cell_size = 0.0;
  int nx = 0;
  int ny = 0;
  double daylight_hours = 0.0;
  std::vector<double> sunlit_hours;    // row-major, j * nx + i
  std::vector<std::uint8_t> occupied;  // 1 inside a solid
  std::vector<std::array<double, 3>> sun_path;  // minute UTC, azimuth, altitude
  bool operator==(const DocumentInsolation&) const = default;
};

/// What the scene endpoint and `:scene` hand to viewers.
struct SceneDocument {
  int version = kSceneDocumentVersion;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t revision = 0;
  std::vector<DocumentObject> objects;
  std::optional<DocumentInsolation> insolation;
  bool operator==(const SceneDocument&) const = default;
};

class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[nodiscard]] SceneDocument make_scene_document(const Session& session);
[[nodiscard]] std::string to_json(const SceneDocument& doc, int indent = -1);
/// Throws DocumentError on malformed input or an unknown version.
[[nodiscard]] SceneDocument scene_document_from_json(const std::string& text);

}  // namespace cadscript
