#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cadscript/dsl.hpp"
#include "cadscript/session.hpp"

namespace cadscript {

struct ExportOptions {
  bool include_drafts = false;
  std::uint64_t seed = kDefaultSeed;
};

/// ASCII OBJ: header comment, then per object `o`, `v` lines (9 significant
/// digits) and 1-based `f` lines. Objects in creation order.
[[nodiscard]] std::string export_obj(const Scene& scene, const ExportOptions& options);

/// Binary STL: 80-byte header "cadscript seed=<seed>", little-endian uint32
/// triangle count, 50 bytes per triangle.
[[nodiscard]] std::string export_stl(const Scene& scene, const ExportOptions& options);

/// One Rhino command-macro line per statement, for pasting into Rhino. Created
/// objects are named after the validated plan. Sphere centers on edges come
/// from `resolved` (the scene after execution) when given, otherwise from the
/// box geometry in the program or in `resolved`; a random edge with no
/// resolved scene becomes a comment line.
[[nodiscard]] std::string emit_rhino_macro(const dsl::ValidatedProgram& program, const Scene* resolved = nullptr,
                                           geom::SpacingMode spacing_mode = geom::SpacingMode::gap);

/// Macro for every batch in the session history, replayed in order so random
/// placements resolve exactly as they did.
[[nodiscard]] std::string session_macro(const Session& session);

struct ObjSummary {
  std::size_t objects = 0;
  std::size_t vertices = 0;
  std::size_t faces = 0;
  std::vector<std::string> names;
  std::vector<geom::Aabb> bounds;
  std::vector<std::size_t> faces_per_object;
};

/// Minimal reader for the OBJ subset export_obj writes.
[[nodiscard]] std::optional<ObjSummary> read_obj_summary(const std::string& text);

struct StlTriangle {
  std::array<float, 3> normal{};
  std::array<std::array<float, 3>, 3> vertices{};
};

/// Parses binary STL produced by export_stl; nullopt on size mismatch.
[[nodiscard]] std::optional<std::vector<StlTriangle>> read_stl(const std::string& bytes);

}  // namespace cadscript
