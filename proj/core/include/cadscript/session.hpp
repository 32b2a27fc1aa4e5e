#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cadscript/dsl.hpp"
#include "cadscript/geometry.hpp"
#include "cadscript/solar.hpp"

namespace cadscript {

struct SceneObject {
  std::string id;
  geom::Solid solid;
  dsl::ObjectState state = dsl::ObjectState::draft;
  std::size_t batch = 0;  // history index of the batch that created it
};

/// Named objects in creation order plus the auto-naming counter.
class Scene {
 public:
  [[nodiscard]] const std::vector<SceneObject>& objects() const { return objects_; }
  [[nodiscard]] const SceneObject* find(std::string_view id) const;
  [[nodiscard]] SceneObject* find(std::string_view id);
  [[nodiscard]] std::size_t size() const { return objects_.size(); }
  [[nodiscard]] bool empty() const { return objects_.empty(); }
  [[nodiscard]] std::size_t triangle_count() const;
  [[nodiscard]] geom::Aabb bounds() const;
  [[nodiscard]] std::uint64_t next_auto_index() const { return next_auto_index_; }

  void add(SceneObject object);
  bool remove(std::string_view id);
  void set_next_auto_index(std::uint64_t next) { next_auto_index_ = next; }

  /// What validation and prompts see of this scene.
  [[nodiscard]] dsl::SceneContext context() const;

  /// Ids, states, creation order, counter and mesh bits all equal.
  bool operator==(const Scene& other) const;

 private:
  std::vector<SceneObject> objects_;
  std::uint64_t next_auto_index_ = 1;
};

/// 64-bit FNV-1a over the scene's canonical bytes, as 16 hex digits.
[[nodiscard]] std::string scene_hash(const Scene& scene);

/// One line per object, creation order: id, kind, state, bounds, triangles, detail.
[[nodiscard]] std::string scene_snapshot_summary(const Scene& scene);

/// Canonical DSL-like description of a primitive ("box 1 1 0.3 at 0 0 0"),
/// or the boolean kind for composite solids.
[[nodiscard]] std::string describe_solid(const geom::Solid& solid);

struct ExecutionError {
  std::string kind;          // KernelErrc name, or ParseError / SemanticError / NothingToUndo
  std::string message;
  std::size_t statement = 0; // 1-based; 0 when not tied to a statement
  dsl::Span span;
};

struct ExecutionResult {
  std::vector<std::string> created_ids;
  std::vector<std::string> deleted_ids;
  std::vector<std::string> baked_ids;
  std::vector<std::string> messages;
  std::optional<ExecutionError> error;
  [[nodiscard]] bool ok() const { return !error.has_value(); }
};

struct HistoryEntry {
  std::string source;
  dsl::Program program;
  ExecutionResult result;
};

struct SessionConfig {
  geom::TessellationQuality quality;
  geom::SpacingMode spacing_mode = geom::SpacingMode::gap;
  bool operator==(const SessionConfig& o) const {
    return quality.sphere_segments == o.quality.sphere_segments &&
           quality.hypar_divisions == o.quality.hypar_divisions && spacing_mode == o.spacing_mode;
  }
};

inline constexpr std::uint64_t kDefaultSeed = 20240621;

/// Strictly serial: one batch at a time. Every successful batch pushes a full
/// snapshot of the prior state (scene, RNG stream, last sun study).
class Session {
 public:
  explicit Session(std::uint64_t seed = kDefaultSeed, SessionConfig config = {});

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] const SessionConfig& config() const { return config_; }
  [[nodiscard]] const Scene& scene() const { return scene_; }
  [[nodiscard]] const std::vector<HistoryEntry>& history() const { return history_; }
  [[nodiscard]] const std::optional<solar::InsolationGrid>& last_sun_study() const { return sun_study_; }
  /// Increases on every successful batch or undo.
  [[nodiscard]] std::uint64_t revision() const { return revision_; }

  /// Applies a validated program atomically. A lone `undo` statement undoes.
  ExecutionResult execute(const dsl::ValidatedProgram& program, std::string source);

  /// Parse, validate against the current scene, execute.
  ExecutionResult run(std::string_view source);

  ExecutionResult undo();

 private:
  struct Snapshot {
    Scene scene;
    std::mt19937_64 rng;
    std::optional<solar::InsolationGrid> sun_study;
  };

  std::uint64_t seed_;
  SessionConfig config_;
  Scene scene_;
  std::mt19937_64 rng_;
  std::optional<solar::InsolationGrid> sun_study_;
  std::vector<HistoryEntry> history_;
  std::vector<Snapshot> snapshots_;
  std::uint64_t revision_ = 0;
};

/// Rebuilds a scene by re-running the recorded sources from an empty session.
[[nodiscard]] Scene replay(const std::vector<std::string>& sources, std::uint64_t seed, SessionConfig config = {});
[[nodiscard]] Scene replay(const std::vector<HistoryEntry>& history, std::uint64_t seed, SessionConfig config = {});

/// Thrown by replay when a recorded batch no longer applies.
class ReplayError : public std::runtime_error {
 public:
  ReplayError(std::size_t batch, const ExecutionError& error);
  [[nodiscard]] std::size_t batch() const { return batch_; }

 private:
  std::size_t batch_;
};

// Session file: "cadscript-session 1", then "seed", "spacing", "sphere-segments",
// "hypar-divisions" lines, then per batch "batch <line count>" followed by the
// source lines verbatim. See docs/session-format.md.
struct SessionFile {
  std::uint64_t seed = kDefaultSeed;
  SessionConfig config;
  std::vector<std::string> sources;
};

[[nodiscard]] std::string write_session_file(const Session& session);
[[nodiscard]] SessionFile parse_session_file(std::string_view text);
[[nodiscard]] Session load_session(const SessionFile& file);

}  // namespace cadscript
