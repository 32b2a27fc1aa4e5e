#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <set>
#include <unordered_map>

#include "cadscript/dsl.hpp"

namespace cadscript::dsl {

namespace {

constexpr int kMinSphereSegments = 8;
constexpr int kMaxSphereSegments = 1024;
constexpr int kMaxSunInterval = 120;

struct Known {
  std::string kind;
  ObjectState state = ObjectState::draft;
  std::size_t triangles = 0;
};

class Validator {
 public:
  Validator(const Program& program, const SceneContext& ctx, const geom::TessellationQuality& quality)
      : program_(program), quality_(quality), next_auto_(ctx.next_auto_index) {
    for (const auto& obj : ctx.objects) {
      objects_[obj.id] = Known{obj.kind, obj.state, obj.triangles};
      total_triangles_ += obj.triangles;
    }
    // Explicit names anywhere in the batch are off limits for auto-naming.
    for (const auto& st : program.statements) {
      std::visit(
          [this](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (requires { s.name; }) {
              if (s.name) reserved_.insert(*s.name);
            } else if constexpr (std::is_same_v<T, CreateGrid>) {
              if (s.name_prefix) reserved_.insert(*s.name_prefix);
            }
          },
          st);
    }
  }

  struct Outcome {
    std::vector<StatementPlan> plans;
    std::vector<SemanticError> errors;
    std::uint64_t next_auto_index = 1;
  };

  Outcome run() {
    Outcome out;
    const auto& statements = program_.statements;
    for (index_ = 0; index_ < statements.size(); ++index_) {
      plan_ = StatementPlan{};
      if (std::holds_alternative<Undo>(statements[index_]) && statements.size() > 1) {
        error(SemanticErrorKind::undo_not_alone, "undo must be the only command in its batch");
      }
      std::visit(*this, statements[index_]);
      out.plans.push_back(std::move(plan_));
    }
    out.errors = std::move(errors_);
    out.next_auto_index = next_auto_;
    return out;
  }

  void operator()(const CreateBox& b) {
    positive("box width", b.extents[0]);
    positive("box depth", b.extents[1]);
    positive("box height", b.extents[2]);
    if (b.at) coordinates("position", b.at->point);
    create(b.name, "box", 12);
  }

  void operator()(const CreateSphere& s) {
    positive("sphere radius", s.radius);
    int segments = quality_.sphere_segments;
    if (s.segments) {
      segments = *s.segments;
      if (segments < kMinSphereSegments || segments > kMaxSphereSegments) {
        error(SemanticErrorKind::out_of_range, fmt::format("segment count {} outside [{}, {}]", segments,
                                                           kMinSphereSegments, kMaxSphereSegments));
        segments = std::clamp(segments, kMinSphereSegments, kMaxSphereSegments);
      }
    }
    if (const auto* at = std::get_if<At>(&s.placement)) {
      coordinates("position", at->point);
    } else if (const auto* e = std::get_if<OnEdge>(&s.placement)) {
      if (const Known* target = reference(e->target)) {
        if (target->kind != "box") {
          error(SemanticErrorKind::not_a_box,
                fmt::format("'{}' is a {}, spheres can only be placed on the edges of a box", e->target,
                            target->kind));
        }
      }
      if (e->edge && (*e->edge < 0 || *e->edge >= geom::kBoxEdgeCount)) {
        error(SemanticErrorKind::out_of_range, fmt::format("edge index {} outside [0, 11]", *e->edge));
      }
      if (e->t && !(*e->t >= 0.0 && *e->t <= 1.0)) {
        error(SemanticErrorKind::out_of_range, fmt::format("edge parameter {} outside [0, 1]", format_number(*e->t)));
      }
    }
    create(s.name, "sphere", geom::sphere_triangle_count(segments));
  }

  void operator()(const CreateHypar& h) {
    positive("plan width", h.plan_width);
    positive("plan depth", h.plan_depth);
    positive("thickness", h.thickness);
    for (double z : h.corner_heights) coordinate("corner height", z);
    create(h.name, "hypar", geom::hypar_triangle_count(quality_.hypar_divisions));
  }

  void operator()(const CreateGrid& g) {
    bool counts_ok = true;
    if (g.rows <= 0) {
      error(SemanticErrorKind::non_positive_dimension, fmt::format("row count must be > 0, got {}", g.rows));
      counts_ok = false;
    }
    if (g.cols <= 0) {
      error(SemanticErrorKind::non_positive_dimension, fmt::format("column count must be > 0, got {}", g.cols));
      counts_ok = false;
    }
    positive("footprint width", g.footprint_width);
    positive("footprint depth", g.footprint_depth);
    positive("building height", g.height);
    positive("spacing", g.spacing);
    if (!counts_ok) return;
    const long long cells = static_cast<long long>(g.rows) * g.cols;
    if (cells > geom::kMaxGridCells) {
      error(SemanticErrorKind::resource_limit,
            fmt::format("grid cells {} > {}", cells, geom::kMaxGridCells));
      return;
    }
    const double span_x = g.cols * (g.footprint_width + g.spacing);
    const double span_y = g.rows * (g.footprint_depth + g.spacing);
    if (span_x > kMaxCoordinate || span_y > kMaxCoordinate) {
      error(SemanticErrorKind::out_of_range,
            fmt::format("grid extends beyond {} m from the origin", format_number(kMaxCoordinate)));
    }
    const std::string prefix = g.name_prefix ? *g.name_prefix : next_auto_name();
    for (int r = 0; r < g.rows; ++r) {
      for (int c = 0; c < g.cols; ++c) {
        add_object(fmt::format("{}_{}_{}", prefix, r, c), "box", 12);
      }
    }
  }

  void operator()(const BooleanOp& op) {
    const Known* a = reference(op.a);
    const Known* b = reference(op.b);
    const std::size_t operands = (a ? a->triangles : 0) + (b ? b->triangles : 0);
    std::string id;
    if (op.name) {
      id = *op.name;
    } else {
      const std::string base = fmt::format("{}_of_{}_{}", statement_keyword(program_.statements[index_]), op.a, op.b);
      id = base;
      for (int k = 2; taken(id); ++k) id = fmt::format("{}_{}", base, k);
    }
    add_object(id, std::string(geom::to_string(op.kind)),
               predicted_triangles(program_.statements[index_], quality_, operands));
  }

  void operator()(const Move& m) {
    coordinates("offset", m.delta);
    const Known* target = reference(m.target);
    if (target && target->state == ObjectState::baked) {
      // Baked objects stay put; the move applies to a fresh draft copy.
      add_object(next_auto_name(), target->kind, target->triangles);
    }
  }

  void operator()(const Delete& d) {
    if (const Known* target = reference(d.target)) {
      total_triangles_ -= target->triangles;
      objects_.erase(d.target);
    }
  }

  void operator()(const Bake& b) {
    if (reference(b.target)) objects_[b.target].state = ObjectState::baked;
  }

  void operator()(const SunStudy& s) {
    if (!(s.latitude >= -90.0 && s.latitude <= 90.0)) {
      error(SemanticErrorKind::out_of_range, fmt::format("latitude {} outside [-90, 90]", format_number(s.latitude)));
    }
    if (!(s.longitude >= -180.0 && s.longitude <= 180.0)) {
      error(SemanticErrorKind::out_of_range,
            fmt::format("longitude {} outside [-180, 180]", format_number(s.longitude)));
    }
    if (s.interval_min < 1 || s.interval_min > kMaxSunInterval) {
      error(SemanticErrorKind::out_of_range,
            fmt::format("interval {} minutes outside [1, {}]", s.interval_min, kMaxSunInterval));
    }
    positive("cell size", s.cell_m);
  }

  void operator()(const Undo&) {}

 private:
  void error(SemanticErrorKind kind, const std::string& detail) {
    const Statement& st = program_.statements[index_];
    const Span span = index_ < program_.spans.size() ? program_.spans[index_] : Span{};
    errors_.push_back({kind, fmt::format("statement {} ({}): {}", index_ + 1, statement_keyword(st), detail), span,
                       index_});
  }

  void positive(std::string_view what, double v) {
    if (!(v > 0.0)) {
      error(SemanticErrorKind::non_positive_dimension, fmt::format("{} must be > 0, got {}", what, format_number(v)));
    } else if (v > kMaxCoordinate) {
      error(SemanticErrorKind::out_of_range,
            fmt::format("{} {} exceeds {} m", what, format_number(v), format_number(kMaxCoordinate)));
    }
  }

  void coordinate(std::string_view what, double v) {
    if (!(std::abs(v) <= kMaxCoordinate)) {
      error(SemanticErrorKind::out_of_range,
            fmt::format("{} {} exceeds {} m", what, format_number(v), format_number(kMaxCoordinate)));
    }
  }

  void coordinates(std::string_view what, const Point3& p) {
    for (double v : p) coordinate(what, v);
  }

  const Known* reference(const std::string& id) {
    const auto it = objects_.find(id);
    if (it == objects_.end()) {
      error(SemanticErrorKind::unknown_identifier, fmt::format("unknown object '{}'", id));
      return nullptr;
    }
    return &it->second;
  }

  [[nodiscard]] bool taken(const std::string& id) const { return objects_.count(id) > 0 || reserved_.count(id) > 0; }

  std::string next_auto_name() {
    std::string id;
    do {
      id = fmt::format("obj{}", next_auto_++);
    } while (taken(id) || used_.count(id) > 0);
    return id;
  }

  void create(const std::optional<std::string>& name, std::string kind, std::size_t triangles) {
    add_object(name ? *name : next_auto_name(), std::move(kind), triangles);
  }

  void add_object(const std::string& id, std::string kind, std::size_t triangles) {
    if (objects_.count(id) > 0) {
      error(SemanticErrorKind::duplicate_name, fmt::format("an object named '{}' already exists", id));
      return;
    }
    objects_[id] = Known{std::move(kind), ObjectState::draft, triangles};
    used_.insert(id);
    plan_.creates.push_back(id);
    total_triangles_ += triangles;
    if (objects_.size() > kMaxObjects && !objects_limit_reported_) {
      objects_limit_reported_ = true;
      error(SemanticErrorKind::resource_limit, fmt::format("object count {} > {}", objects_.size(), kMaxObjects));
    }
    if (total_triangles_ > kMaxTriangles && !triangle_limit_reported_) {
      triangle_limit_reported_ = true;
      error(SemanticErrorKind::resource_limit,
            fmt::format("predicted triangle count {} > {}", total_triangles_, kMaxTriangles));
    }
  }

  const Program& program_;
  const geom::TessellationQuality& quality_;
  std::uint64_t next_auto_;
  std::unordered_map<std::string, Known> objects_;
  std::set<std::string> reserved_;
  std::set<std::string> used_;
  std::size_t total_triangles_ = 0;
  bool objects_limit_reported_ = false;
  bool triangle_limit_reported_ = false;
  std::size_t index_ = 0;
  StatementPlan plan_;
  std::vector<SemanticError> errors_;
};

}  // namespace

std::string_view to_string(ObjectState state) { return state == ObjectState::baked ? "baked" : "draft"; }

std::string_view to_string(SemanticErrorKind kind) {
  switch (kind) {
    case SemanticErrorKind::unknown_identifier: return "UnknownIdentifier";
    case SemanticErrorKind::duplicate_name: return "DuplicateName";
    case SemanticErrorKind::non_positive_dimension: return "NonPositiveDimension";
    case SemanticErrorKind::resource_limit: return "ResourceLimit";
    case SemanticErrorKind::out_of_range: return "OutOfRange";
    case SemanticErrorKind::not_a_box: return "NotABox";
    case SemanticErrorKind::undo_not_alone: return "UndoNotAlone";
  }
  return "Unknown";
}

std::size_t predicted_triangles(const Statement& statement, const geom::TessellationQuality& quality,
                                std::size_t operand_triangles) {
  return std::visit(
      [&](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CreateBox>) {
          return 12;
        } else if constexpr (std::is_same_v<T, CreateSphere>) {
          return geom::sphere_triangle_count(s.segments.value_or(quality.sphere_segments));
        } else if constexpr (std::is_same_v<T, CreateHypar>) {
          return geom::hypar_triangle_count(quality.hypar_divisions);
        } else if constexpr (std::is_same_v<T, CreateGrid>) {
          return static_cast<std::size_t>(std::max(s.rows, 0)) * static_cast<std::size_t>(std::max(s.cols, 0)) * 12;
        } else if constexpr (std::is_same_v<T, BooleanOp>) {
          // Splitting along the intersection curve roughly doubles the operand faces.
          return 2 * operand_triangles;
        } else if constexpr (std::is_same_v<T, Move>) {
          return operand_triangles;
        } else {
          return 0;
        }
      },
      statement);
}

ValidateResult validate(const Program& program, const SceneContext& context,
                        const geom::TessellationQuality& quality) {
  Validator::Outcome outcome = Validator(program, context, quality).run();
  ValidateResult result;
  if (!outcome.errors.empty()) {
    result.errors = std::move(outcome.errors);
    return result;
  }
  ValidatedProgram vp;
  vp.program_ = program;
  vp.plans_ = std::move(outcome.plans);
  vp.next_auto_index_ = outcome.next_auto_index;
  result.program = std::move(vp);
  return result;
}

}  // namespace cadscript::dsl
