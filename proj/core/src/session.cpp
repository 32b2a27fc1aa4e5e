#include "cadscript/session.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fmt/format.h>

#include "cadscript/csg.hpp"

namespace cadscript {

namespace {

std::string num(double v) { return dsl::format_number(v); }

std::string point_text(const Vec3& p) { return fmt::format("({}, {}, {})", num(p.x), num(p.y), num(p.z)); }

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  template <typename T>
  void value(const T& v) {
    bytes(&v, sizeof v);
  }
  void text(std::string_view s) {
    value(s.size());
    bytes(s.data(), s.size());
  }
  [[nodiscard]] std::uint64_t digest() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

// Applies one validated batch to a working copy of the scene.
class Executor {
 public:
  Executor(Scene& scene, std::mt19937_64& rng, std::optional<solar::InsolationGrid>& sun_study,
           const SessionConfig& config, std::size_t batch, ExecutionResult& result)
      : scene_(scene), rng_(rng), sun_study_(sun_study), config_(config), batch_(batch), result_(result) {}

  void apply(const dsl::Statement& statement, const dsl::StatementPlan& plan) {
    plan_ = &plan;
    std::visit(*this, statement);
  }

  void operator()(const dsl::CreateBox& b) {
    const Vec3 origin = b.at ? Vec3{b.at->point[0], b.at->point[1], b.at->point[2]} : Vec3{};
    const std::string& id = created(0);
    add(id, geom::make_box({b.extents[0], b.extents[1], b.extents[2]}, origin));
    std::string msg = fmt::format("created {} (box {}×{}×{} m", id, num(b.extents[0]), num(b.extents[1]),
                                  num(b.extents[2]));
    if (b.at) msg += fmt::format(" at {}", point_text(origin));
    result_.messages.push_back(msg + ")");
  }

  void operator()(const dsl::CreateSphere& s) {
    Vec3 center;
    std::string where;
    if (const auto* at = std::get_if<dsl::At>(&s.placement)) {
      center = {at->point[0], at->point[1], at->point[2]};
    } else if (const auto* e = std::get_if<dsl::OnEdge>(&s.placement)) {
      const SceneObject& box = require(e->target);
      if (!box.solid.is_box()) {
        throw geom::KernelError(geom::KernelErrc::not_a_box,
                                fmt::format("'{}' is a {}, not a box", e->target, box.solid.kind()));
      }
      const int edge = e->edge ? *e->edge : geom::uniform_index(rng_, geom::kBoxEdgeCount);
      const double t = e->t ? *e->t : (e->random_t ? geom::uniform_unit(rng_) : 0.5);
      center = geom::box_edge_point(box.solid, edge, t);
      where = fmt::format(" on edge {} of {}, t={}", edge, e->target, num(t));
    }
    geom::TessellationQuality q = config_.quality;
    if (s.segments) q.sphere_segments = *s.segments;
    const std::string& id = created(0);
    add(id, geom::make_sphere(s.radius, center, q));
    result_.messages.push_back(
        fmt::format("created {} (sphere r={} m at {}{})", id, num(s.radius), point_text(center), where));
  }

  void operator()(const dsl::CreateHypar& h) {
    const std::string& id = created(0);
    add(id, geom::make_hypar(h.plan_width, h.plan_depth, h.corner_heights, h.thickness, config_.quality));
    const auto& c = h.corner_heights;
    result_.messages.push_back(fmt::format("created {} (hypar {}×{} m, corners {} {} {} {} m, thickness {} m)", id,
                                           num(h.plan_width), num(h.plan_depth), num(c[0]), num(c[1]), num(c[2]),
                                           num(c[3]), num(h.thickness)));
  }

  void operator()(const dsl::CreateGrid& g) {
    geom::BuildingGridSpec spec;
    spec.rows = g.rows;
    spec.cols = g.cols;
    spec.footprint_width = g.footprint_width;
    spec.footprint_depth = g.footprint_depth;
    spec.height = g.height;
    spec.spacing = g.spacing;
    spec.mode = config_.spacing_mode;
    std::vector<geom::Solid> solids = geom::make_building_grid(spec);
    for (std::size_t k = 0; k < solids.size(); ++k) add(created(k), std::move(solids[k]));
    result_.messages.push_back(fmt::format("created {} buildings {}..{} ({}×{}×{} m, {} {} m)", solids.size(),
                                           plan_->creates.front(), plan_->creates.back(), num(g.footprint_width),
                                           num(g.footprint_depth), num(g.height),
                                           geom::to_string(config_.spacing_mode), num(g.spacing)));
  }

  void operator()(const dsl::BooleanOp& op) {
    const geom::Solid a = require(op.a).solid;
    const geom::Solid b = require(op.b).solid;
    geom::Solid out = geom::boolean_op(op.kind, a, b);
    const double volume = out.mesh().empty() ? 0.0 : geom::mesh_volume(out.mesh());
    const std::string& id = created(0);
    add(id, std::move(out));
    result_.messages.push_back(fmt::format("created {} ({} of {} and {}, volume {:.7g} m³)", id,
                                           geom::to_string(op.kind), op.a, op.b, volume));
  }

  void operator()(const dsl::Move& m) {
    const Vec3 delta{m.delta[0], m.delta[1], m.delta[2]};
    SceneObject& target = require(m.target);
    if (target.state == dsl::ObjectState::baked) {
      const std::string& id = created(0);
      geom::Solid copy = target.solid.translated(delta);
      add(id, std::move(copy));
      result_.messages.push_back(
          fmt::format("moved copy {} of baked {} by {} m", id, m.target, point_text(delta)));
      return;
    }
    target.solid = target.solid.translated(delta);
    result_.messages.push_back(fmt::format("moved {} by {} m", m.target, point_text(delta)));
  }

  void operator()(const dsl::Delete& d) {
    require(d.target);
    scene_.remove(d.target);
    result_.deleted_ids.push_back(d.target);
    result_.messages.push_back(fmt::format("deleted {}", d.target));
  }

  void operator()(const dsl::Bake& b) {
    SceneObject& target = require(b.target);
    if (target.state == dsl::ObjectState::baked) {
      result_.messages.push_back(fmt::format("{} is already baked", b.target));
      return;
    }
    target.state = dsl::ObjectState::baked;
    result_.baked_ids.push_back(b.target);
    result_.messages.push_back(fmt::format("baked {}", b.target));
  }

  void operator()(const dsl::SunStudy& s) {
    std::vector<const geom::TriangleMesh*> meshes;
    for (const auto& obj : scene_.objects()) meshes.push_back(&obj.solid.mesh());
    const solar::GeoLocation loc{s.latitude, s.longitude};
    const solar::GroundGrid grid = solar::default_ground_grid(scene_.bounds(), s.cell_m);
    solar::InsolationGrid study = solar::insolation_study(meshes, loc, s.date, s.interval_min, grid);
    const auto stats = study.stats();
    result_.messages.push_back(fmt::format(
        "sun study at lat {} lon {} on {} (UTC, {}-min interval): daylight {:.2f} h; {}×{} cells of {} m; "
        "sunlit hours min {:.2f} max {:.2f} mean {:.2f} over {} open cells",
        num(s.latitude), num(s.longitude), s.date.to_string(), s.interval_min, study.daylight_hours, grid.nx, grid.ny,
        num(s.cell_m), stats.min, stats.max, stats.mean, stats.cells));
    sun_study_ = std::move(study);
  }

  void operator()(const dsl::Undo&) {
    throw geom::KernelError(geom::KernelErrc::out_of_range, "undo cannot run inside a batch");
  }

 private:
  const std::string& created(std::size_t k) const {
    if (k >= plan_->creates.size()) {
      throw geom::KernelError(geom::KernelErrc::out_of_range, "statement plan does not match the program");
    }
    return plan_->creates[k];
  }

  SceneObject& require(const std::string& id) {
    SceneObject* obj = scene_.find(id);
    if (!obj) throw geom::KernelError(geom::KernelErrc::out_of_range, fmt::format("unknown object '{}'", id));
    return *obj;
  }

  void add(const std::string& id, geom::Solid solid) {
    if (scene_.find(id)) {
      throw geom::KernelError(geom::KernelErrc::out_of_range, fmt::format("an object named '{}' already exists", id));
    }
    scene_.add(SceneObject{id, std::move(solid), dsl::ObjectState::draft, batch_});
    result_.created_ids.push_back(id);
  }

  Scene& scene_;
  std::mt19937_64& rng_;
  std::optional<solar::InsolationGrid>& sun_study_;
  const SessionConfig& config_;
  std::size_t batch_;
  ExecutionResult& result_;
  const dsl::StatementPlan* plan_ = nullptr;
};

ExecutionResult failure(std::string kind, std::string message, std::size_t statement = 0, dsl::Span span = {}) {
  ExecutionResult r;
  r.error = ExecutionError{std::move(kind), std::move(message), statement, span};
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Scene
// ---------------------------------------------------------------------------

const SceneObject* Scene::find(std::string_view id) const {
  const auto it = std::find_if(objects_.begin(), objects_.end(), [&](const SceneObject& o) { return o.id == id; });
  return it == objects_.end() ? nullptr : &*it;
}

SceneObject* Scene::find(std::string_view id) {
  const auto it = std::find_if(objects_.begin(), objects_.end(), [&](const SceneObject& o) { return o.id == id; });
  return it == objects_.end() ? nullptr : &*it;
}

std::size_t Scene::triangle_count() const {
  std::size_t n = 0;
  for (const auto& o : objects_) n += o.solid.mesh().triangle_count();
  return n;
}

geom::Aabb Scene::bounds() const {
  geom::Aabb box;
  for (const auto& o : objects_) box = box.merged(o.solid.bounds());
  return box;
}

void Scene::add(SceneObject object) { objects_.push_back(std::move(object)); }

bool Scene::remove(std::string_view id) {
  const auto it = std::find_if(objects_.begin(), objects_.end(), [&](const SceneObject& o) { return o.id == id; });
  if (it == objects_.end()) return false;
  objects_.erase(it);
  return true;
}

dsl::SceneContext Scene::context() const {
  dsl::SceneContext ctx;
  ctx.next_auto_index = next_auto_index_;
  for (const auto& o : objects_) {
    ctx.objects.push_back({o.id, std::string(o.solid.kind()), o.state, o.solid.bounds(),
                           o.solid.mesh().triangle_count(), describe_solid(o.solid)});
  }
  return ctx;
}

bool Scene::operator==(const Scene& other) const {
  if (next_auto_index_ != other.next_auto_index_ || objects_.size() != other.objects_.size()) return false;
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    const auto& a = objects_[i];
    const auto& b = other.objects_[i];
    if (a.id != b.id || a.state != b.state || a.batch != b.batch || !(a.solid.mesh() == b.solid.mesh())) return false;
  }
  return true;
}

std::string scene_hash(const Scene& scene) {
  Fnv1a h;
  h.value(scene.next_auto_index());
  h.value(scene.size());
  for (const auto& o : scene.objects()) {
    h.text(o.id);
    h.value(static_cast<int>(o.state));
    h.value(o.batch);
    const auto& mesh = o.solid.mesh();
    h.value(mesh.vertices.size());
    for (const auto& v : mesh.vertices) {
      h.value(v.x);
      h.value(v.y);
      h.value(v.z);
    }
    h.value(mesh.triangles.size());
    for (const auto& t : mesh.triangles) h.value(t);
  }
  return fmt::format("{:016x}", h.digest());
}

std::string describe_solid(const geom::Solid& solid) {
  if (!solid.membership()) return "empty";
  return std::visit(
      [](const auto& shape) -> std::string {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, geom::BoxShape>) {
          const Vec3 e = shape.max - shape.min;
          return fmt::format("box {} {} {} at {} {} {}", num(e.x), num(e.y), num(e.z), num(shape.min.x),
                             num(shape.min.y), num(shape.min.z));
        } else if constexpr (std::is_same_v<T, geom::SphereShape>) {
          return fmt::format("sphere {} at {} {} {}", num(shape.radius), num(shape.center.x), num(shape.center.y),
                             num(shape.center.z));
        } else if constexpr (std::is_same_v<T, geom::HyparShape>) {
          const auto& c = shape.corner_heights;
          return fmt::format("hypar {} {} corners {} {} {} {} thickness {}", num(shape.width), num(shape.depth),
                             num(c[0]), num(c[1]), num(c[2]), num(c[3]), num(shape.thickness));
        } else {
          return std::string(geom::to_string(shape.kind));
        }
      },
      solid.membership()->value);
}

std::string scene_snapshot_summary(const Scene& scene) {
  std::string out;
  for (const auto& o : scene.objects()) {
    const geom::Aabb b = o.solid.bounds();
    out += fmt::format("{} {} {} aabb [{:.6g} {:.6g} {:.6g}]..[{:.6g} {:.6g} {:.6g}] tris {} | {}\n", o.id,
                       o.solid.kind(), dsl::to_string(o.state), b.min.x, b.min.y, b.min.z, b.max.x, b.max.y,
                       b.max.z, o.solid.mesh().triangle_count(), describe_solid(o.solid));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Session
// ---------------------------------------------------------------------------

Session::Session(std::uint64_t seed, SessionConfig config) : seed_(seed), config_(config), rng_(seed) {}

ExecutionResult Session::execute(const dsl::ValidatedProgram& vp, std::string source) {
  if (vp.is_undo()) return undo();
  const dsl::Program& program = vp.program();
  if (program.statements.empty()) return {};

  Scene work = scene_;
  std::mt19937_64 rng = rng_;
  std::optional<solar::InsolationGrid> study = sun_study_;
  ExecutionResult result;
  Executor exec(work, rng, study, config_, history_.size(), result);
  for (std::size_t i = 0; i < program.statements.size(); ++i) {
    const dsl::Statement& st = program.statements[i];
    try {
      exec.apply(st, vp.plans()[i]);
    } catch (const geom::KernelError& e) {
      const dsl::Span span = i < program.spans.size() ? program.spans[i] : dsl::Span{};
      return failure(std::string(geom::to_string(e.code())),
                     fmt::format("statement {} ({}): {}", i + 1, dsl::statement_keyword(st), e.what()), i + 1, span);
    }
  }
  work.set_next_auto_index(vp.next_auto_index());

  snapshots_.push_back({std::move(scene_), rng_, std::move(sun_study_)});
  scene_ = std::move(work);
  rng_ = rng;
  sun_study_ = std::move(study);
  history_.push_back({std::move(source), program, result});
  ++revision_;
  return result;
}

ExecutionResult Session::run(std::string_view source) {
  dsl::ParseResult parsed = dsl::parse(source);
  if (!parsed.ok()) return failure("ParseError", parsed.error->message, 0, parsed.error->span);
  dsl::ValidateResult validated = dsl::validate(*parsed.program, scene_.context(), config_.quality);
  if (!validated.ok()) {
    std::string message;
    for (const auto& e : validated.errors) {
      if (!message.empty()) message += '\n';
      message += e.message;
    }
    const auto& first = validated.errors.front();
    return failure("SemanticError", std::move(message), first.statement + 1, first.span);
  }
  return execute(*validated.program, std::string(source));
}

ExecutionResult Session::undo() {
  if (history_.empty()) return failure("NothingToUndo", "nothing to undo");
  Snapshot snap = std::move(snapshots_.back());
  snapshots_.pop_back();
  HistoryEntry last = std::move(history_.back());
  history_.pop_back();
  scene_ = std::move(snap.scene);
  rng_ = snap.rng;
  sun_study_ = std::move(snap.sun_study);
  ++revision_;
  ExecutionResult r;
  r.messages.push_back(fmt::format("undid batch {} ({} statement{})", history_.size() + 1,
                                   last.program.statements.size(), last.program.statements.size() == 1 ? "" : "s"));
  return r;
}

ReplayError::ReplayError(std::size_t batch, const ExecutionError& error)
    : std::runtime_error(fmt::format("replay failed at batch {}: {}", batch + 1, error.message)), batch_(batch) {}

Scene replay(const std::vector<std::string>& sources, std::uint64_t seed, SessionConfig config) {
  Session session(seed, config);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const ExecutionResult r = session.run(sources[i]);
    if (!r.ok()) throw ReplayError(i, *r.error);
  }
  return session.scene();
}

Scene replay(const std::vector<HistoryEntry>& history, std::uint64_t seed, SessionConfig config) {
  std::vector<std::string> sources;
  sources.reserve(history.size());
  for (const auto& h : history) sources.push_back(h.source);
  return replay(sources, seed, config);
}

// ---------------------------------------------------------------------------
// Session file
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

template <typename T>
T parse_field(std::string_view line, std::string_view key) {
  if (line.substr(0, key.size()) != key || line.size() <= key.size() + 1 || line[key.size()] != ' ') {
    throw std::runtime_error(fmt::format("session file: expected '{} <value>', found '{}'", key, line));
  }
  const std::string_view value = line.substr(key.size() + 1);
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::runtime_error(fmt::format("session file: bad value for {}: '{}'", key, value));
  }
  return out;
}

}  // namespace

std::string write_session_file(const Session& session) {
  std::string out = "cadscript-session 1\n";
  out += fmt::format("seed {}\n", session.seed());
  out += fmt::format("spacing {}\n", geom::to_string(session.config().spacing_mode));
  out += fmt::format("sphere-segments {}\n", session.config().quality.sphere_segments);
  out += fmt::format("hypar-divisions {}\n", session.config().quality.hypar_divisions);
  for (const auto& entry : session.history()) {
    const auto lines = split_lines(entry.source);
    out += fmt::format("batch {}\n", lines.size());
    for (const auto& line : lines) {
      out += line;
      out += '\n';
    }
  }
  return out;
}

SessionFile parse_session_file(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() < 5 || lines[0] != "cadscript-session 1") {
    throw std::runtime_error("session file: missing 'cadscript-session 1' header");
  }
  SessionFile file;
  file.seed = parse_field<std::uint64_t>(lines[1], "seed");
  if (lines[2].substr(0, 8) != "spacing ") throw std::runtime_error("session file: expected 'spacing gap|pitch'");
  const auto mode = geom::spacing_mode_from_string(lines[2].substr(8));
  if (!mode) throw std::runtime_error(fmt::format("session file: unknown spacing mode '{}'", lines[2].substr(8)));
  file.config.spacing_mode = *mode;
  file.config.quality.sphere_segments = parse_field<int>(lines[3], "sphere-segments");
  file.config.quality.hypar_divisions = parse_field<int>(lines[4], "hypar-divisions");
  std::size_t i = 5;
  while (i < lines.size()) {
    const auto count = parse_field<std::size_t>(lines[i], "batch");
    ++i;
    if (i + count > lines.size()) throw std::runtime_error("session file: truncated batch");
    std::string source;
    for (std::size_t k = 0; k < count; ++k) {
      if (k > 0) source += '\n';
      source += lines[i + k];
    }
    file.sources.push_back(std::move(source));
    i += count;
  }
  return file;
}

Session load_session(const SessionFile& file) {
  Session session(file.seed, file.config);
  for (std::size_t i = 0; i < file.sources.size(); ++i) {
    const ExecutionResult r = session.run(file.sources[i]);
    if (!r.ok()) throw ReplayError(i, *r.error);
  }
  return session;
}

}  // namespace cadscript
