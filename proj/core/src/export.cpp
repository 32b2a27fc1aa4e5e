#include "cadscript/export.hpp"

#include <bit>
#include <cstring>
#include <fmt/format.h>
#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace cadscript {

namespace {

bool exported(const SceneObject& o, const ExportOptions& options) {
  return options.include_drafts || o.state == dsl::ObjectState::baked;
}

void put_u32(std::string& out, std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap32(v);
  char b[4];
  std::memcpy(b, &v, 4);
  out.append(b, 4);
}

void put_f32(std::string& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

std::uint32_t get_u32(const std::string& in, std::size_t at) {
  std::uint32_t v;
  std::memcpy(&v, in.data() + at, 4);
  if constexpr (std::endian::native == std::endian::big) v = __builtin_bswap32(v);
  return v;
}

float get_f32(const std::string& in, std::size_t at) { return std::bit_cast<float>(get_u32(in, at)); }

}  // namespace

std::string export_obj(const Scene& scene, const ExportOptions& options) {
  std::string out = fmt::format("# cadscript OBJ seed={}{}\n", options.seed, options.include_drafts ? " drafts" : "");
  std::size_t base = 1;
  for (const SceneObject& o : scene.objects()) {
    if (!exported(o, options)) continue;
    const geom::TriangleMesh& m = o.solid.mesh();
    out += fmt::format("o {}\n", o.id);
    for (const Vec3& v : m.vertices) out += fmt::format("v {:.9g} {:.9g} {:.9g}\n", v.x, v.y, v.z);
    for (const auto& t : m.triangles) out += fmt::format("f {} {} {}\n", t[0] + base, t[1] + base, t[2] + base);
    base += m.vertices.size();
  }
  return out;
}

std::string export_stl(const Scene& scene, const ExportOptions& options) {
  std::string out(80, '\0');
  const std::string header = fmt::format("cadscript seed={}", options.seed);
  std::memcpy(out.data(), header.data(), std::min<std::size_t>(header.size(), 80));
  std::uint32_t count = 0;
  for (const SceneObject& o : scene.objects()) {
    if (exported(o, options)) count += static_cast<std::uint32_t>(o.solid.mesh().triangles.size());
  }
  put_u32(out, count);
  out.reserve(84 + std::size_t{count} * 50);
  for (const SceneObject& o : scene.objects()) {
    if (!exported(o, options)) continue;
    const geom::TriangleMesh& m = o.solid.mesh();
    for (const auto& t : m.triangles) {
      const Vec3& a = m.vertices[t[0]];
      const Vec3& b = m.vertices[t[1]];
      const Vec3& c = m.vertices[t[2]];
      Vec3 n = cross(b - a, c - a);
      const double len = length(n);
      n = len > 0.0 ? n / len : Vec3{0.0, 0.0, 1.0};
      for (const Vec3& v : {n, a, b, c}) {
        put_f32(out, static_cast<float>(v.x));
        put_f32(out, static_cast<float>(v.y));
        put_f32(out, static_cast<float>(v.z));
      }
      out.append(2, '\0');
    }
  }
  return out;
}

std::optional<std::vector<StlTriangle>> read_stl(const std::string& bytes) {
  if (bytes.size() < 84) return std::nullopt;
  const std::uint32_t count = get_u32(bytes, 80);
  if (bytes.size() != 84 + std::size_t{count} * 50) return std::nullopt;
  std::vector<StlTriangle> tris(count);
  std::size_t at = 84;
  for (StlTriangle& t : tris) {
    for (int k = 0; k < 3; ++k) t.normal[k] = get_f32(bytes, at + 4 * k);
    for (int v = 0; v < 3; ++v) {
      for (int k = 0; k < 3; ++k) t.vertices[v][k] = get_f32(bytes, at + 12 + 12 * v + 4 * k);
    }
    at += 50;
  }
  return tris;
}

std::optional<ObjSummary> read_obj_summary(const std::string& text) {
  ObjSummary s;
  std::istringstream in(text);
  std::string line;
  std::vector<Vec3> verts;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "o") {
      std::string name;
      ls >> name;
      s.names.push_back(name);
      s.bounds.emplace_back();
      s.faces_per_object.push_back(0);
      ++s.objects;
    } else if (tag == "v") {
      Vec3 v;
      if (!(ls >> v.x >> v.y >> v.z) || s.bounds.empty()) return std::nullopt;
      s.bounds.back().expand(v);
      verts.push_back(v);
      ++s.vertices;
    } else if (tag == "f") {
      std::size_t a = 0, b = 0, c = 0;
      if (!(ls >> a >> b >> c) || s.faces_per_object.empty()) return std::nullopt;
      for (std::size_t i : {a, b, c}) {
        if (i < 1 || i > verts.size()) return std::nullopt;
      }
      ++s.faces_per_object.back();
      ++s.faces;
    } else {
      return std::nullopt;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Rhino macro
// ---------------------------------------------------------------------------

namespace {

std::string num(double v) { return dsl::format_number(v); }

std::string pt(const Vec3& p) { return fmt::format("{},{},{}", num(p.x), num(p.y), num(p.z)); }


std::string select(std::initializer_list<std::string_view> ids) {
  std::string out = "_SelNone";
  for (auto id : ids) out += fmt::format(" _-SelName {}", id);
  return out;
}

std::string box_line(const Vec3& min, const Vec3& ext) {
  return fmt::format("_Box {} {} {}", pt(min), pt({min.x + ext.x, min.y + ext.y, min.z}), num(ext.z));
}

using NameSet = std::set<std::string, std::less<>>;

/// Names given explicitly or used as operands; only these get SetObjectName.
void collect_names(const dsl::Program& program, NameSet& out) {
  for (const auto& st : program.statements) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, dsl::CreateBox> || std::is_same_v<T, dsl::CreateSphere> ||
                        std::is_same_v<T, dsl::CreateHypar> || std::is_same_v<T, dsl::BooleanOp>) {
            if (s.name) out.insert(*s.name);
          }
          if constexpr (std::is_same_v<T, dsl::CreateSphere>) {
            if (const auto* e = std::get_if<dsl::OnEdge>(&s.placement)) out.insert(e->target);
          } else if constexpr (std::is_same_v<T, dsl::BooleanOp>) {
            out.insert(s.a);
            out.insert(s.b);
          } else if constexpr (std::is_same_v<T, dsl::Move> || std::is_same_v<T, dsl::Delete> ||
                               std::is_same_v<T, dsl::Bake>) {
            out.insert(s.target);
          } else if constexpr (std::is_same_v<T, dsl::CreateGrid>) {
            if (s.name_prefix) out.insert(*s.name_prefix);
          }
        },
        st);
  }
}

class MacroWriter {
 public:
  MacroWriter(const Scene* resolved, geom::SpacingMode mode, const NameSet& names)
      : resolved_(resolved), mode_(mode), names_(names) {}

  std::string line(const dsl::Statement& st, const dsl::StatementPlan& plan) {
    plan_ = &plan;
    return std::visit(*this, st);
  }

  std::string operator()(const dsl::CreateBox& b) {
    const Vec3 origin = b.at ? Vec3{b.at->point[0], b.at->point[1], b.at->point[2]} : Vec3{};
    const Vec3 ext{b.extents[0], b.extents[1], b.extents[2]};
    boxes_[id(0)] = geom::make_box(ext, origin);
    return box_line(origin, ext) + name_last(id(0));
  }

  std::string operator()(const dsl::CreateSphere& s) {
    Vec3 center;
    if (const auto* at = std::get_if<dsl::At>(&s.placement)) {
      center = {at->point[0], at->point[1], at->point[2]};
    } else if (const auto* e = std::get_if<dsl::OnEdge>(&s.placement)) {
      const bool random = !e->edge || (!e->t && e->random_t);
      std::optional<Vec3> c;
      if (random) {
        c = resolved_center(id(0));
      } else if (const geom::Solid* box = find_box(e->target)) {
        c = geom::box_edge_point(*box, *e->edge, e->t.value_or(0.5));
      }
      if (!c) {
        return fmt::format("; sphere {} on a random edge of {}: execute the program to resolve its center", id(0),
                           e->target);
      }
      center = *c;
    }
    return fmt::format("_Sphere {} {}", pt(center), num(s.radius)) + name_last(id(0));
  }

  std::string operator()(const dsl::CreateHypar& h) {
    const auto& z = h.corner_heights;  // h00 h10 h01 h11
    const double w = h.plan_width;
    const double d = h.plan_depth;
    return fmt::format("_SrfPt {} {} {} {} _SelLast _-OffsetSrf _BothSides=_Yes _Solid=_Yes _DeleteInput=_Yes {}",
                       pt({0, 0, z[0]}), pt({w, 0, z[1]}), pt({w, d, z[3]}), pt({0, d, z[2]}), num(h.thickness / 2)) +
           name_last(id(0));
  }

  std::string operator()(const dsl::CreateGrid& g) {
    const double px = mode_ == geom::SpacingMode::pitch ? g.spacing : g.footprint_width + g.spacing;
    const double py = mode_ == geom::SpacingMode::pitch ? g.spacing : g.footprint_depth + g.spacing;
    grid_named_ = (g.name_prefix && names_.contains(*g.name_prefix)) ||
                  std::any_of(plan_->creates.begin(), plan_->creates.end(),
                              [&](const std::string& c) { return names_.contains(c); });
    std::string out;
    std::size_t k = 0;
    for (int r = 0; r < g.rows; ++r) {
      for (int c = 0; c < g.cols; ++c) {
        if (!out.empty()) out += ' ';
        const Vec3 origin{c * px, r * py, 0.0};
        const Vec3 ext{g.footprint_width, g.footprint_depth, g.height};
        boxes_[id(k)] = geom::make_box(ext, origin);
        out += box_line(origin, ext) + name_last(id(k));
        ++k;
      }
    }
    grid_named_ = false;
    return out;
  }

  std::string operator()(const dsl::BooleanOp& b) {
    boxes_.erase(id(0));
    switch (b.kind) {
      case geom::BooleanKind::union_op:
        return select({b.a, b.b}) + " _BooleanUnion _DeleteInput=_No _Enter" + name_last(id(0));
      case geom::BooleanKind::intersection:
        return fmt::format("_SelNone _BooleanIntersection _DeleteInput=_No _-SelName {} _Enter _-SelName {} _Enter",
                           b.a, b.b) +
               name_last(id(0));
      case geom::BooleanKind::difference:
        return fmt::format("_SelNone _BooleanDifference _DeleteInput=_No _-SelName {} _Enter _-SelName {} _Enter",
                           b.a, b.b) +
               name_last(id(0));
    }
    return {};
  }

  std::string operator()(const dsl::Move& m) {
    const Vec3 d{m.delta[0], m.delta[1], m.delta[2]};
    if (!plan_->creates.empty()) {
      // baked source: a draft copy is moved, the original stays
      if (const geom::Solid* box = find_box(m.target)) boxes_[id(0)] = box->translated(d);
      return select({m.target}) + fmt::format(" _Copy 0,0,0 {} _Enter", pt(d)) + name_last(id(0));
    }
    if (auto it = boxes_.find(m.target); it != boxes_.end()) it->second = it->second.translated(d);
    return select({m.target}) + fmt::format(" _Move 0,0,0 {}", pt(d));
  }

  std::string operator()(const dsl::Delete& d) {
    boxes_.erase(d.target);
    deleted_.push_back(d.target);
    return select({d.target}) + " _Delete";
  }

  std::string operator()(const dsl::Bake& b) {
    return "_-Layer _New Baked _Enter " + select({b.target}) + " _-ChangeLayer Baked _Lock";
  }

  std::string operator()(const dsl::SunStudy&) { return "; sunstudy not representable as a macro"; }

  std::string operator()(const dsl::Undo&) { return "_Undo"; }

 private:
  const std::string& id(std::size_t k) const { return plan_->creates.at(k); }

  std::string name_last(const std::string& id) const {
    if (!names_.contains(id) && !grid_named_) return {};
    return fmt::format(" _SelLast _SetObjectName {}", id);
  }

  const geom::Solid* find_box(const std::string& name) const {
    if (auto it = boxes_.find(name); it != boxes_.end()) return &it->second;
    if (std::find(deleted_.begin(), deleted_.end(), name) != deleted_.end()) return nullptr;
    if (resolved_) {
      if (const SceneObject* o = resolved_->find(name); o && o->solid.is_box()) return &o->solid;
    }
    return nullptr;
  }

  std::optional<Vec3> resolved_center(const std::string& name) const {
    if (!resolved_) return std::nullopt;
    const SceneObject* o = resolved_->find(name);
    if (!o || !o->solid.membership()) return std::nullopt;
    if (const auto* s = std::get_if<geom::SphereShape>(&o->solid.membership()->value)) return s->center;
    return std::nullopt;
  }

  const Scene* resolved_;
  geom::SpacingMode mode_;
  const NameSet& names_;
  bool grid_named_ = false;
  const dsl::StatementPlan* plan_ = nullptr;
  std::map<std::string, geom::Solid, std::less<>> boxes_;
  std::vector<std::string> deleted_;
};

std::string emit_macro_lines(const dsl::ValidatedProgram& program, const Scene* resolved,
                             geom::SpacingMode spacing_mode, const NameSet& names) {
  MacroWriter writer(resolved, spacing_mode, names);
  std::string out;
  const auto& statements = program.program().statements;
  for (std::size_t i = 0; i < statements.size(); ++i) {
    out += writer.line(statements[i], program.plans()[i]);
    out += '\n';
  }
  return out;
}

}  // namespace

std::string emit_rhino_macro(const dsl::ValidatedProgram& program, const Scene* resolved,
                             geom::SpacingMode spacing_mode) {
  NameSet names;
  collect_names(program.program(), names);
  return emit_macro_lines(program, resolved, spacing_mode, names);
}

std::string session_macro(const Session& session) {
  Session replayed(session.seed(), session.config());
  NameSet names;
  for (const HistoryEntry& entry : session.history()) collect_names(entry.program, names);
  std::string out;
  for (std::size_t i = 0; i < session.history().size(); ++i) {
    const HistoryEntry& entry = session.history()[i];
    dsl::ValidateResult v = dsl::validate(entry.program, replayed.scene().context(), session.config().quality);
    if (!v.ok()) throw ReplayError(i, ExecutionError{"SemanticError", v.errors.front().message, 0, {}});
    const ExecutionResult r = replayed.execute(*v.program, entry.source);
    if (!r.ok()) throw ReplayError(i, *r.error);
    out += emit_macro_lines(*v.program, &replayed.scene(), session.config().spacing_mode, names);
  }
  return out;
}

}  // namespace cadscript
