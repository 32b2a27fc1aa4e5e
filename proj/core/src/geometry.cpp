#include "cadscript/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>
#include <thread>
#include <unordered_map>

namespace cadscript::geom {

std::string_view to_string(KernelErrc code) {
  switch (code) {
    case KernelErrc::non_positive_dimension: return "NonPositiveDimension";
    case KernelErrc::not_a_box: return "NotABox";
    case KernelErrc::not_watertight: return "NotWatertight";
    case KernelErrc::csg_failure: return "CsgFailure";
    case KernelErrc::resource_limit: return "ResourceLimit";
    case KernelErrc::out_of_range: return "OutOfRange";
  }
  return "KernelError";
}

KernelError::KernelError(KernelErrc code, const std::string& message)
    : std::runtime_error(fmt::format("{}: {}", to_string(code), message)), code_(code) {}

std::string_view to_string(BooleanKind kind) {
  switch (kind) {
    case BooleanKind::union_op: return "union";
    case BooleanKind::intersection: return "intersection";
    case BooleanKind::difference: return "difference";
  }
  return "union";
}

std::string_view to_string(SpacingMode mode) { return mode == SpacingMode::gap ? "gap" : "pitch"; }

std::optional<SpacingMode> spacing_mode_from_string(std::string_view text) {
  if (text == "gap") return SpacingMode::gap;
  if (text == "pitch") return SpacingMode::pitch;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Aabb Aabb::merged(const Aabb& o) const {
  if (empty()) return o;
  if (o.empty()) return *this;
  return {cadscript::min(min, o.min), cadscript::max(max, o.max)};
}

Aabb Aabb::intersected(const Aabb& o) const {
  if (empty() || o.empty()) return {};
  Aabb r{cadscript::max(min, o.min), cadscript::min(max, o.max)};
  return r.empty() ? Aabb{} : r;
}

Aabb Aabb::inflated(double margin) const {
  if (empty()) return *this;
  const Vec3 m{margin, margin, margin};
  return {min - m, max + m};
}

Aabb TriangleMesh::bounds() const {
  Aabb box;
  for (const auto& tri : triangles) {
    for (auto idx : tri) box.expand(vertices[idx]);
  }
  return box;
}

TriangleMesh TriangleMesh::translated(const Vec3& delta) const {
  TriangleMesh out = *this;
  for (auto& v : out.vertices) v += delta;
  return out;
}

// ---------------------------------------------------------------------------
// Membership tree
// ---------------------------------------------------------------------------

double HyparShape::surface_height(double u, double v) const {
  const auto& h = corner_heights;
  return (1.0 - u) * (1.0 - v) * h[0] + u * (1.0 - v) * h[1] + (1.0 - u) * v * h[2] + u * v * h[3];
}

namespace {

struct ContainsVisitor {
  const Vec3& p;

  bool operator()(const BoxShape& b) const {
    return p.x >= b.min.x && p.x <= b.max.x && p.y >= b.min.y && p.y <= b.max.y && p.z >= b.min.z &&
           p.z <= b.max.z;
  }
  bool operator()(const SphereShape& s) const {
    const Vec3 d = p - s.center;
    return dot(d, d) <= s.radius * s.radius;
  }
  bool operator()(const HyparShape& h) const {
    const double u = (p.x - h.origin.x) / h.width;
    const double v = (p.y - h.origin.y) / h.depth;
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) return false;
    return std::abs(p.z - h.surface_height(u, v)) <= 0.5 * h.thickness;
  }
  bool operator()(const CsgOperation& op) const {
    const bool in_left = contains(*op.left, p);
    switch (op.kind) {
      case BooleanKind::union_op: return in_left || contains(*op.right, p);
      case BooleanKind::intersection: return in_left && contains(*op.right, p);
      case BooleanKind::difference: return in_left && !contains(*op.right, p);
    }
    return false;
  }
};

struct BoundsVisitor {
  Aabb operator()(const BoxShape& b) const { return {b.min, b.max}; }
  Aabb operator()(const SphereShape& s) const {
    const Vec3 r{s.radius, s.radius, s.radius};
    return {s.center - r, s.center + r};
  }
  Aabb operator()(const HyparShape& h) const {
    const auto [lo, hi] = std::minmax_element(h.corner_heights.begin(), h.corner_heights.end());
    return {{h.origin.x, h.origin.y, *lo - 0.5 * h.thickness},
            {h.origin.x + h.width, h.origin.y + h.depth, *hi + 0.5 * h.thickness}};
  }
  Aabb operator()(const CsgOperation& op) const {
    const Aabb a = bounds(*op.left);
    switch (op.kind) {
      case BooleanKind::union_op: return a.merged(bounds(*op.right));
      case BooleanKind::intersection: return a.intersected(bounds(*op.right));
      case BooleanKind::difference: return a;
    }
    return a;
  }
};

}  // namespace

bool contains(const CsgNode& node, const Vec3& p) { return std::visit(ContainsVisitor{p}, node.value); }

Aabb bounds(const CsgNode& node) { return std::visit(BoundsVisitor{}, node.value); }

CsgNodePtr translated(const CsgNodePtr& node, const Vec3& delta) {
  if (!node) return node;
  auto out = std::make_shared<CsgNode>(*node);
  std::visit(
      [&](auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          shape.min += delta;
          shape.max += delta;
        } else if constexpr (std::is_same_v<T, SphereShape>) {
          shape.center += delta;
        } else if constexpr (std::is_same_v<T, HyparShape>) {
          shape.origin.x += delta.x;
          shape.origin.y += delta.y;
          for (auto& h : shape.corner_heights) h += delta.z;
        } else {
          shape.left = translated(shape.left, delta);
          shape.right = translated(shape.right, delta);
        }
      },
      out->value);
  return out;
}

// ---------------------------------------------------------------------------

Solid::Solid(TriangleMesh mesh, CsgNodePtr membership, double chord_error)
    : mesh_(std::make_shared<const TriangleMesh>(std::move(mesh))),
      membership_(std::move(membership)),
      chord_error_(chord_error) {}

bool Solid::is_box() const { return membership_ && std::holds_alternative<BoxShape>(membership_->value); }

std::string_view Solid::kind() const {
  if (!membership_) return "empty";
  return std::visit(
      [](const auto& shape) -> std::string_view {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, BoxShape>) return "box";
        else if constexpr (std::is_same_v<T, SphereShape>) return "sphere";
        else if constexpr (std::is_same_v<T, HyparShape>) return "hypar";
        else return to_string(shape.kind);
      },
      membership_->value);
}

Solid Solid::translated(const Vec3& delta) const {
  return Solid(mesh_->translated(delta), geom::translated(membership_, delta), chord_error_);
}

// ---------------------------------------------------------------------------
// Primitives
// ---------------------------------------------------------------------------

namespace {

void require_positive(double value, std::string_view what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw KernelError(KernelErrc::non_positive_dimension, fmt::format("{} must be > 0 (got {})", what, value));
  }
}

}  // namespace

Solid make_box(const Vec3& extents, const Vec3& origin) {
  require_positive(extents.x, "box width");
  require_positive(extents.y, "box depth");
  require_positive(extents.z, "box height");
  const Vec3 lo = origin;
  const Vec3 hi = origin + extents;

  TriangleMesh mesh;
  mesh.vertices = {
      {lo.x, lo.y, lo.z}, {hi.x, lo.y, lo.z}, {hi.x, hi.y, lo.z}, {lo.x, hi.y, lo.z},
      {lo.x, lo.y, hi.z}, {hi.x, lo.y, hi.z}, {hi.x, hi.y, hi.z}, {lo.x, hi.y, hi.z},
  };
  mesh.triangles = {
      {0, 2, 1}, {0, 3, 2},  // bottom
      {4, 5, 6}, {4, 6, 7},  // top
      {0, 1, 5}, {0, 5, 4},  // -y
      {1, 2, 6}, {1, 6, 5},  // +x
      {2, 3, 7}, {2, 7, 6},  // +y
      {3, 0, 4}, {3, 4, 7},  // -x
  };
  auto node = std::make_shared<CsgNode>(CsgNode{BoxShape{lo, hi}});
  return Solid(std::move(mesh), std::move(node), 0.0);
}

std::size_t sphere_triangle_count(int segments) {
  const std::size_t n = static_cast<std::size_t>(segments);
  const std::size_t rings = std::max<std::size_t>(2, n / 2);
  return 2 * n + 2 * n * (rings - 2);
}

std::size_t hypar_triangle_count(int divisions) {
  const std::size_t n = static_cast<std::size_t>(divisions);
  return 4 * n * n + 8 * n;
}

Solid make_sphere(double radius, const Vec3& center, TessellationQuality quality) {
  require_positive(radius, "sphere radius");
  if (quality.sphere_segments < 8) {
    throw KernelError(KernelErrc::out_of_range,
                      fmt::format("sphere segments must be >= 8 (got {})", quality.sphere_segments));
  }
  const int n = quality.sphere_segments;
  const int rings = std::max(2, n / 2);

  TriangleMesh mesh;
  mesh.vertices.reserve(static_cast<std::size_t>(2 + (rings - 1) * n));
  mesh.vertices.push_back(center + Vec3{0.0, 0.0, radius});
  for (int i = 1; i < rings; ++i) {
    const double theta = std::numbers::pi * i / rings;
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    for (int j = 0; j < n; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / n;
      mesh.vertices.push_back(center + Vec3{radius * st * std::cos(phi), radius * st * std::sin(phi), radius * ct});
    }
  }
  mesh.vertices.push_back(center - Vec3{0.0, 0.0, radius});
  const auto north = 0u;
  const auto south = static_cast<std::uint32_t>(mesh.vertices.size() - 1);
  auto ring = [n](int i, int j) { return static_cast<std::uint32_t>(1 + (i - 1) * n + (j % n)); };

  mesh.triangles.reserve(sphere_triangle_count(n));
  for (int j = 0; j < n; ++j) mesh.triangles.push_back({north, ring(1, j), ring(1, j + 1)});
  for (int i = 1; i + 1 < rings; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto a = ring(i, j), b = ring(i, j + 1), c = ring(i + 1, j + 1), d = ring(i + 1, j);
      mesh.triangles.push_back({a, d, c});
      mesh.triangles.push_back({a, c, b});
    }
  }
  for (int j = 0; j < n; ++j) mesh.triangles.push_back({ring(rings - 1, j), south, ring(rings - 1, j + 1)});

  const double chord = radius * (1.0 - std::cos(std::numbers::sqrt2 * std::numbers::pi / n));
  auto node = std::make_shared<CsgNode>(CsgNode{SphereShape{center, radius}});
  return Solid(std::move(mesh), std::move(node), chord);
}

Solid make_hypar(double plan_width, double plan_depth, const std::array<double, 4>& corner_heights, double thickness,
                 TessellationQuality quality, const Vec3& origin) {
  require_positive(plan_width, "hypar plan width");
  require_positive(plan_depth, "hypar plan depth");
  require_positive(thickness, "hypar thickness");
  for (double h : corner_heights) {
    if (!std::isfinite(h)) throw KernelError(KernelErrc::out_of_range, "hypar corner height must be finite");
  }
  if (quality.hypar_divisions < 4) {
    throw KernelError(KernelErrc::out_of_range,
                      fmt::format("hypar divisions must be >= 4 (got {})", quality.hypar_divisions));
  }
  HyparShape shape{origin, plan_width, plan_depth, corner_heights, thickness};
  const int n = quality.hypar_divisions;
  const auto stride = static_cast<std::uint32_t>(n + 1);
  const auto layer = stride * stride;

  TriangleMesh mesh;
  mesh.vertices.resize(2 * static_cast<std::size_t>(layer));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double u = static_cast<double>(i) / n;
      const double v = static_cast<double>(j) / n;
      const double x = origin.x + plan_width * u;
      const double y = origin.y + plan_depth * v;
      const double mid = shape.surface_height(u, v);
      const auto k = static_cast<std::uint32_t>(i) * stride + static_cast<std::uint32_t>(j);
      mesh.vertices[k] = {x, y, mid + 0.5 * thickness};
      mesh.vertices[layer + k] = {x, y, mid - 0.5 * thickness};
    }
  }
  auto top = [&](int i, int j) { return static_cast<std::uint32_t>(i) * stride + static_cast<std::uint32_t>(j); };
  auto bot = [&](int i, int j) { return layer + top(i, j); };

  mesh.triangles.reserve(hypar_triangle_count(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      mesh.triangles.push_back({top(i, j), top(i + 1, j), top(i + 1, j + 1)});
      mesh.triangles.push_back({top(i, j), top(i + 1, j + 1), top(i, j + 1)});
      mesh.triangles.push_back({bot(i, j), bot(i + 1, j + 1), bot(i + 1, j)});
      mesh.triangles.push_back({bot(i, j), bot(i, j + 1), bot(i + 1, j + 1)});
    }
  }
  for (int k = 0; k < n; ++k) {
    // -y wall (j = 0), +x wall (i = n), +y wall (j = n), -x wall (i = 0)
    mesh.triangles.push_back({bot(k, 0), bot(k + 1, 0), top(k + 1, 0)});
    mesh.triangles.push_back({bot(k, 0), top(k + 1, 0), top(k, 0)});
    mesh.triangles.push_back({bot(n, k), bot(n, k + 1), top(n, k + 1)});
    mesh.triangles.push_back({bot(n, k), top(n, k + 1), top(n, k)});
    mesh.triangles.push_back({bot(k + 1, n), bot(k, n), top(k, n)});
    mesh.triangles.push_back({bot(k + 1, n), top(k, n), top(k + 1, n)});
    mesh.triangles.push_back({bot(0, k + 1), bot(0, k), top(0, k)});
    mesh.triangles.push_back({bot(0, k + 1), top(0, k), top(0, k + 1)});
  }

  const auto& h = corner_heights;
  const double twist = std::abs(h[0] - h[1] - h[2] + h[3]);
  const double chord = twist / (4.0 * n * n);
  return Solid(std::move(mesh), std::make_shared<CsgNode>(CsgNode{shape}), chord);
}

std::vector<Solid> make_building_grid(const BuildingGridSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1) {
    throw KernelError(KernelErrc::non_positive_dimension,
                      fmt::format("grid needs at least one row and column (got {}x{})", spec.rows, spec.cols));
  }
  const long long cells = static_cast<long long>(spec.rows) * spec.cols;
  if (cells > kMaxGridCells) {
    throw KernelError(KernelErrc::resource_limit,
                      fmt::format("grid cells {} > {}", cells, kMaxGridCells));
  }
  require_positive(spec.footprint_width, "grid footprint width");
  require_positive(spec.footprint_depth, "grid footprint depth");
  require_positive(spec.height, "grid height");
  require_positive(spec.spacing, "grid spacing");
  const double pitch_x = spec.mode == SpacingMode::gap ? spec.footprint_width + spec.spacing : spec.spacing;
  const double pitch_y = spec.mode == SpacingMode::gap ? spec.footprint_depth + spec.spacing : spec.spacing;

  std::vector<Solid> out;
  out.reserve(static_cast<std::size_t>(cells));
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      out.push_back(make_box({spec.footprint_width, spec.footprint_depth, spec.height},
                             {c * pitch_x, r * pitch_y, 0.0}));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Edges
// ---------------------------------------------------------------------------

Segment box_edge(const Solid& box, int edge_index) {
  if (!box.is_box()) {
    throw KernelError(KernelErrc::not_a_box, fmt::format("edge placement needs a box, got {}", box.kind()));
  }
  if (edge_index < 0 || edge_index >= kBoxEdgeCount) {
    throw KernelError(KernelErrc::out_of_range, fmt::format("edge index {} outside 0..11", edge_index));
  }
  const auto& b = std::get<BoxShape>(box.membership()->value);
  const std::array<Vec3, 4> ring = {
      Vec3{b.min.x, b.min.y, 0.0}, Vec3{b.max.x, b.min.y, 0.0}, Vec3{b.max.x, b.max.y, 0.0}, Vec3{b.min.x, b.max.y, 0.0}};
  auto at = [&](int corner, double z) { return Vec3{ring[corner].x, ring[corner].y, z}; };
  const int k = edge_index % 4;
  if (edge_index < 4) return {at(k, b.min.z), at((k + 1) % 4, b.min.z)};
  if (edge_index < 8) return {at(k, b.min.z), at(k, b.max.z)};
  return {at(k, b.max.z), at((k + 1) % 4, b.max.z)};
}

Vec3 box_edge_point(const Solid& box, int edge_index, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw KernelError(KernelErrc::out_of_range, fmt::format("edge parameter {} outside [0, 1]", t));
  }
  const Segment s = box_edge(box, edge_index);
  return lerp(s.start, s.end, t);
}

int uniform_index(std::mt19937_64& rng, int count) {
  const auto n = static_cast<std::uint64_t>(count);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return static_cast<int>(draw % n);
}

double uniform_unit(std::mt19937_64& rng) {
  // 53 random mantissa bits, closed at both ends
  return static_cast<double>(rng() >> 11) / static_cast<double>((std::uint64_t{1} << 53) - 1);
}

Vec3 random_edge_point(const Solid& box, std::optional<int> edge_index, std::optional<double> t,
                       std::mt19937_64& rng) {
  if (!box.is_box()) {
    throw KernelError(KernelErrc::not_a_box, fmt::format("edge placement needs a box, got {}", box.kind()));
  }
  const int edge = edge_index ? *edge_index : uniform_index(rng, kBoxEdgeCount);
  const double param = t ? *t : uniform_unit(rng);
  return box_edge_point(box, edge, param);
}

Vec3 random_edge_point(const Solid& box, std::optional<int> edge_index, std::optional<double> t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_edge_point(box, edge_index, t, rng);
}

// ---------------------------------------------------------------------------
// Measures
// ---------------------------------------------------------------------------

namespace {

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) { return 0.5 * length(cross(b - a, c - a)); }

}  // namespace

MeshDiagnostics diagnose(const TriangleMesh& mesh, double degenerate_area) {
  MeshDiagnostics diag;
  std::unordered_map<std::uint64_t, int> directed;
  directed.reserve(mesh.triangles.size() * 3);
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    const auto& t = mesh.triangles[i];
    for (int k = 0; k < 3; ++k) ++directed[edge_key(t[k], t[(k + 1) % 3])];
    const auto [a, b, c] = mesh.corners(i);
    if (triangle_area(a, b, c) < degenerate_area) ++diag.degenerate_triangles;
  }
  for (const auto& [key, count] : directed) {
    if (count > 1) ++diag.overused_edges;
    const auto a = static_cast<std::uint32_t>(key >> 32);
    const auto b = static_cast<std::uint32_t>(key & 0xffffffffu);
    auto it = directed.find(edge_key(b, a));
    if (it == directed.end() || it->second != count) ++diag.boundary_edges;
  }
  return diag;
}

double signed_volume_unchecked(const TriangleMesh& mesh) {
  if (mesh.triangles.empty()) return 0.0;
  const Aabb box = mesh.bounds();
  const Vec3 ref = (box.min + box.max) * 0.5;
  double sum = 0.0;
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    const auto [a, b, c] = mesh.corners(i);
    sum += dot(a - ref, cross(b - ref, c - ref));
  }
  return sum / 6.0;
}

double mesh_volume(const TriangleMesh& mesh) {
  const MeshDiagnostics diag = diagnose(mesh, 0.0);
  if (!diag.watertight()) {
    throw KernelError(KernelErrc::not_watertight,
                      fmt::format("mesh has {} unmatched and {} repeated directed edges", diag.boundary_edges,
                                  diag.overused_edges));
  }
  return signed_volume_unchecked(mesh);
}

double surface_area(const TriangleMesh& mesh) {
  double area = 0.0;
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    const auto [a, b, c] = mesh.corners(i);
    area += triangle_area(a, b, c);
  }
  return area;
}

bool analytic_contains(const Solid& solid, const Vec3& p) {
  return solid.membership() && contains(*solid.membership(), p);
}

double voxel_volume(const Solid& solid, int resolution) {
  if (resolution < 16 || resolution > 512) {
    throw KernelError(KernelErrc::out_of_range, fmt::format("voxel resolution {} outside [16, 512]", resolution));
  }
  if (!solid.membership()) return 0.0;
  const Aabb box = bounds(*solid.membership());
  if (box.empty()) return 0.0;
  const Vec3 size = box.size();
  const Vec3 cell = size / resolution;
  const CsgNode& tree = *solid.membership();

  auto count_slices = [&](int begin, int end) {
    std::uint64_t count = 0;
    for (int i = begin; i < end; ++i) {
      const double x = box.min.x + (i + 0.5) * cell.x;
      for (int j = 0; j < resolution; ++j) {
        const double y = box.min.y + (j + 0.5) * cell.y;
        for (int k = 0; k < resolution; ++k) {
          const double z = box.min.z + (k + 0.5) * cell.z;
          if (contains(tree, {x, y, z})) ++count;
        }
      }
    }
    return count;
  };

  const int workers = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, 16);
  std::uint64_t total = 0;
  if (workers == 1) {
    total = count_slices(0, resolution);
  } else {
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(workers), 0);
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
      const int begin = resolution * w / workers;
      const int end = resolution * (w + 1) / workers;
      threads.emplace_back([&, w, begin, end] { partial[static_cast<std::size_t>(w)] = count_slices(begin, end); });
    }
    for (auto& t : threads) t.join();
    for (auto c : partial) total += c;
  }
  return static_cast<double>(total) * cell.x * cell.y * cell.z;
}

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  // Closest point on triangle by Voronoi region (Ericson, RTCD 5.1.5).
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return length(p - a);
  const Vec3 bp = p - b;
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return length(p - b);
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return length(p - (a + ab * (d1 / (d1 - d3))));
  const Vec3 cp = p - c;
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return length(p - c);
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return length(p - (a + ac * (d2 / (d2 - d6))));
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    return length(p - (b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)))));
  }
  const double denom = 1.0 / (va + vb + vc);
  return length(p - (a + ab * (vb * denom) + ac * (vc * denom)));
}

}  // namespace cadscript::geom
