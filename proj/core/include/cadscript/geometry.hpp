#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cadscript/vec3.hpp"

namespace cadscript::geom {

enum class KernelErrc {
  non_positive_dimension,
  not_a_box,
  not_watertight,
  csg_failure,
  resource_limit,
  out_of_range,
};

std::string_view to_string(KernelErrc code);

class KernelError : public std::runtime_error {
 public:
  KernelError(KernelErrc code, const std::string& message);
  [[nodiscard]] KernelErrc code() const noexcept { return code_; }

 private:
  KernelErrc code_;
};

struct Aabb {
  Vec3 min{1.0, 1.0, 1.0};
  Vec3 max{-1.0, -1.0, -1.0};

  static Aabb empty_box() { return {}; }
  static Aabb of(const Vec3& a, const Vec3& b) { return {cadscript::min(a, b), cadscript::max(a, b)}; }

  [[nodiscard]] bool empty() const { return min.x > max.x || min.y > max.y || min.z > max.z; }
  [[nodiscard]] Vec3 size() const { return empty() ? Vec3{} : max - min; }
  [[nodiscard]] double volume() const {
    const Vec3 s = size();
    return s.x * s.y * s.z;
  }
  [[nodiscard]] bool contains(const Vec3& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z && p.z <= max.z;
  }
  [[nodiscard]] bool overlaps(const Aabb& o) const {
    return !empty() && !o.empty() && min.x <= o.max.x && o.min.x <= max.x && min.y <= o.max.y &&
           o.min.y <= max.y && min.z <= o.max.z && o.min.z <= max.z;
  }
  void expand(const Vec3& p) {
    if (empty()) {
      min = max = p;
    } else {
      min = cadscript::min(min, p);
      max = cadscript::max(max, p);
    }
  }
  [[nodiscard]] Aabb merged(const Aabb& o) const;
  [[nodiscard]] Aabb intersected(const Aabb& o) const;
  [[nodiscard]] Aabb inflated(double margin) const;

  bool operator==(const Aabb&) const = default;
};

using TriangleIndices = std::array<std::uint32_t, 3>;

/// Indexed triangle mesh, counterclockwise winding seen from outside.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<TriangleIndices> triangles;

  [[nodiscard]] Aabb bounds() const;
  [[nodiscard]] std::size_t triangle_count() const { return triangles.size(); }
  [[nodiscard]] bool empty() const { return triangles.empty(); }
  [[nodiscard]] std::array<Vec3, 3> corners(std::size_t tri) const {
    const auto& t = triangles[tri];
    return {vertices[t[0]], vertices[t[1]], vertices[t[2]]};
  }
  [[nodiscard]] TriangleMesh translated(const Vec3& delta) const;

  bool operator==(const TriangleMesh&) const = default;
};

struct TessellationQuality {
  int sphere_segments = 64;
  int hypar_divisions = 32;
};

// ---------------------------------------------------------------------------
// Analytic membership tree. Each Solid carries one next to its mesh; it is the
// exact point set the mesh approximates and backs the verification oracles.
// ---------------------------------------------------------------------------

struct BoxShape {
  Vec3 min;
  Vec3 max;
};

struct SphereShape {
  Vec3 center;
  double radius = 0.0;
};

/// Bilinear patch over [origin.x, origin.x+width] x [origin.y, origin.y+depth],
/// thickened symmetrically about the patch. corner_heights are (h00, h10, h01, h11)
/// where the first index runs along x and the second along y; heights are absolute z.
struct HyparShape {
  Vec3 origin;
  double width = 0.0;
  double depth = 0.0;
  std::array<double, 4> corner_heights{};
  double thickness = 0.0;

  [[nodiscard]] double surface_height(double u, double v) const;
};

enum class BooleanKind { union_op, intersection, difference };

std::string_view to_string(BooleanKind kind);

struct CsgNode;
using CsgNodePtr = std::shared_ptr<const CsgNode>;

struct CsgOperation {
  BooleanKind kind = BooleanKind::union_op;
  CsgNodePtr left;
  CsgNodePtr right;
};

struct CsgNode {
  std::variant<BoxShape, SphereShape, HyparShape, CsgOperation> value;
};

[[nodiscard]] bool contains(const CsgNode& node, const Vec3& p);
/// Conservative bounds of the exact point set.
[[nodiscard]] Aabb bounds(const CsgNode& node);
[[nodiscard]] CsgNodePtr translated(const CsgNodePtr& node, const Vec3& delta);

/// Immutable solid: watertight mesh plus the analytic tree it was built from.
class Solid {
 public:
  Solid() = default;
  Solid(TriangleMesh mesh, CsgNodePtr membership, double chord_error);

  [[nodiscard]] const TriangleMesh& mesh() const { return *mesh_; }
  [[nodiscard]] const CsgNodePtr& membership() const { return membership_; }
  /// Upper bound on the distance between the mesh surface and the exact surface.
  [[nodiscard]] double chord_error() const { return chord_error_; }
  [[nodiscard]] Aabb bounds() const { return mesh_->bounds(); }
  [[nodiscard]] bool is_box() const;
  /// "box", "sphere", "hypar", "union", "intersection", "difference" or "empty".
  [[nodiscard]] std::string_view kind() const;

  [[nodiscard]] Solid translated(const Vec3& delta) const;

 private:
  std::shared_ptr<const TriangleMesh> mesh_ = std::make_shared<const TriangleMesh>();
  CsgNodePtr membership_;
  double chord_error_ = 0.0;
};

// ---------------------------------------------------------------------------
// Primitives
// ---------------------------------------------------------------------------

/// Axis-aligned box with its minimum corner at `origin`.
[[nodiscard]] Solid make_box(const Vec3& extents, const Vec3& origin = {});

[[nodiscard]] Solid make_sphere(double radius, const Vec3& center = {}, TessellationQuality quality = {});

[[nodiscard]] std::size_t sphere_triangle_count(int segments);
[[nodiscard]] std::size_t hypar_triangle_count(int divisions);

[[nodiscard]] Solid make_hypar(double plan_width, double plan_depth, const std::array<double, 4>& corner_heights,
                               double thickness, TessellationQuality quality = {}, const Vec3& origin = {});

/// How the grid `spacing` is read: clear gap between facades, or center-to-center pitch.
enum class SpacingMode { gap, pitch };

std::string_view to_string(SpacingMode mode);
std::optional<SpacingMode> spacing_mode_from_string(std::string_view text);

struct BuildingGridSpec {
  int rows = 1;
  int cols = 1;
  double footprint_width = 10.0;
  double footprint_depth = 10.0;
  double height = 15.0;
  double spacing = 20.0;
  SpacingMode mode = SpacingMode::gap;
};

inline constexpr int kMaxGridCells = 10'000;

/// Building (r, c) has its minimum corner at (c * pitch_x, r * pitch_y, 0).
[[nodiscard]] std::vector<Solid> make_building_grid(const BuildingGridSpec& spec);

// ---------------------------------------------------------------------------
// Box edges. Corners c0..c3 run counterclockwise (seen from +z) from the
// (-x,-y) corner. Edges 0-3 are the bottom ring c0c1, c1c2, c2c3, c3c0; edges
// 4-7 are the verticals rising from c0..c3; edges 8-11 repeat the bottom ring
// on the top face.
// ---------------------------------------------------------------------------

inline constexpr int kBoxEdgeCount = 12;

struct Segment {
  Vec3 start;
  Vec3 end;
};

[[nodiscard]] Segment box_edge(const Solid& box, int edge_index);
[[nodiscard]] Vec3 box_edge_point(const Solid& box, int edge_index, double t);

/// Draws from `rng` for every field left unset: the edge uniformly from the 12
/// edges, then t uniformly from [0, 1].
[[nodiscard]] Vec3 random_edge_point(const Solid& box, std::optional<int> edge_index, std::optional<double> t,
                                     std::mt19937_64& rng);
[[nodiscard]] Vec3 random_edge_point(const Solid& box, std::optional<int> edge_index, std::optional<double> t,
                                     std::uint64_t seed);

/// Portable draws (std distributions differ between standard libraries).
[[nodiscard]] int uniform_index(std::mt19937_64& rng, int count);
[[nodiscard]] double uniform_unit(std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Measures and checks
// ---------------------------------------------------------------------------

struct MeshDiagnostics {
  std::size_t boundary_edges = 0;      // directed edges with no opposite partner
  std::size_t overused_edges = 0;      // directed edges used more than once
  std::size_t degenerate_triangles = 0;
  [[nodiscard]] bool watertight() const { return boundary_edges == 0 && overused_edges == 0; }
};

inline constexpr double kDegenerateArea = 1e-12;

[[nodiscard]] MeshDiagnostics diagnose(const TriangleMesh& mesh, double degenerate_area = kDegenerateArea);

/// Signed volume via the divergence theorem. Throws not_watertight unless every
/// directed edge is matched by exactly one opposite edge.
[[nodiscard]] double mesh_volume(const TriangleMesh& mesh);
/// Same sum without the topology check.
[[nodiscard]] double signed_volume_unchecked(const TriangleMesh& mesh);

[[nodiscard]] double surface_area(const TriangleMesh& mesh);

/// Exact membership test against the analytic tree.
[[nodiscard]] bool analytic_contains(const Solid& solid, const Vec3& p);

/// Counts cell centers of a resolution^3 lattice over the analytic bounds.
[[nodiscard]] double voxel_volume(const Solid& solid, int resolution);

[[nodiscard]] double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace cadscript::geom
