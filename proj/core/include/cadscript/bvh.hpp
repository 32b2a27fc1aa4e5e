#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "cadscript/geometry.hpp"

namespace cadscript::geom {

/// Bounding-volume hierarchy over the triangles of one or more meshes. Each
/// triangle remembers the index of the mesh it came from.
class TriangleBvh {
 public:
  TriangleBvh() = default;
  explicit TriangleBvh(std::span<const TriangleMesh* const> meshes);
  explicit TriangleBvh(const TriangleMesh& mesh);

  [[nodiscard]] std::size_t triangle_count() const { return tris_.size(); }
  [[nodiscard]] std::size_t object_count() const { return object_count_; }
  [[nodiscard]] Aabb bounds() const { return nodes_.empty() ? Aabb{} : nodes_.front().box; }

  /// True if the ray origin + t*dir hits any triangle with t in (t_min, t_max).
  [[nodiscard]] bool any_hit(const Vec3& origin, const Vec3& dir, double t_min = 0.0,
                             double t_max = std::numeric_limits<double>::infinity()) const;

  /// Calls visit(object, t) for every hit with t > 0, in no particular order.
  void for_each_hit(const Vec3& origin, const Vec3& dir,
                    const std::function<void(std::uint32_t object, double t)>& visit) const;

  /// Ray-parity membership, one answer per object.
  [[nodiscard]] std::vector<bool> inside_objects(const Vec3& p) const;
  /// Ray-parity membership for single-object hierarchies.
  [[nodiscard]] bool contains(const Vec3& p) const;

 private:
  struct Tri {
    Vec3 a;
    Vec3 e1;
    Vec3 e2;
    std::uint32_t object = 0;
  };
  struct Node {
    Aabb box;
    std::uint32_t first = 0;  // first triangle (leaf) or left child (inner)
    std::uint32_t count = 0;  // triangles in leaf, 0 for inner nodes
  };

  void build(std::vector<Aabb>& boxes, std::vector<Vec3>& centroids);
  template <typename Visit>
  void traverse(const Vec3& origin, const Vec3& dir, double t_min, double t_max, Visit&& visit) const;

  std::vector<Tri> tris_;
  std::vector<Node> nodes_;
  std::size_t object_count_ = 0;
};

/// Tilted ray direction used for parity queries so that rays from lattice
/// points do not run along axis-aligned edges and diagonals.
inline constexpr Vec3 kParityRayDirection{0.0123456789, 0.0456789123, 0.998879};

}  // namespace cadscript::geom
