#pragma once

#include <string>
#include <vector>

#include "cadscript/geometry.hpp"

namespace cadscript::geom {

struct CsgOptions {
  /// Vertices closer than this are merged after the BSP pass.
  double weld_tolerance = 1e-9;
  /// Points within this distance of a splitting plane count as on it.
  double plane_epsilon = 1e-9;
};

/// Mesh booleans by BSP split/classify/merge followed by welding, T-junction
/// repair and re-triangulation. The result must come out watertight, otherwise
/// the operation throws KernelError(csg_failure) rather than returning a
/// repaired approximation. An empty result is a valid empty Solid.
[[nodiscard]] Solid boolean_union(const Solid& a, const Solid& b, const CsgOptions& options = {});
[[nodiscard]] Solid boolean_intersection(const Solid& a, const Solid& b, const CsgOptions& options = {});
[[nodiscard]] Solid boolean_difference(const Solid& a, const Solid& b, const CsgOptions& options = {});
[[nodiscard]] Solid boolean_op(BooleanKind kind, const Solid& a, const Solid& b, const CsgOptions& options = {});

/// Polygon soup to indexed mesh: weld, split edges at T-junctions, ear-clip.
/// Exposed for tests; throws csg_failure when the result is not watertight.
[[nodiscard]] TriangleMesh stitch_polygons(const std::vector<std::vector<Vec3>>& polygons,
                                           const CsgOptions& options = {});

}  // namespace cadscript::geom
