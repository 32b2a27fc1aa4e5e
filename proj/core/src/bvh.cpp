#include "cadscript/bvh.hpp"

#include <algorithm>
#include <numeric>

namespace cadscript::geom {

namespace {

constexpr std::uint32_t kLeafSize = 4;

bool ray_box(const Aabb& box, const Vec3& origin, const Vec3& inv_dir, double t_min, double t_max) {
  for (int axis = 0; axis < 3; ++axis) {
    double t0 = (box.min[axis] - origin[axis]) * inv_dir[axis];
    double t1 = (box.max[axis] - origin[axis]) * inv_dir[axis];
    if (t0 > t1) std::swap(t0, t1);
    // NaN from 0 * inf keeps the slab open
    if (t0 > t_min) t_min = t0;
    if (t1 < t_max) t_max = t1;
    if (t_min > t_max) return false;
  }
  return true;
}

}  // namespace

TriangleBvh::TriangleBvh(const TriangleMesh& mesh) {
  const TriangleMesh* one[] = {&mesh};
  *this = TriangleBvh(std::span<const TriangleMesh* const>(one));
}

TriangleBvh::TriangleBvh(std::span<const TriangleMesh* const> meshes) : object_count_(meshes.size()) {
  std::vector<Aabb> boxes;
  std::vector<Vec3> centroids;
  for (std::size_t m = 0; m < meshes.size(); ++m) {
    const TriangleMesh& mesh = *meshes[m];
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
      const auto [a, b, c] = mesh.corners(i);
      tris_.push_back({a, b - a, c - a, static_cast<std::uint32_t>(m)});
      Aabb box;
      box.expand(a);
      box.expand(b);
      box.expand(c);
      boxes.push_back(box);
      centroids.push_back((a + b + c) / 3.0);
    }
  }
  build(boxes, centroids);
}

void TriangleBvh::build(std::vector<Aabb>& boxes, std::vector<Vec3>& centroids) {
  if (tris_.empty()) return;
  std::vector<std::uint32_t> order(tris_.size());
  std::iota(order.begin(), order.end(), 0u);

  struct Pending {
    std::uint32_t node;
    std::uint32_t begin;
    std::uint32_t end;
  };
  nodes_.push_back({});
  std::vector<Pending> stack{{0, 0, static_cast<std::uint32_t>(order.size())}};
  while (!stack.empty()) {
    const Pending job = stack.back();
    stack.pop_back();
    Aabb box;
    Aabb centroid_box;
    for (std::uint32_t i = job.begin; i < job.end; ++i) {
      box = box.merged(boxes[order[i]]);
      centroid_box.expand(centroids[order[i]]);
    }
    nodes_[job.node].box = box;
    const std::uint32_t count = job.end - job.begin;
    const Vec3 spread = centroid_box.size();
    const int axis = spread.x >= spread.y && spread.x >= spread.z ? 0 : (spread.y >= spread.z ? 1 : 2);
    if (count <= kLeafSize || spread[axis] <= 0.0) {
      nodes_[job.node].first = job.begin;
      nodes_[job.node].count = count;
      continue;
    }
    const std::uint32_t mid = job.begin + count / 2;
    std::nth_element(order.begin() + job.begin, order.begin() + mid, order.begin() + job.end,
                     [&](std::uint32_t l, std::uint32_t r) {
                       if (centroids[l][axis] != centroids[r][axis]) return centroids[l][axis] < centroids[r][axis];
                       return l < r;
                     });
    const auto left = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({});
    nodes_.push_back({});
    nodes_[job.node].first = left;
    nodes_[job.node].count = 0;
    stack.push_back({left + 1, mid, job.end});
    stack.push_back({left, job.begin, mid});
  }

  std::vector<Tri> sorted;
  sorted.reserve(tris_.size());
  for (auto idx : order) sorted.push_back(tris_[idx]);
  tris_ = std::move(sorted);
}

template <typename Visit>
void TriangleBvh::traverse(const Vec3& origin, const Vec3& dir, double t_min, double t_max, Visit&& visit) const {
  if (nodes_.empty()) return;
  const Vec3 inv{1.0 / dir.x, 1.0 / dir.y, 1.0 / dir.z};
  std::uint32_t stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (!ray_box(node.box, origin, inv, t_min, t_max)) continue;
    if (node.count == 0) {
      stack[top++] = node.first;
      stack[top++] = node.first + 1;
      continue;
    }
    for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
      const Tri& tri = tris_[i];
      // Moller-Trumbore
      const Vec3 p = cross(dir, tri.e2);
      const double det = dot(tri.e1, p);
      if (det == 0.0) continue;
      const double inv_det = 1.0 / det;
      const Vec3 s = origin - tri.a;
      const double u = dot(s, p) * inv_det;
      if (u < 0.0 || u > 1.0) continue;
      const Vec3 q = cross(s, tri.e1);
      const double v = dot(dir, q) * inv_det;
      if (v < 0.0 || u + v > 1.0) continue;
      const double t = dot(tri.e2, q) * inv_det;
      if (t > t_min && t < t_max) {
        if (visit(tri.object, t)) return;
      }
    }
  }
}

bool TriangleBvh::any_hit(const Vec3& origin, const Vec3& dir, double t_min, double t_max) const {
  bool hit = false;
  traverse(origin, dir, t_min, t_max, [&](std::uint32_t, double) {
    hit = true;
    return true;
  });
  return hit;
}

void TriangleBvh::for_each_hit(const Vec3& origin, const Vec3& dir,
                               const std::function<void(std::uint32_t, double)>& visit) const {
  traverse(origin, dir, 0.0, std::numeric_limits<double>::infinity(), [&](std::uint32_t object, double t) {
    visit(object, t);
    return false;
  });
}

std::vector<bool> TriangleBvh::inside_objects(const Vec3& p) const {
  std::vector<bool> parity(object_count_, false);
  traverse(p, kParityRayDirection, 0.0, std::numeric_limits<double>::infinity(), [&](std::uint32_t object, double) {
    parity[object] = !parity[object];
    return false;
  });
  return parity;
}

bool TriangleBvh::contains(const Vec3& p) const {
  bool inside = false;
  traverse(p, kParityRayDirection, 0.0, std::numeric_limits<double>::infinity(), [&](std::uint32_t, double) {
    inside = !inside;
    return false;
  });
  return inside;
}

}  // namespace cadscript::geom
