#include "cadscript/csg.hpp"

#include "cadscript/bvh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fmt/format.h>
#include <optional>
#include <unordered_map>

namespace cadscript::geom {

namespace {

struct Plane {
  Vec3 normal;
  double w = 0.0;

  [[nodiscard]] double distance(const Vec3& p) const { return dot(normal, p) - w; }
  [[nodiscard]] Plane flipped() const { return {-normal, -w}; }
};

struct Polygon {
  std::vector<Vec3> vertices;
  Plane plane;

  void flip() {
    std::reverse(vertices.begin(), vertices.end());
    plane = plane.flipped();
  }
};

bool lexicographic_less(const Vec3& a, const Vec3& b) {
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.z < b.z;
}

/// Edge/plane crossing evaluated from the lexicographically smaller endpoint so
/// that both polygons sharing an edge compute the identical point.
Vec3 crossing(const Plane& plane, const Vec3& p, const Vec3& q) {
  const Vec3& a = lexicographic_less(p, q) ? p : q;
  const Vec3& b = lexicographic_less(p, q) ? q : p;
  const double t = (plane.w - dot(plane.normal, a)) / dot(plane.normal, b - a);
  return lerp(a, b, std::clamp(t, 0.0, 1.0));
}

enum Side : int { kCoplanar = 0, kFront = 1, kBack = 2, kSpanning = 3 };

struct Splitter {
  double epsilon;

  void split(const Plane& plane, const Polygon& poly, std::vector<Polygon>& coplanar_front,
             std::vector<Polygon>& coplanar_back, std::vector<Polygon>& front, std::vector<Polygon>& back) const {
    const std::size_t n = poly.vertices.size();
    int polygon_side = kCoplanar;
    std::vector<int> sides(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = plane.distance(poly.vertices[i]);
      sides[i] = d < -epsilon ? kBack : (d > epsilon ? kFront : kCoplanar);
      polygon_side |= sides[i];
    }
    switch (polygon_side) {
      case kCoplanar:
        (dot(plane.normal, poly.plane.normal) > 0.0 ? coplanar_front : coplanar_back).push_back(poly);
        return;
      case kFront: front.push_back(poly); return;
      case kBack: back.push_back(poly); return;
      default: break;
    }
    Polygon f{{}, poly.plane};
    Polygon b{{}, poly.plane};
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      const Vec3& vi = poly.vertices[i];
      const Vec3& vj = poly.vertices[j];
      if (sides[i] != kBack) f.vertices.push_back(vi);
      if (sides[i] != kFront) b.vertices.push_back(vi);
      if ((sides[i] | sides[j]) == kSpanning) {
        const Vec3 v = crossing(plane, vi, vj);
        f.vertices.push_back(v);
        b.vertices.push_back(v);
      }
    }
    if (f.vertices.size() >= 3) front.push_back(std::move(f));
    if (b.vertices.size() >= 3) back.push_back(std::move(b));
  }
};

/// Node-arena BSP tree; all traversals are iterative so convex inputs (which
/// degenerate into long back-chains) cannot exhaust the stack.
class BspTree {
 public:
  BspTree(std::vector<Polygon> polygons, Splitter splitter) : splitter_(splitter) {
    nodes_.emplace_back();
    build(std::move(polygons));
  }

  void build(std::vector<Polygon> polygons) {
    std::vector<std::pair<int, std::vector<Polygon>>> stack;
    stack.emplace_back(0, std::move(polygons));
    while (!stack.empty()) {
      auto [index, list] = std::move(stack.back());
      stack.pop_back();
      if (list.empty()) continue;
      if (!nodes_[index].plane) nodes_[index].plane = list.front().plane;
      const Plane plane = *nodes_[index].plane;
      std::vector<Polygon> front;
      std::vector<Polygon> back;
      std::vector<Polygon> coplanar;
      for (const auto& poly : list) splitter_.split(plane, poly, coplanar, coplanar, front, back);
      auto& own = nodes_[index].polygons;
      own.insert(own.end(), std::make_move_iterator(coplanar.begin()), std::make_move_iterator(coplanar.end()));
      if (!front.empty()) {
        if (nodes_[index].front < 0) {
          nodes_[index].front = static_cast<int>(nodes_.size());
          nodes_.emplace_back();
        }
        stack.emplace_back(nodes_[index].front, std::move(front));
      }
      if (!back.empty()) {
        if (nodes_[index].back < 0) {
          nodes_[index].back = static_cast<int>(nodes_.size());
          nodes_.emplace_back();
        }
        stack.emplace_back(nodes_[index].back, std::move(back));
      }
    }
  }

  /// Swaps solid and empty space.
  void invert() {
    for (auto& node : nodes_) {
      for (auto& poly : node.polygons) poly.flip();
      if (node.plane) node.plane = node.plane->flipped();
      std::swap(node.front, node.back);
    }
  }

  /// Removes the parts of `polygons` that lie inside this tree's solid.
  [[nodiscard]] std::vector<Polygon> clip_polygons(std::vector<Polygon> polygons) const {
    std::vector<Polygon> kept;
    std::vector<std::pair<int, std::vector<Polygon>>> stack;
    stack.emplace_back(0, std::move(polygons));
    while (!stack.empty()) {
      auto [index, list] = std::move(stack.back());
      stack.pop_back();
      const Node& node = nodes_[index];
      if (!node.plane) {
        kept.insert(kept.end(), std::make_move_iterator(list.begin()), std::make_move_iterator(list.end()));
        continue;
      }
      std::vector<Polygon> front;
      std::vector<Polygon> back;
      for (const auto& poly : list) splitter_.split(*node.plane, poly, front, back, front, back);
      if (node.back >= 0 && !back.empty()) stack.emplace_back(node.back, std::move(back));
      if (node.front >= 0) {
        if (!front.empty()) stack.emplace_back(node.front, std::move(front));
      } else {
        kept.insert(kept.end(), std::make_move_iterator(front.begin()), std::make_move_iterator(front.end()));
      }
    }
    return kept;
  }

  void clip_to(const BspTree& other) {
    for (auto& node : nodes_) node.polygons = other.clip_polygons(std::move(node.polygons));
  }

  [[nodiscard]] std::vector<Polygon> all_polygons() const {
    std::vector<Polygon> out;
    for (const auto& node : nodes_) out.insert(out.end(), node.polygons.begin(), node.polygons.end());
    return out;
  }

 private:
  struct Node {
    std::optional<Plane> plane;
    int front = -1;
    int back = -1;
    std::vector<Polygon> polygons;
  };

  std::vector<Node> nodes_;
  Splitter splitter_;
};

std::vector<Polygon> to_polygons(const TriangleMesh& mesh) {
  std::vector<Polygon> out;
  out.reserve(mesh.triangles.size());
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    const auto [a, b, c] = mesh.corners(i);
    const Vec3 n = normalized(cross(b - a, c - a));
    if (n == Vec3{}) continue;
    out.push_back({{a, b, c}, {n, dot(n, a)}});
  }
  return out;
}

std::vector<Polygon> run_bsp(BooleanKind kind, const TriangleMesh& left, const TriangleMesh& right,
                             const CsgOptions& options) {
  const Splitter splitter{options.plane_epsilon};
  BspTree a(to_polygons(left), splitter);
  BspTree b(to_polygons(right), splitter);
  switch (kind) {
    case BooleanKind::union_op:
      a.clip_to(b);
      b.clip_to(a);
      b.invert();
      b.clip_to(a);
      b.invert();
      a.build(b.all_polygons());
      return a.all_polygons();
    case BooleanKind::difference:
      a.invert();
      a.clip_to(b);
      b.clip_to(a);
      b.invert();
      b.clip_to(a);
      b.invert();
      a.build(b.all_polygons());
      a.invert();
      return a.all_polygons();
    case BooleanKind::intersection:
      a.invert();
      b.clip_to(a);
      b.invert();
      a.clip_to(b);
      b.clip_to(a);
      a.build(b.all_polygons());
      a.invert();
      return a.all_polygons();
  }
  return {};
}

// ---------------------------------------------------------------------------
// Stitching
// ---------------------------------------------------------------------------

struct CellKey {
  std::int64_t x, y, z;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : {k.x, k.y, k.z}) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

class VertexGrid {
 public:
  explicit VertexGrid(double cell) : cell_(cell) {}

  [[nodiscard]] CellKey key(const Vec3& p) const {
    return {static_cast<std::int64_t>(std::floor(p.x / cell_)), static_cast<std::int64_t>(std::floor(p.y / cell_)),
            static_cast<std::int64_t>(std::floor(p.z / cell_))};
  }
  void insert(const Vec3& p, std::uint32_t index) { cells_[key(p)].push_back(index); }
  [[nodiscard]] const std::vector<std::uint32_t>* find(const CellKey& k) const {
    auto it = cells_.find(k);
    return it == cells_.end() ? nullptr : &it->second;
  }
  [[nodiscard]] double cell() const { return cell_; }

 private:
  double cell_;
  std::unordered_map<CellKey, std::vector<std::uint32_t>, CellHash> cells_;
};

double loop_area(const std::vector<std::uint32_t>& loop, const std::vector<Vec3>& verts, const Vec3& normal) {
  Vec3 sum;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    sum += cross(verts[loop[i]], verts[loop[(i + 1) % loop.size()]]);
  }
  return 0.5 * dot(sum, normal);
}

double corner_area(const Vec3& prev, const Vec3& v, const Vec3& next, const Vec3& normal) {
  return 0.5 * dot(cross(v - prev, next - v), normal);
}

}  // namespace

TriangleMesh stitch_polygons(const std::vector<std::vector<Vec3>>& polygons, const CsgOptions& options) {
  const double weld = options.weld_tolerance;

  // 1. weld
  std::vector<Vec3> verts;
  VertexGrid weld_grid(std::max(weld * 16.0, 1e-12));
  std::vector<std::vector<std::uint32_t>> loops;
  loops.reserve(polygons.size());
  for (const auto& poly : polygons) {
    std::vector<std::uint32_t> loop;
    loop.reserve(poly.size());
    for (const Vec3& p : poly) {
      const CellKey k = weld_grid.key(p);
      std::optional<std::uint32_t> found;
      for (std::int64_t dx = -1; dx <= 1 && !found; ++dx) {
        for (std::int64_t dy = -1; dy <= 1 && !found; ++dy) {
          for (std::int64_t dz = -1; dz <= 1 && !found; ++dz) {
            if (const auto* bucket = weld_grid.find({k.x + dx, k.y + dy, k.z + dz})) {
              for (auto idx : *bucket) {
                if (length(verts[idx] - p) <= weld) {
                  found = idx;
                  break;
                }
              }
            }
          }
        }
      }
      if (!found) {
        found = static_cast<std::uint32_t>(verts.size());
        verts.push_back(p);
        weld_grid.insert(p, *found);
      }
      if (loop.empty() || loop.back() != *found) loop.push_back(*found);
    }
    while (loop.size() > 1 && loop.front() == loop.back()) loop.pop_back();
    if (loop.size() >= 3) loops.push_back(std::move(loop));
  }

  // 2. T-junctions: split every loop edge at welded vertices lying on it.
  Aabb extent;
  for (const auto& v : verts) extent.expand(v);
  const Vec3 size = extent.size();
  const double longest = std::max({size.x, size.y, size.z, 1e-9});
  const double cell = longest / std::max(1.0, std::cbrt(static_cast<double>(verts.size())));
  VertexGrid grid(cell);
  for (std::uint32_t i = 0; i < verts.size(); ++i) grid.insert(verts[i], i);
  const double on_edge = 10.0 * weld;

  std::vector<std::pair<double, std::uint32_t>> hits;
  for (auto& loop : loops) {
    std::vector<std::uint32_t> refined;
    refined.reserve(loop.size());
    for (std::size_t e = 0; e < loop.size(); ++e) {
      const std::uint32_t ia = loop[e];
      const std::uint32_t ib = loop[(e + 1) % loop.size()];
      refined.push_back(ia);
      const Vec3 a = verts[ia];
      const Vec3 ab = verts[ib] - a;
      const double len2 = dot(ab, ab);
      if (len2 <= 0.0) continue;
      hits.clear();
      auto consider = [&](std::uint32_t idx) {
        if (idx == ia || idx == ib) return;
        const Vec3 ap = verts[idx] - a;
        const double t = dot(ap, ab) / len2;
        if (t <= 0.0 || t >= 1.0) return;
        if (length(ap - ab * t) > on_edge) return;
        hits.emplace_back(t, idx);
      };
      const CellKey lo = grid.key(min(a, verts[ib]) - Vec3{on_edge, on_edge, on_edge});
      const CellKey hi = grid.key(max(a, verts[ib]) + Vec3{on_edge, on_edge, on_edge});
      const double cells = static_cast<double>(hi.x - lo.x + 1) * static_cast<double>(hi.y - lo.y + 1) *
                           static_cast<double>(hi.z - lo.z + 1);
      if (cells > static_cast<double>(verts.size())) {
        for (std::uint32_t idx = 0; idx < verts.size(); ++idx) consider(idx);
      } else {
        for (auto x = lo.x; x <= hi.x; ++x) {
          for (auto y = lo.y; y <= hi.y; ++y) {
            for (auto z = lo.z; z <= hi.z; ++z) {
              if (const auto* bucket = grid.find({x, y, z})) {
                for (auto idx : *bucket) consider(idx);
              }
            }
          }
        }
      }
      std::sort(hits.begin(), hits.end());
      for (const auto& [t, idx] : hits) {
        if (refined.back() != idx) refined.push_back(idx);
      }
    }
    while (refined.size() > 1 && refined.front() == refined.back()) refined.pop_back();
    loop = std::move(refined);
  }

  // 3. ear-clip each (convex, possibly with collinear points) loop
  TriangleMesh mesh;
  for (auto loop : loops) {
    if (loop.size() < 3) continue;
    Vec3 normal;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      normal += cross(verts[loop[i]], verts[loop[(i + 1) % loop.size()]]);
    }
    normal = normalized(normal);
    if (normal == Vec3{}) continue;  // zero-area loop, its edges pair with each other
    double remaining = loop_area(loop, verts, normal);
    while (loop.size() > 3) {
      const std::size_t n = loop.size();
      std::optional<std::size_t> best;
      double best_score = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const Vec3& prev = verts[loop[(i + n - 1) % n]];
        const Vec3& v = verts[loop[i]];
        const Vec3& next = verts[loop[(i + 1) % n]];
        const double ear = corner_area(prev, v, next, normal);
        if (ear <= 0.0) continue;
        const double rest = remaining - ear;
        if (rest <= 0.0) continue;
        // Prefer ears that leave a well-conditioned remainder.
        const double score = std::min(ear, rest);
        if (score > best_score) {
          best_score = score;
          best = i;
        }
      }
      if (!best) break;
      const std::size_t i = *best;
      const std::uint32_t prev = loop[(i + n - 1) % n];
      const std::uint32_t next = loop[(i + 1) % n];
      mesh.triangles.push_back({prev, loop[i], next});
      remaining -= corner_area(verts[prev], verts[loop[i]], verts[next], normal);
      loop.erase(loop.begin() + static_cast<std::ptrdiff_t>(i));
    }
    if (loop.size() == 3 && corner_area(verts[loop[0]], verts[loop[1]], verts[loop[2]], normal) > 0.0) {
      mesh.triangles.push_back({loop[0], loop[1], loop[2]});
    }
  }

  // 4. compact vertices in first-use order
  std::vector<std::uint32_t> remap(verts.size(), UINT32_MAX);
  for (auto& tri : mesh.triangles) {
    for (auto& idx : tri) {
      if (remap[idx] == UINT32_MAX) {
        remap[idx] = static_cast<std::uint32_t>(mesh.vertices.size());
        mesh.vertices.push_back(verts[idx]);
      }
      idx = remap[idx];
    }
  }

  const MeshDiagnostics diag = diagnose(mesh, 0.0);
  if (!diag.watertight()) {
    throw KernelError(KernelErrc::csg_failure,
                      fmt::format("boolean result is not watertight ({} open and {} repeated edges)",
                                  diag.boundary_edges, diag.overused_edges));
  }
  return mesh;
}

namespace {

using Triangle = std::array<Vec3, 3>;

Triangle corners(const TriangleMesh& m, std::size_t t) {
  const auto& tri = m.triangles[t];
  return {m.vertices[tri[0]], m.vertices[tri[1]], m.vertices[tri[2]]};
}

Aabb triangle_box(const Triangle& t) {
  Aabb box;
  for (const Vec3& p : t) box.expand(p);
  return box;
}

/// Separating-axis test; true only when some axis leaves a gap wider than `gap`.
bool triangles_apart(const Triangle& p, const Triangle& q, double gap) {
  const std::array<Vec3, 3> ep{p[1] - p[0], p[2] - p[1], p[0] - p[2]};
  const std::array<Vec3, 3> eq{q[1] - q[0], q[2] - q[1], q[0] - q[2]};
  const Vec3 np = cross(ep[0], ep[1]);
  const Vec3 nq = cross(eq[0], eq[1]);
  std::array<Vec3, 17> axes;
  std::size_t n = 0;
  axes[n++] = np;
  axes[n++] = nq;
  for (const Vec3& a : ep) {
    for (const Vec3& b : eq) axes[n++] = cross(a, b);
  }
  for (const Vec3& a : ep) axes[n++] = cross(np, a);
  for (const Vec3& b : eq) axes[n++] = cross(nq, b);
  for (const Vec3& axis : axes) {
    const double len = std::sqrt(dot(axis, axis));
    if (len < 1e-12) continue;
    double p_lo = dot(axis, p[0]), p_hi = p_lo, q_lo = dot(axis, q[0]), q_hi = q_lo;
    for (int i = 1; i < 3; ++i) {
      const double dp = dot(axis, p[i]);
      const double dq = dot(axis, q[i]);
      p_lo = std::min(p_lo, dp);
      p_hi = std::max(p_hi, dp);
      q_lo = std::min(q_lo, dq);
      q_hi = std::max(q_hi, dq);
    }
    if (p_hi + gap * len < q_lo || q_hi + gap * len < p_lo) return true;
  }
  return false;
}

/// True when no triangle of `a` comes within `gap` of a triangle of `b`.
bool surfaces_apart(const TriangleMesh& a, const TriangleMesh& b, double gap) {
  struct Entry {
    Aabb box;
    std::uint32_t tri;
    bool from_a;
  };
  std::vector<Entry> entries;
  entries.reserve(a.triangles.size() + b.triangles.size());
  for (std::size_t t = 0; t < a.triangles.size(); ++t) {
    entries.push_back({triangle_box(corners(a, t)), static_cast<std::uint32_t>(t), true});
  }
  for (std::size_t t = 0; t < b.triangles.size(); ++t) {
    entries.push_back({triangle_box(corners(b, t)), static_cast<std::uint32_t>(t), false});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& l, const Entry& r) { return l.box.min.x < r.box.min.x; });
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Entry& e = entries[i];
    std::erase_if(active, [&](std::size_t k) { return entries[k].box.max.x + gap < e.box.min.x; });
    for (std::size_t k : active) {
      const Entry& o = entries[k];
      if (o.from_a == e.from_a) continue;
      if (o.box.min.y > e.box.max.y + gap || e.box.min.y > o.box.max.y + gap || o.box.min.z > e.box.max.z + gap ||
          e.box.min.z > o.box.max.z + gap) {
        continue;
      }
      const Triangle ta = corners(a, e.from_a ? e.tri : o.tri);
      const Triangle tb = corners(b, e.from_a ? o.tri : e.tri);
      if (!triangles_apart(ta, tb, gap)) return false;
    }
    active.push_back(i);
  }
  return true;
}

TriangleMesh merged(const TriangleMesh& a, const TriangleMesh& b, bool flip_b) {
  TriangleMesh out = a;
  const auto offset = static_cast<std::uint32_t>(out.vertices.size());
  out.vertices.insert(out.vertices.end(), b.vertices.begin(), b.vertices.end());
  for (auto tri : b.triangles) {
    if (flip_b) std::swap(tri[1], tri[2]);
    out.triangles.push_back({tri[0] + offset, tri[1] + offset, tri[2] + offset});
  }
  return out;
}

enum class Nesting { apart, a_in_b, b_in_a };

/// Classifies meshes whose surfaces do not touch; nullopt when they cross.
std::optional<Nesting> nesting(const TriangleMesh& a, const TriangleMesh& b, double gap) {
  if (a.empty() || b.empty() || !surfaces_apart(a, b, gap)) return std::nullopt;
  if (TriangleBvh(b).contains(a.vertices.front())) return Nesting::a_in_b;
  if (TriangleBvh(a).contains(b.vertices.front())) return Nesting::b_in_a;
  return Nesting::apart;
}

TriangleMesh boolean_mesh(BooleanKind kind, const TriangleMesh& left, const TriangleMesh& right,
                          const CsgOptions& options) {
  const std::vector<Polygon> soup = run_bsp(kind, left, right, options);
  std::vector<std::vector<Vec3>> loops;
  loops.reserve(soup.size());
  for (const auto& poly : soup) loops.push_back(poly.vertices);
  TriangleMesh mesh = stitch_polygons(loops, options);
  if (!mesh.empty() && signed_volume_unchecked(mesh) <= 0.0) {
    throw KernelError(KernelErrc::csg_failure, "boolean result has non-positive volume");
  }
  return mesh;
}

}  // namespace

Solid boolean_op(BooleanKind kind, const Solid& a, const Solid& b, const CsgOptions& options) {
  auto node = std::make_shared<CsgNode>(CsgNode{CsgOperation{kind, a.membership(), b.membership()}});
  const double chord = std::max(a.chord_error(), b.chord_error());

  // Surfaces that never meet need no BSP pass: the result is an input, both
  // inputs side by side, or one shell inside the other.
  std::optional<Nesting> nest;
  if (!a.bounds().overlaps(b.bounds())) {
    nest = Nesting::apart;
  } else {
    nest = nesting(a.mesh(), b.mesh(), 100.0 * options.weld_tolerance);
  }
  if (nest) {
    const TriangleMesh& ma = a.mesh();
    const TriangleMesh& mb = b.mesh();
    switch (kind) {
      case BooleanKind::intersection:
        if (*nest == Nesting::apart) return Solid(TriangleMesh{}, node, chord);
        return Solid(*nest == Nesting::a_in_b ? ma : mb, node, chord);
      case BooleanKind::difference:
        if (*nest == Nesting::a_in_b) return Solid(TriangleMesh{}, node, chord);
        return Solid(*nest == Nesting::apart ? ma : merged(ma, mb, true), node, chord);
      case BooleanKind::union_op:
        if (*nest == Nesting::apart) return Solid(merged(ma, mb, false), node, chord);
        return Solid(*nest == Nesting::a_in_b ? mb : ma, node, chord);
    }
  }

  // Near-coincident split points occasionally land just outside the weld
  // tolerance; coarser tolerances are tried in a fixed order before giving up.
  const std::array<CsgOptions, 3> ladder{
      options, CsgOptions{options.weld_tolerance * 10.0, options.plane_epsilon * 10.0},
      CsgOptions{options.weld_tolerance, options.plane_epsilon * 10.0}};
  std::optional<KernelError> last;
  for (const CsgOptions& attempt : ladder) {
    try {
      return Solid(boolean_mesh(kind, a.mesh(), b.mesh(), attempt), node, chord);
    } catch (const KernelError& e) {
      if (e.code() != KernelErrc::csg_failure) throw;
      last = e;
    }
  }
  throw *last;
}

Solid boolean_union(const Solid& a, const Solid& b, const CsgOptions& options) {
  return boolean_op(BooleanKind::union_op, a, b, options);
}

Solid boolean_intersection(const Solid& a, const Solid& b, const CsgOptions& options) {
  return boolean_op(BooleanKind::intersection, a, b, options);
}

Solid boolean_difference(const Solid& a, const Solid& b, const CsgOptions& options) {
  return boolean_op(BooleanKind::difference, a, b, options);
}

}  // namespace cadscript::geom
