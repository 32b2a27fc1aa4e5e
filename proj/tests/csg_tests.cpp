#include <doctest.h>

#include <cadscript/csg.hpp>
#include <cmath>
#include <numbers>

#include "support/checks.hpp"

using namespace cadscript;
using namespace cadscript::geom;

namespace {

bool sound(const Solid& s) {
  const MeshDiagnostics d = diagnose(s.mesh());
  return d.watertight() && (s.mesh().empty() || mesh_volume(s.mesh()) > 0.0);
}

}  // namespace

TEST_CASE("example one configuration") {
  const Solid box = make_box({1.0, 1.0, 0.3});
  const Solid sphere = make_sphere(0.3, box_edge_point(box, 8, 0.5));
  const Solid n = boolean_intersection(box, sphere);
  const Solid u = boolean_union(box, sphere);
  CHECK(sound(n));
  CHECK(sound(u));
  const double quarter = std::numbers::pi * 0.027 / 3.0;
  CHECK(std::abs(mesh_volume(n.mesh()) - quarter) / quarter < 0.02);
  CHECK(std::abs(mesh_volume(u.mesh()) - 0.3848230) / 0.3848230 < 0.02);
  CHECK(n.kind() == "intersection");
  CHECK(u.kind() == "union");
}

TEST_CASE("idempotent union") {
  const Solid a = make_box({1, 2, 3}, {0.5, 0.5, 0.5});
  const Solid u = boolean_union(a, a);
  CHECK(sound(u));
  CHECK(std::abs(mesh_volume(u.mesh()) - 6.0) <= 6e-6);
}

TEST_CASE("disjoint and nested operands") {
  const Solid a = make_box({1, 1, 1});
  const Solid b = make_box({1, 1, 1}, {3, 0, 0});
  const Solid n = boolean_intersection(a, b);
  CHECK(n.mesh().empty());
  CHECK(n.kind() == "intersection");
  CHECK(voxel_volume(n, 32) == 0.0);
  CHECK(mesh_volume(boolean_union(a, b).mesh()) == doctest::Approx(2.0));
  CHECK(boolean_difference(a, b).mesh() == a.mesh());

  const Solid outer = make_box({4, 4, 4});
  const Solid inner = make_sphere(1.0, {2, 2, 2});
  const double vi = mesh_volume(inner.mesh());
  CHECK(boolean_union(outer, inner).mesh() == outer.mesh());
  CHECK(boolean_union(inner, outer).mesh() == outer.mesh());
  CHECK(boolean_intersection(outer, inner).mesh() == inner.mesh());
  const Solid cavity = boolean_difference(outer, inner);
  CHECK(sound(cavity));
  CHECK(mesh_volume(cavity.mesh()) == doctest::Approx(64.0 - vi));
  CHECK(!analytic_contains(cavity, {2, 2, 2}));
  CHECK(analytic_contains(cavity, {0.5, 0.5, 0.5}));
  CHECK(boolean_difference(inner, outer).mesh().empty());
}

TEST_CASE("difference cuts a corner") {
  const Solid a = make_box({2, 2, 2});
  const Solid b = make_box({2, 2, 2}, {1, 1, 1});
  const Solid d = boolean_difference(a, b);
  CHECK(sound(d));
  CHECK(mesh_volume(d.mesh()) == doctest::Approx(7.0).epsilon(1e-9));
  CHECK(!analytic_contains(d, {1.5, 1.5, 1.5}));
  CHECK(analytic_contains(d, {0.5, 0.5, 0.5}));
}

TEST_CASE("coplanar faces") {
  const Solid a = make_box({1, 1, 1});
  const Solid b = make_box({1, 1, 1}, {1, 0, 0});
  const Solid u = boolean_union(a, b);
  CHECK(sound(u));
  CHECK(mesh_volume(u.mesh()) == doctest::Approx(2.0).epsilon(1e-9));

  const Solid c = make_box({1, 1, 1}, {0.5, 0, 0});
  const Solid n = boolean_intersection(a, c);
  CHECK(sound(n));
  CHECK(mesh_volume(n.mesh()) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("union commutes") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const checks::PairCase pc = checks::random_pair(seed);
    const double ab = mesh_volume(boolean_union(pc.box, pc.sphere).mesh());
    const double ba = mesh_volume(boolean_union(pc.sphere, pc.box).mesh());
    CHECK(std::abs(ab - ba) <= 1e-9 * ab);
  }
}

TEST_CASE("chained booleans keep membership") {
  const Solid a = make_box({1, 1, 1});
  const Solid s = make_sphere(0.4, {1, 1, 1});
  const Solid u = boolean_union(a, s);
  const Solid d = boolean_difference(u, make_box({0.2, 0.2, 2}, {0.4, 0.4, -0.5}));
  CHECK(sound(d));
  CHECK(!analytic_contains(d, {0.5, 0.5, 0.5}));
  CHECK(analytic_contains(d, {1.2, 1.1, 1.1}));
  const checks::OracleReport o = checks::oracle_agreement(d, 9);
  CHECK(o.samples == 10'000);
  CHECK(o.outside_shell == 0);
}

TEST_CASE("stitching rejects open soups") {
  const std::vector<std::vector<Vec3>> open{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}};
  CHECK_THROWS_AS((void)stitch_polygons(open), KernelError);

  const Solid box = make_box({1, 1, 1});
  const TriangleMesh& cube = box.mesh();
  std::vector<std::vector<Vec3>> soup;
  for (std::size_t t = 0; t < cube.triangle_count(); ++t) {
    const auto c = cube.corners(t);
    soup.push_back({c[0], c[1], c[2]});
  }
  CHECK(mesh_volume(stitch_polygons(soup)) == doctest::Approx(1.0));
}
