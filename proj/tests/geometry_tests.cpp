#include <doctest.h>

#include <cadscript/bvh.hpp>
#include <cadscript/geometry.hpp>
#include <cmath>
#include <numbers>

using namespace cadscript;
using namespace cadscript::geom;

namespace {

double distance_to_segment(const Vec3& p, const Segment& s) {
  const Vec3 d = s.end - s.start;
  const double t = std::clamp(dot(p - s.start, d) / dot(d, d), 0.0, 1.0);
  return length(p - lerp(s.start, s.end, t));
}

template <typename F>
KernelErrc error_of(F&& f) {
  try {
    (void)f();
  } catch (const KernelError& e) {
    return e.code();
  }
  FAIL("expected a KernelError");
  return KernelErrc::csg_failure;
}

}  // namespace

TEST_CASE("box volume and bounds") {
  const Solid b = make_box({1.0, 1.0, 0.3});
  CHECK(b.mesh().triangle_count() == 12);
  CHECK(diagnose(b.mesh()).watertight());
  CHECK(mesh_volume(b.mesh()) == doctest::Approx(0.3).epsilon(1e-12));

  const Solid unit = make_box({1, 1, 1});
  CHECK(mesh_volume(unit.mesh()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(unit.bounds() == Aabb{{0, 0, 0}, {1, 1, 1}});
  CHECK(unit.is_box());
  CHECK(unit.kind() == "box");

  CHECK(error_of([] { return make_box({1, 1, 0}); }) == KernelErrc::non_positive_dimension);
  CHECK(error_of([] { return make_box({-1, 1, 1}); }) == KernelErrc::non_positive_dimension);
}

TEST_CASE("sphere tessellation") {
  const double exact = 4.0 / 3.0 * std::numbers::pi * 0.027;
  const Solid s = make_sphere(0.3);
  CHECK(diagnose(s.mesh()).watertight());
  CHECK(std::abs(mesh_volume(s.mesh()) - exact) / exact < 0.005);
  CHECK(s.mesh().triangle_count() == sphere_triangle_count(64));

  const Solid coarse = make_sphere(1.0, {}, {8, 32});
  CHECK(diagnose(coarse.mesh()).watertight());
  CHECK(mesh_volume(coarse.mesh()) < 4.0 / 3.0 * std::numbers::pi);

  CHECK(error_of([] { return make_sphere(0.0); }) == KernelErrc::non_positive_dimension);
  CHECK_THROWS_AS((void)make_sphere(1.0, {}, {4, 32}), KernelError);
}

TEST_CASE("edge enumeration") {
  const Solid unit = make_box({1, 1, 1});
  const Segment e8 = box_edge(unit, 8);
  CHECK(e8.start == Vec3{0, 0, 1});
  CHECK(e8.end == Vec3{1, 0, 1});
  CHECK(box_edge_point(unit, 8, 0.5) == Vec3{0.5, 0, 1});
  CHECK(box_edge(unit, 0).start == Vec3{0, 0, 0});
  CHECK(box_edge(unit, 4).end == Vec3{0, 0, 1});
  CHECK(box_edge(unit, 7).start == Vec3{0, 1, 0});

  CHECK(random_edge_point(unit, std::nullopt, std::nullopt, 42) ==
        random_edge_point(unit, std::nullopt, std::nullopt, 42));

  const Solid b = make_box({1.0, 1.0, 0.3}, {2, -1, 0.5});
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const Vec3 p = random_edge_point(b, std::nullopt, std::nullopt, seed);
    double best = 1e9;
    for (int e = 0; e < kBoxEdgeCount; ++e) best = std::min(best, distance_to_segment(p, box_edge(b, e)));
    REQUIRE(best < 1e-12);
  }

  const Solid s = make_sphere(1.0);
  CHECK(error_of([&] { return box_edge(s, 0); }) == KernelErrc::not_a_box);
  CHECK(error_of([&] { return box_edge(unit, 12); }) == KernelErrc::out_of_range);
}

TEST_CASE("hypar canopy") {
  const Solid flat = make_hypar(4, 3, {2, 2, 2, 2}, 0.25);
  CHECK(diagnose(flat.mesh()).watertight());
  CHECK(mesh_volume(flat.mesh()) == doctest::Approx(4 * 3 * 0.25).epsilon(1e-9));

  const auto* shape = std::get_if<HyparShape>(&make_hypar(10, 10, {0, 5, 5, 0}, 0.2).membership()->value);
  REQUIRE(shape != nullptr);
  CHECK(shape->surface_height(0.5, 0.5) == doctest::Approx(2.5));

  const Solid saddle = make_hypar(10, 10, {0, 4, 0, 4}, 0.1);
  CHECK(diagnose(saddle.mesh()).watertight());
  const double mesh = mesh_volume(saddle.mesh());
  const double voxel = voxel_volume(saddle, 256);
  CHECK(std::abs(mesh - voxel) / voxel < 0.02);

  CHECK(error_of([] { return make_hypar(10, 10, {0, 1, 1, 0}, 0.0); }) == KernelErrc::non_positive_dimension);
  CHECK(error_of([] { return make_hypar(0, 10, {0, 1, 1, 0}, 0.1); }) == KernelErrc::non_positive_dimension);
}

TEST_CASE("building grid") {
  const auto grid = make_building_grid({3, 3, 10, 10, 15, 20, SpacingMode::gap});
  REQUIRE(grid.size() == 9);
  for (const auto& b : grid) {
    CHECK(b.bounds().min.z == 0.0);
    CHECK(b.bounds().max.z == 15.0);
  }
  CHECK(grid[1].bounds().min.x - grid[0].bounds().min.x == 30.0);
  CHECK(grid[3].bounds().min.y - grid[0].bounds().min.y == 30.0);

  const auto pitch = make_building_grid({1, 2, 10, 10, 15, 20, SpacingMode::pitch});
  CHECK(pitch[1].bounds().min.x == 20.0);

  const auto single = make_building_grid({1, 1, 10, 8, 15, 20, SpacingMode::gap});
  REQUIRE(single.size() == 1);
  CHECK(single[0].mesh() == make_box({10, 8, 15}).mesh());

  CHECK(error_of([] { return make_building_grid({200, 200, 10, 10, 15, 20, SpacingMode::gap}); }) ==
        KernelErrc::resource_limit);
  CHECK(spacing_mode_from_string("pitch") == SpacingMode::pitch);
  CHECK(!spacing_mode_from_string("diagonal"));
}

TEST_CASE("mesh volume checks") {
  TriangleMesh cube = make_box({1, 1, 1}).mesh();
  CHECK(mesh_volume(cube) == doctest::Approx(1.0));
  CHECK(std::abs(mesh_volume(cube.translated({123.5, -7.25, 40})) - 1.0) < 1e-9);

  TriangleMesh flipped = cube;
  std::swap(flipped.triangles[3][1], flipped.triangles[3][2]);
  CHECK(!diagnose(flipped).watertight());
  CHECK(error_of([&] { return mesh_volume(flipped); }) == KernelErrc::not_watertight);

  TriangleMesh open = cube;
  open.triangles.pop_back();
  CHECK(diagnose(open).boundary_edges == 3);
}

TEST_CASE("analytic membership") {
  const Solid box = make_box({1, 1, 1});
  CHECK(analytic_contains(box, {0.5, 0.5, 0.5}));
  CHECK(!analytic_contains(box, {1.5, 0.5, 0.5}));

  const Vec3 c{2, 2, 2};
  const Solid s = make_sphere(0.3, c);
  CHECK(!analytic_contains(s, c + Vec3{0.31, 0, 0}));
  CHECK(analytic_contains(s, c + Vec3{0, 0.29, 0}));

  const Solid moved = box.translated({10, 0, 0});
  CHECK(analytic_contains(moved, {10.5, 0.5, 0.5}));
  CHECK(!analytic_contains(moved, {0.5, 0.5, 0.5}));
}

TEST_CASE("voxel oracle") {
  CHECK(std::abs(voxel_volume(make_box({1, 1, 1}), 128) - 1.0) < 0.03);
  const double exact = 4.0 / 3.0 * std::numbers::pi * 0.027;
  CHECK(std::abs(voxel_volume(make_sphere(0.3), 256) - exact) / exact < 0.01);
  CHECK(voxel_volume(Solid{}, 64) == 0.0);
}

TEST_CASE("bvh parity") {
  const Solid s = make_sphere(1.0);
  const TriangleBvh bvh(s.mesh());
  CHECK(bvh.triangle_count() == s.mesh().triangle_count());
  CHECK(bvh.contains({0, 0, 0}));
  CHECK(bvh.contains({0.5, 0.2, -0.3}));
  CHECK(!bvh.contains({1.2, 0, 0}));
  CHECK(bvh.any_hit({0, 0, 5}, {0, 0, -1}));
  CHECK(!bvh.any_hit({0, 0, 5}, {0, 0, 1}));

  const Solid a = make_box({1, 1, 1});
  const Solid b = make_box({1, 1, 1}, {3, 0, 0});
  const TriangleMesh* meshes[] = {&a.mesh(), &b.mesh()};
  const TriangleBvh both(meshes);
  CHECK(both.object_count() == 2);
  CHECK(both.inside_objects({3.5, 0.5, 0.5}) == std::vector<bool>{false, true});
}

TEST_CASE("point triangle distance") {
  const Vec3 a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0};
  CHECK(point_triangle_distance({0.2, 0.2, 3}, a, b, c) == doctest::Approx(3.0));
  CHECK(point_triangle_distance({2, 0, 0}, a, b, c) == doctest::Approx(1.0));
  CHECK(point_triangle_distance({-1, -1, 0}, a, b, c) == doctest::Approx(std::sqrt(2.0)));
}
