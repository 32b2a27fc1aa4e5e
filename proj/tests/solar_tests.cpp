#include <doctest.h>

#include <cadscript/solar.hpp>
#include <cmath>

using namespace cadscript;
using namespace cadscript::solar;

namespace {

constexpr CivilDate kSolstice{2024, 6, 21};

GroundGrid grid_around(double x0, double y0, int nx, int ny) { return {x0, y0, 1.0, nx, ny}; }

}  // namespace

TEST_CASE("calendar") {
  CHECK(kSolstice.day_of_year() == 173);
  CHECK((CivilDate{2023, 6, 21}.day_of_year()) == 172);
  CHECK(is_leap_year(2000));
  CHECK(!is_leap_year(1900));
  CHECK(CivilDate::parse("2024-02-29").has_value());
  CHECK(!CivilDate::parse("2023-02-29").has_value());
  CHECK(!CivilDate::parse("2024-6-21").has_value());
  CHECK(kSolstice.to_string() == "2024-06-21");
}

TEST_CASE("declination") {
  CHECK(std::abs(solar_declination(172) - 23.44) <= 0.1);
  CHECK(std::abs(solar_declination(80)) <= 1.0);
  CHECK(std::abs(solar_declination(355) + 23.44) <= 0.1);
  for (int d = 1; d <= 366; ++d) {
    const double v = solar_declination(d, 366);
    CHECK(v >= -23.6);
    CHECK(v <= 23.6);
  }
}

TEST_CASE("sun position at Derby") {
  const double noon = solar_noon_minutes(kDerby, kSolstice);
  const SolarAngles at_noon = solar_position(kDerby, {kSolstice, noon});
  CHECK(std::abs(at_noon.altitude_deg - 60.5) <= 0.5);
  CHECK(std::abs(at_noon.azimuth_deg - 180.0) <= 2.0);
  const double midnight = std::fmod(noon + 720.0, 1440.0);
  CHECK(solar_position(kDerby, {kSolstice, midnight}).altitude_deg < 0.0);
}

TEST_CASE("sun path") {
  const SunPath derby = sun_path(kDerby, kSolstice, 10);
  CHECK(derby.samples.size() == 144);
  CHECK(std::abs(derby.daylight_hours() - 16.7) <= 0.2);
  for (std::size_t i = 1; i < derby.samples.size(); ++i) {
    CHECK(derby.samples[i].instant.minutes_utc > derby.samples[i - 1].instant.minutes_utc);
    const double a = derby.samples[i].angles.azimuth_deg;
    const double b = derby.samples[i - 1].angles.azimuth_deg;
    double step = std::abs(a - b);
    step = std::min(step, 360.0 - step);
    CHECK(step < 15.0);
    CHECK(a >= 0.0);
    CHECK(a < 360.0);
  }
  for (int month = 1; month <= 12; ++month) {
    const SunPath equator = sun_path({0.0, 0.0}, {2024, month, 15}, 10);
    CHECK(std::abs(equator.daylight_hours() - 12.0) <= 0.3);
  }
  CHECK(sun_path(kDerby, kSolstice, 1).samples.size() == 1440);
}

TEST_CASE("sun direction") {
  const Vec3 up = sun_direction({123.0, 90.0});
  CHECK(std::abs(up.z - 1.0) < 1e-12);
  const Vec3 east = sun_direction({90.0, 0.0});
  CHECK(std::abs(east.x - 1.0) < 1e-12);
  CHECK(std::abs(east.y) < 1e-12);
  CHECK(std::abs(east.z) < 1e-12);
  for (double az = 0; az < 360; az += 37) {
    for (double alt = -80; alt <= 90; alt += 17) {
      const Vec3 v = sun_direction({az, alt});
      CHECK(std::abs(length(v) - 1.0) < 1e-12);
      CHECK(std::abs(v.z - std::sin(alt * M_PI / 180.0)) < 1e-12);
    }
  }
}

TEST_CASE("shadow mask") {
  const GroundGrid grid = grid_around(-20, -20, 50, 60);
  const std::vector<const geom::TriangleMesh*> none;
  for (auto v : shadow_mask(none, {180.0, 30.0}, grid)) CHECK(v == 1);
  for (auto v : shadow_mask(none, {180.0, -5.0}, grid)) CHECK(v == 0);

  const geom::Solid building = geom::make_box({10, 10, 15});
  const std::vector<const geom::TriangleMesh*> one{&building.mesh()};
  const auto mask = shadow_mask(one, {180.0, 45.0}, grid);
  auto lit = [&](double x, double y) {
    const int i = static_cast<int>(std::floor(x - grid.origin_x));
    const int j = static_cast<int>(std::floor(y - grid.origin_y));
    return mask[grid.index(i, j)] == 1;
  };
  CHECK(!lit(5.5, 10.5));
  CHECK(!lit(5.5, 24.5));
  CHECK(lit(5.5, 25.5));
  CHECK(lit(5.5, -0.5));
  CHECK(lit(-0.5, 15.5));
  CHECK(lit(10.5, 15.5));
}

TEST_CASE("insolation study") {
  const GroundGrid grid = default_ground_grid({}, 1.0);
  CHECK(grid.nx == 20);
  CHECK(grid.ny == 20);
  const std::vector<const geom::TriangleMesh*> none;
  const InsolationGrid empty = insolation_study(none, kDerby, kSolstice, 10, grid);
  for (double h : empty.sunlit_hours) CHECK(std::abs(h - empty.daylight_hours) <= 10.0 / 60.0);
  CHECK(empty.stats().cells == 400);

  const geom::Solid slab = geom::make_box({40, 40, 1}, {-20, -20, 0});
  const std::vector<const geom::TriangleMesh*> covered{&slab.mesh()};
  const InsolationGrid under = insolation_study(covered, kDerby, kSolstice, 10, grid);
  for (std::size_t k = 0; k < under.sunlit_hours.size(); ++k) {
    CHECK(under.occupied[k] == 1);
    CHECK(under.sunlit_hours[k] == 0.0);
  }
  CHECK(under.stats().cells == 0);

  const geom::Solid tower = geom::make_box({4, 4, 12}, {-2, -2, 0});
  const std::vector<const geom::TriangleMesh*> with_tower{&tower.mesh()};
  const GroundGrid wide = default_ground_grid(tower.bounds(), 1.0);
  const InsolationGrid base = insolation_study(none, kDerby, kSolstice, 10, wide);
  const InsolationGrid shaded = insolation_study(with_tower, kDerby, kSolstice, 10, wide);
  for (std::size_t k = 0; k < base.sunlit_hours.size(); ++k) {
    CHECK(shaded.sunlit_hours[k] <= base.sunlit_hours[k]);
    CHECK(shaded.sunlit_hours[k] >= 0.0);
    CHECK(shaded.sunlit_hours[k] <= shaded.daylight_hours);
  }
  CHECK(insolation_study(with_tower, kDerby, kSolstice, 10, wide) == shaded);

  const GroundGrid huge{0, 0, 0.01, 10'000, 10'000};
  CHECK_THROWS_AS((void)insolation_study(none, kDerby, kSolstice, 1, huge), geom::KernelError);
}
