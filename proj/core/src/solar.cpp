#include "cadscript/solar.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace cadscript::solar {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double fractional_year(int day_of_year, int days_in_year, double minutes) {
  return 2.0 * std::numbers::pi / days_in_year * (day_of_year - 1 + (minutes / 60.0 - 12.0) / 24.0);
}

double declination_rad(double g) {
  return 0.006918 - 0.399912 * std::cos(g) + 0.070257 * std::sin(g) - 0.006758 * std::cos(2 * g) +
         0.000907 * std::sin(2 * g) - 0.002697 * std::cos(3 * g) + 0.00148 * std::sin(3 * g);
}

double eot_minutes(double g) {
  return 229.18 * (0.000075 + 0.001868 * std::cos(g) - 0.032077 * std::sin(g) - 0.014615 * std::cos(2 * g) -
                   0.040849 * std::sin(2 * g));
}

}  // namespace

double solar_declination(int day_of_year, int days_in_year) {
  return declination_rad(fractional_year(day_of_year, days_in_year, 720.0)) / kDeg;
}

double solar_declination(int day_of_year) { return solar_declination(day_of_year, 365); }

double equation_of_time(const Instant& t) {
  return eot_minutes(fractional_year(t.date.day_of_year(), t.date.days_in_year(), t.minutes_utc));
}

SolarAngles solar_position(const GeoLocation& loc, const Instant& t) {
  const double g = fractional_year(t.date.day_of_year(), t.date.days_in_year(), t.minutes_utc);
  const double decl = declination_rad(g);
  const double true_solar = t.minutes_utc + eot_minutes(g) + 4.0 * loc.longitude_deg;
  const double hour_angle = (true_solar / 4.0 - 180.0) * kDeg;
  const double lat = loc.latitude_deg * kDeg;

  const double sin_alt =
      std::clamp(std::sin(lat) * std::sin(decl) + std::cos(lat) * std::cos(decl) * std::cos(hour_angle), -1.0, 1.0);
  const double east = -std::sin(hour_angle) * std::cos(decl);
  const double north = std::sin(decl) * std::cos(lat) - std::cos(decl) * std::sin(lat) * std::cos(hour_angle);

  SolarAngles out;
  out.altitude_deg = std::asin(sin_alt) / kDeg;
  double az = std::atan2(east, north) / kDeg;
  if (az < 0.0) az += 360.0;
  if (az >= 360.0) az -= 360.0;
  out.azimuth_deg = az;
  return out;
}

double solar_noon_minutes(const GeoLocation& loc, const CivilDate& date) {
  double noon = 720.0 - 4.0 * loc.longitude_deg;
  for (int i = 0; i < 3; ++i) noon = 720.0 - 4.0 * loc.longitude_deg - equation_of_time({date, noon});
  return noon;
}

std::size_t SunPath::daytime_samples() const {
  return static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [](const SunSample& s) { return s.angles.altitude_deg > 0.0; }));
}

SunPath sun_path(const GeoLocation& loc, const CivilDate& date, int interval_min) {
  if (interval_min < kMinSunInterval || interval_min > kMaxSunInterval) {
    throw geom::KernelError(geom::KernelErrc::out_of_range,
                            fmt::format("interval {} minutes outside [{}, {}]", interval_min, kMinSunInterval,
                                        kMaxSunInterval));
  }
  SunPath path{loc, date, interval_min, {}};
  for (int m = 0; m < 1440; m += interval_min) {
    const Instant t{date, static_cast<double>(m)};
    path.samples.push_back({t, solar_position(loc, t)});
  }
  return path;
}

Vec3 sun_direction(const SolarAngles& angles) {
  const double alt = angles.altitude_deg * kDeg;
  const double az = angles.azimuth_deg * kDeg;
  return {std::cos(alt) * std::sin(az), std::cos(alt) * std::cos(az), std::sin(alt)};
}

GroundGrid default_ground_grid(const geom::Aabb& scene_bounds, double cell_size) {
  if (!(cell_size > 0.0)) {
    throw geom::KernelError(geom::KernelErrc::non_positive_dimension, "cell size must be > 0");
  }
  double x0 = -10.0;
  double y0 = -10.0;
  double x1 = 10.0;
  double y1 = 10.0;
  if (!scene_bounds.empty()) {
    const double margin = 2.0 * std::max(scene_bounds.max.z, 0.0);
    x0 = scene_bounds.min.x - margin;
    y0 = scene_bounds.min.y - margin;
    x1 = scene_bounds.max.x + margin;
    y1 = scene_bounds.max.y + margin;
  }
  GroundGrid grid;
  grid.origin_x = x0;
  grid.origin_y = y0;
  grid.cell_size = cell_size;
  grid.nx = std::max(1, static_cast<int>(std::ceil((x1 - x0) / cell_size)));
  grid.ny = std::max(1, static_cast<int>(std::ceil((y1 - y0) / cell_size)));
  return grid;
}

std::vector<std::uint8_t> shadow_mask(const geom::TriangleBvh& scene, const SolarAngles& sun, const GroundGrid& grid) {
  std::vector<std::uint8_t> lit(grid.cell_count(), 0);
  if (sun.altitude_deg <= 0.0) return lit;
  const Vec3 dir = sun_direction(sun);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      Vec3 origin = grid.center(i, j);
      origin.z = kRayLift;
      lit[grid.index(i, j)] = scene.any_hit(origin, dir) ? 0 : 1;
    }
  }
  return lit;
}

std::vector<std::uint8_t> shadow_mask(std::span<const geom::TriangleMesh* const> meshes, const SolarAngles& sun,
                                      const GroundGrid& grid) {
  return shadow_mask(geom::TriangleBvh(meshes), sun, grid);
}

InsolationGrid::Stats InsolationGrid::stats() const {
  Stats s;
  double sum = 0.0;
  for (std::size_t k = 0; k < sunlit_hours.size(); ++k) {
    if (occupied[k]) continue;
    const double h = sunlit_hours[k];
    if (s.cells == 0) {
      s.min = s.max = h;
    } else {
      s.min = std::min(s.min, h);
      s.max = std::max(s.max, h);
    }
    sum += h;
    ++s.cells;
  }
  if (s.cells > 0) s.mean = sum / static_cast<double>(s.cells);
  return s;
}

InsolationGrid insolation_study(std::span<const geom::TriangleMesh* const> meshes, const GeoLocation& loc,
                                const CivilDate& date, int interval_min, const GroundGrid& grid) {
  const SunPath path = sun_path(loc, date, interval_min);
  const std::uint64_t work = static_cast<std::uint64_t>(grid.cell_count()) * path.samples.size();
  if (work > kMaxStudyWork) {
    throw geom::KernelError(geom::KernelErrc::resource_limit,
                            fmt::format("sun study needs {} cell samples > {}", work, kMaxStudyWork));
  }

  const geom::TriangleBvh bvh(meshes);
  InsolationGrid out;
  out.grid = grid;
  out.location = loc;
  out.date = date;
  out.interval_min = interval_min;
  out.daylight_hours = path.daylight_hours();
  out.occupied.assign(grid.cell_count(), 0);
  out.sunlit_hours.assign(grid.cell_count(), 0.0);

  if (bvh.triangle_count() > 0) {
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        Vec3 p = grid.center(i, j);
        p.z = kRayLift;
        const std::vector<bool> inside = bvh.inside_objects(p);
        out.occupied[grid.index(i, j)] = std::find(inside.begin(), inside.end(), true) != inside.end() ? 1 : 0;
      }
    }
  }

  std::vector<std::uint32_t> counts(grid.cell_count(), 0);
  for (const SunSample& sample : path.samples) {
    if (sample.angles.altitude_deg <= 0.0) continue;
    const std::vector<std::uint8_t> lit = shadow_mask(bvh, sample.angles, grid);
    for (std::size_t k = 0; k < lit.size(); ++k) counts[k] += lit[k];
  }
  const double hours_per_sample = interval_min / 60.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    out.sunlit_hours[k] = out.occupied[k] ? 0.0 : counts[k] * hours_per_sample;
  }
  return out;
}

}  // namespace cadscript::solar
