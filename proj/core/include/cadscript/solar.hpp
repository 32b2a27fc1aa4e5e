#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cadscript/bvh.hpp"
#include "cadscript/date.hpp"
#include "cadscript/geometry.hpp"

/// Geometric sun position, shadows and sunlit hours. Low-accuracy NOAA series
/// (fractional year, equation of time, declination); no refraction. All times
/// are UTC and angles are degrees. Scene frame: +x east, +y north, +z up.
namespace cadscript::solar {

struct GeoLocation {
  double latitude_deg = 0.0;   // [-90, 90]
  double longitude_deg = 0.0;  // [-180, 180], east positive
  bool operator==(const GeoLocation&) const = default;
};

inline constexpr GeoLocation kDerby{52.92, -1.48};

struct Instant {
  CivilDate date;
  double minutes_utc = 0.0;  // [0, 1440)
};

struct SolarAngles {
  double azimuth_deg = 0.0;   // [0, 360), clockwise from true north
  double altitude_deg = 0.0;  // [-90, 90]
};

/// Declination at noon of the given day in a 365-day year.
[[nodiscard]] double solar_declination(int day_of_year);
[[nodiscard]] double solar_declination(int day_of_year, int days_in_year);

/// Equation of time in minutes at the given instant.
[[nodiscard]] double equation_of_time(const Instant& t);

[[nodiscard]] SolarAngles solar_position(const GeoLocation& loc, const Instant& t);

/// UTC minute of the sun's upper culmination.
[[nodiscard]] double solar_noon_minutes(const GeoLocation& loc, const CivilDate& date);

struct SunSample {
  Instant instant;
  SolarAngles angles;
};

struct SunPath {
  GeoLocation location;
  CivilDate date;
  int interval_min = 10;
  std::vector<SunSample> samples;  // minutes 0, interval, ... < 1440

  [[nodiscard]] std::size_t daytime_samples() const;
  [[nodiscard]] double daylight_hours() const { return daytime_samples() * interval_min / 60.0; }
};

inline constexpr int kMinSunInterval = 1;
inline constexpr int kMaxSunInterval = 120;

[[nodiscard]] SunPath sun_path(const GeoLocation& loc, const CivilDate& date, int interval_min);

[[nodiscard]] Vec3 sun_direction(const SolarAngles& angles);

/// Cells on the z = 0 plane; cell (i, j) has its center at
/// origin + ((i + 0.5) * cell, (j + 0.5) * cell).
struct GroundGrid {
  double origin_x = 0.0;
  double origin_y = 0.0;
  double cell_size = 1.0;
  int nx = 0;
  int ny = 0;

  [[nodiscard]] std::size_t cell_count() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  [[nodiscard]] std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }
  [[nodiscard]] Vec3 center(int i, int j) const {
    return {origin_x + (i + 0.5) * cell_size, origin_y + (j + 0.5) * cell_size, 0.0};
  }
  bool operator==(const GroundGrid&) const = default;
};

/// Scene bounds in plan, inflated on every side by twice the tallest object
/// height. An empty scene gets a 20 m square centered on the origin.
[[nodiscard]] GroundGrid default_ground_grid(const geom::Aabb& scene_bounds, double cell_size);

/// Ray origins sit this far above the ground plane.
inline constexpr double kRayLift = 1e-3;

/// One flag per cell (row-major by j): 1 if sunlit.
[[nodiscard]] std::vector<std::uint8_t> shadow_mask(const geom::TriangleBvh& scene, const SolarAngles& sun,
                                                    const GroundGrid& grid);
[[nodiscard]] std::vector<std::uint8_t> shadow_mask(std::span<const geom::TriangleMesh* const> meshes,
                                                    const SolarAngles& sun, const GroundGrid& grid);

struct InsolationGrid {
  GroundGrid grid;
  GeoLocation location;
  CivilDate date;
  int interval_min = 10;
  double daylight_hours = 0.0;
  std::vector<double> sunlit_hours;     // per cell
  std::vector<std::uint8_t> occupied;   // per cell, 1 inside a solid

  /// Min, max and mean over unoccupied cells.
  struct Stats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    std::size_t cells = 0;
  };
  [[nodiscard]] Stats stats() const;
  bool operator==(const InsolationGrid&) const = default;
};

inline constexpr std::uint64_t kMaxStudyWork = 50'000'000;  // cells x samples

[[nodiscard]] InsolationGrid insolation_study(std::span<const geom::TriangleMesh* const> meshes,
                                              const GeoLocation& loc, const CivilDate& date, int interval_min,
                                              const GroundGrid& grid);

}  // namespace cadscript::solar
