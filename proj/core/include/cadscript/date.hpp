#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace cadscript {

/// Proleptic Gregorian calendar date.
struct CivilDate {
  int year = 2000;
  int month = 1;
  int day = 1;

  constexpr bool operator==(const CivilDate&) const = default;

  [[nodiscard]] bool valid() const;
  /// 1-based ordinal day within the year (1..366).
  [[nodiscard]] int day_of_year() const;
  [[nodiscard]] int days_in_year() const;
  /// YYYY-MM-DD
  [[nodiscard]] std::string to_string() const;

  static std::optional<CivilDate> parse(std::string_view text);
};

bool is_leap_year(int year);

}  // namespace cadscript
