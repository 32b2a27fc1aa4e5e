#include "cadscript/date.hpp"

#include <charconv>
#include <fmt/format.h>

namespace cadscript {

namespace {

constexpr int kCumulativeDays[12] = {0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334};
constexpr int kMonthDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

int days_in_month(int year, int month) {
  if (month == 2 && is_leap_year(year)) return 29;
  return kMonthDays[month - 1];
}

}  // namespace

bool is_leap_year(int year) { return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0; }

bool CivilDate::valid() const {
  if (year < 1 || year > 9999 || month < 1 || month > 12) return false;
  return day >= 1 && day <= days_in_month(year, month);
}

int CivilDate::day_of_year() const {
  int doy = kCumulativeDays[month - 1] + day;
  if (month > 2 && is_leap_year(year)) ++doy;
  return doy;
}

int CivilDate::days_in_year() const { return is_leap_year(year) ? 366 : 365; }

std::string CivilDate::to_string() const { return fmt::format("{:04d}-{:02d}-{:02d}", year, month, day); }

std::optional<CivilDate> CivilDate::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto field = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int value = 0;
    const char* first = text.data() + pos;
    const char* last = first + len;
    for (const char* p = first; p != last; ++p) {
      if (*p < '0' || *p > '9') return std::nullopt;
    }
    std::from_chars(first, last, value);
    return value;
  };
  auto y = field(0, 4);
  auto m = field(5, 2);
  auto d = field(8, 2);
  if (!y || !m || !d) return std::nullopt;
  CivilDate date{*y, *m, *d};
  if (!date.valid()) return std::nullopt;
  return date;
}

}  // namespace cadscript
