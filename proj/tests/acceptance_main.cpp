#include <chrono>
#include <fmt/format.h>
#include <iostream>

#include "checks.hpp"

int main() {
  using namespace cadscript::checks;
  const auto checks = all_checks();
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = checks[i]();
    } catch (const std::exception& e) {
      r.name = fmt::format("criterion {}", i + 1);
      r.expect(false, fmt::format("threw: {}", e.what()));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!r.pass) ++failed;
    std::cout << fmt::format("{} [{}/{}] {} ({:.1f} s): {}\n", r.pass ? "PASS" : "FAIL", i + 1, checks.size(), r.name,
                             secs, r.summary())
              << std::flush;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", checks.size() - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
