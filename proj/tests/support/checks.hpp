#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <cadscript/dsl.hpp>
#include <cadscript/geometry.hpp>
#include <cadscript/session.hpp>

namespace cadscript::checks {

inline constexpr std::string_view kExample1 =
    "Create a 100x100x30 cm box, which is intersected by a sphere of 30 cm radius at a random edge. Bake their "
    "union on Rhino";
inline constexpr std::string_view kExample2 =
    "Design a pavilion with a hyperbolic canopy, inspired by the Candela structures";
inline constexpr std::string_view kExample3 =
    "Generate a grid of buildings 15 meters high, spaced 20 meters apart, and simulate the sunlight paths during the "
    "UK summer solstice";

/// Outcome of one acceptance criterion: pass flag plus the measured facts.
struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool pass = true;
  std::vector<std::string> facts;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what);
  void note(const std::string& fact) { facts.push_back(fact); }
  [[nodiscard]] std::string summary() const;
};

CheckResult check_example1();
CheckResult check_csg_suite(int pairs = 50);
CheckResult check_solar();
CheckResult check_example3();
CheckResult check_example2();
CheckResult check_parser(std::size_t fuzz_inputs = 100'000);
CheckResult check_repair_loop();
CheckResult check_exports();
CheckResult check_replay();

/// Every criterion in acceptance order.
std::vector<std::function<CheckResult()>> all_checks();

// Shared helpers ------------------------------------------------------------

std::string read_text(const std::string& path);
/// Sorted file names (not paths) in `dir` ending with `suffix`.
std::vector<std::string> list_files(const std::string& dir, const std::string& suffix);
std::string data_path(const std::string& relative);

/// Corpus programs: tests/data/corpus/*.cad, sorted.
std::vector<std::pair<std::string, std::string>> corpus();

struct PairCase {
  geom::Solid box;
  geom::Solid sphere;
  std::uint64_t seed = 0;
};
/// Seeded box/sphere pair whose bounds overlap, the sphere center inside the box.
PairCase random_pair(std::uint64_t seed);

struct OracleReport {
  std::size_t samples = 0;
  std::size_t disagreements = 0;
  std::size_t outside_shell = 0;  // disagreements farther than 2 chord errors from the mesh
};
/// Analytic membership vs. mesh ray parity on seeded points in the inflated bounds.
OracleReport oracle_agreement(const geom::Solid& solid, std::uint64_t seed, std::size_t samples = 10'000);

/// Random byte strings and grammar-token soups for parser fuzzing.
std::string fuzz_input(std::uint64_t seed);

double relative_error(double value, double reference);

}  // namespace cadscript::checks
