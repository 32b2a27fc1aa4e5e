#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cadscript/date.hpp"
#include "cadscript/geometry.hpp"

/// The command language: one declarative statement per line, `#` comments,
/// lengths in meters unless suffixed `cm`. See docs/grammar.ebnf.
namespace cadscript::dsl {

/// Byte range [begin, end) into the source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
};

// ---------------------------------------------------------------------------
// Tokens
// ---------------------------------------------------------------------------

enum class Unit { meters, centimeters };

enum class TokenKind { keyword, identifier, number, date, newline };

struct Token {
  TokenKind kind = TokenKind::newline;
  std::string text;
  Span span;
  double value = 0.0;           // numbers, as written (unit not applied)
  std::optional<Unit> unit;     // numbers with an attached m/cm suffix
  bool integral = false;        // numbers without fraction or exponent
  std::optional<CivilDate> date;
};

struct LexError {
  std::string message;
  std::size_t offset = 0;
};

struct TokenizeResult {
  std::vector<Token> tokens;
  std::optional<LexError> error;
  [[nodiscard]] bool ok() const { return !error.has_value(); }
};

TokenizeResult tokenize(std::string_view source);

bool is_keyword(std::string_view word);

// ---------------------------------------------------------------------------
// Syntax tree
// ---------------------------------------------------------------------------

using Point3 = std::array<double, 3>;

/// Explicit position: box minimum corner or sphere center.
struct At {
  Point3 point{};
  bool operator==(const At&) const = default;
};

/// Sphere center on an edge of a box. Unset edge means "random"; unset t means
/// random when `random_t` is set and 0.5 (the edge midpoint) otherwise.
struct OnEdge {
  std::string target;
  std::optional<int> edge;
  std::optional<double> t;
  bool random_t = false;
  bool operator==(const OnEdge&) const = default;
};

struct CreateBox {
  Point3 extents{};  // meters
  std::optional<At> at;
  std::optional<std::string> name;
  bool operator==(const CreateBox&) const = default;
};

struct CreateSphere {
  double radius = 0.0;
  std::variant<std::monostate, At, OnEdge> placement;
  std::optional<int> segments;
  std::optional<std::string> name;
  bool operator==(const CreateSphere&) const = default;
};

struct CreateHypar {
  double plan_width = 0.0;
  double plan_depth = 0.0;
  std::array<double, 4> corner_heights{};  // h00 h10 h01 h11
  double thickness = 0.0;
  std::optional<std::string> name;
  bool operator==(const CreateHypar&) const = default;
};

struct CreateGrid {
  int rows = 0;
  int cols = 0;
  double footprint_width = 0.0;
  double footprint_depth = 0.0;
  double height = 0.0;
  double spacing = 0.0;
  std::optional<std::string> name_prefix;
  bool operator==(const CreateGrid&) const = default;
};

struct BooleanOp {
  geom::BooleanKind kind = geom::BooleanKind::union_op;
  std::string a;
  std::string b;
  std::optional<std::string> name;
  bool operator==(const BooleanOp&) const = default;
};

struct Move {
  std::string target;
  Point3 delta{};
  bool operator==(const Move&) const = default;
};

struct Delete {
  std::string target;
  bool operator==(const Delete&) const = default;
};

struct Bake {
  std::string target;
  bool operator==(const Bake&) const = default;
};

inline constexpr int kDefaultSunInterval = 10;
inline constexpr double kDefaultSunCell = 1.0;

struct SunStudy {
  double latitude = 0.0;
  double longitude = 0.0;
  CivilDate date;
  int interval_min = kDefaultSunInterval;
  double cell_m = kDefaultSunCell;
  bool operator==(const SunStudy&) const = default;
};

struct Undo {
  bool operator==(const Undo&) const = default;
};

using Statement =
    std::variant<CreateBox, CreateSphere, CreateHypar, CreateGrid, BooleanOp, Move, Delete, Bake, SunStudy, Undo>;

struct Program {
  std::vector<Statement> statements;
  std::vector<Span> spans;  // one per statement

  /// Statement-wise equality; spans are ignored.
  [[nodiscard]] bool same_statements(const Program& other) const { return statements == other.statements; }
  bool operator==(const Program&) const = default;
};

/// Keyword naming the statement ("box", "union", ...).
std::string_view statement_keyword(const Statement& s);

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

enum class ParseErrorKind { lex, syntax, value };

struct ParseError {
  ParseErrorKind kind = ParseErrorKind::syntax;
  std::string message;
  Span span;
  std::vector<std::string> expected;
};

struct ParseResult {
  std::optional<Program> program;
  std::optional<ParseError> error;
  [[nodiscard]] bool ok() const { return program.has_value(); }
};

/// Total over arbitrary bytes: returns a program or exactly one error.
ParseResult parse(std::string_view source);

/// Canonical text: meters without suffix, shortest round-trip numbers, one
/// statement per line, no trailing newline.
std::string pretty_print(const Program& program);
std::string pretty_print(const Statement& statement);

/// EBNF of the language; docs/grammar.ebnf is a verbatim copy.
std::string_view grammar_ebnf();

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

inline constexpr std::size_t kMaxObjects = 10'000;
inline constexpr std::size_t kMaxTriangles = 2'000'000;
inline constexpr double kMaxCoordinate = 1e6;  // meters

enum class ObjectState { draft, baked };

std::string_view to_string(ObjectState state);

/// What validation needs to know about one existing scene object.
struct ContextObject {
  std::string id;
  std::string kind;  // geom::Solid::kind()
  ObjectState state = ObjectState::draft;
  geom::Aabb bounds;
  std::size_t triangles = 0;
  std::string detail;  // canonical description of the primitive, if any
};

/// Compact view of a scene: objects in creation order and the next auto-name index.
struct SceneContext {
  std::vector<ContextObject> objects;
  std::uint64_t next_auto_index = 1;
};

enum class SemanticErrorKind {
  unknown_identifier,
  duplicate_name,
  non_positive_dimension,
  resource_limit,
  out_of_range,
  not_a_box,
  undo_not_alone,
};

std::string_view to_string(SemanticErrorKind kind);

struct SemanticError {
  SemanticErrorKind kind = SemanticErrorKind::unknown_identifier;
  std::string message;
  Span span;
  std::size_t statement = 0;
};

/// Object ids a statement will create, fixed at validation time.
struct StatementPlan {
  std::vector<std::string> creates;
};

struct ValidateResult;
class ValidatedProgram {
 public:
  [[nodiscard]] const Program& program() const { return program_; }
  [[nodiscard]] const std::vector<StatementPlan>& plans() const { return plans_; }
  [[nodiscard]] std::uint64_t next_auto_index() const { return next_auto_index_; }
  [[nodiscard]] bool is_undo() const {
    return program_.statements.size() == 1 && std::holds_alternative<Undo>(program_.statements.front());
  }

 private:
  friend ValidateResult validate(const Program&, const SceneContext&, const geom::TessellationQuality&);
  Program program_;
  std::vector<StatementPlan> plans_;
  std::uint64_t next_auto_index_ = 1;
};

struct ValidateResult {
  std::optional<ValidatedProgram> program;
  std::vector<SemanticError> errors;
  [[nodiscard]] bool ok() const { return program.has_value(); }
};

/// Reports every violation, in statement order, deterministically.
ValidateResult validate(const Program& program, const SceneContext& context,
                        const geom::TessellationQuality& quality = {});

/// Predicted triangle count of one statement's output given operand sizes.
std::size_t predicted_triangles(const Statement& statement, const geom::TessellationQuality& quality,
                                std::size_t operand_triangles);

/// Shortest round-trip formatting used by the printer and messages.
std::string format_number(double value);

}  // namespace cadscript::dsl
