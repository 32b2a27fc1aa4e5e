#include <doctest.h>

#include <cadscript/dsl.hpp>

#include "support/checks.hpp"

using namespace cadscript;
using namespace cadscript::dsl;

namespace {

Program parsed(std::string_view src) {
  auto r = parse(src);
  REQUIRE_MESSAGE(r.ok(), (r.error ? r.error->message : std::string{}));
  return *r.program;
}

std::vector<std::string> semantic_errors(std::string_view src, const SceneContext& ctx = {}) {
  std::vector<std::string> out;
  for (const auto& e : validate(parsed(src), ctx).errors) {
    out.push_back(std::string(to_string(e.kind)) + ": " + e.message);
  }
  return out;
}

}  // namespace

TEST_CASE("tokenize") {
  const auto t = tokenize("box 1m 1m 0.3m");
  REQUIRE(t.ok());
  REQUIRE(t.tokens.size() == 4);
  CHECK(t.tokens[0].kind == TokenKind::keyword);
  CHECK(t.tokens[0].text == "box");
  for (int i = 1; i < 4; ++i) {
    CHECK(t.tokens[i].kind == TokenKind::number);
    CHECK(t.tokens[i].unit == Unit::meters);
  }
  CHECK(t.tokens[3].value == 0.3);

  CHECK(tokenize("").tokens.empty());

  const auto bad = tokenize("box @");
  REQUIRE(bad.error);
  CHECK(bad.error->offset == 4);
}

TEST_CASE("parse statements") {
  const Program p = parsed("box 100cm 100cm 30cm name b1");
  REQUIRE(p.statements.size() == 1);
  const auto& box = std::get<CreateBox>(p.statements[0]);
  CHECK(box.extents == Point3{1.0, 1.0, 0.3});
  CHECK(box.name == "b1");

  CHECK(parsed("").statements.empty());
  CHECK(parsed("# only a comment\n\n").statements.empty());

  const Program edge = parsed("sphere 30cm on edge b1 random name s1");
  const auto& s = std::get<CreateSphere>(edge.statements[0]);
  CHECK(s.radius == 0.3);
  const auto& on = std::get<OnEdge>(s.placement);
  CHECK(on.target == "b1");
  CHECK(!on.edge);
  CHECK(!on.t);
  CHECK(!on.random_t);

  const Program edge_t = parsed("sphere 1 on edge b 9 random");
  CHECK(std::get<OnEdge>(std::get<CreateSphere>(edge_t.statements[0]).placement).random_t);

  const Program many = parsed("box 1 1 1\r\nintersect a b name c # both\nundo");
  REQUIRE(many.statements.size() == 3);
  CHECK(std::get<BooleanOp>(many.statements[1]).kind == geom::BooleanKind::intersection);
  CHECK(many.spans.size() == 3);
  for (std::size_t i = 1; i < many.spans.size(); ++i) CHECK(many.spans[i - 1].end <= many.spans[i].begin);
}

TEST_CASE("stable parse errors") {
  const auto missing = parse("union b1");
  REQUIRE(missing.error);
  CHECK(missing.error->message == "line 1, column 9: expected second operand, found end of line");
  CHECK(missing.error->expected == std::vector<std::string>{"second operand"});

  CHECK(parse("box @").error->message == "illegal character '@' at offset 4");
  CHECK(parse("box 1 1").error->message == "line 1, column 8: expected box height, found end of line");
  CHECK(parse("box 1 1 1 name box").error->message ==
        "line 1, column 16: expected object name ('box' is a reserved word), found keyword 'box'");
  CHECK(parse("box 1 1 1 1").error->message == "line 1, column 11: expected end of line, found number 1");
  CHECK(parse("frob 1").error->message ==
        "line 1, column 1: expected a command (box, sphere, hypar, grid, union, intersect, difference, move, "
        "delete, bake, sunstudy, undo), found 'frob'");
  CHECK(parse("sunstudy lat 52 lon 1 date 2024-02-30").error->message == "invalid date '2024-02-30' at offset 27");
  CHECK(parse("box 1e999 1 1").error->message == "number '1e999' out of range at offset 4");
}

TEST_CASE("pretty print") {
  CHECK(pretty_print(parsed("box 100cm 100cm 30cm name b1")) == "box 1 1 0.3 name b1");
  CHECK(pretty_print(Program{}).empty());
  for (const auto& [name, source] : checks::corpus()) {
    CAPTURE(name);
    const Program p = parsed(source);
    const auto again = parse(pretty_print(p));
    REQUIRE(again.ok());
    CHECK(again.program->same_statements(p));
  }
}

TEST_CASE("unit normalization") {
  CHECK(parsed("box 100cm 100cm 30cm").same_statements(parsed("box 1m 1m 0.3m")));
  CHECK(parsed("box 1 1 0.3").same_statements(parsed("box 1m 1m 0.3m")));
}

TEST_CASE("semantic errors") {
  CHECK(semantic_errors("box 1 1 1 name b1\nsphere 0.3 name s1\nunion b1 b2") ==
        std::vector<std::string>{"UnknownIdentifier: statement 3 (union): unknown object 'b2'"});
  CHECK(semantic_errors("box -1 1 1") ==
        std::vector<std::string>{"NonPositiveDimension: statement 1 (box): box width must be > 0, got -1"});
  CHECK(semantic_errors("grid 200 200 footprint 10 10 height 15 spacing 20") ==
        std::vector<std::string>{"ResourceLimit: statement 1 (grid): grid cells 40000 > 10000"});
  CHECK(semantic_errors("box 1 1 1 name a\nbox 1 1 1 name a") ==
        std::vector<std::string>{"DuplicateName: statement 2 (box): an object named 'a' already exists"});
  CHECK(semantic_errors("sunstudy lat 95 lon 200 date 2024-06-21") ==
        std::vector<std::string>{"OutOfRange: statement 1 (sunstudy): latitude 95 outside [-90, 90]",
                                 "OutOfRange: statement 1 (sunstudy): longitude 200 outside [-180, 180]"});
  CHECK(semantic_errors("box 1 1 1\nundo") ==
        std::vector<std::string>{"UndoNotAlone: statement 2 (undo): undo must be the only command in its batch"});
  CHECK(semantic_errors("sphere 1 name s\nsphere 0.2 on edge s 1").at(0).starts_with("NotABox"));
  CHECK(semantic_errors("box 1 1 1 name b\nsphere 0.2 on edge b 12").at(0).starts_with("OutOfRange"));
  CHECK(semantic_errors("box 2e6 1 1").at(0) == "OutOfRange: statement 1 (box): box width 2000000 exceeds 1000000 m");
}

TEST_CASE("all violations are reported in order") {
  const auto errors = semantic_errors("box -1 1 1\nunion x y\nsphere 0 name q");
  REQUIRE(errors.size() == 4);
  CHECK(errors[0].starts_with("NonPositiveDimension: statement 1"));
  CHECK(errors[1].starts_with("UnknownIdentifier: statement 2"));
  CHECK(errors[2].starts_with("UnknownIdentifier: statement 2"));
  CHECK(errors[3].starts_with("NonPositiveDimension: statement 3"));
  CHECK(semantic_errors("box -1 1 1\nunion x y\nsphere 0 name q") == errors);
}

TEST_CASE("validation plans ids against the scene") {
  SceneContext ctx;
  ctx.objects.push_back({"b1", "box", ObjectState::draft, geom::Aabb{{0, 0, 0}, {1, 1, 1}}, 12, "box 1 1 1"});
  ctx.next_auto_index = 4;
  const auto v = validate(parsed("box 1 1 1\nunion b1 obj4\ngrid 1 2 footprint 1 1 height 1 spacing 1 name t"), ctx);
  REQUIRE(v.ok());
  CHECK(v.program->plans()[0].creates == std::vector<std::string>{"obj4"});
  CHECK(v.program->plans()[1].creates == std::vector<std::string>{"union_of_b1_obj4"});
  CHECK(v.program->plans()[2].creates == std::vector<std::string>{"t_0_0", "t_0_1"});
  CHECK(semantic_errors("box 1 1 1 name b1", ctx).at(0).starts_with("DuplicateName"));
}

TEST_CASE("resource limits") {
  const geom::TessellationQuality q;
  CHECK(predicted_triangles(parsed("box 1 1 1").statements[0], q, 0) == 12);
  CHECK(predicted_triangles(parsed("sphere 1").statements[0], q, 0) == geom::sphere_triangle_count(64));
  CHECK(predicted_triangles(parsed("union a b").statements[0], q, 100) == 200);

  std::string big;
  for (int i = 0; i < 80; ++i) big += "sphere 1 segments 512\n";
  const auto errors = semantic_errors(big);
  REQUIRE(!errors.empty());
  CHECK(errors.front().starts_with("ResourceLimit"));
}

TEST_CASE("grammar text") {
  const std::string_view g = grammar_ebnf();
  for (std::string_view rule : {"program", "box", "sphere", "hypar", "grid", "boolop", "move", "sunstudy", "qty"}) {
    CHECK(g.find(std::string(rule) + " ") != std::string_view::npos);
  }
  CHECK(is_keyword("intersect"));
  CHECK(!is_keyword("b1"));
}
