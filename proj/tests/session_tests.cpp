#include <doctest.h>

#include <cadscript/csg.hpp>
#include <cadscript/session.hpp>

#include "support/checks.hpp"

using namespace cadscript;

namespace {

constexpr std::string_view kExampleProgram =
    "box 1 1 0.3 name b1\nsphere 0.3 on edge b1 8 0.5 name s1\nunion b1 s1 name u1\nbake u1";

constexpr std::string_view kFailing = "sunstudy lat 52 lon 0 date 2024-06-21 interval 1 cell 0.001";

std::vector<std::string> baked(const Scene& scene) {
  std::vector<std::string> out;
  for (const auto& o : scene.objects()) {
    if (o.state == dsl::ObjectState::baked) out.push_back(o.id);
  }
  return out;
}

}  // namespace

TEST_CASE("example program") {
  Session s;
  const ExecutionResult r = s.run(kExampleProgram);
  REQUIRE(r.ok());
  CHECK(r.created_ids == std::vector<std::string>{"b1", "s1", "u1"});
  CHECK(r.baked_ids == std::vector<std::string>{"u1"});
  CHECK(baked(s.scene()) == std::vector<std::string>{"u1"});
  CHECK(s.scene().find("b1")->state == dsl::ObjectState::draft);
  CHECK(s.revision() == 1);
  CHECK(s.history().size() == 1);
}

TEST_CASE("empty program is a no-op") {
  Session s;
  const ExecutionResult r = s.run("");
  CHECK(r.ok());
  CHECK(r.created_ids.empty());
  CHECK(r.messages.empty());
  CHECK(s.scene().empty());
  CHECK(s.revision() == 0);
}

TEST_CASE("failed batch rolls back") {
  Session s;
  REQUIRE(s.run("box 1 1 1 name a").ok());
  const std::string before = scene_hash(s.scene());
  const ExecutionResult r = s.run(std::string("box 1 1 1\nbox 2 2 2\n") + std::string(kFailing));
  REQUIRE(!r.ok());
  CHECK(r.error->kind == "ResourceLimit");
  CHECK(r.error->statement == 3);
  CHECK(r.created_ids.empty());
  CHECK(scene_hash(s.scene()) == before);
  CHECK(s.history().size() == 1);
  CHECK(s.revision() == 1);
  CHECK(s.run("box 1 1 1").created_ids == std::vector<std::string>{"obj1"});
}

TEST_CASE("corpus batches are atomic") {
  for (const auto& [name, source] : checks::corpus()) {
    CAPTURE(name);
    Session s;
    const std::string before = scene_hash(s.scene());
    const auto parsed = dsl::parse(source);
    REQUIRE(parsed.ok());
    const bool has_undo = std::any_of(parsed.program->statements.begin(), parsed.program->statements.end(),
                                      [](const dsl::Statement& st) { return std::holds_alternative<dsl::Undo>(st); });
    if (has_undo) continue;
    const ExecutionResult r = s.run(source + "\n" + std::string(kFailing));
    CHECK(!r.ok());
    CHECK(scene_hash(s.scene()) == before);
    CHECK(!s.last_sun_study());
  }
}

TEST_CASE("undo") {
  Session s;
  CHECK(s.undo().error->kind == "NothingToUndo");

  REQUIRE(s.run("box 1 1 1 name a").ok());
  const Scene after_first = s.scene();
  REQUIRE(s.run("sphere 0.5 on edge a random name b\nunion a b").ok());
  CHECK(s.undo().ok());
  CHECK(s.scene() == after_first);
  CHECK(s.undo().ok());
  CHECK(s.scene().empty());
  CHECK(s.undo().error->kind == "NothingToUndo");

  REQUIRE(s.run("box 1 1 1 name a").ok());
  REQUIRE(s.run("undo").ok());
  CHECK(s.scene().empty());
}

TEST_CASE("undo restores the random stream") {
  Session s;
  REQUIRE(s.run("box 1 1 1 name a").ok());
  REQUIRE(s.run("sphere 0.2 on edge a random name b").ok());
  const geom::Aabb first = s.scene().find("b")->solid.bounds();
  REQUIRE(s.undo().ok());
  REQUIRE(s.run("sphere 0.2 on edge a random name b").ok());
  CHECK(s.scene().find("b")->solid.bounds() == first);
}

TEST_CASE("replay") {
  Session s(99);
  REQUIRE(s.run("box 2 1 1 name a\nsphere 0.4 on edge a random random name b").ok());
  REQUIRE(s.run("difference a b name c\nmove b 0 0 3").ok());
  REQUIRE(s.run("bake c\nmove c 1 1 0").ok());
  CHECK(replay(s.history(), 99) == s.scene());
  CHECK(replay(std::vector<std::string>{}, 99).empty());

  const Scene other = replay(s.history(), 100);
  CHECK(other.find("b")->solid.bounds() != s.scene().find("b")->solid.bounds());

  CHECK_THROWS_AS((void)replay(std::vector<std::string>{"union x y"}, 1), ReplayError);
}

TEST_CASE("adversarial names") {
  Session s;
  REQUIRE(s.run("box 1 1 1 name obj1\nbox 1 1 1 name obj3\nbox 1 1 1\nbox 1 1 1\nbox 1 1 1").ok());
  std::vector<std::string> ids;
  for (const auto& o : s.scene().objects()) ids.push_back(o.id);
  CHECK(ids == std::vector<std::string>{"obj1", "obj3", "obj2", "obj4", "obj5"});

  REQUIRE(s.run("box 1 1 1 name union_of_obj1_obj2\nunion obj1 obj2").ok());
  CHECK(s.scene().find("union_of_obj1_obj2_2") != nullptr);
  CHECK(!s.run("box 1 1 1 name obj4").ok());
}

TEST_CASE("baked objects are immutable") {
  Session s;
  REQUIRE(s.run("box 1 1 1 name a\nbake a").ok());
  const geom::TriangleMesh original = s.scene().find("a")->solid.mesh();
  const ExecutionResult moved = s.run("move a 5 0 0");
  REQUIRE(moved.ok());
  CHECK(moved.created_ids == std::vector<std::string>{"obj1"});
  CHECK(s.scene().find("a")->solid.mesh() == original);
  CHECK(s.scene().find("obj1")->state == dsl::ObjectState::draft);
  CHECK(s.scene().find("obj1")->solid.bounds().min.x == 5.0);

  REQUIRE(s.run("sphere 0.5 at 1 1 1 name q\nunion a q name u").ok());
  CHECK(s.scene().find("a")->solid.mesh() == original);
  CHECK(s.scene().find("a")->state == dsl::ObjectState::baked);

  REQUIRE(s.run("delete a").ok());
  CHECK(s.scene().find("a") == nullptr);
}

TEST_CASE("move and delete drafts") {
  Session s;
  REQUIRE(s.run("box 1 1 1 name a\nmove a 1 2 3").ok());
  CHECK(s.scene().find("a")->solid.bounds() == geom::Aabb{{1, 2, 3}, {2, 3, 4}});
  CHECK(geom::analytic_contains(s.scene().find("a")->solid, {1.5, 2.5, 3.5}));
  const ExecutionResult d = s.run("delete a");
  CHECK(d.deleted_ids == std::vector<std::string>{"a"});
  CHECK(s.scene().empty());
}

TEST_CASE("snapshot summary") {
  Session s;
  CHECK(scene_snapshot_summary(s.scene()).empty());
  REQUIRE(s.run("box 1 1 1 name b1\nbake b1").ok());
  const std::string summary = scene_snapshot_summary(s.scene());
  CHECK(summary == "b1 box baked aabb [0 0 0]..[1 1 1] tris 12 | box 1 1 1 at 0 0 0\n");
  CHECK(scene_snapshot_summary(s.scene()) == summary);
}

TEST_CASE("sun study is stored and undone") {
  Session s;
  REQUIRE(s.run("box 4 4 10 name t\nsunstudy lat 52.92 lon -1.48 date 2024-06-21 interval 30 cell 2").ok());
  REQUIRE(s.last_sun_study());
  CHECK(s.last_sun_study()->interval_min == 30);
  CHECK(s.last_sun_study()->grid.cell_size == 2.0);
  REQUIRE(s.undo().ok());
  CHECK(!s.last_sun_study());
}

TEST_CASE("session file") {
  Session s(7, {{32, 16}, geom::SpacingMode::pitch});
  REQUIRE(s.run("box 1 1 1 name a   # first\nsphere 0.2 on edge a random").ok());
  REQUIRE(s.run("grid 2 2 footprint 5 5 height 10 spacing 10 name g").ok());
  const std::string text = write_session_file(s);
  const SessionFile f = parse_session_file(text);
  CHECK(f.seed == 7);
  CHECK(f.config == s.config());
  REQUIRE(f.sources.size() == 2);
  CHECK(f.sources[0] == "box 1 1 1 name a   # first\nsphere 0.2 on edge a random");
  CHECK(load_session(f).scene() == s.scene());
  CHECK(write_session_file(load_session(f)) == text);
  CHECK(s.scene().find("g_0_1")->solid.bounds().min.x == 10.0);

  CHECK_THROWS((void)parse_session_file("not a session"));
  CHECK_THROWS((void)parse_session_file("cadscript-session 1\nseed 1\nbatch 3\nbox 1 1 1\n"));
}

TEST_CASE("recorded sessions replay") {
  const auto files = checks::list_files(checks::data_path("sessions"), ".session");
  REQUIRE(files.size() >= 5);
  for (const auto& name : files) {
    CAPTURE(name);
    const SessionFile f = parse_session_file(checks::read_text(checks::data_path("sessions/" + name)));
    const Session live = load_session(f);
    CHECK(live.history().size() == f.sources.size());
    CHECK(replay(f.sources, f.seed, f.config) == live.scene());
  }
}
