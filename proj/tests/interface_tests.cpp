#include <doctest.h>

#include <cadscript/export.hpp>
#include <cadscript/scene_document.hpp>
#include <cadscript/service.hpp>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <sstream>

#include "support/checks.hpp"

using namespace cadscript;
using json = nlohmann::json;

namespace {

ExportOptions with_drafts(bool drafts = true) {
  ExportOptions o;
  o.include_drafts = drafts;
  return o;
}

std::size_t count_lines(const std::string& text, std::string_view prefix) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.starts_with(prefix)) ++n;
  }
  return n;
}

geom::Aabb stl_bounds(const std::vector<StlTriangle>& tris, std::size_t begin, std::size_t end) {
  geom::Aabb box = geom::Aabb::empty_box();
  for (std::size_t t = begin; t < end; ++t) {
    for (const auto& v : tris[t].vertices) box.expand({v[0], v[1], v[2]});
  }
  return box;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("cadscript_test_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

std::string repl(const std::string& input, InputMode mode = InputMode::nl) {
  std::istringstream in(input);
  std::ostringstream out;
  CHECK(run_repl(ServiceConfig{}, in, out, mode, false) == 0);
  return out.str();
}

json body_of(const HttpReply& r) { return json::parse(r.body); }

}  // namespace

TEST_CASE("obj export") {
  Session s;
  CHECK(export_obj(s.scene(), with_drafts()).find('\n') == export_obj(s.scene(), with_drafts()).size() - 1);
  CHECK(export_obj(s.scene(), with_drafts()).starts_with("#"));

  REQUIRE(s.run("box 1 1 1 name cube").ok());
  const std::string obj = export_obj(s.scene(), with_drafts());
  CHECK(count_lines(obj, "v ") == 8);
  CHECK(count_lines(obj, "f ") == 12);
  CHECK(count_lines(obj, "o ") == 1);
  CHECK(obj.find("o cube\n") != std::string::npos);
  CHECK(export_obj(s.scene(), with_drafts()) == obj);
  CHECK(count_lines(export_obj(s.scene(), with_drafts(false)), "o ") == 0);

  REQUIRE(s.run("bake cube\nbox 2 2 2 at 5 0 0 name other").ok());
  const auto summary = read_obj_summary(export_obj(s.scene(), with_drafts()));
  REQUIRE(summary);
  CHECK(summary->names == std::vector<std::string>{"cube", "other"});
  CHECK(summary->vertices == 16);
  CHECK(summary->faces == 24);
  CHECK(summary->bounds[1] == geom::Aabb{{5, 0, 0}, {7, 2, 2}});
  CHECK(read_obj_summary(export_obj(s.scene(), with_drafts(false)))->names == std::vector<std::string>{"cube"});

  CHECK(!read_obj_summary("f 1 2 3\n"));
}

TEST_CASE("stl export") {
  Session s(42);
  CHECK(export_stl(s.scene(), with_drafts()).size() == 84);

  REQUIRE(s.run("box 1 1 1").ok());
  ExportOptions opts = with_drafts();
  opts.seed = 42;
  const std::string stl = export_stl(s.scene(), opts);
  CHECK(stl.size() == 684);
  CHECK(stl.substr(0, 80).find("cadscript seed=42") != std::string::npos);
  std::uint32_t count = 0;
  std::memcpy(&count, stl.data() + 80, 4);
  CHECK(count == 12);
  CHECK(export_stl(s.scene(), opts) == stl);

  const auto tris = read_stl(stl);
  REQUIRE(tris);
  for (const auto& t : *tris) {
    const double len = std::sqrt(double(t.normal[0]) * t.normal[0] + double(t.normal[1]) * t.normal[1] +
                                 double(t.normal[2]) * t.normal[2]);
    CHECK(std::abs(len - 1.0) <= 1e-5);
  }
  CHECK(!read_stl(stl.substr(0, 683)));
}

TEST_CASE("obj and stl agree") {
  for (const auto& [name, source] : checks::corpus()) {
    CAPTURE(name);
    Session s;
    if (!s.run(source).ok()) continue;
    const auto obj = read_obj_summary(export_obj(s.scene(), with_drafts()));
    const auto stl = read_stl(export_stl(s.scene(), with_drafts()));
    REQUIRE(obj);
    REQUIRE(stl);
    CHECK(obj->faces == stl->size());
    std::size_t begin = 0;
    for (std::size_t k = 0; k < obj->objects; ++k) {
      const std::size_t end = begin + obj->faces_per_object[k];
      const geom::Aabb from_stl = stl_bounds(*stl, begin, end);
      const geom::Aabb& from_obj = obj->bounds[k];
      for (int axis = 0; axis < 3; ++axis) {
        CHECK(float(from_obj.min[axis]) == float(from_stl.min[axis]));
        CHECK(float(from_obj.max[axis]) == float(from_stl.max[axis]));
      }
      begin = end;
    }
  }
}

TEST_CASE("rhino macro") {
  auto macro = [](std::string_view src) {
    const auto parsed = dsl::parse(src);
    REQUIRE(parsed.ok());
    const auto v = dsl::validate(*parsed.program, {});
    REQUIRE(v.ok());
    return emit_rhino_macro(*v.program);
  };
  CHECK(macro("box 1 1 0.3").starts_with("_Box 0,0,0 1,1,0 0.3"));
  CHECK(macro("sunstudy lat 52 lon 0 date 2024-06-21") == "; sunstudy not representable as a macro\n");

  Session s;
  REQUIRE(s.run(checks::read_text(checks::data_path("golden/example1.cad"))).ok());
  CHECK(session_macro(s) == checks::read_text(checks::data_path("golden/example1.macro")));
  CHECK(session_macro(s) == session_macro(s));
}

TEST_CASE("scene document round trip") {
  std::size_t scenes = 0;
  for (const auto& [name, source] : checks::corpus()) {
    CAPTURE(name);
    Session s(11);
    if (!s.run(source).ok()) continue;
    const SceneDocument doc = make_scene_document(s);
    CHECK(doc.objects.size() == s.scene().objects().size());
    CHECK(scene_document_from_json(to_json(doc)) == doc);
    CHECK(scene_document_from_json(to_json(doc, 2)) == doc);
    CHECK(to_json(doc) == to_json(make_scene_document(s)));
    ++scenes;
  }
  CHECK(scenes >= 20);

  Session sun;
  REQUIRE(sun.run("box 4 4 10 name t\nsunstudy lat 52.92 lon -1.48 date 2024-06-21 interval 30 cell 2").ok());
  const SceneDocument doc = make_scene_document(sun);
  REQUIRE(doc.insolation);
  CHECK(doc.insolation->sunlit_hours.size() == std::size_t(doc.insolation->nx * doc.insolation->ny));
  CHECK(doc.insolation->date == "2024-06-21");
  CHECK(scene_document_from_json(to_json(doc)) == doc);

  CHECK_THROWS_AS((void)scene_document_from_json("not json"), DocumentError);
  CHECK_THROWS_AS((void)scene_document_from_json("[]"), DocumentError);
  json future = json::parse(to_json(doc));
  future["version"] = 99;
  CHECK_THROWS_AS((void)scene_document_from_json(future.dump()), DocumentError);
  json broken = json::parse(to_json(doc));
  broken["objects"][0]["indices"].push_back(1'000'000);
  CHECK_THROWS_AS((void)scene_document_from_json(broken.dump()), DocumentError);
}

TEST_CASE("service contract") {
  Service service({});
  const HttpReply created = service.handle("POST", "/sessions", {}, "");
  CHECK(created.status == 201);
  const json c = body_of(created);
  const std::string id = c["session_id"];
  CHECK(c["seed"].is_number_unsigned());
  const std::string base = "/sessions/" + id;

  const HttpReply box = service.handle("POST", base + "/commands", {}, R"({"text":"box 1 1 1","mode":"dsl"})");
  CHECK(box.status == 200);
  const json b = body_of(box);
  CHECK(b["created_ids"] == json::array({"obj1"}));
  CHECK(b["revision"] == 1);

  const HttpReply bad = service.handle("POST", base + "/commands", {}, R"({"text":"union obj1 nope","mode":"dsl"})");
  CHECK(bad.status == 422);
  CHECK(body_of(bad)["revision"] == 1);

  const HttpReply nl = service.handle("POST", base + "/commands", {},
                                      json{{"text", checks::kExample2}, {"mode", "nl"}}.dump());
  CHECK(nl.status == 200);
  CHECK(body_of(nl)["revision"] == 2);
  CHECK(body_of(nl)["program"].get<std::string>().starts_with("hypar"));

  const HttpReply scene = service.handle("GET", base + "/scene", {}, "");
  CHECK(scene.status == 200);
  CHECK(scene_document_from_json(scene.body).objects.size() == 2);

  const HttpReply obj = service.handle("GET", base + "/export", {{"format", "obj"}, {"drafts", "1"}}, "");
  CHECK(obj.status == 200);
  CHECK(obj.content_type == "model/obj");
  CHECK(read_obj_summary(obj.body)->objects == 2);
  const HttpReply stl = service.handle("GET", base + "/export", {{"format", "stl"}}, "");
  CHECK(stl.content_type == "application/octet-stream");
  CHECK(read_stl(stl.body));
  CHECK(service.handle("GET", base + "/export", {{"format", "macro"}}, "").content_type == "text/plain");
  CHECK(service.handle("GET", base + "/export", {{"format", "step"}}, "").status == 400);

  const HttpReply sun = service.handle(
      "POST", base + "/sun-study", {},
      R"({"latitude":52.92,"longitude":-1.48,"date":"2024-06-21","interval_min":30,"cell_m":2})");
  CHECK(sun.status == 200);
  CHECK(body_of(sun)["study"]["daylight_hours"].get<double>() > 16.0);
  CHECK(service.handle("POST", base + "/sun-study", {}, R"({"latitude":52})").status == 400);

  const json history = body_of(service.handle("GET", base + "/history", {}, ""));
  CHECK(history["batches"].size() == 3);

  for (int i = 0; i < 3; ++i) CHECK(service.handle("POST", base + "/undo", {}, "").status == 200);
  const HttpReply empty_undo = service.handle("POST", base + "/undo", {}, "");
  CHECK(empty_undo.status == 409);
  CHECK(body_of(empty_undo)["error"]["kind"] == "NothingToUndo");

  CHECK(service.handle("GET", "/sessions/unknown/scene", {}, "").status == 404);
  CHECK(service.handle("GET", "/nowhere", {}, "").status == 404);
  CHECK(service.handle("GET", base + "/nowhere", {}, "").status == 404);
  CHECK(service.handle("GET", "/sessions", {}, "").status == 405);
  CHECK(service.handle("GET", base + "/commands", {}, "").status == 405);
  CHECK(service.handle("POST", base + "/commands", {}, "{").status == 400);
  CHECK(service.handle("POST", base + "/commands", {}, R"({"text":"x","mode":"shout"})").status == 400);

  const HttpReply seeded = service.handle("POST", "/sessions", {}, R"({"seed":5})");
  CHECK(body_of(seeded)["seed"] == 5);
  CHECK(service.session_count() == 2);
  CHECK(service.handle("DELETE", base, {}, "").status == 204);
  CHECK(service.handle("DELETE", base, {}, "").status == 404);
  CHECK(service.session_count() == 1);
}

TEST_CASE("report json") {
  ServiceConfig config;
  Workspace ws(config);
  const json ok = json::parse(report_json(ws.command("box 1 1 1 name a", InputMode::dsl)));
  CHECK(ok["ok"] == true);
  CHECK(ok["mode"] == "dsl");
  CHECK(ok["revision"] == 1);
  const json failed = json::parse(report_json(ws.command("Make me a spaceship", InputMode::nl)));
  CHECK(failed["ok"] == false);
  CHECK(failed["revision"] == 1);
}

TEST_CASE("repl contract") {
  const std::string created = repl(":mode dsl\nbox 1 1 1\n");
  CHECK(created.find("mode dsl\n") != std::string::npos);
  CHECK(created.find("created obj1 (box 1×1×1 m)") != std::string::npos);

  CHECK(repl(":undo\n").find("NothingToUndo") != std::string::npos);
  CHECK(repl(":frob\n").find("unknown command :frob") != std::string::npos);
  const std::string batch = repl("box 1 1 1 name a\\\nunion a a name b\n", InputMode::dsl);
  CHECK(batch.find("created b") != std::string::npos);
  CHECK(batch.find("revision 1\n") != std::string::npos);
  CHECK(repl("box 1 1 1\n:quit\nbox 2 2 2\n", InputMode::dsl).find("obj2") == std::string::npos);

  TempDir dir;
  const std::string obj_path = (dir.path / "out.obj").string();
  const std::string scene_path = (dir.path / "scene.json").string();
  const std::string out =
      repl(":mode dsl\nbox 1 1 1 name a\nbake a\n:export " + obj_path + "\n:scene " + scene_path + "\n:scene\n");
  REQUIRE(std::filesystem::exists(obj_path));
  const auto summary = read_obj_summary(checks::read_text(obj_path));
  REQUIRE(summary);
  CHECK(summary->names == std::vector<std::string>{"a"});
  CHECK(scene_document_from_json(checks::read_text(scene_path)).objects.size() == 1);
  CHECK(out.find("a box baked") != std::string::npos);

  const std::string nl = repl(std::string(checks::kExample2) + "\n");
  CHECK(nl.find("program:\n  hypar 10 10") != std::string::npos);
}
