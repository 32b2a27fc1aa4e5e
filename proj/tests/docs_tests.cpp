#include <doctest.h>

#include <cadscript/dsl.hpp>
#include <cadscript/nl.hpp>
#include <filesystem>
#include <nlohmann/json.hpp>

#include "support/checks.hpp"

using namespace cadscript;

namespace {

std::string doc(const std::string& name) { return checks::read_text(std::string(CADSCRIPT_DOCS_DIR) + "/" + name); }

}  // namespace

TEST_CASE("grammar file matches the parser") { CHECK(doc("grammar.ebnf") == std::string(dsl::grammar_ebnf())); }

TEST_CASE("reference documents exist") {
  for (const char* name : {"session-format.md", "scene-schema.json", "offline-rules.md", "macro-mapping.md"}) {
    CAPTURE(name);
    CHECK(std::filesystem::is_regular_file(std::string(CADSCRIPT_DOCS_DIR) + "/" + name));
  }
  const auto schema = nlohmann::json::parse(doc("scene-schema.json"), nullptr, false);
  REQUIRE(!schema.is_discarded());
  CHECK(schema["properties"]["format"]["const"] == "cadscript-scene");
}

TEST_CASE("offline rules list every template") {
  const std::string rules = doc("offline-rules.md");
  for (const auto& t : nl::offline_templates()) {
    CAPTURE(t);
    CHECK(rules.find("- " + t + "\n") != std::string::npos);
  }
}

TEST_CASE("macro mapping example matches the golden file") {
  const std::string mapping = doc("macro-mapping.md");
  CHECK(mapping.find(checks::read_text(checks::data_path("golden/example1.macro"))) != std::string::npos);
  CHECK(mapping.find(checks::read_text(checks::data_path("golden/example1.cad"))) != std::string::npos);
}
