#include <CLI11.hpp>
#include <chrono>
#include <cadscript/export.hpp>
#include <cadscript/scene_document.hpp>
#include <cadscript/service.hpp>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace cadscript;

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool write_file(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout << data;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  return f && (f << data);
}

std::string format_for(const std::string& path, const std::string& format) {
  if (!format.empty()) return format;
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "stl" || ext == "json") return ext;
  if (ext == "txt" || ext == "macro" || ext == "rhino") return "macro";
  return "obj";
}

int export_session(const Session& session, const std::string& path, const std::string& format, bool drafts) {
  ExportOptions opts;
  opts.seed = session.seed();
  opts.include_drafts = drafts;
  const std::string f = format_for(path, format);
  std::string data;
  if (f == "obj") {
    data = export_obj(session.scene(), opts);
  } else if (f == "stl") {
    data = export_stl(session.scene(), opts);
  } else if (f == "macro") {
    data = session_macro(session);
  } else if (f == "json") {
    data = to_json(make_scene_document(session), 1);
  } else {
    std::cerr << fmt::format("unknown export format '{}'\n", f);
    return 2;
  }
  if (!write_file(path, data)) {
    std::cerr << fmt::format("cannot write {}\n", path);
    return 1;
  }
  if (path != "-") std::cerr << fmt::format("wrote {} ({} bytes)\n", path, data.size());
  return 0;
}

void print_report(const CommandReport& r) {
  if (r.canonical) std::cout << *r.canonical << '\n';
  for (const auto& m : r.result.messages) std::cout << m << '\n';
  if (r.result.error) std::cerr << "error [" << r.result.error->kind << "]: " << r.result.error->message << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cadscript: text commands to CAD geometry, sun studies and exports"};
  app.require_subcommand(0, 1);

  std::string listen;
  bool offline = false;
  std::uint64_t seed = kDefaultSeed;
  std::string spacing = "gap";
  const auto today = std::chrono::year_month_day(std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now()));
  int year = static_cast<int>(today.year());
  app.add_option("--listen", listen, "Serve the HTTP API on HOST:PORT (or PORT)");
  app.add_flag("--offline", offline, "Use the rule-based translator even if CADGPT_ENDPOINT is set");
  app.add_option("--seed", seed, "Session seed")->capture_default_str();
  app.add_option("--spacing-mode", spacing, "How grid spacing is read")
      ->check(CLI::IsMember({"gap", "pitch"}))
      ->capture_default_str();
  app.add_option("--year", year, "Year assumed for season-only dates (default: current UTC year)");

  auto* repl = app.add_subcommand("repl", "Interactive loop (default)");
  std::string repl_mode = "nl";
  repl->add_option("--mode", repl_mode, "Initial input mode")->check(CLI::IsMember({"nl", "dsl"}));

  auto* run = app.add_subcommand("run", "Execute DSL files, one batch per file, then export");
  std::vector<std::string> run_files;
  std::string run_out, run_format, run_save;
  bool run_drafts = false;
  run->add_option("files", run_files, "DSL files ('-' for stdin)")->required();
  run->add_option("-o,--output", run_out, "Export path; format from extension or --format");
  run->add_option("--format", run_format, "obj, stl, macro or json")->check(CLI::IsMember({"obj", "stl", "macro", "json"}));
  run->add_flag("--drafts", run_drafts, "Include draft objects in OBJ/STL");
  run->add_option("--save", run_save, "Write a session file");

  auto* translate = app.add_subcommand("translate", "Translate a request to DSL without executing it");
  std::string utterance;
  translate->add_option("utterance", utterance, "Request text")->required();

  auto* exp = app.add_subcommand("export", "Replay a session file and export the result");
  std::string exp_session, exp_out, exp_format;
  bool exp_drafts = false;
  exp->add_option("session", exp_session, "Session file")->required();
  exp->add_option("-o,--output", exp_out, "Export path ('-' for stdout)")->required();
  exp->add_option("--format", exp_format, "obj, stl, macro or json")->check(CLI::IsMember({"obj", "stl", "macro", "json"}));
  exp->add_flag("--drafts", exp_drafts, "Include draft objects in OBJ/STL");

  CLI11_PARSE(app, argc, argv);

  ServiceConfig config;
  config.default_seed = seed;
  config.session.spacing_mode = *geom::spacing_mode_from_string(spacing);
  config.provider = nl::ProviderConfig::from_env();
  config.offline = offline || !config.provider.has_endpoint();
  config.offline_options.year = year;

  if (!listen.empty()) {
    std::string host = "127.0.0.1";
    std::string port_text = listen;
    if (const auto colon = listen.rfind(':'); colon != std::string::npos) {
      host = listen.substr(0, colon);
      port_text = listen.substr(colon + 1);
    }
    int port = 0;
    try {
      port = std::stoi(port_text);
    } catch (const std::exception&) {
      std::cerr << fmt::format("bad --listen address '{}'\n", listen);
      return 2;
    }
    Service service(config);
    std::cerr << fmt::format("listening on {}:{} ({} translator)\n", host, port, config.offline ? "offline" : "http");
    if (!service.listen(host, port)) {
      std::cerr << fmt::format("cannot bind {}:{}\n", host, port);
      return 1;
    }
    return 0;
  }

  if (*translate) {
    Workspace ws(config);
    std::unique_ptr<nl::Provider> provider = ws.make_provider();
    nl::NLRequest request{utterance, {}, nl::UnitPreference::meters};
    const nl::TranslationOutcome out =
        nl::translate(request, *provider, {}, config.provider.max_attempts, config.session.quality);
    for (const auto& n : out.notes) std::cerr << "note: " << n << '\n';
    if (!out.ok()) {
      std::cerr << fmt::format("error [{}]: {}\n", nl::to_string(out.failure->code), out.failure->message);
      return 1;
    }
    std::cout << out.canonical << '\n';
    return 0;
  }

  if (*run) {
    Workspace ws(config);
    for (const auto& file : run_files) {
      std::optional<std::string> text;
      if (file == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
      } else {
        text = read_file(file);
      }
      if (!text) {
        std::cerr << fmt::format("cannot read {}\n", file);
        return 1;
      }
      const CommandReport r = ws.command(*text, InputMode::dsl);
      print_report(r);
      if (!r.ok()) return 1;
    }
    std::cout << fmt::format("scene {} objects, hash {}\n", ws.session().scene().size(), scene_hash(ws.session().scene()));
    if (!run_save.empty() && !write_file(run_save, write_session_file(ws.session()))) {
      std::cerr << fmt::format("cannot write {}\n", run_save);
      return 1;
    }
    if (!run_out.empty()) return export_session(ws.session(), run_out, run_format, run_drafts);
    return 0;
  }

  if (*exp) {
    const auto text = read_file(exp_session);
    if (!text) {
      std::cerr << fmt::format("cannot read {}\n", exp_session);
      return 1;
    }
    try {
      const Session session = load_session(parse_session_file(*text));
      return export_session(session, exp_out, exp_format, exp_drafts);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }

  std::cerr << fmt::format("cadscript {} translator; :help for commands\n", config.offline ? "offline" : "http");
  return run_repl(config, std::cin, std::cout, *input_mode_from_string(repl_mode));
}
