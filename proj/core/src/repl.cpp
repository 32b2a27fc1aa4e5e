#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "cadscript/export.hpp"
#include "cadscript/scene_document.hpp"
#include "cadscript/service.hpp"

namespace cadscript {

namespace {

constexpr std::string_view kHelp =
    "Type a request (nl mode) or a DSL batch (dsl mode; end a line with \\ to continue the batch).\n"
    "  :mode nl|dsl                     switch input mode\n"
    "  :undo                            revert the last batch\n"
    "  :export [obj|stl|macro] PATH [drafts]  write the scene or macro; format defaults to PATH's extension\n"
    "  :scene [PATH]                    print the object list, or write the scene JSON to PATH\n"
    "  :history                         list batches\n"
    "  :save PATH                       write a session file\n"
    "  :help                            this text\n"
    "  :quit                            leave\n";

void print_report(std::ostream& out, const CommandReport& r) {
  if (r.canonical) {
    out << "program:\n";
    std::istringstream lines(*r.canonical);
    for (std::string line; std::getline(lines, line);) out << "  " << line << '\n';
  }
  for (const auto& m : r.result.messages) out << m << '\n';
  if (r.result.error) {
    out << "error [" << r.result.error->kind << "]: " << r.result.error->message << '\n';
    for (std::size_t i = 0; i < r.attempts.size(); ++i) {
      for (const auto& e : r.attempts[i].errors) out << fmt::format("  attempt {}: {}\n", i + 1, e);
    }
  }
  out << fmt::format("revision {}\n", r.revision);
}

bool write_file(const std::string& path, const std::string& data, std::ostream& out) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << data)) {
    out << fmt::format("error: cannot write {}\n", path);
    return false;
  }
  out << fmt::format("wrote {} ({} bytes)\n", path, data.size());
  return true;
}

}  // namespace

int run_repl(const ServiceConfig& config, std::istream& in, std::ostream& out, InputMode mode, bool prompt) {
  Workspace ws(config);
  auto show_prompt = [&] {
    if (prompt) out << (mode == InputMode::nl ? "nl> " : "dsl> ") << std::flush;
  };
  show_prompt();
  std::string line;
  std::string pending;  // multi-line DSL batch
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (pending.empty() && !line.empty() && line[0] == ':') {
      std::istringstream words(line.substr(1));
      std::string cmd;
      words >> cmd;
      if (cmd == "quit" || cmd == "q") return 0;
      if (cmd == "help") {
        out << kHelp;
      } else if (cmd == "mode") {
        std::string m;
        words >> m;
        if (auto parsed = input_mode_from_string(m)) {
          mode = *parsed;
          out << fmt::format("mode {}\n", to_string(mode));
        } else {
          out << "usage: :mode nl|dsl\n";
        }
      } else if (cmd == "undo") {
        print_report(out, ws.undo());
      } else if (cmd == "export") {
        std::vector<std::string> args;
        for (std::string w; words >> w;) args.push_back(w);
        std::string format, path, flag;
        if (!args.empty() && (args[0] == "obj" || args[0] == "stl" || args[0] == "macro") && args.size() >= 2) {
          format = args[0];
          path = args[1];
          if (args.size() > 2) flag = args[2];
        } else if (!args.empty()) {
          path = args[0];
          if (args.size() > 1) flag = args[1];
          const auto dot = path.rfind('.');
          format = dot == std::string::npos ? "" : path.substr(dot + 1);
          if (format == "txt" || format == "rhino") format = "macro";
        }
        ExportOptions opts;
        opts.seed = ws.session().seed();
        opts.include_drafts = flag == "drafts";
        if (path.empty()) {
          out << "usage: :export [obj|stl|macro] PATH [drafts]\n";
        } else if (format == "obj") {
          write_file(path, export_obj(ws.session().scene(), opts), out);
        } else if (format == "stl") {
          write_file(path, export_stl(ws.session().scene(), opts), out);
        } else if (format == "macro") {
          write_file(path, session_macro(ws.session()), out);
        } else {
          out << "format must be obj, stl or macro (from the extension or given first)\n";
        }
      } else if (cmd == "scene") {
        std::string path;
        words >> path;
        if (path.empty()) {
          const std::string summary = scene_snapshot_summary(ws.session().scene());
          out << (summary.empty() ? "(empty scene)\n" : summary);
          if (const auto& study = ws.session().last_sun_study()) {
            const auto s = study->stats();
            out << fmt::format("sun study {}: daylight {:.2f} h, open cells {} (min {:.2f} h, mean {:.2f} h, max {:.2f} h)\n",
                               study->date.to_string(), study->daylight_hours, s.cells, s.min, s.mean, s.max);
          }
        } else {
          write_file(path, to_json(make_scene_document(ws.session()), 1), out);
        }
      } else if (cmd == "history") {
        const auto& h = ws.session().history();
        if (h.empty()) out << "(no batches)\n";
        for (std::size_t i = 0; i < h.size(); ++i) {
          out << fmt::format("[{}]\n", i + 1);
          std::istringstream lines(h[i].source);
          for (std::string l; std::getline(lines, l);) out << "  " << l << '\n';
        }
      } else if (cmd == "save") {
        std::string path;
        words >> path;
        if (path.empty()) {
          out << "usage: :save PATH\n";
        } else {
          write_file(path, write_session_file(ws.session()), out);
        }
      } else {
        out << fmt::format("unknown command :{} (try :help)\n", cmd);
      }
      show_prompt();
      continue;
    }

    if (mode == InputMode::dsl) {
      if (!line.empty() && line.back() == '\\') {
        line.pop_back();
        pending += line;
        pending += '\n';
        continue;
      }
      pending += line;
      if (pending.find_first_not_of(" \t\n") != std::string::npos) print_report(out, ws.command(pending, InputMode::dsl));
      pending.clear();
    } else if (!line.empty()) {
      print_report(out, ws.command(line, InputMode::nl));
    }
    show_prompt();
  }
  if (!pending.empty()) print_report(out, ws.command(pending, InputMode::dsl));
  return 0;
}

}  // namespace cadscript
