#include "cadscript/service.hpp"

#include <fmt/format.h>
#include <httplib.h>
#include <nlohmann/json.hpp>
#include <thread>

#include "cadscript/export.hpp"
#include "cadscript/scene_document.hpp"

namespace cadscript {

using nlohmann::json;

std::string_view to_string(InputMode mode) { return mode == InputMode::nl ? "nl" : "dsl"; }

std::optional<InputMode> input_mode_from_string(std::string_view text) {
  if (text == "nl") return InputMode::nl;
  if (text == "dsl") return InputMode::dsl;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Workspace
// ---------------------------------------------------------------------------

Workspace::Workspace(const ServiceConfig& config, std::optional<std::uint64_t> seed,
                     std::optional<SessionConfig> session_config)
    : config_(config),
      session_(seed.value_or(config.default_seed), session_config.value_or(config.session)) {}

std::unique_ptr<nl::Provider> Workspace::make_provider() const {
  if (config_.provider_factory) return config_.provider_factory();
  if (config_.offline) return std::make_unique<nl::OfflineProvider>(config_.offline_options);
  return std::make_unique<nl::HttpProvider>(config_.provider);
}

CommandReport Workspace::command(std::string_view text, InputMode mode) {
  CommandReport report;
  report.mode = mode;
  report.text = std::string(text);
  if (mode == InputMode::dsl) {
    report.result = session_.run(text);
    report.revision = session_.revision();
    return report;
  }

  std::unique_ptr<nl::Provider> provider = make_provider();
  nl::NLRequest request;
  request.utterance = std::string(text);
  request.context = scene_snapshot_summary(session_.scene());
  nl::TranslationOutcome outcome = nl::translate(request, *provider, session_.scene().context(),
                                                 config_.provider.max_attempts, session_.config().quality);
  report.attempts = std::move(outcome.attempts);
  report.notes = std::move(outcome.notes);
  if (!outcome.ok()) {
    report.translation_failure = outcome.failure;
    report.result.error = ExecutionError{std::string(nl::to_string(outcome.failure->code)), outcome.failure->message,
                                         0, {}};
    report.revision = session_.revision();
    return report;
  }
  report.canonical = outcome.canonical;
  report.result = session_.execute(*outcome.program, outcome.canonical);
  if (report.result.ok()) {
    std::vector<std::string> messages;
    for (const auto& n : report.notes) messages.push_back("note: " + n);
    messages.insert(messages.end(), report.result.messages.begin(), report.result.messages.end());
    report.result.messages = std::move(messages);
  }
  report.revision = session_.revision();
  return report;
}

CommandReport Workspace::undo() {
  CommandReport report;
  report.text = "undo";
  report.result = session_.undo();
  report.revision = session_.revision();
  return report;
}

namespace {

json result_json(const ExecutionResult& r) {
  json j = {
      {"ok", r.ok()},
      {"created_ids", r.created_ids},
      {"deleted_ids", r.deleted_ids},
      {"baked_ids", r.baked_ids},
      {"messages", r.messages},
      {"error", nullptr},
  };
  if (r.error) {
    j["error"] = {{"kind", r.error->kind},
                  {"message", r.error->message},
                  {"statement", r.error->statement},
                  {"span", {r.error->span.begin, r.error->span.end}}};
  }
  return j;
}

json report_object(const CommandReport& report) {
  json j = result_json(report.result);
  j["ok"] = report.ok();
  j["mode"] = std::string(to_string(report.mode));
  j["text"] = report.text;
  j["revision"] = report.revision;
  j["program"] = report.canonical ? json(*report.canonical) : json(nullptr);
  j["notes"] = report.notes;
  json attempts = json::array();
  for (const auto& a : report.attempts) attempts.push_back({{"candidate", a.candidate}, {"errors", a.errors}});
  j["attempts"] = std::move(attempts);
  return j;
}

HttpReply reply(int status, const json& body) { return {status, "application/json", body.dump()}; }

HttpReply error_reply(int status, std::string_view message) { return reply(status, json{{"error", message}}); }

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t slash = path.find('/', start);
    if (slash == std::string_view::npos) slash = path.size();
    if (slash > start) parts.emplace_back(path.substr(start, slash - start));
    start = slash + 1;
  }
  return parts;
}

std::string fmt_arg(const json& j, const char* key, std::string fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return dsl::format_number(v.get<double>());
  throw std::invalid_argument(fmt::format("field '{}' must be a number or string", key));
}

}  // namespace

std::string report_json(const CommandReport& report) { return report_object(report).dump(); }

// ---------------------------------------------------------------------------
// Service
// ---------------------------------------------------------------------------

namespace {

void install_routes(httplib::Server& http, Service& service) {
  auto route = [&service](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const HttpReply r = service.handle(req.method, req.path, query, req.body);
    res.status = r.status;
    if (r.status != 204) res.set_content(r.body, r.content_type);
  };
  const std::string pattern = R"(/.*)";
  http.Get(pattern, route);
  http.Post(pattern, route);
  http.Delete(pattern, route);
}

}  // namespace

struct Service::Server {
  httplib::Server http;
  std::thread thread;
};

Service::Service(ServiceConfig config) : config_(std::move(config)) {}

Service::~Service() { stop(); }

std::size_t Service::session_count() const {
  std::shared_lock lock(store_mutex_);
  return sessions_.size();
}

std::shared_ptr<Service::Slot> Service::find(const std::string& id) const {
  std::shared_lock lock(store_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

HttpReply Service::handle(std::string_view method, std::string_view path,
                          const std::map<std::string, std::string>& query, std::string_view body) {
  const std::vector<std::string> parts = split_path(path);
  if (parts.empty() || parts[0] != "sessions") return error_reply(404, "no such route");

  json payload = json::object();
  if (!body.empty() && (method == "POST" || method == "PUT")) {
    payload = json::parse(body, nullptr, false);
    if (payload.is_discarded() || !payload.is_object()) return error_reply(400, "request body must be a JSON object");
  }

  try {
    if (parts.size() == 1) {
      if (method != "POST") return error_reply(405, "use POST to create a session");
      std::optional<std::uint64_t> seed;
      SessionConfig sc = config_.session;
      if (payload.contains("seed")) {
        if (!payload["seed"].is_number_unsigned()) return error_reply(400, "seed must be a non-negative integer");
        seed = payload["seed"].get<std::uint64_t>();
      }
      if (payload.contains("spacing_mode")) {
        const auto mode = payload["spacing_mode"].is_string()
                              ? geom::spacing_mode_from_string(payload["spacing_mode"].get<std::string>())
                              : std::nullopt;
        if (!mode) return error_reply(400, "spacing_mode must be \"gap\" or \"pitch\"");
        sc.spacing_mode = *mode;
      }
      const std::string id = fmt::format("s{}", next_id_.fetch_add(1));
      auto slot = std::make_shared<Slot>(config_, seed, sc);
      const std::uint64_t actual_seed = slot->workspace.session().seed();
      {
        std::unique_lock lock(store_mutex_);
        sessions_.emplace(id, std::move(slot));
      }
      return reply(201, json{{"session_id", id}, {"seed", actual_seed}, {"revision", 0}});
    }

    const std::string& id = parts[1];
    if (parts.size() == 2) {
      if (method != "DELETE") return error_reply(405, "use DELETE to close a session");
      std::unique_lock lock(store_mutex_);
      if (sessions_.erase(id) == 0) return error_reply(404, fmt::format("unknown session '{}'", id));
      return {204, "application/json", ""};
    }

    std::shared_ptr<Slot> slot = find(id);
    if (!slot) return error_reply(404, fmt::format("unknown session '{}'", id));
    if (parts.size() != 3) return error_reply(404, "no such route");
    const std::string& action = parts[2];
    if (action == "export") {
      if (method != "GET") return error_reply(405, "use GET");
      auto it = query.find("format");
      const std::string format = it == query.end() ? "obj" : it->second;
      if (format != "obj" && format != "stl" && format != "macro") {
        return error_reply(400, "format must be obj, stl or macro");
      }
      const Session snapshot = [&] {
        std::lock_guard lock(slot->mutex);
        return slot->workspace.session();
      }();
      ExportOptions opts;
      opts.seed = snapshot.seed();
      if (auto d = query.find("drafts"); d != query.end()) opts.include_drafts = d->second == "1" || d->second == "true";
      if (format == "obj") return {200, "model/obj", export_obj(snapshot.scene(), opts)};
      if (format == "stl") return {200, "application/octet-stream", export_stl(snapshot.scene(), opts)};
      return {200, "text/plain", session_macro(snapshot)};
    }

    std::lock_guard lock(slot->mutex);
    Workspace& ws = slot->workspace;
    const Session& session = ws.session();

    if (action == "commands") {
      if (method != "POST") return error_reply(405, "use POST");
      if (!payload.contains("text") || !payload["text"].is_string()) return error_reply(400, "missing string 'text'");
      InputMode mode = InputMode::nl;
      if (payload.contains("mode")) {
        const auto m = payload["mode"].is_string() ? input_mode_from_string(payload["mode"].get<std::string>())
                                                   : std::nullopt;
        if (!m) return error_reply(400, "mode must be \"nl\" or \"dsl\"");
        mode = *m;
      }
      const CommandReport r = ws.command(payload["text"].get<std::string>(), mode);
      return reply(r.ok() ? 200 : 422, report_object(r));
    }
    if (action == "undo") {
      if (method != "POST") return error_reply(405, "use POST");
      const CommandReport r = ws.undo();
      return reply(r.ok() ? 200 : 409, report_object(r));
    }
    if (action == "sun-study") {
      if (method != "POST") return error_reply(405, "use POST");
      for (const char* key : {"latitude", "longitude", "date"}) {
        if (!payload.contains(key)) return error_reply(400, fmt::format("missing '{}'", key));
      }
      const std::string text = fmt::format(
          "sunstudy lat {} lon {} date {} interval {} cell {}", fmt_arg(payload, "latitude", ""),
          fmt_arg(payload, "longitude", ""), fmt_arg(payload, "date", ""),
          fmt_arg(payload, "interval_min", std::to_string(dsl::kDefaultSunInterval)),
          fmt_arg(payload, "cell_m", dsl::format_number(dsl::kDefaultSunCell)));
      const CommandReport r = ws.command(text, InputMode::dsl);
      json j = report_object(r);
      j["study"] = nullptr;
      if (r.ok() && session.last_sun_study()) {
        const auto& study = *session.last_sun_study();
        const auto stats = study.stats();
        j["study"] = {{"daylight_hours", study.daylight_hours},
                      {"min_hours", stats.min},
                      {"max_hours", stats.max},
                      {"mean_hours", stats.mean},
                      {"cells", stats.cells},
                      {"nx", study.grid.nx},
                      {"ny", study.grid.ny},
                      {"cell_size", study.grid.cell_size}};
      }
      return reply(r.ok() ? 200 : 422, j);
    }
    if (method != "GET") return error_reply(405, "use GET");
    if (action == "scene") {
      return {200, "application/json", to_json(make_scene_document(session))};
    }
    if (action == "history") {
      json batches = json::array();
      for (std::size_t i = 0; i < session.history().size(); ++i) {
        const HistoryEntry& h = session.history()[i];
        json b = result_json(h.result);
        b["index"] = i;
        b["source"] = h.source;
        batches.push_back(std::move(b));
      }
      return reply(200, json{{"revision", session.revision()}, {"seed", session.seed()}, {"batches", batches}});
    }
    return error_reply(404, "no such route");
  } catch (const std::exception& e) {
    return error_reply(400, e.what());
  }
}

bool Service::listen(const std::string& host, int port) {
  stop();
  server_ = std::make_unique<Server>();
  install_routes(server_->http, *this);
  return server_->http.listen(host, port);
}

int Service::listen_background(const std::string& host) {
  stop();
  server_ = std::make_unique<Server>();
  install_routes(server_->http, *this);
  const int port = server_->http.bind_to_any_port(host);
  if (port <= 0) return -1;
  server_->thread = std::thread([this] { server_->http.listen_after_bind(); });
  server_->http.wait_until_ready();
  return port;
}

void Service::stop() {
  if (!server_) return;
  server_->http.stop();
  if (server_->thread.joinable()) server_->thread.join();
  server_.reset();
}

}  // namespace cadscript
