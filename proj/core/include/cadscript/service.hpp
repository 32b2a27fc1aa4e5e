#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "cadscript/nl.hpp"
#include "cadscript/session.hpp"

namespace cadscript {

enum class InputMode { nl, dsl };

[[nodiscard]] std::string_view to_string(InputMode mode);
[[nodiscard]] std::optional<InputMode> input_mode_from_string(std::string_view text);

struct ServiceConfig {
  std::uint64_t default_seed = kDefaultSeed;
  SessionConfig session;
  bool offline = true;            // rule-based translator instead of an HTTP provider
  nl::ProviderConfig provider;    // used when !offline
  nl::OfflineOptions offline_options;
  /// Overrides provider construction (tests inject stubs).
  std::function<std::unique_ptr<nl::Provider>()> provider_factory;
};

/// Outcome of one command, NL or DSL, as reported to clients.
struct CommandReport {
  InputMode mode = InputMode::dsl;
  std::string text;
  std::optional<std::string> canonical;  // the program that ran (NL mode)
  std::vector<nl::Attempt> attempts;
  std::optional<nl::TranslationFailure> translation_failure;
  std::vector<std::string> notes;
  ExecutionResult result;
  std::uint64_t revision = 0;
  [[nodiscard]] bool ok() const { return !translation_failure && result.ok(); }
};

/// One session plus the glue shared by the REPL and the HTTP API.
class Workspace {
 public:
  explicit Workspace(const ServiceConfig& config, std::optional<std::uint64_t> seed = std::nullopt,
                     std::optional<SessionConfig> session_config = std::nullopt);

  CommandReport command(std::string_view text, InputMode mode);
  CommandReport undo();
  [[nodiscard]] const Session& session() const { return session_; }
  [[nodiscard]] std::unique_ptr<nl::Provider> make_provider() const;

 private:
  const ServiceConfig& config_;
  Session session_;
};

/// JSON for a report: ids, messages, error, translation attempts (prompts
/// omitted) and the session revision.
[[nodiscard]] std::string report_json(const CommandReport& report);

struct HttpReply {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// The REST API over a concurrent session store. `handle` is transport-free;
/// `listen` binds it to an HTTP server.
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();

  HttpReply handle(std::string_view method, std::string_view path, const std::map<std::string, std::string>& query,
                   std::string_view body);

  /// Blocks until stop(). Returns false when the address cannot be bound.
  bool listen(const std::string& host, int port);
  /// Binds to an ephemeral port and serves on a background thread.
  int listen_background(const std::string& host = "127.0.0.1");
  void stop();

  [[nodiscard]] std::size_t session_count() const;

 private:
  struct Slot {
    std::mutex mutex;
    Workspace workspace;
    Slot(const ServiceConfig& c, std::optional<std::uint64_t> seed, std::optional<SessionConfig> sc)
        : workspace(c, seed, sc) {}
  };

  std::shared_ptr<Slot> find(const std::string& id) const;

  ServiceConfig config_;
  mutable std::shared_mutex store_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::atomic<std::uint64_t> next_id_{1};
  struct Server;
  std::unique_ptr<Server> server_;
};

/// Line-oriented interactive loop. Meta-commands: :mode nl|dsl, :undo,
/// :export obj|stl|macro <path> [drafts], :scene [path], :history, :help, :quit.
int run_repl(const ServiceConfig& config, std::istream& in, std::ostream& out, InputMode mode = InputMode::nl,
             bool prompt = true);

}  // namespace cadscript
