#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cadscript/dsl.hpp"

/// Natural language to validated DSL: prompt assembly, pluggable providers,
/// the bounded repair loop, and a deterministic rule-based translator.
namespace cadscript::nl {

enum class NlErrc { prompt_too_large, provider_unavailable, translation_failed, unsupported_phrase, empty_candidate };

std::string_view to_string(NlErrc code);

class NlError : public std::runtime_error {
 public:
  NlError(NlErrc code, const std::string& message);
  [[nodiscard]] NlErrc code() const noexcept { return code_; }

 private:
  NlErrc code_;
};

enum class UnitPreference { meters, centimeters };

struct NLRequest {
  std::string utterance;
  std::string context;  // scene_snapshot_summary text
  UnitPreference units = UnitPreference::meters;
};

inline constexpr std::size_t kMaxPromptChars = 16'000;

struct PriorAttempt {
  std::string candidate;
  std::vector<std::string> errors;
};

struct PromptBundle {
  std::string utterance;  // carried for rule-based providers; also inside `user`
  std::string system;
  std::string user;
  std::optional<std::string> feedback;

  [[nodiscard]] std::size_t size() const { return system.size() + user.size() + (feedback ? feedback->size() : 0); }
  /// All sections joined, as logged with each attempt.
  [[nodiscard]] std::string text() const;
};

/// Deterministic; throws NlError(prompt_too_large) past kMaxPromptChars.
[[nodiscard]] PromptBundle build_prompt(const NLRequest& request, const std::optional<PriorAttempt>& prior = {});

struct ProviderConfig {
  std::string endpoint;
  std::string model;
  std::string api_key_var;  // name of the environment variable holding the key
  int timeout_seconds = 60;
  int max_attempts = 3;

  /// CADGPT_ENDPOINT, CADGPT_MODEL, CADGPT_API_KEY_VAR.
  static ProviderConfig from_env();
  [[nodiscard]] bool has_endpoint() const { return !endpoint.empty(); }
};

/// One text reply per prompt. Implementations throw NlError(provider_unavailable)
/// on transport, auth or timeout failures.
class Provider {
 public:
  virtual ~Provider() = default;
  [[nodiscard]] virtual std::string id() const = 0;
  virtual std::string complete(const PromptBundle& prompt) = 0;
  /// Assumptions made while producing the last reply.
  [[nodiscard]] virtual std::vector<std::string> notes() const { return {}; }
  /// Structured scene view for providers that do not read the prompt text.
  virtual void set_scene(const dsl::SceneContext&) {}
};

/// Replays canned replies in order, one per call; records every prompt.
class StubProvider : public Provider {
 public:
  explicit StubProvider(std::vector<std::string> replies);
  /// Script file text: replies separated by lines consisting of "%%".
  static StubProvider from_script(std::string_view script);

  [[nodiscard]] std::string id() const override { return "stub"; }
  std::string complete(const PromptBundle& prompt) override;
  [[nodiscard]] const std::vector<PromptBundle>& prompts() const { return prompts_; }

 private:
  std::vector<std::string> replies_;
  std::vector<PromptBundle> prompts_;
  std::size_t next_ = 0;
};

struct OfflineOptions {
  int year = 2024;  // for dates given only as a season ("summer solstice")
};

/// Uses the rule-based translator; the scene context in the prompt is ignored
/// except for choosing free names and resolving refinement targets.
class OfflineProvider : public Provider {
 public:
  explicit OfflineProvider(OfflineOptions options = {}) : options_(options) {}
  [[nodiscard]] std::string id() const override { return "offline"; }
  std::string complete(const PromptBundle& prompt) override;
  [[nodiscard]] std::vector<std::string> notes() const override { return notes_; }
  void set_scene(const dsl::SceneContext& context) override { context_ = context; }

 private:
  OfflineOptions options_;
  dsl::SceneContext context_;
  std::vector<std::string> notes_;
};

/// Chat-completions style JSON over HTTP(S). The key is read from the
/// configured environment variable on every call and never stored.
class HttpProvider : public Provider {
 public:
  explicit HttpProvider(ProviderConfig config);
  [[nodiscard]] std::string id() const override;
  std::string complete(const PromptBundle& prompt) override;

 private:
  ProviderConfig config_;
};

struct Attempt {
  std::string prompt;     // full prompt text sent
  std::string reply;      // raw provider reply
  std::string candidate;  // after sanitize_candidate
  std::vector<std::string> errors;
};

struct TranslationFailure {
  NlErrc code = NlErrc::translation_failed;
  std::string message;
};

struct TranslationOutcome {
  std::optional<dsl::ValidatedProgram> program;
  std::string canonical;  // pretty-printed program on success
  std::vector<Attempt> attempts;
  std::string provider_id;
  std::optional<TranslationFailure> failure;
  std::vector<std::string> notes;  // defaults the offline translator filled in
  [[nodiscard]] bool ok() const { return program.has_value(); }
};

/// Prompt, call, sanitize, parse, validate; retry with the errors fed back.
/// Never executes anything.
[[nodiscard]] TranslationOutcome translate(const NLRequest& request, Provider& provider,
                                           const dsl::SceneContext& scene, int max_attempts = 3,
                                           const geom::TessellationQuality& quality = {});

/// First fenced code block if any, else the trimmed reply. Throws
/// NlError(empty_candidate) when nothing is left.
[[nodiscard]] std::string sanitize_candidate(std::string_view reply);

struct OfflineTranslation {
  dsl::Program program;
  std::vector<std::string> notes;
};

/// Pattern rules over keywords and numbers; see docs/offline-rules.md. Throws
/// NlError(unsupported_phrase) naming the closest supported templates.
[[nodiscard]] OfflineTranslation offline_translate(std::string_view utterance, const dsl::SceneContext& context = {},
                                                   const OfflineOptions& options = {});

/// Example phrasings the offline rules accept.
[[nodiscard]] const std::vector<std::string>& offline_templates();

/// Removes every occurrence of `secret` (no-op when empty).
[[nodiscard]] std::string redact(std::string text, std::string_view secret);

}  // namespace cadscript::nl
