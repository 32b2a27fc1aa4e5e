#include "cadscript/nl.hpp"

#include <algorithm>
#include <cstdlib>
#include <fmt/format.h>

namespace cadscript::nl {

namespace {

struct WorkedExample {
  std::string_view utterance;
  std::string_view program;
};

constexpr WorkedExample kExamples[] = {
    {"Create a 100x100x30 cm box, which is intersected by a sphere of 30 cm radius at a random edge. Bake their "
     "union on Rhino",
     "box 1 1 0.3 name b1\nsphere 0.3 on edge b1 random name s1\nunion b1 s1 name u1\nbake u1"},
    {"Design a pavilion with a hyperbolic canopy, inspired by the Candela structures",
     "hypar 10 10 corners 3 6 6 3 thickness 0.2 name canopy"},
    {"Generate a grid of buildings 15 meters high, spaced 20 meters apart, and simulate the sunlight paths during "
     "the UK summer solstice",
     "grid 5 5 footprint 10 10 height 15 spacing 20 name bldg\n"
     "sunstudy lat 52.92 lon -1.48 date 2024-06-21 interval 10 cell 1"},
    {"Make a 2 m cube and lift it by 1 meter", "box 2 2 2 name c1\nmove c1 0 0 1"},
    {"Cut a sphere of 50 cm radius out of the middle of a 2 m cube",
     "box 2 2 2 name c1\nsphere 50cm at 1 1 1 name s1\ndifference c1 s1 name d1"},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string system_section() {
  std::string out =
      "You translate modelling requests into a small line-oriented CAD command language. Reply with the "
      "commands only, one per line, inside a single ``` code block. Lengths are meters unless suffixed cm. Box "
      "edges 0-3 are the bottom ring counterclockwise from the (-x,-y) corner, 4-7 the verticals, 8-11 the top "
      "ring. Refer only to objects listed in the scene or created earlier in your reply.\n\nGrammar:\n";
  out += dsl::grammar_ebnf();
  out += "\nExamples:\n";
  for (const auto& ex : kExamples) out += fmt::format("Request: {}\n```\n{}\n```\n", ex.utterance, ex.program);
  return out;
}

}  // namespace

std::string_view to_string(NlErrc code) {
  switch (code) {
    case NlErrc::prompt_too_large: return "PromptTooLarge";
    case NlErrc::provider_unavailable: return "ProviderUnavailable";
    case NlErrc::translation_failed: return "TranslationFailed";
    case NlErrc::unsupported_phrase: return "UnsupportedPhrase";
    case NlErrc::empty_candidate: return "EmptyCandidate";
  }
  return "Unknown";
}

NlError::NlError(NlErrc code, const std::string& message) : std::runtime_error(message), code_(code) {}

std::string PromptBundle::text() const {
  std::string out = "[system]\n" + system + "\n[user]\n" + user;
  if (feedback) out += "\n[feedback]\n" + *feedback;
  return out;
}

PromptBundle build_prompt(const NLRequest& request, const std::optional<PriorAttempt>& prior) {
  PromptBundle b;
  b.utterance = request.utterance;
  b.system = system_section();
  b.user = fmt::format("Scene:\n{}\nPreferred units: {}\nRequest: {}\n",
                       request.context.empty() ? "(empty)\n" : request.context,
                       request.units == UnitPreference::centimeters ? "cm" : "m", request.utterance);
  if (prior) {
    std::string fb = fmt::format("Your previous answer was rejected.\nPrevious answer:\n```\n{}\n```\nErrors:\n",
                                 prior->candidate);
    for (const auto& e : prior->errors) fb += fmt::format("- {}\n", e);
    fb += "Reply with the corrected commands only.\n";
    b.feedback = std::move(fb);
  }
  if (b.size() > kMaxPromptChars) {
    throw NlError(NlErrc::prompt_too_large,
                  fmt::format("prompt is {} characters, limit is {}", b.size(), kMaxPromptChars));
  }
  return b;
}

ProviderConfig ProviderConfig::from_env() {
  ProviderConfig c;
  if (const char* v = std::getenv("CADGPT_ENDPOINT")) c.endpoint = v;
  if (const char* v = std::getenv("CADGPT_MODEL")) c.model = v;
  if (const char* v = std::getenv("CADGPT_API_KEY_VAR")) c.api_key_var = v;
  return c;
}

StubProvider::StubProvider(std::vector<std::string> replies) : replies_(std::move(replies)) {}

StubProvider StubProvider::from_script(std::string_view script) {
  std::vector<std::string> replies;
  std::string current;
  bool first_line = true;
  std::size_t start = 0;
  while (start <= script.size()) {
    std::size_t nl = script.find('\n', start);
    if (nl == std::string_view::npos) nl = script.size();
    std::string_view line = script.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line == "%%") {
      replies.push_back(std::move(current));
      current.clear();
      first_line = true;
    } else {
      if (!first_line) current += '\n';
      current += line;
      first_line = false;
    }
    start = nl + 1;
  }
  if (!first_line && !trim(current).empty()) replies.push_back(std::move(current));
  return StubProvider(std::move(replies));
}

std::string StubProvider::complete(const PromptBundle& prompt) {
  prompts_.push_back(prompt);
  if (next_ >= replies_.size()) {
    throw NlError(NlErrc::provider_unavailable, fmt::format("stub script exhausted after {} replies", replies_.size()));
  }
  return replies_[next_++];
}

std::string OfflineProvider::complete(const PromptBundle& prompt) {
  OfflineTranslation t = offline_translate(prompt.utterance, context_, options_);
  notes_ = std::move(t.notes);
  return dsl::pretty_print(t.program);
}

std::string sanitize_candidate(std::string_view reply) {
  const std::size_t open = reply.find("```");
  std::string_view candidate;
  if (open != std::string_view::npos) {
    std::size_t body = reply.find('\n', open);
    body = body == std::string_view::npos ? reply.size() : body + 1;
    std::size_t close = reply.find("```", body);
    if (close == std::string_view::npos) close = reply.size();
    candidate = reply.substr(body, close - body);
    if (!candidate.empty() && candidate.back() == '\n') candidate.remove_suffix(1);
    if (!candidate.empty() && candidate.back() == '\r') candidate.remove_suffix(1);
  } else {
    candidate = trim(reply);
  }
  if (trim(candidate).empty()) throw NlError(NlErrc::empty_candidate, "the reply contained no commands");
  return std::string(candidate);
}

TranslationOutcome translate(const NLRequest& request, Provider& provider, const dsl::SceneContext& scene,
                             int max_attempts, const geom::TessellationQuality& quality) {
  TranslationOutcome out;
  out.provider_id = provider.id();
  provider.set_scene(scene);
  max_attempts = std::max(1, max_attempts);
  if (trim(request.utterance).empty()) {
    out.failure = TranslationFailure{NlErrc::unsupported_phrase, "the request is empty"};
    return out;
  }

  std::optional<PriorAttempt> prior;
  for (int k = 0; k < max_attempts; ++k) {
    PromptBundle prompt;
    try {
      prompt = build_prompt(request, prior);
    } catch (const NlError& e) {
      out.failure = TranslationFailure{e.code(), e.what()};
      return out;
    }
    Attempt attempt;
    attempt.prompt = prompt.text();
    try {
      attempt.reply = provider.complete(prompt);
    } catch (const NlError& e) {
      attempt.errors.emplace_back(e.what());
      out.attempts.push_back(std::move(attempt));
      out.failure = TranslationFailure{e.code(), e.what()};
      return out;
    }

    try {
      attempt.candidate = sanitize_candidate(attempt.reply);
    } catch (const NlError& e) {
      attempt.errors.emplace_back(e.what());
    }
    if (attempt.errors.empty()) {
      dsl::ParseResult parsed = dsl::parse(attempt.candidate);
      if (!parsed.ok()) {
        attempt.errors.push_back(parsed.error->message);
      } else {
        dsl::ValidateResult validated = dsl::validate(*parsed.program, scene, quality);
        if (validated.ok()) {
          out.canonical = dsl::pretty_print(validated.program->program());
          out.program = std::move(validated.program);
          out.notes = provider.notes();
          out.attempts.push_back(std::move(attempt));
          return out;
        }
        for (const auto& e : validated.errors) attempt.errors.push_back(e.message);
      }
    }
    prior = PriorAttempt{attempt.candidate.empty() ? attempt.reply : attempt.candidate, attempt.errors};
    out.attempts.push_back(std::move(attempt));
  }
  out.failure = TranslationFailure{NlErrc::translation_failed,
                                   fmt::format("no valid program after {} attempt{}", max_attempts,
                                               max_attempts == 1 ? "" : "s")};
  return out;
}

std::string redact(std::string text, std::string_view secret) {
  if (secret.empty()) return text;
  std::size_t pos = 0;
  constexpr std::string_view kMask = "[redacted]";
  while ((pos = text.find(secret, pos)) != std::string::npos) {
    text.replace(pos, secret.size(), kMask);
    pos += kMask.size();
  }
  return text;
}

}  // namespace cadscript::nl
