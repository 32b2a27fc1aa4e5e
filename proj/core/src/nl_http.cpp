#include <cstdlib>
#include <fmt/format.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "cadscript/nl.hpp"

namespace cadscript::nl {

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  const std::size_t scheme = url.find("://");
  const std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
  const std::size_t slash = url.find('/', host_start);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

HttpProvider::HttpProvider(ProviderConfig config) : config_(std::move(config)) {}

std::string HttpProvider::id() const { return config_.model.empty() ? "http" : "http:" + config_.model; }

std::string HttpProvider::complete(const PromptBundle& prompt) {
  if (config_.endpoint.empty()) throw NlError(NlErrc::provider_unavailable, "no endpoint configured");
  std::string key;
  if (!config_.api_key_var.empty()) {
    const char* value = std::getenv(config_.api_key_var.c_str());
    if (!value || !*value) {
      throw NlError(NlErrc::provider_unavailable,
                    fmt::format("environment variable {} is not set", config_.api_key_var));
    }
    key = value;
  }

  std::string user = prompt.user;
  if (prompt.feedback) user += "\n" + *prompt.feedback;
  const nlohmann::json body = {
      {"model", config_.model},
      {"temperature", 0},
      {"messages",
       nlohmann::json::array({{{"role", "system"}, {"content", prompt.system}}, {{"role", "user"}, {"content", user}}})},
  };

  const Endpoint ep = split_endpoint(config_.endpoint);
  httplib::Client client(ep.origin);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  client.set_write_timeout(config_.timeout_seconds, 0);
  httplib::Headers headers;
  if (!key.empty()) headers.emplace("Authorization", "Bearer " + key);

  const httplib::Result res = client.Post(ep.path, headers, body.dump(), "application/json");
  if (!res) {
    throw NlError(NlErrc::provider_unavailable,
                  fmt::format("request to {} failed: {}", ep.origin, httplib::to_string(res.error())));
  }
  if (res->status == 401 || res->status == 403) {
    throw NlError(NlErrc::provider_unavailable, fmt::format("provider rejected credentials (HTTP {})", res->status));
  }
  if (res->status != 200) {
    throw NlError(NlErrc::provider_unavailable, fmt::format("provider returned HTTP {}", res->status));
  }
  const nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
  if (reply.is_discarded()) throw NlError(NlErrc::provider_unavailable, "provider reply is not JSON");
  try {
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw NlError(NlErrc::provider_unavailable, "provider reply has no choices[0].message.content");
  }
}

}  // namespace cadscript::nl
