#include "fake_llm.hpp"

#include <fmt/format.h>
#include <httplib.h>
#include <nlohmann/json.hpp>
#include <thread>

namespace cadscript::checks {

struct FakeLlm::Impl {
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::vector<std::string> replies;
  std::string expected_key;
  mutable std::mutex mutex;
  std::size_t requests = 0;
  std::size_t authorized = 0;
};

FakeLlm::FakeLlm(std::vector<std::string> replies, std::string expected_key) : impl_(std::make_unique<Impl>()) {
  impl_->replies = std::move(replies);
  impl_->expected_key = std::move(expected_key);
  Impl* self = impl_.get();
  self->server.Post(R"(/.*)", [self](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard lock(self->mutex);
    ++self->requests;
    if (req.get_header_value("Authorization") != "Bearer " + self->expected_key) {
      res.status = 401;
      res.set_content(R"({"error":"bad key"})", "application/json");
      return;
    }
    const std::size_t k = self->authorized++;
    const std::string& text = self->replies.empty() ? std::string() : self->replies[std::min(k, self->replies.size() - 1)];
    const nlohmann::json body = {{"choices", {{{"message", {{"role", "assistant"}, {"content", text}}}}}}};
    res.set_content(body.dump(), "application/json");
  });
  self->port = self->server.bind_to_any_port("127.0.0.1");
  self->thread = std::thread([self] { self->server.listen_after_bind(); });
  self->server.wait_until_ready();
}

FakeLlm::~FakeLlm() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::string FakeLlm::endpoint() const { return fmt::format("http://127.0.0.1:{}/v1/chat/completions", impl_->port); }

std::size_t FakeLlm::requests() const {
  std::lock_guard lock(impl_->mutex);
  return impl_->requests;
}

std::size_t FakeLlm::authorized_requests() const {
  std::lock_guard lock(impl_->mutex);
  return impl_->authorized;
}

}  // namespace cadscript::checks
