#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace cadscript::checks {

/// Local chat-completions endpoint. Replies come from a fixed list (the last
/// one repeats); requests without the expected bearer key get HTTP 401.
class FakeLlm {
 public:
  FakeLlm(std::vector<std::string> replies, std::string expected_key);
  ~FakeLlm();
  FakeLlm(const FakeLlm&) = delete;
  FakeLlm& operator=(const FakeLlm&) = delete;

  [[nodiscard]] std::string endpoint() const;
  [[nodiscard]] std::size_t requests() const;
  [[nodiscard]] std::size_t authorized_requests() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cadscript::checks
