#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <random>
#include <string>
#include <string_view>

#include "divbench/model_backend.hpp"

namespace divbench {

/// JSON body for one chat-completion request: the pinned list instruction as
/// the system message and the injected prompt as the user message.
std::string chat_request_body(const ModelConfig& config, const InjectedPrompt& prompt, int k);

/// choices[0].message.content of a chat-completion response. Throws
/// BackendUnavailable when the body has no such string.
std::string chat_reply_content(std::string_view response_body);

/// Chat-completion client with exponential backoff. Transient failures
/// (transport errors, 408, 429, 5xx) are retried up to max_retries times;
/// 401/403 fail immediately with AuthFailure.
class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(ModelConfig config, std::function<void(std::string_view)> log = {});

  std::string complete(const InjectedPrompt& prompt, int k, RandomSource& rng) override;

  /// Total HTTP requests attempted, retries included.
  std::size_t requests_sent() const noexcept { return requests_.load(); }

  /// Delay before retry number `retry` (0-based), jitter applied.
  std::chrono::milliseconds backoff_delay(int retry);

 private:
  void log(std::string_view line) const;

  ModelConfig config_;
  std::function<void(std::string_view)> log_;
  std::atomic<std::size_t> requests_{0};
  std::mutex jitter_mutex_;
  std::mt19937_64 jitter_rng_;
};

}  // namespace divbench
