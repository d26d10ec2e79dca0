#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "divbench/list_parser.hpp"
#include "divbench/perturbation.hpp"
#include "divbench/rng.hpp"

namespace divbench {

enum class BackendKind { http, mock };

std::string_view to_string(BackendKind kind) noexcept;
BackendKind backend_kind_from_string(std::string_view text);

/// Connection settings for an OpenAI-style chat-completion endpoint.
struct HttpSettings {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/chat/completions";
  std::string api_key_env = "MODEL_API_KEY";  // empty: send no Authorization header
};

struct ModelConfig {
  BackendKind backend = BackendKind::mock;
  std::string model_name = "mock";
  double temperature = 0.9;
  int max_retries = 3;
  std::chrono::milliseconds request_timeout{60'000};
  std::chrono::milliseconds initial_backoff{1'000};
  double backoff_factor = 2.0;
  double backoff_jitter = 0.1;  // +/- fraction of each delay
  HttpSettings http;

  /// Throws InvalidModelConfig.
  void validate() const;
};

struct MockConfig {
  int vocab_size = 200;
  double zipf_exponent = 1.1;
  bool context_sensitive = true;

  /// Throws MockMisconfigured, including when vocab_size < k.
  void validate(int k) const;
};

struct GenerationResult {
  std::string raw_text;
  std::vector<std::string> items;  // verbatim; empty when parsing failed
  ParseStatus parse_status = ParseStatus::failed;
  std::string failure_reason;
};

/// System instruction sent with every list query. Pinned: changing it
/// changes what a run measures.
std::string list_instruction(int k);

/// A model that answers a list query with raw reply text.
class Backend {
 public:
  virtual ~Backend() = default;

  /// Throws BackendUnavailable, Timeout, AuthFailure or MockMisconfigured.
  virtual std::string complete(const InjectedPrompt& prompt, int k, RandomSource& rng) = 0;
};

/// Deterministic test double. Answers with k distinct items drawn without
/// replacement from {item_0001 .. item_VVVV} under Zipf weights; which item
/// holds which weight is a permutation keyed on the prompt text.
class MockBackend final : public Backend {
 public:
  explicit MockBackend(MockConfig config);

  std::string complete(const InjectedPrompt& prompt, int k, RandomSource& rng) override;

  /// Item ids (1-based) for one reply, in draw order.
  std::vector<int> sample_items(const InjectedPrompt& prompt, int k, RandomSource& rng) const;

  const MockConfig& config() const noexcept { return config_; }

 private:
  MockConfig config_;
  std::vector<double> rank_weights_;  // rank_weights_[r] = (r + 1)^-s
};

/// Formats item ids as "item_0001".
std::string mock_item_name(int id);

/// Builds the backend selected by `config`. The mock requires `mock`.
std::unique_ptr<Backend> make_backend(const ModelConfig& config,
                                      const std::optional<MockConfig>& mock,
                                      std::function<void(std::string_view)> log = {});

/// One structured list query. Backend errors propagate; parse failures are
/// reported through parse_status/failure_reason.
GenerationResult query(Backend& backend, const InjectedPrompt& prompt, int k, RandomSource& rng);

}  // namespace divbench
