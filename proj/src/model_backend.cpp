#include "divbench/model_backend.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "divbench/error.hpp"
#include "divbench/http_backend.hpp"

namespace divbench {

namespace {

constexpr int kMaxMockVocab = 9999;  // ids render with four digits

}  // namespace

std::string_view to_string(BackendKind kind) noexcept {
  return kind == BackendKind::http ? "http" : "mock";
}

BackendKind backend_kind_from_string(std::string_view text) {
  if (text == "http") return BackendKind::http;
  if (text == "mock") return BackendKind::mock;
  throw Error(ErrorCode::InvalidModelConfig, "unknown backend '" + std::string(text) + "'");
}

void ModelConfig::validate() const {
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw Error(ErrorCode::InvalidModelConfig, "temperature must be in [0, 2]");
  }
  if (max_retries < 0) throw Error(ErrorCode::InvalidModelConfig, "max_retries must be >= 0");
  if (request_timeout.count() <= 0) {
    throw Error(ErrorCode::InvalidModelConfig, "request_timeout must be positive");
  }
  if (initial_backoff.count() < 0 || backoff_factor < 1.0 || backoff_jitter < 0.0 ||
      backoff_jitter >= 1.0) {
    throw Error(ErrorCode::InvalidModelConfig, "invalid backoff settings");
  }
  if (model_name.empty()) throw Error(ErrorCode::InvalidModelConfig, "model_name is empty");
}

void MockConfig::validate(int k) const {
  if (vocab_size < 1 || vocab_size > kMaxMockVocab) {
    throw Error(ErrorCode::MockMisconfigured, "vocab_size must be in [1, 9999]");
  }
  if (!(zipf_exponent > 0.0) || !std::isfinite(zipf_exponent)) {
    throw Error(ErrorCode::MockMisconfigured, "zipf_exponent must be > 0");
  }
  if (k < 1) throw Error(ErrorCode::MockMisconfigured, "k must be >= 1");
  if (vocab_size < k) {
    throw Error(ErrorCode::MockMisconfigured, "vocab_size " + std::to_string(vocab_size) +
                                                  " is smaller than k = " + std::to_string(k));
  }
}

std::string list_instruction(int k) {
  return "Answer with a JSON array of exactly " + std::to_string(k) +
         " strings, one per list item. Output only the JSON array, with no explanation, "
         "numbering, or Markdown.";
}

MockBackend::MockBackend(MockConfig config) : config_(config) {
  config_.validate(1);
  rank_weights_.resize(static_cast<std::size_t>(config_.vocab_size));
  for (std::size_t r = 0; r < rank_weights_.size(); ++r) {
    rank_weights_[r] = 1.0 / std::pow(static_cast<double>(r + 1), config_.zipf_exponent);
  }
}

std::vector<int> MockBackend::sample_items(const InjectedPrompt& prompt, int k,
                                           RandomSource& rng) const {
  config_.validate(k);
  const auto vocab = static_cast<std::size_t>(config_.vocab_size);

  const std::string& key = config_.context_sensitive ? prompt.full_text : prompt.base_text;
  std::vector<int> item_at_rank(vocab);
  std::iota(item_at_rank.begin(), item_at_rank.end(), 1);
  RngStream shuffle(splitmix64(fnv1a64(key)));
  for (std::size_t i = vocab - 1; i > 0; --i) {
    std::swap(item_at_rank[i], item_at_rank[shuffle.uniform_index(i + 1)]);
  }

  // Successive sampling over ranks in ascending order: each draw picks among
  // the remaining ranks proportionally to their weight.
  std::vector<bool> taken(vocab, false);
  std::vector<int> items;
  items.reserve(static_cast<std::size_t>(k));
  for (int draw = 0; draw < k; ++draw) {
    double total = 0.0;
    for (std::size_t r = 0; r < vocab; ++r) {
      if (!taken[r]) total += rank_weights_[r];
    }
    const double target = rng.uniform01() * total;
    double cumulative = 0.0;
    std::size_t chosen = vocab;
    for (std::size_t r = 0; r < vocab; ++r) {
      if (taken[r]) continue;
      chosen = r;
      cumulative += rank_weights_[r];
      if (target < cumulative) break;
    }
    taken[chosen] = true;
    items.push_back(item_at_rank[chosen]);
  }
  return items;
}

std::string MockBackend::complete(const InjectedPrompt& prompt, int k, RandomSource& rng) {
  nlohmann::json reply = nlohmann::json::array();
  for (int id : sample_items(prompt, k, rng)) reply.push_back(mock_item_name(id));
  return reply.dump();
}

std::string mock_item_name(int id) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "item_%04d", id);
  return buffer;
}

std::unique_ptr<Backend> make_backend(const ModelConfig& config,
                                      const std::optional<MockConfig>& mock,
                                      std::function<void(std::string_view)> log) {
  config.validate();
  if (config.backend == BackendKind::mock) {
    if (!mock) throw Error(ErrorCode::MockMisconfigured, "mock backend requires a MockConfig");
    return std::make_unique<MockBackend>(*mock);
  }
  return std::make_unique<HttpBackend>(config, std::move(log));
}

GenerationResult query(Backend& backend, const InjectedPrompt& prompt, int k, RandomSource& rng) {
  GenerationResult result;
  result.raw_text = backend.complete(prompt, k, rng);
  try {
    ParsedList parsed = parse_list(result.raw_text, k);
    result.items = std::move(parsed.items);
    result.parse_status = parsed.status;
  } catch (const ParseError& e) {
    result.parse_status = ParseStatus::failed;
    result.failure_reason = e.what();
  }
  return result;
}

}  // namespace divbench
