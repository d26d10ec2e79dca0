#include "divbench/http_backend.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "divbench/error.hpp"

namespace divbench {

namespace {

using nlohmann::json;

bool is_timeout(httplib::Error error) {
  return error == httplib::Error::ConnectionTimeout || error == httplib::Error::Read ||
         error == httplib::Error::Write;
}

bool is_transient_status(int status) {
  return status == 408 || status == 429 || (status >= 500 && status <= 599);
}

std::optional<std::chrono::milliseconds> retry_after(const httplib::Response& response) {
  if (!response.has_header("Retry-After")) return std::nullopt;
  char* end = nullptr;
  const std::string value = response.get_header_value("Retry-After");
  const double seconds = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || !(seconds >= 0.0) || seconds > 3600.0) return std::nullopt;
  return std::chrono::milliseconds(static_cast<long long>(seconds * 1000.0));
}

}  // namespace

std::string chat_request_body(const ModelConfig& config, const InjectedPrompt& prompt, int k) {
  json body = {
      {"model", config.model_name},
      {"temperature", config.temperature},
      {"messages",
       json::array({
           {{"role", "system"}, {"content", list_instruction(k)}},
           {{"role", "user"}, {"content", prompt.full_text}},
       })},
  };
  return body.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string chat_reply_content(std::string_view response_body) {
  const json doc = json::parse(response_body.begin(), response_body.end(), nullptr, false);
  if (!doc.is_discarded() && doc.is_object()) {
    const auto choices = doc.find("choices");
    if (choices != doc.end() && choices->is_array() && !choices->empty()) {
      const json& first = (*choices)[0];
      if (first.is_object() && first.contains("message") && first["message"].is_object()) {
        const json& message = first["message"];
        if (message.contains("content") && message["content"].is_string()) {
          return message["content"].get<std::string>();
        }
      }
    }
  }
  throw Error(ErrorCode::BackendUnavailable, "response has no choices[0].message.content");
}

HttpBackend::HttpBackend(ModelConfig config, std::function<void(std::string_view)> log)
    : config_(std::move(config)), log_(std::move(log)), jitter_rng_(std::random_device{}()) {
  config_.validate();
}

void HttpBackend::log(std::string_view line) const {
  if (log_) log_(line);
}

std::chrono::milliseconds HttpBackend::backoff_delay(int retry) {
  double jitter = 0.0;
  {
    std::lock_guard lock(jitter_mutex_);
    jitter = std::uniform_real_distribution<double>(-1.0, 1.0)(jitter_rng_);
  }
  const double base = static_cast<double>(config_.initial_backoff.count()) *
                      std::pow(config_.backoff_factor, retry);
  const double delayed = base * (1.0 + config_.backoff_jitter * jitter);
  return std::chrono::milliseconds(static_cast<long long>(std::max(0.0, delayed)));
}

std::string HttpBackend::complete(const InjectedPrompt& prompt, int k, RandomSource& /*rng*/) {
  httplib::Headers headers;
  if (!config_.http.api_key_env.empty()) {
    const char* key = std::getenv(config_.http.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw Error(ErrorCode::AuthFailure,
                  "environment variable " + config_.http.api_key_env + " is not set");
    }
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  const std::string body = chat_request_body(config_, prompt, k);

  ErrorCode last_code = ErrorCode::BackendUnavailable;
  std::string last_reason;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    std::optional<std::chrono::milliseconds> server_delay;

    httplib::Client client(config_.http.base_url);
    client.set_connection_timeout(config_.request_timeout);
    client.set_read_timeout(config_.request_timeout);
    client.set_write_timeout(config_.request_timeout);

    log("POST " + config_.http.base_url + config_.http.path +
        (headers.empty() ? "" : " Authorization: Bearer [REDACTED]") + " body: " + body);
    ++requests_;
    const auto result = client.Post(config_.http.path, headers, body, "application/json");

    if (!result) {
      const httplib::Error error = result.error();
      last_code = is_timeout(error) ? ErrorCode::Timeout : ErrorCode::BackendUnavailable;
      last_reason = httplib::to_string(error);
      log("transport error: " + last_reason);
    } else {
      const httplib::Response& response = *result;
      log("HTTP " + std::to_string(response.status) + " body: " + response.body);
      if (response.status == 200) return chat_reply_content(response.body);
      if (response.status == 401 || response.status == 403) {
        throw Error(ErrorCode::AuthFailure, "HTTP " + std::to_string(response.status));
      }
      last_code = response.status == 408 ? ErrorCode::Timeout : ErrorCode::BackendUnavailable;
      last_reason = "HTTP " + std::to_string(response.status);
      if (!is_transient_status(response.status)) throw Error(last_code, last_reason);
      server_delay = retry_after(response);
    }

    if (attempt < config_.max_retries) {
      auto delay = backoff_delay(attempt);
      if (server_delay && *server_delay > delay) delay = *server_delay;
      std::this_thread::sleep_for(delay);
    }
  }
  throw Error(last_code, last_reason + " after " + std::to_string(config_.max_retries + 1) +
                             " attempts");
}

}  // namespace divbench
