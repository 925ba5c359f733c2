#include "cama/http_backend.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "cama/errors.hpp"

namespace cama {

namespace {

using nlohmann::json;

std::string request_body(const LiveConfig& config, const ChatRequest& req) {
  json messages = json::array();
  for (const ChatMessage& m : req.messages) {
    messages.push_back({{"role", m.role}, {"content", m.content}});
  }
  const json body = {{"model", config.model},
                     {"messages", messages},
                     {"temperature", req.temperature},
                     {"max_tokens", req.max_output_tokens}};
  return body.dump();
}

std::string extract_content(const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed completion response: ") +
                         e.what());
  }
  if (!j.contains("choices") || !j["choices"].is_array() ||
      j["choices"].empty()) {
    throw TransportError("completion response has no choices");
  }
  const json& msg = j["choices"][0].contains("message")
                        ? j["choices"][0]["message"]
                        : json();
  if (!msg.is_object() || !msg.contains("content") ||
      !msg["content"].is_string()) {
    throw TransportError("completion response has no message content");
  }
  return msg["content"].get<std::string>();
}

bool retryable_status(int status) {
  return status == 429 || (status >= 500 && status < 600);
}

}  // namespace

HttpBackend::HttpBackend(LiveConfig config) : config_(std::move(config)) {
  const std::string& url = config_.endpoint_url;
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw InvalidConfig("endpoint URL must include a scheme: " + url);
  }
  const std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    base_ = url;
    path_ = "/";
  } else {
    base_ = url.substr(0, path_start);
    path_ = url.substr(path_start);
  }
}

std::string HttpBackend::complete(const ChatRequest& req) {
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw AuthError("environment variable " + config_.api_key_env +
                    " is unset or empty");
  }

  const std::string body = request_body(config_, req);
  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      const auto delay = std::chrono::milliseconds(
          static_cast<long long>(config_.backoff_base_ms) << (attempt - 1));
      std::this_thread::sleep_for(delay);
    }

    httplib::Client client(base_);
    client.set_connection_timeout(config_.timeout_s, 0);
    client.set_read_timeout(config_.timeout_s, 0);
    httplib::Headers headers = {
        {"Authorization", std::string("Bearer ") + key}};
    httplib::Result res =
        client.Post(path_, headers, body, "application/json");

    if (!res) {
      last_error = "connection failure: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) return extract_content(res->body);
    if (res->status == 401 || res->status == 403) {
      throw AuthError("endpoint rejected the credential (HTTP " +
                      std::to_string(res->status) + ")");
    }
    last_error = "HTTP " + std::to_string(res->status);
    if (!retryable_status(res->status)) {
      throw TransportError(last_error + " from " + config_.endpoint_url);
    }
  }
  throw TransportError("gave up after " +
                       std::to_string(config_.max_retries + 1) +
                       " attempts: " + last_error);
}

std::string HttpBackend::id() const {
  return "live:" + config_.model;
}

}  // namespace cama
