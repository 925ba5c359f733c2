#pragma once

#include <string>

#include "cama/backend.hpp"

namespace cama {

// Configuration for the live chat-completion backend. The credential is
// always taken from the process environment (`api_key_env`), never from
// configuration files.
struct LiveConfig {
  std::string endpoint_url;  // e.g. "http://127.0.0.1:8080/v1/chat/completions"
  std::string model = "default";
  std::string api_key_env = "CAMA_API_KEY";
  int max_retries = 3;       // additional attempts after the first
  int backoff_base_ms = 250; // sleep backoff_base_ms * 2^attempt between tries
  int timeout_s = 60;
};

// Live backend speaking the chat-completion wire format: POSTs
// {"model", "messages", "temperature", "max_tokens"} and reads
// choices[0].message.content. Connection failures, HTTP 429 and 5xx are
// retried with exponential backoff; 401/403 raise AuthError immediately;
// any other failure (or a malformed response body) raises TransportError.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(LiveConfig config);

  std::string complete(const ChatRequest& req) override;
  std::string id() const override;

 private:
  LiveConfig config_;
  std::string base_;  // scheme://host[:port]
  std::string path_;  // leading-slash request path
};

}  // namespace cama
