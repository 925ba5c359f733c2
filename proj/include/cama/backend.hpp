#pragma once

#include <string>

#include "cama/chat.hpp"

namespace cama {

// A text-generation backend. Implementations must be usable from
// independent episode runners concurrently; any shared mutable state is
// their own responsibility to guard.
class Backend {
 public:
  virtual ~Backend() = default;

  // Returns the completion text for the request.
  // Throws BackendExhausted (scripted: no matching rule),
  // TransportError (live: failure that persisted through retries) or
  // AuthError (live: missing/rejected credential; never retried).
  virtual std::string complete(const ChatRequest& req) = 0;

  // Stable identifier recorded into episode records, e.g.
  // "script:fixtures/learn2.script" or "live:gpt-4".
  virtual std::string id() const = 0;
};

}  // namespace cama
