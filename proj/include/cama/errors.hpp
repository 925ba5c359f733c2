#pragma once

#include <stdexcept>
#include <string>

namespace cama {

// Base class for all hard failures raised by the library. Recoverable
// outcomes (e.g. a candidate action that needs refinement) are ordinary
// return values, not exceptions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A memory line has no recognizable relation phrase, or X/Y is empty.
class MalformedAbstraction : public Error {
 public:
  using Error::Error;
};

// Strict memory parsing produced zero items.
class EmptyMemory : public Error {
 public:
  using Error::Error;
};

// select_crucial_memories received an empty episode list.
class NoEpisodes : public Error {
 public:
  using Error::Error;
};

// A reward/score outside the closed range [0, 100].
class OutOfRange : public Error {
 public:
  using Error::Error;
};

// A generalization memory prompt was requested without the new task text.
class MissingNewTask : public Error {
 public:
  using Error::Error;
};

// Rendered prompt exceeds the configured token budget even after the
// trace has been truncated down to nothing.
class PromptTooLong : public Error {
 public:
  using Error::Error;
};

// The scripted backend has no rule matching the current request.
class BackendExhausted : public Error {
 public:
  using Error::Error;
};

// Live backend: transport-level failure that persisted through retries.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Live backend: missing or rejected credential. Never retried.
class AuthError : public Error {
 public:
  using Error::Error;
};

// The model response could not be parsed even after one re-ask.
class UnparseableResponse : public Error {
 public:
  using Error::Error;
};

// Grounding was asked to search an empty action space.
class EmptyActionSpace : public Error {
 public:
  using Error::Error;
};

// A world/task bundle or run configuration failed validation.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

// Replay found a step whose re-simulated observation or score differs
// from the recorded one.
class DivergenceAt : public Error {
 public:
  DivergenceAt(int step, const std::string& msg)
      : Error(msg), step_(step) {}
  int step() const { return step_; }

 private:
  int step_ = -1;
};

// Trace or record file could not be read or decoded.
class TraceIoError : public Error {
 public:
  using Error::Error;
};

// Metrics were requested over zero episode records.
class EmptyInput : public Error {
 public:
  using Error::Error;
};

}  // namespace cama
