#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cama/backend.hpp"

namespace cama {

// One scripted rule. Rules are tried in file order; the first rule whose
// tag and matcher both apply and whose use budget is not exhausted is
// consumed and its response returned.
struct ScriptRule {
  enum class Kind { SUBSTRING, STEP, ALWAYS };

  std::optional<PromptTag> tag;  // nullopt matches every tag
  Kind kind = Kind::ALWAYS;
  std::string substring;  // Kind::SUBSTRING: matched against joined text
  int step = 0;           // Kind::STEP: 0-based index among calls of the tag
  std::string response;
  int times = 1;  // uses before the rule is exhausted; 0 = unlimited
};

// An immutable script, shared between episode sessions.
struct Script {
  std::vector<ScriptRule> rules;
  std::string source;  // path or label, for ids and error messages
};

// Parses a line-oriented script: one JSON object per line, blank lines
// and lines starting with '#' ignored. Fields:
//   {"tag": "controller_executor" | "mem_adapt" | "mem_gen_env" |
//           "mem_gen_task" (optional; absent = any),
//    "match": {"kind": "substring", "value": "..."} |
//             {"kind": "step", "value": 3} |
//             {"kind": "always"}              (optional; absent = always),
//    "response": "...",                       (required)
//    "times": 2}                              (optional; default 1, 0 = unlimited)
// Throws InvalidConfig with the offending line number.
Script parse_script(const std::string& text, const std::string& source = "<inline>");
Script load_script(const std::string& path);

// Per-episode view of a script: owns the per-rule consumption counters
// and per-tag call indices, so independent episodes never contend.
class ScriptSession : public Backend {
 public:
  explicit ScriptSession(std::shared_ptr<const Script> script);

  std::string complete(const ChatRequest& req) override;
  std::string id() const override;

 private:
  std::shared_ptr<const Script> script_;
  std::vector<int> remaining_;       // -1 = unlimited
  std::vector<int> calls_by_tag_;    // indexed by PromptTag value
  std::mutex mu_;
};

}  // namespace cama
