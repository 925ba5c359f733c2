#pragma once

#include <string>
#include <vector>

namespace cama {

enum class PromptTag { CONTROLLER_EXECUTOR, MEM_ADAPT, MEM_GEN_ENV, MEM_GEN_TASK };

const char* to_string(PromptTag t);
PromptTag prompt_tag_from_string(const std::string& s);

struct ChatMessage {
  std::string role;  // "system" | "user"
  std::string content;
};

struct ChatRequest {
  std::vector<ChatMessage> messages;  // first is system, then >= 1 user
  double temperature = 0.0;
  int max_output_tokens = 1024;
  PromptTag tag = PromptTag::CONTROLLER_EXECUTOR;

  // All message contents joined with newlines; used for script matching
  // and fixture tests.
  std::string joined_text() const;
};

// Rough token estimate used for the prompt budget: 1 token per 4 bytes.
int approx_tokens(const std::string& text);

}  // namespace cama
